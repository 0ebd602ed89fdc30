#pragma once
// Riccati-Bessel functions of complex argument:
//   psi_l(z) = z j_l(z),  xi_l(z) = z h_l^(1)(z).
// Both solve w'' + (1 - l(l+1)/z^2) w = 0 and psi xi' - psi' xi = i.

#include <complex>

namespace cloak {

using cplx = std::complex<double>;

inline constexpr int kMaxOrder = 64;
inline constexpr double kMaxImagArgument = 200.0;

struct RiccatiPair {
  cplx value;
  cplx derivative;
};

/// Regular solution. psi_l' comes from the log-derivative obtained by
/// downward recurrence started well above max(l, |z|); psi_l is built up from
/// sin z by the ratios psi_{n-1}/psi_n of the same recurrence. Relative
/// accuracy is about 1e-12 except at arguments close to a zero of psi_l.
/// Throws DomainError for z = 0 or l outside [0, 64], RangeError for
/// |Im z| > 200.
RiccatiPair psi(int l, cplx z);

/// Outgoing solution by upward recurrence from xi_0 = -i e^{iz} and
/// xi_1 = -e^{iz} (1 + i/z). Same argument checks as psi.
RiccatiPair xi(int l, cplx z);

/// |psi_l xi_l' - psi_l' xi_l - i|.
double wronskian_defect(int l, cplx z);

}  // namespace cloak
