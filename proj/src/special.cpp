#include "cloak/special.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "cloak/errors.hpp"

namespace cloak {

namespace {

constexpr cplx I{0.0, 1.0};

void check_arguments(int l, cplx z) {
  if (l < 0 || l > kMaxOrder) {
    std::ostringstream msg;
    msg << "Riccati-Bessel order " << l << " outside [0, " << kMaxOrder << "]";
    throw DomainError(msg.str());
  }
  if (z == cplx(0.0)) throw DomainError("Riccati-Bessel functions need z != 0");
  if (std::abs(z.imag()) > kMaxImagArgument) {
    std::ostringstream msg;
    msg << "|Im z| = " << std::abs(z.imag()) << " exceeds the overflow guard "
        << kMaxImagArgument;
    throw RangeError(msg.str());
  }
}

}  // namespace

RiccatiPair psi(int l, cplx z) {
  check_arguments(l, z);
  if (l == 0) return {std::sin(z), std::cos(z)};

  // ratio[n] = psi_{n-1} / psi_n = D_n + n/z, with D_n = psi_n' / psi_n and
  // D_{n-1} = n/z - 1/(D_n + n/z).
  const int start = std::max(l, static_cast<int>(std::ceil(std::abs(z)))) + 60;
  std::vector<cplx> ratio(static_cast<std::size_t>(l) + 1);
  cplx log_derivative = 0.0;
  for (int n = start; n >= 1; --n) {
    const cplx r = log_derivative + static_cast<double>(n) / z;
    if (n <= l) ratio[static_cast<std::size_t>(n)] = r;
    log_derivative = static_cast<double>(n) / z - 1.0 / r;
  }
  const cplx d_l = ratio[static_cast<std::size_t>(l)] - static_cast<double>(l) / z;

  cplx value = std::sin(z);
  for (int n = 1; n <= l; ++n) value /= ratio[static_cast<std::size_t>(n)];
  return {value, d_l * value};
}

RiccatiPair xi(int l, cplx z) {
  check_arguments(l, z);
  const cplx e = std::exp(I * z);
  cplx previous = -I * e;
  if (l == 0) return {previous, e};
  cplx current = -e * (1.0 + I / z);
  for (int n = 1; n < l; ++n) {
    const cplx next = (2.0 * n + 1.0) / z * current - previous;
    previous = current;
    current = next;
  }
  return {current, previous - static_cast<double>(l) / z * current};
}

double wronskian_defect(int l, cplx z) {
  const auto p = psi(l, z);
  const auto x = xi(l, z);
  return std::abs(p.value * x.derivative - p.derivative * x.value - I);
}

}  // namespace cloak
