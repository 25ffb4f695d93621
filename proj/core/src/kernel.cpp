#include "vlasov1d/kernel.hpp"

#include <cmath>
#include <string>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {
namespace {

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw InvalidArgument("mollification width must lie in (0, 1/2), got " +
                          std::to_string(eps));
  }
}

}  // namespace

KernelKind KernelKind::mollified(double eps) {
  check_eps(eps);
  return KernelKind(eps);
}

double potential(TorusCoord x) {
  const double r = x.value();
  return 0.5 * (r * r - std::abs(r));
}

double force_kernel(TorusCoord x) {
  const double r = x.value();
  return r - 0.5 * exact_sign(r);
}

double mollified_force(TorusCoord x, double eps) {
  check_eps(eps);
  const double r = x.value();
  if (std::abs(r) > eps) {
    return force_kernel(x);
  }
  return -(0.5 / eps - 1.0) * r;
}

double mollified_potential(TorusCoord x, double eps) {
  check_eps(eps);
  const double r = x.value();
  if (std::abs(r) > eps) {
    return potential(x);
  }
  return -(0.5 / eps - 1.0) * 0.5 * r * r - 0.25 * eps;
}

double kernel_force(TorusCoord x, const KernelKind& kind) {
  return kind.is_exact() ? force_kernel(x) : mollified_force(x, kind.epsilon());
}

double kernel_potential(TorusCoord x, const KernelKind& kind) {
  return kind.is_exact() ? potential(x)
                         : mollified_potential(x, kind.epsilon());
}

}  // namespace vlasov1d
