#pragma once

#include "vlasov1d/geometry.hpp"

namespace vlasov1d {

/// Which interaction force drives the particles: the singular periodic
/// Coulomb kernel, or its piecewise-linear regularisation of width eps.
class KernelKind {
 public:
  static KernelKind exact() { return KernelKind(0.0); }
  /// Throws InvalidArgument unless 0 < eps < 1/2.
  static KernelKind mollified(double eps);

  bool is_exact() const { return eps_ == 0.0; }
  double epsilon() const { return eps_; }

  friend bool operator==(const KernelKind&, const KernelKind&) = default;

 private:
  explicit KernelKind(double eps) : eps_(eps) {}
  double eps_;
};

// W(x) = (x^2 - |x|) / 2 on the canonical representative. Range [-1/8, 0].
double potential(TorusCoord x);

// W'(x) = x - sign(x)/2 with sign(0) = 0, so a particle never pushes itself.
double force_kernel(TorusCoord x);

// W'_eps: equals W' for |x| > eps and the linear interpolant
// -(1/(2 eps) - 1) x inside. Lipschitz with constant 1/(2 eps).
double mollified_force(TorusCoord x, double eps);
double mollified_potential(TorusCoord x, double eps);

/// Dispatch on the kernel kind.
double kernel_force(TorusCoord x, const KernelKind& kind);
double kernel_potential(TorusCoord x, const KernelKind& kind);

/// sign(x) with sign(0) = 0, no tolerance.
constexpr double exact_sign(double x) {
  return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

}  // namespace vlasov1d
