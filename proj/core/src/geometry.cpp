#include "vlasov1d/geometry.hpp"

#include <cmath>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {

TorusCoord wrap(double r) {
  if (!std::isfinite(r)) {
    throw InvalidArgument("wrap: non-finite coordinate");
  }
  double y = r - std::floor(r + 0.5);
  // r + 0.5 can round across an integer; fix the representative afterwards.
  if (y >= 0.5) {
    y -= 1.0;
  } else if (y < -0.5) {
    y += 1.0;
  }
  return TorusCoord(y);
}

TorusCoord torus_diff(TorusCoord a, TorusCoord b) {
  return wrap(a.value() - b.value());
}

double torus_distance(TorusCoord a, TorusCoord b) {
  return std::abs(torus_diff(a, b).value());
}

double phase_distance(const PhasePoint& p, const PhasePoint& q) {
  const double dx = torus_distance(p.x, q.x);
  const double dv = p.v - q.v;
  return std::sqrt(dx * dx + dv * dv);
}

}  // namespace vlasov1d
