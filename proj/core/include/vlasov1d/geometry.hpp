#pragma once

#include <cmath>

namespace vlasov1d {

/// A point of the torus T identified with the half-open interval [-1/2, 1/2).
///
/// The only way to build one is through wrap(), so every instance holds the
/// canonical representative.
class TorusCoord {
 public:
  constexpr TorusCoord() = default;

  constexpr double value() const { return value_; }

  friend constexpr bool operator==(TorusCoord a, TorusCoord b) {
    return a.value_ == b.value_;
  }
  friend constexpr auto operator<=>(TorusCoord a, TorusCoord b) {
    return a.value_ <=> b.value_;
  }

 private:
  friend TorusCoord wrap(double r);
  constexpr explicit TorusCoord(double v) : value_(v) {}

  double value_ = 0.0;
};

/// Canonical representative of r mod 1 in [-1/2, 1/2). Exact 1/2 maps to -1/2.
/// Throws InvalidArgument for non-finite input.
TorusCoord wrap(double r);

/// wrap(a - b).
TorusCoord torus_diff(TorusCoord a, TorusCoord b);

/// Geodesic distance on T, always <= 1/2.
double torus_distance(TorusCoord a, TorusCoord b);

struct PhasePoint {
  TorusCoord x;
  double v = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Euclidean-type metric on T x R.
double phase_distance(const PhasePoint& p, const PhasePoint& q);

}  // namespace vlasov1d
