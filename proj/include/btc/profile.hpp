#pragma once

#include <vector>

namespace btc {

struct ProfilePoint {
  double time = 0.0;
  double value = 0.0;
};

/// Piecewise-linear profile over time. Breakpoint times must be
/// strictly increasing; evaluation interpolates between breakpoints and
/// extrapolates as a constant beyond either end.
class PiecewiseLinear {
 public:
  PiecewiseLinear() : PiecewiseLinear(std::vector<ProfilePoint>{{0.0, 0.0}}) {}
  explicit PiecewiseLinear(std::vector<ProfilePoint> points);

  static PiecewiseLinear constant(double value) {
    return PiecewiseLinear(std::vector<ProfilePoint>{{0.0, value}});
  }

  double operator()(double time) const;

  const std::vector<ProfilePoint>& points() const { return points_; }

 private:
  std::vector<ProfilePoint> points_;
};

}  // namespace btc
