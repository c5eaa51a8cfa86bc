#include "btc/profile.hpp"

#include <cmath>
#include <sstream>

#include "btc/errors.hpp"

namespace btc {

PiecewiseLinear::PiecewiseLinear(std::vector<ProfilePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("profile needs at least one breakpoint");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].time) || !std::isfinite(points_[i].value)) {
      std::ostringstream msg;
      msg << "non-finite profile breakpoint at index " << i;
      throw DomainError(msg.str());
    }
    if (i > 0 && !(points_[i].time > points_[i - 1].time)) {
      std::ostringstream msg;
      msg << "profile breakpoint times must be strictly increasing (index " << i << ")";
      throw DomainError(msg.str());
    }
  }
}

double PiecewiseLinear::operator()(double time) const {
  if (time <= points_.front().time) return points_.front().value;
  if (time >= points_.back().time) return points_.back().value;
  std::size_t hi = 1;
  while (points_[hi].time < time) ++hi;
  const auto& a = points_[hi - 1];
  const auto& b = points_[hi];
  const double w = (time - a.time) / (b.time - a.time);
  return a.value + w * (b.value - a.value);
}

}  // namespace btc
