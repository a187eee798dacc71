#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace swipekit {

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline Point lerp(const Point& a, const Point& b, double t) {
  return {(1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y};
}

struct CursorSample {
  double t = 0.0;  // seconds, strictly increasing within a trajectory
  Point p;
};

struct Trajectory {
  std::vector<CursorSample> samples;
  std::optional<std::string> word;  // ground-truth label when known

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

// Parameters of the adaptive exponential smoothing filter. The smoothing
// factor is chosen by minimizing
//   lambda * sigma * sqrt(alpha / (2 - alpha)) + (1 - lambda) * (1 - alpha) * delta / alpha
// i.e. a weighted sum of residual noise level and ramp tracking error.
struct FilterParams {
  double lambda = 0.75;    // noise-rejection vs tracking trade-off
  double sigma = 0.0;      // sensing noise level, layout units
  double delta = 0.0;      // signal velocity estimate, layout units per sample
  double alpha_min = 0.01;
  double alpha_max = 1.0;

  bool valid() const {
    return lambda >= 0.0 && lambda <= 1.0 && sigma >= 0.0 && delta >= 0.0 &&
           alpha_min > 0.0 && alpha_max <= 1.0 && alpha_min < alpha_max;
  }
};

// Value of the filter objective at a given alpha.
double filter_objective(const FilterParams& params, double alpha);

// Minimizer of the filter objective on [alpha_min, alpha_max]. Deterministic:
// coarse bracketing scan followed by golden-section refinement, with the
// interval endpoints always considered (monotone objectives resolve to a bound).
double optimize_alpha(const FilterParams& params);

// Exponential smoothing: out[0] = in[0], out[k] = alpha*in[k] + (1-alpha)*out[k-1].
// Timestamps are preserved. Throws std::invalid_argument on an empty
// trajectory or alpha outside (0, 1].
Trajectory smooth(const Trajectory& traj, double alpha);

// Median per-sample displacement over the first `window` intervals; used as
// the delta estimate when filtering a concrete trajectory.
double estimate_delta(const Trajectory& traj, std::size_t window = 15);

}  // namespace swipekit
