#include "swipekit/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace swipekit {

double filter_objective(const FilterParams& params, double alpha) {
  const double noise = params.lambda * params.sigma * std::sqrt(alpha / (2.0 - alpha));
  const double tracking = (1.0 - params.lambda) * (1.0 - alpha) * params.delta / alpha;
  return noise + tracking;
}

namespace {

// Golden-section search on [lo, hi]; assumes the objective is unimodal there.
double golden_section(const FilterParams& params, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kTol = 1e-7;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = filter_objective(params, c);
  double fd = filter_objective(params, d);
  while (b - a > kTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = filter_objective(params, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = filter_objective(params, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double optimize_alpha(const FilterParams& params) {
  if (!params.valid()) {
    throw std::invalid_argument("optimize_alpha: invalid filter parameters");
  }
  const double lo = params.alpha_min;
  const double hi = params.alpha_max;

  // Coarse scan to bracket the minimum, then golden-section inside the
  // bracket. The scan keeps the search robust when the minimum sits at a
  // boundary (sigma or delta equal to zero).
  constexpr int kScan = 128;
  int best = 0;
  double best_f = filter_objective(params, lo);
  for (int i = 1; i <= kScan; ++i) {
    const double a = lo + (hi - lo) * static_cast<double>(i) / kScan;
    const double f = filter_objective(params, a);
    if (f < best_f) {
      best_f = f;
      best = i;
    }
  }
  const double step = (hi - lo) / kScan;
  const double bracket_lo = std::max(lo, lo + (best - 1) * step);
  const double bracket_hi = std::min(hi, lo + (best + 1) * step);
  const double interior = golden_section(params, bracket_lo, bracket_hi);

  // Pick the best of the refined interior point and the interval bounds.
  // Exact ties resolve toward the larger alpha, so a degenerate flat
  // objective (sigma and delta both zero) leaves the signal unsmoothed.
  double result = lo;
  double result_f = filter_objective(params, lo);
  for (double cand : {interior, hi}) {
    const double f = filter_objective(params, cand);
    if (f <= result_f) {
      result_f = f;
      result = cand;
    }
  }
  return std::clamp(result, lo, hi);
}

Trajectory smooth(const Trajectory& traj, double alpha) {
  if (traj.empty()) {
    throw std::invalid_argument("smooth: empty trajectory");
  }
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("smooth: alpha must lie in (0, 1]");
  }
  Trajectory out;
  out.word = traj.word;
  out.samples.reserve(traj.size());
  Point prev = traj.samples.front().p;
  out.samples.push_back(traj.samples.front());
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const CursorSample& s = traj.samples[i];
    Point filtered{alpha * s.p.x + (1.0 - alpha) * prev.x,
                   alpha * s.p.y + (1.0 - alpha) * prev.y};
    out.samples.push_back({s.t, filtered});
    prev = filtered;
  }
  return out;
}

double estimate_delta(const Trajectory& traj, std::size_t window) {
  if (traj.size() < 2) {
    return 0.0;
  }
  std::vector<double> steps;
  const std::size_t n = std::min(window, traj.size() - 1);
  steps.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    steps.push_back(distance(traj.samples[i].p, traj.samples[i - 1].p));
  }
  std::sort(steps.begin(), steps.end());
  const std::size_t mid = steps.size() / 2;
  if (steps.size() % 2 == 1) {
    return steps[mid];
  }
  return 0.5 * (steps[mid - 1] + steps[mid]);
}

}  // namespace swipekit
