#include "swipekit/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "swipekit/rng.hpp"

namespace swipekit {

namespace {

struct PathSegment {
  double t0 = 0.0, t1 = 0.0;
  Point p0, p1;
};

// Time profile of the ideal gesture: dwell on each letter, constant-speed
// travel between letters.
std::vector<PathSegment> ideal_profile(const std::string& word,
                                       const KeyboardLayout& layout,
                                       const SimConfig& cfg) {
  std::vector<PathSegment> segments;
  double t = 0.0;
  Point prev;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!layout.has_key(word[i])) {
      throw std::invalid_argument("synthesize: no key for character '" +
                                  std::string(1, word[i]) + "' in word '" + word + "'");
    }
    const Point c = layout.key(word[i]).center;
    if (i > 0) {
      const double travel = distance(prev, c) / cfg.gesture_speed;
      if (travel > 0.0) {
        segments.push_back({t, t + travel, prev, c});
        t += travel;
      }
    }
    if (cfg.dwell_time > 0.0) {
      segments.push_back({t, t + cfg.dwell_time, c, c});
      t += cfg.dwell_time;
    }
    prev = c;
  }
  if (segments.empty()) {
    // Zero dwell and a single (or repeated) letter: hold the point briefly so
    // the trajectory still has two samples.
    const Point c = layout.key(word[0]).center;
    segments.push_back({0.0, 2.0 / cfg.sample_rate, c, c});
  }
  return segments;
}

Point profile_at(const std::vector<PathSegment>& segments, double t) {
  for (const PathSegment& s : segments) {
    if (t <= s.t1) {
      const double span = s.t1 - s.t0;
      const double u = span > 0.0 ? (t - s.t0) / span : 0.0;
      return lerp(s.p0, s.p1, u);
    }
  }
  return segments.back().p1;
}

}  // namespace

Trajectory synthesize(const std::string& word, const KeyboardLayout& layout,
                      const SimConfig& cfg) {
  if (!cfg.valid()) {
    throw std::invalid_argument("synthesize: invalid sim config");
  }
  if (word.empty()) {
    throw std::invalid_argument("synthesize: empty word");
  }
  const auto segments = ideal_profile(word, layout, cfg);
  const double duration = segments.back().t1;
  const auto n = static_cast<std::size_t>(
      std::max<double>(2.0, std::ceil(duration * cfg.sample_rate) + 1.0));

  Trajectory traj;
  traj.word = word;
  traj.samples.reserve(n);
  Rng rng(cfg.seed);
  Point drift{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = duration * static_cast<double>(k) / static_cast<double>(n - 1);
    Point p = profile_at(segments, t) * cfg.cd_gain;
    // Draws are consumed unconditionally so that trajectories with different
    // noise magnitudes stay sample-aligned for the same seed.
    const double nx = rng.gaussian();
    const double ny = rng.gaussian();
    drift.x += cfg.drift_rate * rng.gaussian();
    drift.y += cfg.drift_rate * rng.gaussian();
    p.x += cfg.noise_std * nx + drift.x;
    p.y += cfg.noise_std * ny + drift.y;
    traj.samples.push_back({t, p});
  }

  // Delimitation artifact: the pinch displaces the tail of the trajectory in
  // a random direction.
  const double angle = rng.uniform(0.0, 2.0 * M_PI);
  if (cfg.pinch_impulse > 0.0) {
    const Point impulse{cfg.pinch_impulse * std::cos(angle),
                        cfg.pinch_impulse * std::sin(angle)};
    const std::size_t tail = std::min<std::size_t>(3, traj.samples.size());
    for (std::size_t k = traj.samples.size() - tail; k < traj.samples.size(); ++k) {
      traj.samples[k].p = traj.samples[k].p + impulse;
    }
  }
  return traj;
}

bool pseudo_decode(const Trajectory& traj, const std::string& word,
                   const KeyboardLayout& layout, double region_scale,
                   double threshold) {
  if (traj.empty() || word.empty()) {
    return false;
  }
  std::vector<Rect> regions;
  regions.reserve(word.size());
  for (char c : word) {
    if (!layout.has_key(c)) {
      return false;
    }
    const Key& k = layout.key(c);
    const double hw = 0.5 * region_scale * k.width;
    const double hh = 0.5 * region_scale * k.height;
    regions.push_back({k.center.x - hw, k.center.y - hh, k.center.x + hw, k.center.y + hh});
  }
  std::size_t inside = 0;
  for (const CursorSample& s : traj.samples) {
    for (const Rect& r : regions) {
      if (r.contains(s.p)) {
        ++inside;
        break;
      }
    }
  }
  return static_cast<double>(inside) >=
         threshold * static_cast<double>(traj.size()) - 1e-9;
}

}  // namespace swipekit
