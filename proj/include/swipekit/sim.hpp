#pragma once

#include <cstdint>
#include <string>

#include "swipekit/geometry.hpp"
#include "swipekit/trajectory.hpp"

namespace swipekit {

// Synthetic gesture generator settings. Velocities and noise magnitudes are
// in layout units (key widths). The control-display gain of the reference
// ring device is 1.8; the simulator defaults to 1.0 so that noiseless
// trajectories land on the actual key geometry.
struct SimConfig {
  static constexpr double kDeviceCdGain = 1.8;

  double cd_gain = 1.0;        // display units per motion unit, scales the path
  double noise_std = 0.0;      // white sensing noise sigma, per coordinate
  double drift_rate = 0.0;     // random-walk step sigma per sample, per coordinate
  double pinch_impulse = 0.0;  // magnitude of the delimitation displacement
  double sample_rate = 60.0;   // Hz
  std::uint64_t seed = 0;

  // Fast ballistic travel with a distinct pause on every letter: sample mass
  // concentrates at the keys, mirroring the speed minima of human swipes.
  double gesture_speed = 30.0;  // key widths per second along the path
  double dwell_time = 0.3;      // pause at each letter, seconds

  bool valid() const {
    return sample_rate > 0.0 && noise_std >= 0.0 && drift_rate >= 0.0 &&
           pinch_impulse >= 0.0 && gesture_speed > 0.0 && dwell_time >= 0.0;
  }
};

// Generates a noisy word-gesture trajectory: the ideal path visits the key
// centers of the word's letters in order (pausing dwell_time on each letter),
// is resampled at sample_rate and scaled by cd_gain, then perturbed by white
// noise, cumulative random-walk drift, and a single pinch impulse applied to
// the final samples. Deterministic given cfg.seed. Throws
// std::invalid_argument for characters without a key.
Trajectory synthesize(const std::string& word, const KeyboardLayout& layout,
                      const SimConfig& cfg);

// Study-style idealized decoder rule: accepts iff at least `threshold` of the
// samples lie inside the union of the word's per-character tolerance regions,
// each region being the key rectangle scaled by region_scale per axis about
// its center (2.0 per axis = 4x area).
bool pseudo_decode(const Trajectory& traj, const std::string& word,
                   const KeyboardLayout& layout, double region_scale = 2.0,
                   double threshold = 0.7);

}  // namespace swipekit
