#pragma once

#include <string>
#include <vector>

#include "swipekit/decoder.hpp"
#include "swipekit/fusion.hpp"
#include "swipekit/geometry.hpp"
#include "swipekit/lm.hpp"
#include "swipekit/sim.hpp"
#include "swipekit/trajectory.hpp"

namespace swipekit {

// Layout file: a JSON object
//   { "name": str, "keys": [ { "label": "a", "cx": x, "cy": y, "w": w, "h": h } ] }
KeyboardLayout load_layout(const std::string& path);
void save_layout(const KeyboardLayout& layout, const std::string& path);

// Trajectory file: JSON Lines, one object per trajectory
//   { "word": str|null, "samples": [[t, x, y], ...] }
std::vector<Trajectory> load_trajectories(const std::string& path);
void save_trajectories(const std::vector<Trajectory>& trajectories, const std::string& path);

// Vocabulary file: UTF-8 text, one "word<TAB>frequency" per line.
Vocabulary load_vocabulary(const std::string& path);
void save_vocabulary(const Vocabulary& vocab, const std::string& path);

// Phrase set: JSON Lines { "stimulus": str, "history": [str], "tags": [str] }.
std::vector<PhraseRecord> load_phrases(const std::string& path);
void save_phrases(const std::vector<PhraseRecord>& records, const std::string& path);

// Keyed configuration file (JSON) with optional sections:
//   edit_costs { omit, stray, sub_adjacent, sub_far }   (base-10 log values)
//   fusion { swipe_correction_coeff, lm_coeff, num_suggestions }
//   sim { noise_std, drift_rate, pinch_impulse, sample_rate, cd_gain,
//         gesture_speed, dwell_time }
//   filter { lambda, alpha_min, alpha_max }
//   decoder { beam, channel_sigma }
//   lm { order, discount, gamma }
struct FileConfig {
  FusionConfig fusion;
  SimConfig sim;
  FilterParams filter;
  int beam = 8;
  double channel_sigma = 0.4;
  int lm_order = 3;
  double lm_discount = 0.75;
  double lm_gamma = 0.2;
  double cost_omit = -1.22;
  double cost_stray = -1.22;
  double cost_sub_adjacent = -0.77;
  double cost_sub_far = -2.0;
};

FileConfig load_config(const std::string& path);

// Stable float text used anywhere byte-identical output matters.
std::string format_double(double v);

}  // namespace swipekit
