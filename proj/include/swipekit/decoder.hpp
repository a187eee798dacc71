#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "swipekit/geometry.hpp"
#include "swipekit/trajectory.hpp"

namespace swipekit {

struct VocabEntry {
  std::string word;
  double frequency = 0.0;
};

// Immutable word list with frequencies. Words are unique, lowercase a-z (and
// apostrophe), frequencies finite and non-negative.
class Vocabulary {
 public:
  explicit Vocabulary(std::vector<VocabEntry> entries);

  const std::vector<VocabEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& word) const { return index_.count(word) > 0; }
  double frequency(const std::string& word) const;
  int index_of(const std::string& word) const;  // -1 when absent

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, int> index_;
};

struct ScoredCandidate {
  std::string word;
  double log_score = 0.0;  // base-10 log of a probability-like quantity
};

// The decoder seam: a trajectory in, up to `beam` raw decodings out, sorted
// by descending log score and log-softmax normalized over the returned set.
// Raw decodings are character strings and need not be vocabulary words.
class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual std::vector<ScoredCandidate> decode(const Trajectory& traj,
                                              const Vocabulary& vocab,
                                              int beam) const = 0;
};

// Piecewise-linear path through the word's key centers, resampled to exactly
// n points equidistant by arc length. Single-letter (or zero-length) paths
// yield n copies of the key center.
Trajectory ideal_template(const std::string& word, const KeyboardLayout& layout, int n);

// Resamples an arbitrary trajectory to n points equidistant by arc length.
std::vector<Point> resample_by_arc_length(const Trajectory& traj, int n);

struct ShapeDecoderConfig {
  int resample_points = 64;
  double channel_sigma = 0.4;     // key widths
  double prior_weight = 0.1;      // weight on log10(1 + frequency)
  bool prefilter = true;          // skip words with far first/last key centers
  double prefilter_radius = 2.5;  // key widths
};

// Template-matching decoder: ranks vocabulary words by the mean squared
// distance between the resampled trajectory and each word's ideal template
// under a Gaussian shape channel, plus a frequency prior.
class ShapeDecoder : public Decoder {
 public:
  explicit ShapeDecoder(KeyboardLayout layout, ShapeDecoderConfig cfg = {});

  std::vector<ScoredCandidate> decode(const Trajectory& traj, const Vocabulary& vocab,
                                      int beam) const override;

  // Mean squared pointwise distance between the resampled trajectory and the
  // word's template; exposed for tests.
  double template_distance(const Trajectory& traj, const std::string& word) const;

 private:
  KeyboardLayout layout_;
  ShapeDecoderConfig cfg_;
};

struct TraceDecoderConfig {
  double channel_sigma = 0.4;   // per-anchor Gaussian channel width, key widths
  double dwell_time = 0.3;      // nominal per-letter pause, seconds
  double dwell_speed = 9.0;     // below this speed (key widths/s) counts as dwelling
  double double_letter_ratio = 1.6;  // dwell length ratio that emits a doubled letter
  int max_expansions = 256;     // best-first search budget for the beam
};

// Character-level decoder: finds dwell anchors (low-velocity clusters) along
// the trajectory, reads the nearest key at each anchor, and emits letter
// strings. The output is a beam over per-anchor key alternatives, so raw
// decodings may contain adjacent-key substitutions, omissions and strays --
// the error channel the spelling correction model is built for.
class TraceDecoder : public Decoder {
 public:
  explicit TraceDecoder(KeyboardLayout layout, TraceDecoderConfig cfg = {});

  std::vector<ScoredCandidate> decode(const Trajectory& traj, const Vocabulary& vocab,
                                      int beam) const override;

  // Anchor positions and dwell lengths extracted from the trajectory;
  // exposed for tests.
  struct Anchor {
    Point position;
    double duration = 0.0;  // seconds
  };
  std::vector<Anchor> extract_anchors(const Trajectory& traj) const;

 private:
  KeyboardLayout layout_;
  TraceDecoderConfig cfg_;
};

}  // namespace swipekit
