#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipekit/decoder.hpp"
#include "swipekit/fusion.hpp"
#include "swipekit/geometry.hpp"
#include "swipekit/lm.hpp"
#include "swipekit/sim.hpp"
#include "swipekit/spell.hpp"

namespace swipekit {

// Named noise presets; medium is calibrated so that the raw decoder alone
// lands in the 20-35% character-error band on the shipped vocabulary.
struct NoiseProfile {
  std::string name;
  double noise_std = 0.0;
  double drift_rate = 0.0;
  double pinch_impulse = 0.0;
};

NoiseProfile noise_profile(const std::string& name);  // low | medium | high
void apply_noise_profile(SimConfig& sim, const std::string& name);

// Everything a benchmark run needs, fully in memory. File-based entry points
// live in the CLI.
struct BenchSetup {
  KeyboardLayout layout = default_qwerty();
  Vocabulary vocab;
  std::vector<PhraseRecord> phrases;
  SimConfig sim;
  FilterParams filter;  // sigma is taken from sim.noise_std at run time
  FusionConfig fusion;
  TraceDecoderConfig trace;
  EditCostModel costs;
  NGramModel lm;
  double lm_gamma = 0.2;
  int beam = 8;
  int naive_fanout = 5;
  int block_size = 10;
  std::uint64_t seed = 1;
  CorrectionOptions correction;

  BenchSetup(Vocabulary vocab_, std::vector<PhraseRecord> phrases_)
      : vocab(std::move(vocab_)), phrases(std::move(phrases_)) {
    costs = EditCostModel::from_layout(layout);
  }
};

// Trains the run's n-gram model on the phrase set itself (stimuli plus
// history utterances).
NGramModel train_lm_from_phrases(const std::vector<PhraseRecord>& phrases,
                                 const Vocabulary& vocab, int order = 3,
                                 double discount = 0.75);

struct ReportRow {
  std::string condition;
  int block = 0;
  int phrase_id = 0;
  double wpm = 0.0;
  double ucer = 0.0;
  double ccer = 0.0;
  int corrections = 0;
};

struct BenchReport {
  std::vector<ReportRow> rows;
  std::string csv;      // header + rows, deterministic bytes
  std::string summary;  // per-condition mean/SD block
};

// Runs the selected conditions ("fusion", "naive") over the phrase set:
// per-word trajectory synthesis, adaptive smoothing, decoding, the selected
// pipeline, and a simulated commit/retry policy (one retry with a fresh
// noise draw on a wrong top-1). Both conditions consume identical
// trajectories. Deterministic per seed.
BenchReport run_benchmark(const BenchSetup& setup, const std::vector<std::string>& conditions);

// Component ablation on identical trajectories: "gdm" (raw decoder argmax),
// "gdm+sscm" (fusion with lm_coeff = 0) and "gdm+sscm+clm" (full fusion),
// reported as top-1 uncorrected CER rows.
BenchReport run_ablation(const BenchSetup& setup);

// Grid search over (swipe_correction_coeff, lm_coeff) minimizing mean top-1
// uncorrected CER; infeasible grids (sum > 1 everywhere) throw. Ties resolve
// toward smaller coefficients.
FusionConfig tune(const BenchSetup& setup, const std::vector<double>& sc_grid,
                  const std::vector<double>& lm_grid);

// Deterministic pseudo-word vocabulary with a Zipf-like frequency profile;
// used by the latency benchmark and available for experiments.
Vocabulary synthetic_vocabulary(std::size_t size, std::uint64_t seed);

struct PhraseGenOptions {
  int min_words = 3;
  int max_words = 6;
  int function_words = 30;   // most frequent entries treated as glue words
  int topic_size = 12;       // content words per topic
  double topic_ratio = 0.55; // fraction of stimulus slots drawn from the topic
  int history_min = 1;
  int history_max = 2;
};

// Synthetic conversational phrase set with injected context correlation: the
// history utterances and tag values echo the stimulus topic words.
std::vector<PhraseRecord> synthetic_phrases(const Vocabulary& vocab, std::size_t count,
                                            std::uint64_t seed,
                                            const PhraseGenOptions& opts = {});

}  // namespace swipekit
