#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "swipekit/decoder.hpp"
#include "swipekit/geometry.hpp"

namespace swipekit {

// Log-probability costs (base 10) of the keyboard-aware edit channel.
// "Insertion" is a character present in the intended word but missing from
// the input (user omission); "deletion" is a stray input character.
// Insertions at the end of the input are free exactly when the input is a
// character-wise prefix of the intent: a gesture cut short costs nothing, so
// "hell" is a perfect match for the intent "hello" and the score is not a
// metric. Any other trailing omission is paid, which keeps "delete
// everything, append for free" from beating real substitutions.
struct EditCostModel {
  double log_p_omit = -1.22;
  double log_p_stray = -1.22;
  double log_p_sub_adjacent = -0.77;
  double log_p_sub_far = -2.0;
  AdjacencyMap adjacency;
  std::vector<char> alphabet;  // valid labels
  std::array<bool, 128> alphabet_table{};

  static EditCostModel from_layout(const KeyboardLayout& layout,
                                   double adjacency_radius = 1.2);

  bool valid() const {
    return log_p_omit <= 0.0 && log_p_stray <= 0.0 && log_p_sub_adjacent <= 0.0 &&
           log_p_sub_far <= 0.0 && log_p_sub_adjacent > log_p_sub_far;
  }
  bool in_alphabet(char c) const {
    return c >= 0 && alphabet_table[static_cast<unsigned char>(c)];
  }
  double substitution_cost(char intent, char input) const {
    if (intent == input) return 0.0;
    return adjacency.adjacent(intent, input) ? log_p_sub_adjacent : log_p_sub_far;
  }
};

struct Alignment {
  int n_ins = 0;       // insertions (intent characters missing from the input)
  int n_ins_free = 0;  // of which at the end of the input (zero cost)
  int n_del = 0;       // stray input characters
  std::vector<std::pair<char, char>> substitutions;  // (intent, input), mismatches only
  double log_p_ed = 0.0;
};

// Maximum-log-probability alignment of `input` against the intended string
// `intent` under the spatial edit channel, computed by dynamic programming.
// Throws std::invalid_argument on characters outside the layout alphabet.
Alignment spatial_edit_logprob(const std::string& intent, const std::string& input,
                               const EditCostModel& costs);

// Banded variant used for pruned full-vocabulary scans. Returns nullopt when
// no alignment stays within the band.
std::optional<double> spatial_edit_logprob_banded(const std::string& intent,
                                                  const std::string& input,
                                                  const EditCostModel& costs, int band);

struct CorrectionOptions {
  // Maximum edit-operation band; nullopt disables pruning (exact scan).
  std::optional<int> band = 3;
};

// log P_ED(word, raw) for every vocabulary word (intent = vocabulary word,
// input = raw decoding), sorted by descending score; ties broken by
// descending frequency then lexicographically. With a band set, words whose
// best alignment falls outside the band are dropped.
std::vector<ScoredCandidate> correction_scores(const std::string& raw,
                                               const Vocabulary& vocab,
                                               const EditCostModel& costs,
                                               const CorrectionOptions& options = {});

}  // namespace swipekit
