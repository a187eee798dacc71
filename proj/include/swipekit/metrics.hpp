#pragma once

#include <string>
#include <utility>

namespace swipekit {

// Classic unit-cost edit distance.
int levenshtein(const std::string& a, const std::string& b);

struct TranscriptionEvent {
  std::string stimulus;
  std::string committed_initial;  // text after the first commit of every word
  std::string committed_final;    // text after simulated corrections
  double elapsed = 0.0;           // seconds
  int corrections = 0;            // word deletions / re-entries
};

// Words per minute with the standard five-characters-per-word convention.
double wpm(const TranscriptionEvent& event);

// (uncorrected, corrected) character error rate: edit distance from the
// stimulus normalized by stimulus length (spaces count). Throws on an empty
// stimulus.
std::pair<double, double> cer(const TranscriptionEvent& event);

}  // namespace swipekit
