#pragma once

#include <vector>

#include "swipekit/decoder.hpp"
#include "swipekit/lm.hpp"
#include "swipekit/spell.hpp"

namespace swipekit {

struct FusionConfig {
  double swipe_correction_coeff = 0.3;
  double lm_coeff = 0.3;
  int num_suggestions = 5;

  bool valid() const {
    return swipe_correction_coeff >= 0.0 && swipe_correction_coeff <= 1.0 &&
           lm_coeff >= 0.0 && lm_coeff <= 1.0 &&
           swipe_correction_coeff + lm_coeff <= 1.0 && num_suggestions >= 1;
  }
};

using SuggestionList = std::vector<ScoredCandidate>;

// Blended word prediction: every raw decoding proposes every vocabulary word
// as a correction, scored
//   (1 - sc - lm) * raw_score + lm * lm_score + sc * typo_score,
// a word proposed by several raw decodings keeps its maximum blended score,
// and the merged list is sorted descending and truncated to num_suggestions.
// The language model scores depend only on the context and are computed once.
SuggestionList score_fusion(const Trajectory& traj, const Decoder& decoder,
                            const Vocabulary& vocab, const EditCostModel& costs,
                            const LmScorer& lm, const std::vector<std::string>& prev_tokens,
                            const FusionConfig& cfg, int beam,
                            const CorrectionOptions& correction = {});

// Sequential baseline: decode, map each raw decoding to its k closest
// vocabulary words by plain unit-cost edit distance, then re-rank the pooled
// candidates by n-gram probability of the previously committed words alone.
SuggestionList naive_correction(const Trajectory& traj, const Decoder& decoder,
                                const Vocabulary& vocab, const NGramModel& lm,
                                const std::vector<std::string>& prev_tokens,
                                const FusionConfig& cfg, int beam, int fanout_k = 5);

}  // namespace swipekit
