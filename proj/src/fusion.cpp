#include "swipekit/fusion.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "swipekit/metrics.hpp"

namespace swipekit {

namespace {

struct Merged {
  double blended = -std::numeric_limits<double>::infinity();
  int raw_rank = std::numeric_limits<int>::max();  // best rank of an exact raw match
};

}  // namespace

SuggestionList score_fusion(const Trajectory& traj, const Decoder& decoder,
                            const Vocabulary& vocab, const EditCostModel& costs,
                            const LmScorer& lm, const std::vector<std::string>& prev_tokens,
                            const FusionConfig& cfg, int beam,
                            const CorrectionOptions& correction) {
  if (!cfg.valid()) {
    throw std::invalid_argument("score_fusion: invalid fusion config");
  }
  if (beam < 1) {
    throw std::invalid_argument("score_fusion: beam must be >= 1");
  }
  const std::vector<ScoredCandidate> raw_decodings = decoder.decode(traj, vocab, beam);

  // The language model term depends only on the context, so it is evaluated
  // once per word rather than once per raw decoding.
  std::vector<double> lm_scores(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    lm_scores[i] = lm.log10_prob(vocab.entries()[i].word, prev_tokens);
  }

  const double raw_coeff = 1.0 - cfg.swipe_correction_coeff - cfg.lm_coeff;
  std::vector<Merged> merged(vocab.size());
  for (std::size_t r = 0; r < raw_decodings.size(); ++r) {
    const auto& [raw_word, raw_score] = raw_decodings[r];
    const std::vector<ScoredCandidate> typo = correction_scores(raw_word, vocab, costs, correction);
    for (const ScoredCandidate& cand : typo) {
      const int vi = vocab.index_of(cand.word);
      const double blended = raw_coeff * raw_score +
                             cfg.lm_coeff * lm_scores[static_cast<std::size_t>(vi)] +
                             cfg.swipe_correction_coeff * cand.log_score;
      Merged& slot = merged[static_cast<std::size_t>(vi)];
      slot.blended = std::max(slot.blended, blended);
      if (cand.word == raw_word) {
        slot.raw_rank = std::min(slot.raw_rank, static_cast<int>(r));
      }
    }
  }

  std::vector<std::size_t> order;
  order.reserve(vocab.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i].blended > -std::numeric_limits<double>::infinity()) {
      order.push_back(i);
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (merged[a].blended != merged[b].blended) return merged[a].blended > merged[b].blended;
    // On exact ties prefer the literal decoder output (by beam rank), then
    // the more frequent word.
    if (merged[a].raw_rank != merged[b].raw_rank) return merged[a].raw_rank < merged[b].raw_rank;
    const double fa = vocab.entries()[a].frequency;
    const double fb = vocab.entries()[b].frequency;
    if (fa != fb) return fa > fb;
    return vocab.entries()[a].word < vocab.entries()[b].word;
  });
  if (order.size() > static_cast<std::size_t>(cfg.num_suggestions)) {
    order.resize(static_cast<std::size_t>(cfg.num_suggestions));
  }
  SuggestionList out;
  out.reserve(order.size());
  for (std::size_t i : order) {
    out.push_back({vocab.entries()[i].word, merged[i].blended});
  }
  return out;
}

SuggestionList naive_correction(const Trajectory& traj, const Decoder& decoder,
                                const Vocabulary& vocab, const NGramModel& lm,
                                const std::vector<std::string>& prev_tokens,
                                const FusionConfig& cfg, int beam, int fanout_k) {
  if (!cfg.valid()) {
    throw std::invalid_argument("naive_correction: invalid fusion config");
  }
  if (beam < 1 || fanout_k < 1) {
    throw std::invalid_argument("naive_correction: beam and fanout must be >= 1");
  }
  const std::vector<ScoredCandidate> raw_decodings = decoder.decode(traj, vocab, beam);

  // Stage 2: per raw decoding, the k closest vocabulary words by plain edit
  // distance.
  std::vector<std::string> pooled;
  std::unordered_map<std::string, bool> in_pool;
  for (const auto& [raw_word, raw_score] : raw_decodings) {
    (void)raw_score;
    std::vector<std::pair<int, const VocabEntry*>> dists;
    dists.reserve(vocab.size());
    for (const VocabEntry& e : vocab.entries()) {
      dists.emplace_back(levenshtein(e.word, raw_word), &e);
    }
    std::sort(dists.begin(), dists.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      if (a.second->frequency != b.second->frequency) {
        return a.second->frequency > b.second->frequency;
      }
      return a.second->word < b.second->word;
    });
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(fanout_k), dists.size());
    for (std::size_t i = 0; i < keep; ++i) {
      const std::string& w = dists[i].second->word;
      if (!in_pool[w]) {
        in_pool[w] = true;
        pooled.push_back(w);
      }
    }
  }

  // Stage 3: re-rank the pool by language model probability alone.
  SuggestionList out;
  out.reserve(pooled.size());
  for (const std::string& w : pooled) {
    out.push_back({w, lm.log10_prob(w, prev_tokens)});
  }
  std::sort(out.begin(), out.end(), [&](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    const double fa = vocab.frequency(a.word);
    const double fb = vocab.frequency(b.word);
    if (fa != fb) return fa > fb;
    return a.word < b.word;
  });
  if (out.size() > static_cast<std::size_t>(cfg.num_suggestions)) {
    out.resize(static_cast<std::size_t>(cfg.num_suggestions));
  }
  return out;
}

}  // namespace swipekit
