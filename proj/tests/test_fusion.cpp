#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "swipekit/fusion.hpp"
#include "swipekit/sim.hpp"

using namespace swipekit;

namespace {

// Decoder returning a fixed candidate list regardless of the trajectory.
class FixedDecoder : public Decoder {
 public:
  explicit FixedDecoder(std::vector<ScoredCandidate> raws) : raws_(std::move(raws)) {}
  std::vector<ScoredCandidate> decode(const Trajectory&, const Vocabulary&, int beam) const override {
    std::vector<ScoredCandidate> out = raws_;
    if (out.size() > static_cast<std::size_t>(beam)) {
      out.resize(static_cast<std::size_t>(beam));
    }
    return out;
  }

 private:
  std::vector<ScoredCandidate> raws_;
};

// Scorer backed by a fixed table, with a constant offset for the shift test.
class TableScorer : public LmScorer {
 public:
  TableScorer(std::map<std::string, double> table, double offset = 0.0)
      : table_(std::move(table)), offset_(offset) {}
  double log10_prob(const std::string& word, const std::vector<std::string>&) const override {
    return table_.at(word) + offset_;
  }

 private:
  std::map<std::string, double> table_;
  double offset_;
};

Trajectory dummy_traj() {
  Trajectory t;
  t.samples = {{0.0, {0.5, 0.5}}, {0.1, {1.5, 0.5}}};
  return t;
}

const EditCostModel& costs() {
  static const EditCostModel model = EditCostModel::from_layout(default_qwerty());
  return model;
}

// Straight-line transliteration of the blended-scoring pseudocode, used as
// the micro-oracle: independent dictionary handling, max-merge and
// truncation.
std::vector<ScoredCandidate> oracle_fusion(const std::vector<ScoredCandidate>& raw_decodings,
                                           const Vocabulary& vocab,
                                           const std::map<std::string, double>& lm_table,
                                           const EditCostModel& cost_model, double sc_coeff,
                                           double lm_coeff, int num_suggestions) {
  std::map<std::string, double> suggestions;
  for (const auto& [raw_word, raw_score] : raw_decodings) {
    for (const VocabEntry& e : vocab.entries()) {
      const double typo = spatial_edit_logprob(e.word, raw_word, cost_model).log_p_ed;
      double blended = (1.0 - sc_coeff - lm_coeff) * raw_score +
                       lm_coeff * lm_table.at(e.word) + sc_coeff * typo;
      if (suggestions.count(e.word)) {
        blended = std::max(suggestions[e.word], blended);
      }
      suggestions[e.word] = blended;
    }
  }
  std::vector<ScoredCandidate> sorted;
  for (const auto& [w, s] : suggestions) {
    sorted.push_back({w, s});
  }
  std::sort(sorted.begin(), sorted.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    return a.word < b.word;
  });
  if (num_suggestions < static_cast<int>(sorted.size())) {
    sorted.resize(static_cast<std::size_t>(num_suggestions));
  }
  return sorted;
}

}  // namespace

TEST_CASE("fusion config validation") {
  FusionConfig cfg;
  CHECK(cfg.valid());
  cfg.swipe_correction_coeff = 0.7;
  cfg.lm_coeff = 0.5;
  CHECK_FALSE(cfg.valid());  // sum > 1
  cfg = FusionConfig{};
  cfg.num_suggestions = 0;
  CHECK_FALSE(cfg.valid());
  CHECK_THROWS_AS(score_fusion(dummy_traj(), FixedDecoder({{"a", 0.0}}),
                               Vocabulary({{"a", 1.0}}), costs(),
                               TableScorer({{"a", -1.0}}), {}, cfg, 4),
                  std::invalid_argument);
}

TEST_CASE("zero coefficients reduce to the decoder ranking over the vocabulary") {
  const Vocabulary vocab({{"the", 100.0}, {"then", 60.0}, {"hat", 10.0}});
  // Raw decodings include a non-vocabulary string.
  const FixedDecoder decoder({{"thw", -0.1}, {"the", -0.9}, {"hat", -1.6}});
  const TableScorer lm({{"the", -0.5}, {"then", -2.0}, {"hat", -1.0}});
  FusionConfig cfg;
  cfg.swipe_correction_coeff = 0.0;
  cfg.lm_coeff = 0.0;
  cfg.num_suggestions = 3;
  CorrectionOptions exact;
  exact.band = std::nullopt;
  const SuggestionList out =
      score_fusion(dummy_traj(), decoder, vocab, costs(), lm, {}, cfg, 3, exact);
  REQUIRE(out.size() == 3);
  // Vocabulary-intersected decoder ranking: the (-0.9), hat (-1.6); every
  // other word ties at the best raw score but literal decodings come first.
  CHECK(out[0].word == "the");
  CHECK(out[1].word == "hat");
  CHECK(out[0].log_score == doctest::Approx(-0.1));  // max-merged via raw "thw"
}

TEST_CASE("beam one with an exact vocabulary decoding") {
  const Vocabulary vocab({{"the", 100.0}, {"then", 60.0}});
  const FixedDecoder decoder({{"the", 0.0}});
  const TableScorer lm({{"the", -0.5}, {"then", -2.0}});
  FusionConfig cfg;
  cfg.swipe_correction_coeff = 0.0;
  cfg.lm_coeff = 0.0;
  cfg.num_suggestions = 1;
  const SuggestionList out = score_fusion(dummy_traj(), decoder, vocab, costs(), lm, {}, cfg, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0].word == "the");
  CHECK(out[0].log_score == doctest::Approx(0.0));
}

TEST_CASE("blended scoring matches the straight-line oracle") {
  const Vocabulary vocab({{"was", 50.0}, {"wasp", 20.0}, {"web", 30.0}, {"qas", 5.0}, {"sap", 8.0}});
  const std::vector<ScoredCandidate> raws = {{"wqs", -0.2}, {"web", -0.7}};
  const std::map<std::string, double> lm_table = {
      {"was", -0.8}, {"wasp", -2.1}, {"web", -1.2}, {"qas", -3.0}, {"sap", -2.5}};
  const FixedDecoder decoder(raws);
  const TableScorer lm(lm_table);
  FusionConfig cfg;
  cfg.swipe_correction_coeff = 0.3;
  cfg.lm_coeff = 0.25;
  cfg.num_suggestions = 4;
  CorrectionOptions exact;
  exact.band = std::nullopt;
  const SuggestionList out =
      score_fusion(dummy_traj(), decoder, vocab, costs(), lm, {}, cfg, 2, exact);
  const auto expected = oracle_fusion(raws, vocab, lm_table, costs(), 0.3, 0.25, 4);
  REQUIRE(out.size() == expected.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].word == expected[i].word);
    CHECK(out[i].log_score == doctest::Approx(expected[i].log_score).epsilon(1e-12));
  }
}

TEST_CASE("suggestions are unique and max-merged") {
  const Vocabulary vocab({{"aa", 10.0}, {"ab", 10.0}});
  // Both raws propose both words; the final score must be the max blend.
  const std::vector<ScoredCandidate> raws = {{"aa", -0.3}, {"ab", -1.0}};
  const TableScorer lm({{"aa", -1.0}, {"ab", -1.0}});
  FusionConfig cfg;
  cfg.swipe_correction_coeff = 0.4;
  cfg.lm_coeff = 0.0;
  cfg.num_suggestions = 5;
  CorrectionOptions exact;
  exact.band = std::nullopt;
  const SuggestionList out =
      score_fusion(dummy_traj(), FixedDecoder(raws), vocab, costs(), lm, {}, cfg, 2, exact);
  REQUIRE(out.size() == 2);
  CHECK(out[0].word != out[1].word);
  // "ab" best route: from raw "ab" directly, 0.6*(-1.0) + 0; via raw "aa" it
  // would cost a substitution. Verify the max was kept.
  const double via_self = 0.6 * -1.0;
  for (const auto& cand : out) {
    if (cand.word == "ab") {
      CHECK(cand.log_score == doctest::Approx(via_self).epsilon(1e-12));
    }
  }
}

TEST_CASE("truncation keeps a prefix of the longer list") {
  const Vocabulary vocab({{"aa", 10.0}, {"ab", 9.0}, {"ba", 8.0}, {"bb", 7.0}});
  const FixedDecoder decoder({{"aa", -0.2}, {"bb", -0.9}});
  const TableScorer lm({{"aa", -1.0}, {"ab", -1.5}, {"ba", -2.0}, {"bb", -0.5}});
  FusionConfig small, large;
  small.swipe_correction_coeff = large.swipe_correction_coeff = 0.3;
  small.lm_coeff = large.lm_coeff = 0.3;
  small.num_suggestions = 2;
  large.num_suggestions = 4;
  const SuggestionList s = score_fusion(dummy_traj(), decoder, vocab, costs(), lm, {}, small, 2);
  const SuggestionList l = score_fusion(dummy_traj(), decoder, vocab, costs(), lm, {}, large, 2);
  REQUIRE(s.size() == 2);
  REQUIRE(l.size() == 4);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].word == l[i].word);
  }
}

TEST_CASE("adding a constant to the lm scores shifts blends and keeps the order") {
  const Vocabulary vocab({{"aa", 10.0}, {"ab", 9.0}, {"ba", 8.0}});
  const FixedDecoder decoder({{"aa", -0.2}, {"ab", -0.8}});
  const std::map<std::string, double> table = {{"aa", -1.0}, {"ab", -1.5}, {"ba", -2.0}};
  FusionConfig cfg;
  cfg.swipe_correction_coeff = 0.2;
  cfg.lm_coeff = 0.3;
  cfg.num_suggestions = 3;
  const double shift = 1.7;
  const SuggestionList base =
      score_fusion(dummy_traj(), decoder, vocab, costs(), TableScorer(table), {}, cfg, 2);
  const SuggestionList shifted =
      score_fusion(dummy_traj(), decoder, vocab, costs(), TableScorer(table, shift), {}, cfg, 2);
  REQUIRE(base.size() == shifted.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(shifted[i].word == base[i].word);
    CHECK(shifted[i].log_score ==
          doctest::Approx(base[i].log_score + cfg.lm_coeff * shift).epsilon(1e-9));
  }
}

TEST_CASE("naive correction pipeline") {
  const Vocabulary vocab({{"the", 100.0}, {"thaw", 10.0}, {"two", 50.0}, {"she", 40.0}});
  const std::vector<std::vector<std::string>> corpus = {
      {"the", "two"}, {"the", "she"}, {"the", "the"}};
  const NGramModel lm = NGramModel::train(corpus, 2, 0.75, vocab);
  FusionConfig cfg;
  cfg.num_suggestions = 4;

  SUBCASE("distance-zero raw decodings survive correction") {
    const FixedDecoder decoder({{"the", -0.1}});
    const SuggestionList out = naive_correction(dummy_traj(), decoder, vocab, lm, {}, cfg, 1, 2);
    REQUIRE(!out.empty());
    bool found = false;
    for (const auto& c : out) {
      found = found || c.word == "the";
    }
    CHECK(found);
  }

  SUBCASE("equal edit distance re-ranks by the language model") {
    // raw "thw": distance 1 to both "the" and "two" ("thw" -> sub/del).
    const FixedDecoder decoder({{"thw", -0.1}});
    const SuggestionList out = naive_correction(dummy_traj(), decoder, vocab, lm, {}, cfg, 1, 4);
    REQUIRE(out.size() >= 2);
    // P(the) > P(two) in the corpus.
    int idx_the = -1, idx_two = -1;
    for (int i = 0; i < static_cast<int>(out.size()); ++i) {
      if (out[static_cast<std::size_t>(i)].word == "the") idx_the = i;
      if (out[static_cast<std::size_t>(i)].word == "two") idx_two = i;
    }
    REQUIRE(idx_the >= 0);
    REQUIRE(idx_two >= 0);
    CHECK(idx_the < idx_two);
  }

  SUBCASE("invalid arguments are rejected") {
    const FixedDecoder decoder({{"the", -0.1}});
    CHECK_THROWS_AS(naive_correction(dummy_traj(), decoder, vocab, lm, {}, cfg, 0, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(naive_correction(dummy_traj(), decoder, vocab, lm, {}, cfg, 2, 0),
                    std::invalid_argument);
  }
}
