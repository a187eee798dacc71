#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "swipekit/decoder.hpp"

namespace swipekit {

// One benchmark stimulus with its conversational context.
struct PhraseRecord {
  std::string stimulus;
  std::vector<std::string> history;  // prior conversation utterances
  std::vector<std::string> tags;     // "key:value" context strings
};

// Lowercases and splits on anything outside a-z and apostrophe.
std::vector<std::string> tokenize(const std::string& text);

inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kBosToken = "<s>";

// Backoff n-gram model with absolute discounting, closed over a fixed
// vocabulary plus an unknown token. Every conditional distribution sums to
// one and assigns positive probability to every vocabulary word.
class NGramModel {
 public:
  NGramModel() = default;

  static NGramModel train(const std::vector<std::vector<std::string>>& corpus, int order,
                          double discount, const Vocabulary& vocab);

  // P(word | context). Unknown words and context tokens are mapped to the
  // unknown token.
  double prob(const std::string& word, const std::vector<std::string>& context) const;
  double log10_prob(const std::string& word, const std::vector<std::string>& context) const;

  int order() const { return order_; }
  double discount() const { return discount_; }
  const std::vector<std::string>& prediction_vocab() const { return vocab_; }
  bool in_vocab(const std::string& word) const { return vocab_index_.count(word) > 0; }

  std::string to_json() const;
  static NGramModel from_json(const std::string& json_text);

 private:
  struct ContextStats {
    std::unordered_map<std::string, double> counts;
    double total = 0.0;
    double distinct = 0.0;
  };

  std::string map_token(const std::string& token) const;

  int order_ = 3;
  double discount_ = 0.75;
  std::vector<std::string> vocab_;  // prediction events, includes <unk>
  std::unordered_map<std::string, int> vocab_index_;
  // levels_[k]: contexts of length k (k = 0 is the unigram level with the
  // single empty context).
  std::vector<std::unordered_map<std::string, ContextStats>> levels_;
};

// Pooled context weights derived from the record's history utterances and
// tag values: a uniform average over in-vocabulary tokens, add-one smoothed
// over the prediction vocabulary at query time.
struct ContextProfile {
  std::unordered_map<std::string, double> weights;  // normalized, sum to 1 when non-empty
  double total = 0.0;                               // pooled token count
  double mix_gamma = 0.2;

  static ContextProfile from_record(const PhraseRecord& record, const Vocabulary& vocab,
                                    double gamma);

  bool empty() const { return total <= 0.0; }
  // Add-one smoothed pooled probability over a prediction vocabulary of the
  // given size.
  double context_prob(const std::string& word, std::size_t vocab_size) const;
};

// log10[(1-gamma) * P_ngram(word | prev) + gamma * P_context(word)].
// With an empty profile gamma is treated as zero. Throws on words outside
// the model's prediction vocabulary.
double contextual_score(const std::string& word, const std::vector<std::string>& prev_tokens,
                        const NGramModel& lm, const ContextProfile& profile);

// Scoring seam shared by fusion and evaluation: base-10 log probability of a
// word given the previously committed tokens.
class LmScorer {
 public:
  virtual ~LmScorer() = default;
  virtual double log10_prob(const std::string& word,
                            const std::vector<std::string>& prev_tokens) const = 0;
};

class NGramScorer : public LmScorer {
 public:
  explicit NGramScorer(const NGramModel& model) : model_(&model) {}
  double log10_prob(const std::string& word,
                    const std::vector<std::string>& prev) const override {
    return model_->log10_prob(word, prev);
  }

 private:
  const NGramModel* model_;
};

class ContextualScorer : public LmScorer {
 public:
  ContextualScorer(const NGramModel& model, ContextProfile profile)
      : model_(&model), profile_(std::move(profile)) {}
  double log10_prob(const std::string& word,
                    const std::vector<std::string>& prev) const override {
    return contextual_score(word, prev, *model_, profile_);
  }

 private:
  const NGramModel* model_;
  ContextProfile profile_;
};

// 10^(-mean log10 P) over all word events of the records. The factory binds
// a scorer to each record so contextual and plain models share one driver.
using ScorerFactory = std::function<std::function<double(
    const std::string&, const std::vector<std::string>&)>(const PhraseRecord&)>;

double perplexity(const std::vector<PhraseRecord>& records, const NGramModel& lm,
                  const ScorerFactory& factory);

}  // namespace swipekit
