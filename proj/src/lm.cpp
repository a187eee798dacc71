#include "swipekit/lm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace swipekit {

namespace {

const std::string kCtxSep = "\x1f";

std::string join_context(const std::vector<std::string>& tokens, std::size_t count) {
  // Key for the last `count` tokens.
  std::string key;
  const std::size_t start = tokens.size() - count;
  for (std::size_t i = start; i < tokens.size(); ++i) {
    if (i > start) key += kCtxSep;
    key += tokens[i];
  }
  return key;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char raw : text) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if ((c >= 'a' && c <= 'z') || c == '\'') {
      cur.push_back(c);
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) {
    tokens.push_back(cur);
  }
  return tokens;
}

std::string NGramModel::map_token(const std::string& token) const {
  if (token == kBosToken || vocab_index_.count(token)) {
    return token;
  }
  return kUnkToken;
}

NGramModel NGramModel::train(const std::vector<std::vector<std::string>>& corpus, int order,
                             double discount, const Vocabulary& vocab) {
  if (corpus.empty()) {
    throw std::invalid_argument("ngram train: empty corpus");
  }
  if (order < 2 || order > 3) {
    throw std::invalid_argument("ngram train: order must be 2 or 3");
  }
  if (!(discount > 0.0) || !(discount < 1.0)) {
    throw std::invalid_argument("ngram train: discount must lie in (0, 1)");
  }
  NGramModel m;
  m.order_ = order;
  m.discount_ = discount;
  m.vocab_.reserve(vocab.size() + 1);
  for (const VocabEntry& e : vocab.entries()) {
    m.vocab_.push_back(e.word);
  }
  m.vocab_.push_back(kUnkToken);
  for (std::size_t i = 0; i < m.vocab_.size(); ++i) {
    m.vocab_index_.emplace(m.vocab_[i], static_cast<int>(i));
  }
  m.levels_.resize(static_cast<std::size_t>(order));

  for (const auto& sentence : corpus) {
    std::vector<std::string> padded(static_cast<std::size_t>(order - 1), kBosToken);
    for (const std::string& tok : sentence) {
      padded.push_back(m.map_token(tok));
    }
    for (std::size_t pos = static_cast<std::size_t>(order - 1); pos < padded.size(); ++pos) {
      const std::string& word = padded[pos];
      for (int k = 0; k < order; ++k) {
        std::string ctx;
        for (int b = k; b >= 1; --b) {
          if (!ctx.empty()) ctx += kCtxSep;
          ctx += padded[pos - static_cast<std::size_t>(b)];
        }
        ContextStats& stats = m.levels_[static_cast<std::size_t>(k)][ctx];
        double& c = stats.counts[word];
        if (c == 0.0) stats.distinct += 1.0;
        c += 1.0;
        stats.total += 1.0;
      }
    }
  }
  return m;
}

double NGramModel::prob(const std::string& word, const std::vector<std::string>& context) const {
  if (levels_.empty()) {
    throw std::logic_error("ngram prob: model not trained");
  }
  const std::string w = map_token(word);
  // Context, mapped and clipped to the highest usable order; short contexts
  // are left-padded with the sentence-start token, matching training.
  std::vector<std::string> ctx;
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  for (std::size_t i = context.size(); i < max_ctx; ++i) {
    ctx.push_back(kBosToken);
  }
  const std::size_t start = context.size() > max_ctx ? context.size() - max_ctx : 0;
  for (std::size_t i = start; i < context.size(); ++i) {
    ctx.push_back(map_token(context[i]));
  }

  double p = 1.0 / static_cast<double>(vocab_.size());
  for (std::size_t k = 0; k <= ctx.size(); ++k) {
    if (k >= levels_.size()) break;
    const std::string key = join_context(ctx, k);
    const auto it = levels_[k].find(key);
    if (it == levels_[k].end() || it->second.total <= 0.0) {
      continue;  // unseen context: keep the lower-order estimate
    }
    const ContextStats& stats = it->second;
    double c = 0.0;
    const auto cit = stats.counts.find(w);
    if (cit != stats.counts.end()) {
      c = cit->second;
    }
    const double discounted = std::max(c - discount_, 0.0) / stats.total;
    const double backoff_mass = discount_ * stats.distinct / stats.total;
    p = discounted + backoff_mass * p;
  }
  return p;
}

double NGramModel::log10_prob(const std::string& word,
                              const std::vector<std::string>& context) const {
  return std::log10(prob(word, context));
}

std::string NGramModel::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["order"] = order_;
  j["discount"] = discount_;
  j["vocab"] = vocab_;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : levels_) {
    nlohmann::json lj = nlohmann::json::object();
    for (const auto& [ctx, stats] : level) {
      nlohmann::json counts = nlohmann::json::object();
      for (const auto& [word, c] : stats.counts) {
        counts[word] = c;
      }
      lj[ctx] = std::move(counts);
    }
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  return j.dump();
}

NGramModel NGramModel::from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1) {
    throw std::invalid_argument("ngram model: unsupported format version");
  }
  NGramModel m;
  m.order_ = j.at("order").get<int>();
  m.discount_ = j.at("discount").get<double>();
  m.vocab_ = j.at("vocab").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < m.vocab_.size(); ++i) {
    m.vocab_index_.emplace(m.vocab_[i], static_cast<int>(i));
  }
  for (const auto& lj : j.at("levels")) {
    std::unordered_map<std::string, ContextStats> level;
    for (auto it = lj.begin(); it != lj.end(); ++it) {
      ContextStats stats;
      for (auto cit = it.value().begin(); cit != it.value().end(); ++cit) {
        const double c = cit.value().get<double>();
        stats.counts[cit.key()] = c;
        stats.total += c;
        stats.distinct += 1.0;
      }
      level.emplace(it.key(), std::move(stats));
    }
    m.levels_.push_back(std::move(level));
  }
  return m;
}

ContextProfile ContextProfile::from_record(const PhraseRecord& record, const Vocabulary& vocab,
                                           double gamma) {
  if (gamma < 0.0 || gamma >= 1.0) {
    throw std::invalid_argument("context profile: gamma must lie in [0, 1)");
  }
  ContextProfile profile;
  profile.mix_gamma = gamma;
  std::unordered_map<std::string, double> counts;
  const auto pool = [&](const std::string& text) {
    for (const std::string& tok : tokenize(text)) {
      if (vocab.contains(tok)) {
        counts[tok] += 1.0;
        profile.total += 1.0;
      }
    }
  };
  for (const std::string& utterance : record.history) {
    pool(utterance);
  }
  for (const std::string& tag : record.tags) {
    const auto pos = tag.find(':');
    pool(pos == std::string::npos ? tag : tag.substr(pos + 1));
  }
  if (profile.total > 0.0) {
    for (const auto& [word, c] : counts) {
      profile.weights.emplace(word, c / profile.total);
    }
  }
  return profile;
}

double ContextProfile::context_prob(const std::string& word, std::size_t vocab_size) const {
  double count = 0.0;
  const auto it = weights.find(word);
  if (it != weights.end()) {
    count = it->second * total;
  }
  return (count + 1.0) / (total + static_cast<double>(vocab_size));
}

double contextual_score(const std::string& word, const std::vector<std::string>& prev_tokens,
                        const NGramModel& lm, const ContextProfile& profile) {
  if (!lm.in_vocab(word)) {
    throw std::invalid_argument("contextual_score: word '" + word +
                                "' is outside the model vocabulary");
  }
  const double gamma = profile.empty() ? 0.0 : profile.mix_gamma;
  const double p_ngram = lm.prob(word, prev_tokens);
  if (gamma == 0.0) {
    return std::log10(p_ngram);
  }
  const double p_ctx = profile.context_prob(word, lm.prediction_vocab().size());
  return std::log10((1.0 - gamma) * p_ngram + gamma * p_ctx);
}

double perplexity(const std::vector<PhraseRecord>& records, const NGramModel& lm,
                  const ScorerFactory& factory) {
  if (records.empty()) {
    throw std::invalid_argument("perplexity: empty test set");
  }
  double log_sum = 0.0;
  std::size_t events = 0;
  for (const PhraseRecord& record : records) {
    const auto scorer = factory(record);
    std::vector<std::string> prev;
    for (const std::string& raw_tok : tokenize(record.stimulus)) {
      // Out-of-vocabulary stimulus tokens are scored as the unknown token.
      const std::string tok = lm.in_vocab(raw_tok) ? raw_tok : kUnkToken;
      log_sum += scorer(tok, prev);
      prev.push_back(tok);
      ++events;
    }
  }
  if (events == 0) {
    throw std::invalid_argument("perplexity: no word events in test set");
  }
  return std::pow(10.0, -log_sum / static_cast<double>(events));
}

}  // namespace swipekit
