#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "swipekit/io.hpp"
#include "swipekit/lm.hpp"

using namespace swipekit;

namespace {

Vocabulary abc_vocab() {
  return Vocabulary({{"a", 30.0}, {"b", 20.0}, {"c", 10.0}});
}

std::vector<std::vector<std::string>> abc_corpus() {
  return {{"a", "b"}, {"a", "b"}, {"a", "c"}};
}

}  // namespace

TEST_CASE("tokenize lowercases and splits") {
  const auto toks = tokenize("Hello, World! don't  stop");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0] == "hello");
  CHECK(toks[1] == "world");
  CHECK(toks[2] == "don't");
  CHECK(toks[3] == "stop");
  CHECK(tokenize("123 !!").empty());
}

TEST_CASE("ngram training and counts") {
  const Vocabulary vocab = abc_vocab();

  SUBCASE("count dominance") {
    const NGramModel m = NGramModel::train(abc_corpus(), 2, 0.75, vocab);
    CHECK(m.prob("b", {"a"}) > m.prob("c", {"a"}));
  }

  SUBCASE("empty corpus and bad parameters are rejected") {
    CHECK_THROWS_AS(NGramModel::train({}, 2, 0.75, vocab), std::invalid_argument);
    CHECK_THROWS_AS(NGramModel::train(abc_corpus(), 5, 0.75, vocab), std::invalid_argument);
    CHECK_THROWS_AS(NGramModel::train(abc_corpus(), 2, 1.5, vocab), std::invalid_argument);
  }

  SUBCASE("unseen context backs off to the unigram distribution") {
    const NGramModel m = NGramModel::train(abc_corpus(), 2, 0.75, vocab);
    // "qqq" maps to <unk>, which never appears as a bigram context.
    // Unigram with absolute discounting over events {a x3, b x2, c x1}:
    //   p(w) = max(c - 0.75, 0)/6 + 0.75 * 3/6 * 1/4
    const double unigram_a = (3.0 - 0.75) / 6.0 + 0.75 * 3.0 / 6.0 * 0.25;
    CHECK(m.prob("a", {"qqq"}) == doctest::Approx(unigram_a).epsilon(1e-12));
  }

  SUBCASE("training is deterministic") {
    const NGramModel m1 = NGramModel::train(abc_corpus(), 3, 0.75, vocab);
    const NGramModel m2 = NGramModel::train(abc_corpus(), 3, 0.75, vocab);
    CHECK(m1.prob("b", {"a"}) == m2.prob("b", {"a"}));
    CHECK(m1.prob("c", {}) == m2.prob("c", {}));
  }
}

TEST_CASE("every conditional distribution sums to one") {
  const Vocabulary vocab = abc_vocab();
  for (int order : {2, 3}) {
    const NGramModel m = NGramModel::train(abc_corpus(), order, 0.75, vocab);
    const std::vector<std::vector<std::string>> contexts = {
        {}, {"a"}, {"b"}, {"qqq"}, {"a", "b"}, {"c", "a"}};
    for (const auto& ctx : contexts) {
      double sum = 0.0;
      for (const std::string& w : m.prediction_vocab()) {
        const double p = m.prob(w, ctx);
        CHECK(p > 0.0);
        sum += p;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("model persistence round trip") {
  const Vocabulary vocab = abc_vocab();
  const NGramModel m = NGramModel::train(abc_corpus(), 3, 0.75, vocab);
  const NGramModel loaded = NGramModel::from_json(m.to_json());
  const std::vector<std::vector<std::string>> contexts = {{}, {"a"}, {"a", "b"}, {"zz"}};
  for (const auto& ctx : contexts) {
    for (const std::string& w : m.prediction_vocab()) {
      CHECK(loaded.prob(w, ctx) == doctest::Approx(m.prob(w, ctx)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(NGramModel::from_json("{\"format_version\": 99}"), std::invalid_argument);
}

TEST_CASE("contextual interpolation") {
  const Vocabulary vocab = abc_vocab();
  const NGramModel m = NGramModel::train(abc_corpus(), 2, 0.75, vocab);

  SUBCASE("gamma zero equals the plain n-gram exactly") {
    PhraseRecord record;
    record.stimulus = "a b";
    record.history = {"c c c"};
    const ContextProfile profile = ContextProfile::from_record(record, vocab, 0.0);
    for (const std::string& w : {"a", "b", "c"}) {
      CHECK(contextual_score(w, {"a"}, m, profile) ==
            doctest::Approx(m.log10_prob(w, {"a"})).epsilon(1e-12));
    }
  }

  SUBCASE("empty context behaves as gamma zero") {
    PhraseRecord record;
    record.stimulus = "a";
    const ContextProfile profile = ContextProfile::from_record(record, vocab, 0.4);
    CHECK(profile.empty());
    CHECK(contextual_score("b", {}, m, profile) ==
          doctest::Approx(m.log10_prob("b", {})).epsilon(1e-12));
  }

  SUBCASE("mentioned words score higher") {
    PhraseRecord with, without;
    with.stimulus = without.stimulus = "a";
    with.history = {"c c c c"};
    without.history = {"a a b b"};
    const ContextProfile p_with = ContextProfile::from_record(with, vocab, 0.3);
    const ContextProfile p_without = ContextProfile::from_record(without, vocab, 0.3);
    CHECK(contextual_score("c", {"a"}, m, p_with) > contextual_score("c", {"a"}, m, p_without));
  }

  SUBCASE("interpolated distribution sums to one") {
    PhraseRecord record;
    record.stimulus = "a";
    record.history = {"b c b", "a c"};
    record.tags = {"persona:c", "topic:b"};
    const ContextProfile profile = ContextProfile::from_record(record, vocab, 0.35);
    double sum = 0.0;
    for (const std::string& w : m.prediction_vocab()) {
      sum += std::pow(10.0, contextual_score(w, {"a"}, m, profile));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("out-of-vocabulary words are rejected") {
    PhraseRecord record;
    record.stimulus = "a";
    const ContextProfile profile = ContextProfile::from_record(record, vocab, 0.2);
    CHECK_THROWS_AS(contextual_score("zzz", {}, m, profile), std::invalid_argument);
  }

  SUBCASE("adding context mentioning a word never lowers its score") {
    PhraseRecord base;
    base.stimulus = "a";
    base.history = {"b c"};
    PhraseRecord more = base;
    more.history.push_back("c c");
    const ContextProfile p0 = ContextProfile::from_record(base, vocab, 0.3);
    const ContextProfile p1 = ContextProfile::from_record(more, vocab, 0.3);
    CHECK(contextual_score("c", {"a"}, m, p1) >= contextual_score("c", {"a"}, m, p0) - 1e-12);
  }
}

TEST_CASE("held-out perplexity on the shipped phrase set is finite and stable") {
  const Vocabulary vocab = load_vocabulary(SWIPEKIT_DATA_DIR "/vocab_core.txt");
  const std::vector<PhraseRecord> all = load_phrases(SWIPEKIT_DATA_DIR "/phrases_demo.jsonl");
  REQUIRE(all.size() >= 20);
  const std::vector<PhraseRecord> train(all.begin(), all.begin() + 30);
  const std::vector<PhraseRecord> held_out(all.begin() + 30, all.end());
  std::vector<std::vector<std::string>> corpus;
  for (const PhraseRecord& r : train) {
    corpus.push_back(tokenize(r.stimulus));
  }
  const NGramModel m1 = NGramModel::train(corpus, 3, 0.75, vocab);
  const NGramModel m2 = NGramModel::train(corpus, 3, 0.75, vocab);
  const auto plain = [](const NGramModel& m) {
    return [&m](const PhraseRecord&) {
      return [&m](const std::string& w, const std::vector<std::string>& prev) {
        return m.log10_prob(w, prev);
      };
    };
  };
  const double pp1 = perplexity(held_out, m1, plain(m1));
  const double pp2 = perplexity(held_out, m2, plain(m2));
  CHECK(std::isfinite(pp1));
  CHECK(pp1 > 1.0);
  CHECK(pp1 == pp2);
}

TEST_CASE("perplexity") {
  const Vocabulary vocab = abc_vocab();
  const NGramModel m = NGramModel::train(abc_corpus(), 2, 0.75, vocab);
  std::vector<PhraseRecord> records = {{"a b", {}, {}}, {"a c", {}, {}}};

  SUBCASE("uniform model scores the vocabulary size") {
    const std::size_t v = m.prediction_vocab().size();
    const auto factory = [&](const PhraseRecord&) {
      return [v](const std::string&, const std::vector<std::string>&) {
        return std::log10(1.0 / static_cast<double>(v));
      };
    };
    CHECK(perplexity(records, m, factory) == doctest::Approx(static_cast<double>(v)));
  }

  SUBCASE("a certain model has perplexity one") {
    const auto factory = [](const PhraseRecord&) {
      return [](const std::string&, const std::vector<std::string>&) { return 0.0; };
    };
    CHECK(perplexity(records, m, factory) == doctest::Approx(1.0));
  }

  SUBCASE("empty test set is rejected") {
    const auto factory = [](const PhraseRecord&) {
      return [](const std::string&, const std::vector<std::string>&) { return 0.0; };
    };
    CHECK_THROWS_AS(perplexity({}, m, factory), std::invalid_argument);
  }

  SUBCASE("context-reusing records favour the contextual scorer") {
    // Stimuli repeat words from their own history; the n-gram cannot see
    // that, the pooled profile can.
    std::vector<PhraseRecord> test = {
        {"c c b", {"c c c b"}, {}},
        {"b b c", {"b b b c"}, {}},
        {"c b c", {"c b c c"}, {}},
    };
    const auto plain = [&](const PhraseRecord&) {
      return [&](const std::string& w, const std::vector<std::string>& prev) {
        return m.log10_prob(w, prev);
      };
    };
    const auto contextual = [&](const PhraseRecord& r) {
      const ContextProfile profile = ContextProfile::from_record(r, vocab, 0.4);
      return [&, profile](const std::string& w, const std::vector<std::string>& prev) {
        return contextual_score(w, prev, m, profile);
      };
    };
    const double pp_plain = perplexity(test, m, plain);
    const double pp_ctx = perplexity(test, m, contextual);
    CHECK(pp_ctx < pp_plain);
    CHECK(pp_plain > 1.0);
  }
}
