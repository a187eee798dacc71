#include "swipekit/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "swipekit/metrics.hpp"
#include "swipekit/rng.hpp"
#include "swipekit/trajectory.hpp"

namespace swipekit {

NoiseProfile noise_profile(const std::string& name) {
  // Calibrated so the raw decoder alone lands in the 20-35% character-error
  // band at "medium" on the shipped vocabulary.
  if (name == "low") {
    return {"low", 0.02, 0.01, 0.3};
  }
  if (name == "medium") {
    return {"medium", 0.08, 0.05, 0.8};
  }
  if (name == "high") {
    return {"high", 0.12, 0.07, 1.0};
  }
  throw std::invalid_argument("unknown noise profile '" + name +
                              "' (expected low, medium or high)");
}

void apply_noise_profile(SimConfig& sim, const std::string& name) {
  const NoiseProfile p = noise_profile(name);
  sim.noise_std = p.noise_std;
  sim.drift_rate = p.drift_rate;
  sim.pinch_impulse = p.pinch_impulse;
}

NGramModel train_lm_from_phrases(const std::vector<PhraseRecord>& phrases,
                                 const Vocabulary& vocab, int order, double discount) {
  std::vector<std::vector<std::string>> corpus;
  corpus.reserve(phrases.size() * 2);
  for (const PhraseRecord& r : phrases) {
    corpus.push_back(tokenize(r.stimulus));
    for (const std::string& utterance : r.history) {
      corpus.push_back(tokenize(utterance));
    }
  }
  return NGramModel::train(corpus, order, discount, vocab);
}

namespace {

struct PhraseTrajectories {
  std::vector<std::string> words;
  // Two independently drawn, already-smoothed trajectories per word: the
  // first attempt and the retry.
  std::vector<std::array<Trajectory, 2>> attempts;
  std::vector<std::array<double, 2>> durations;
};

double trajectory_duration(const Trajectory& t) {
  return t.empty() ? 0.0 : t.samples.back().t - t.samples.front().t;
}

// Synthesizes and smooths both attempts for every word of the phrase. The
// draws depend only on (seed, phrase index), so every condition and ablation
// stage sees identical trajectories.
PhraseTrajectories prepare_phrase(const BenchSetup& setup, const PhraseRecord& record,
                                  std::size_t phrase_index) {
  PhraseTrajectories out;
  out.words = tokenize(record.stimulus);
  Rng stream = Rng(setup.seed).split(phrase_index);
  FilterParams fp = setup.filter;
  fp.sigma = setup.sim.noise_std;
  for (const std::string& word : out.words) {
    std::array<Trajectory, 2> pair;
    std::array<double, 2> durations{};
    for (int attempt = 0; attempt < 2; ++attempt) {
      SimConfig cfg = setup.sim;
      cfg.seed = stream.next_u64();
      Trajectory raw = synthesize(word, setup.layout, cfg);
      durations[static_cast<std::size_t>(attempt)] = trajectory_duration(raw);
      // Offline smoothing: the whole trajectory is the estimation window.
      fp.delta = estimate_delta(raw, raw.size());
      const double alpha = optimize_alpha(fp);
      pair[static_cast<std::size_t>(attempt)] = smooth(raw, alpha);
    }
    out.attempts.push_back(std::move(pair));
    out.durations.push_back(durations);
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string make_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream ss;
  ss << "condition,block,phrase_id,wpm,ucer,ccer,n_corrections\n";
  for (const ReportRow& r : rows) {
    ss << r.condition << ',' << r.block << ',' << r.phrase_id << ',' << fmt(r.wpm) << ','
       << fmt(r.ucer) << ',' << fmt(r.ccer) << ',' << r.corrections << "\n";
  }
  return ss.str();
}

std::string make_summary(const std::vector<ReportRow>& rows) {
  std::map<std::string, std::vector<const ReportRow*>> by_condition;
  for (const ReportRow& r : rows) {
    by_condition[r.condition].push_back(&r);
  }
  const auto mean_sd = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
    return std::pair<double, double>(mean, std::sqrt(var));
  };
  std::ostringstream ss;
  for (const auto& [condition, list] : by_condition) {
    std::vector<double> wpms, ucers, ccers;
    for (const ReportRow* r : list) {
      wpms.push_back(r->wpm);
      ucers.push_back(r->ucer);
      ccers.push_back(r->ccer);
    }
    const auto [mw, sw] = mean_sd(wpms);
    const auto [mu, su] = mean_sd(ucers);
    const auto [mc, sc] = mean_sd(ccers);
    ss << "condition " << condition << ": n=" << list.size() << " wpm=" << fmt(mw) << " (sd "
       << fmt(sw) << ") ucer=" << fmt(mu) << " (sd " << fmt(su) << ") ccer=" << fmt(mc)
       << " (sd " << fmt(sc) << ")\n";
  }
  return ss.str();
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.condition != b.condition) return a.condition < b.condition;
    return a.phrase_id < b.phrase_id;
  });
}

}  // namespace

BenchReport run_benchmark(const BenchSetup& setup, const std::vector<std::string>& conditions) {
  if (setup.phrases.empty()) {
    throw std::invalid_argument("run_benchmark: empty phrase set");
  }
  if (conditions.empty()) {
    throw std::invalid_argument("run_benchmark: no conditions selected");
  }
  for (const std::string& c : conditions) {
    if (c != "fusion" && c != "naive") {
      throw std::invalid_argument("run_benchmark: unknown condition '" + c + "'");
    }
  }
  const TraceDecoder decoder(setup.layout, setup.trace);

  std::vector<ReportRow> rows;
  for (std::size_t pi = 0; pi < setup.phrases.size(); ++pi) {
    const PhraseRecord& record = setup.phrases[pi];
    const PhraseTrajectories traj = prepare_phrase(setup, record, pi);
    if (traj.words.empty()) {
      throw std::invalid_argument("run_benchmark: phrase " + std::to_string(pi) +
                                  " has no typable words");
    }
    const ContextProfile profile = ContextProfile::from_record(record, setup.vocab, setup.lm_gamma);
    const ContextualScorer contextual(setup.lm, profile);

    for (const std::string& condition : conditions) {
      std::vector<std::string> prev, initial_words, final_words;
      double elapsed = 0.0;
      int corrections = 0;
      for (std::size_t wi = 0; wi < traj.words.size(); ++wi) {
        const auto suggest = [&](const Trajectory& t) -> std::string {
          SuggestionList s;
          if (condition == "fusion") {
            s = score_fusion(t, decoder, setup.vocab, setup.costs, contextual, prev,
                             setup.fusion, setup.beam, setup.correction);
          } else {
            s = naive_correction(t, decoder, setup.vocab, setup.lm, prev, setup.fusion,
                                 setup.beam, setup.naive_fanout);
          }
          return s.empty() ? std::string() : s.front().word;
        };
        const std::string target = traj.words[wi];
        std::string committed = suggest(traj.attempts[wi][0]);
        elapsed += traj.durations[wi][0];
        initial_words.push_back(committed);
        if (committed != target) {
          committed = suggest(traj.attempts[wi][1]);
          elapsed += traj.durations[wi][1];
          ++corrections;
        }
        final_words.push_back(committed);
        prev.push_back(committed);
      }
      TranscriptionEvent event;
      event.stimulus = join_words(traj.words);
      event.committed_initial = join_words(initial_words);
      event.committed_final = join_words(final_words);
      event.elapsed = std::max(elapsed, 1e-9);
      event.corrections = corrections;
      const auto [ucer, ccer] = cer(event);
      rows.push_back({condition, static_cast<int>(pi) / setup.block_size,
                      static_cast<int>(pi), wpm(event), ucer, ccer, corrections});
    }
  }
  sort_rows(rows);
  return {rows, make_csv(rows), make_summary(rows)};
}

BenchReport run_ablation(const BenchSetup& setup) {
  if (setup.phrases.empty()) {
    throw std::invalid_argument("run_ablation: empty phrase set");
  }
  const TraceDecoder decoder(setup.layout, setup.trace);
  FusionConfig sscm_cfg = setup.fusion;
  sscm_cfg.lm_coeff = 0.0;

  std::vector<ReportRow> rows;
  for (std::size_t pi = 0; pi < setup.phrases.size(); ++pi) {
    const PhraseRecord& record = setup.phrases[pi];
    const PhraseTrajectories traj = prepare_phrase(setup, record, pi);
    if (traj.words.empty()) {
      throw std::invalid_argument("run_ablation: phrase " + std::to_string(pi) +
                                  " has no typable words");
    }
    const ContextProfile profile = ContextProfile::from_record(record, setup.vocab, setup.lm_gamma);
    const ContextualScorer contextual(setup.lm, profile);

    struct Stage {
      std::string name;
      std::vector<std::string> committed;
      std::vector<std::string> prev;
    };
    std::vector<Stage> stages = {{"gdm", {}, {}}, {"gdm+sscm", {}, {}}, {"gdm+sscm+clm", {}, {}}};
    double elapsed = 0.0;
    for (std::size_t wi = 0; wi < traj.words.size(); ++wi) {
      const Trajectory& t = traj.attempts[wi][0];
      elapsed += traj.durations[wi][0];
      const std::vector<ScoredCandidate> raw = decoder.decode(t, setup.vocab, setup.beam);
      for (Stage& stage : stages) {
        std::string top;
        if (stage.name == "gdm") {
          top = raw.front().word;
        } else if (stage.name == "gdm+sscm") {
          const SuggestionList s = score_fusion(t, decoder, setup.vocab, setup.costs, contextual,
                                                stage.prev, sscm_cfg, setup.beam, setup.correction);
          top = s.empty() ? std::string() : s.front().word;
        } else {
          const SuggestionList s = score_fusion(t, decoder, setup.vocab, setup.costs, contextual,
                                                stage.prev, setup.fusion, setup.beam,
                                                setup.correction);
          top = s.empty() ? std::string() : s.front().word;
        }
        stage.committed.push_back(top);
        stage.prev.push_back(top);
      }
    }
    for (const Stage& stage : stages) {
      TranscriptionEvent event;
      event.stimulus = join_words(traj.words);
      event.committed_initial = join_words(stage.committed);
      event.committed_final = event.committed_initial;
      event.elapsed = std::max(elapsed, 1e-9);
      const auto [ucer, ccer] = cer(event);
      rows.push_back({stage.name, static_cast<int>(pi) / setup.block_size,
                      static_cast<int>(pi), wpm(event), ucer, ccer, 0});
    }
  }
  sort_rows(rows);
  return {rows, make_csv(rows), make_summary(rows)};
}

FusionConfig tune(const BenchSetup& setup, const std::vector<double>& sc_grid,
                  const std::vector<double>& lm_grid) {
  if (setup.phrases.empty()) {
    throw std::invalid_argument("tune: empty phrase set");
  }
  std::vector<std::pair<double, double>> grid;
  for (double sc : sc_grid) {
    for (double lm : lm_grid) {
      if (sc >= 0.0 && lm >= 0.0 && sc + lm <= 1.0) {
        grid.emplace_back(sc, lm);
      }
    }
  }
  if (grid.empty()) {
    throw std::invalid_argument("tune: no feasible grid point (need sc + lm <= 1)");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const TraceDecoder decoder(setup.layout, setup.trace);

  // Trajectories, context profiles and decoder output do not depend on the
  // coefficients, so they are prepared once.
  struct Prepared {
    PhraseTrajectories traj;
    ContextProfile profile;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(setup.phrases.size());
  for (std::size_t pi = 0; pi < setup.phrases.size(); ++pi) {
    prepared.push_back({prepare_phrase(setup, setup.phrases[pi], pi),
                        ContextProfile::from_record(setup.phrases[pi], setup.vocab,
                                                    setup.lm_gamma)});
  }

  double best_cer = 1e300;
  std::pair<double, double> best = grid.front();
  for (const auto& [sc, lm] : grid) {
    FusionConfig cfg = setup.fusion;
    cfg.swipe_correction_coeff = sc;
    cfg.lm_coeff = lm;
    double total_cer = 0.0;
    for (const Prepared& p : prepared) {
      const ContextualScorer contextual(setup.lm, p.profile);
      std::vector<std::string> prev, committed;
      for (std::size_t wi = 0; wi < p.traj.words.size(); ++wi) {
        const SuggestionList s =
            score_fusion(p.traj.attempts[wi][0], decoder, setup.vocab, setup.costs, contextual,
                         prev, cfg, setup.beam, setup.correction);
        committed.push_back(s.empty() ? std::string() : s.front().word);
        prev.push_back(committed.back());
      }
      TranscriptionEvent event;
      event.stimulus = join_words(p.traj.words);
      event.committed_initial = join_words(committed);
      event.committed_final = event.committed_initial;
      event.elapsed = 1.0;
      total_cer += cer(event).first;
    }
    const double mean_cer = total_cer / static_cast<double>(prepared.size());
    const double margin = best_cer - mean_cer;
    const bool better =
        margin > 1e-12 ||
        (std::abs(margin) <= 1e-12 &&
         std::make_pair(sc + lm, sc) < std::make_pair(best.first + best.second, best.first));
    if (better) {
      best_cer = mean_cer;
      best = {sc, lm};
    }
  }
  FusionConfig out = setup.fusion;
  out.swipe_correction_coeff = best.first;
  out.lm_coeff = best.second;
  return out;
}

Vocabulary synthetic_vocabulary(std::size_t size, std::uint64_t seed) {
  if (size == 0) {
    throw std::invalid_argument("synthetic_vocabulary: size must be positive");
  }
  static const std::vector<std::string> onsets = {
      "",   "b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",  "m",  "n",
      "p",  "r",  "s",  "t",  "v",  "w",  "y",  "z",  "br", "ch", "cl", "cr",
      "dr", "fl", "fr", "gl", "gr", "pl", "pr", "sh", "sl", "sm", "sn", "sp",
      "st", "th", "tr", "wh"};
  static const std::vector<std::string> nuclei = {"a",  "e",  "i",  "o",  "u",  "ai",
                                                  "ea", "ee", "ie", "oa", "oo", "ou"};
  static const std::vector<std::string> codas = {"",   "b",  "ck", "d",  "g",  "k",  "l",
                                                 "ll", "m",  "n",  "nd", "ng", "nt", "p",
                                                 "r",  "rd", "rk", "rn", "rt", "s",  "ss",
                                                 "st", "t"};
  Rng rng(seed);
  std::set<std::string> seen;
  std::vector<VocabEntry> entries;
  while (entries.size() < size) {
    const int syllables = 1 + static_cast<int>(rng.next_u64() % 3);
    std::string word;
    for (int s = 0; s < syllables; ++s) {
      word += onsets[rng.next_u64() % onsets.size()];
      word += nuclei[rng.next_u64() % nuclei.size()];
      word += codas[rng.next_u64() % codas.size()];
    }
    if (word.empty() || word.size() > 12 || !seen.insert(word).second) {
      continue;
    }
    const double rank = static_cast<double>(entries.size()) + 1.0;
    entries.push_back({word, std::floor(1e6 / std::pow(rank, 1.07))});
  }
  return Vocabulary(std::move(entries));
}

std::vector<PhraseRecord> synthetic_phrases(const Vocabulary& vocab, std::size_t count,
                                            std::uint64_t seed, const PhraseGenOptions& opts) {
  const auto& entries = vocab.entries();
  const std::size_t n_function =
      std::min<std::size_t>(static_cast<std::size_t>(opts.function_words), entries.size() / 2);
  std::vector<std::string> function_words;
  std::vector<double> function_cum;
  double cum = 0.0;
  for (std::size_t i = 0; i < n_function; ++i) {
    function_words.push_back(entries[i].word);
    cum += std::max(entries[i].frequency, 1.0);
    function_cum.push_back(cum);
  }
  std::vector<std::vector<std::string>> topics;
  std::vector<std::string> topic_acc;
  for (std::size_t i = n_function; i < entries.size(); ++i) {
    topic_acc.push_back(entries[i].word);
    if (topic_acc.size() == static_cast<std::size_t>(opts.topic_size)) {
      topics.push_back(topic_acc);
      topic_acc.clear();
    }
  }
  if (!topic_acc.empty()) {
    topics.push_back(topic_acc);
  }
  if (topics.empty() || function_words.empty()) {
    throw std::invalid_argument("synthetic_phrases: vocabulary too small");
  }

  Rng rng(seed);
  const auto pick = [&](const std::vector<std::string>& pool) {
    return pool[rng.next_u64() % pool.size()];
  };
  // Function words are drawn by corpus frequency so the trained model sees a
  // realistic head distribution. Phrase starters must be at least two
  // letters: a leading bare "a" is indistinguishable from its extensions
  // under the free-suffix rule and the start-of-sentence model alone.
  const auto pick_function = [&](std::size_t min_len) {
    for (int tries = 0; tries < 16; ++tries) {
      const double r = rng.next_double() * function_cum.back();
      const auto it = std::lower_bound(function_cum.begin(), function_cum.end(), r);
      const std::string& w = function_words[static_cast<std::size_t>(it - function_cum.begin())];
      if (w.size() >= min_len) {
        return w;
      }
    }
    return function_words.front();
  };

  std::vector<PhraseRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& topic = topics[rng.next_u64() % topics.size()];
    const int len = opts.min_words +
                    static_cast<int>(rng.next_u64() %
                                     static_cast<std::uint64_t>(opts.max_words - opts.min_words + 1));
    std::vector<std::string> words;
    std::vector<std::string> topic_words_used;
    for (int w = 0; w < len; ++w) {
      if (rng.next_double() < opts.topic_ratio || (w == len - 1 && topic_words_used.empty())) {
        words.push_back(pick(topic));
        topic_words_used.push_back(words.back());
      } else {
        words.push_back(pick_function(w == 0 ? 2 : 1));
      }
    }
    PhraseRecord r;
    r.stimulus = join_words(words);

    // The conversation history echoes the stimulus topic words.
    const int n_history =
        opts.history_min + static_cast<int>(rng.next_u64() %
                                            static_cast<std::uint64_t>(
                                                opts.history_max - opts.history_min + 1));
    for (int h = 0; h < n_history; ++h) {
      std::vector<std::string> hw;
      const int hlen = 4 + static_cast<int>(rng.next_u64() % 4);
      for (int k = 0; k < hlen; ++k) {
        const double roll = rng.next_double();
        if (roll < 0.45 && !topic_words_used.empty()) {
          hw.push_back(topic_words_used[rng.next_u64() % topic_words_used.size()]);
        } else if (roll < 0.7) {
          hw.push_back(pick(topic));
        } else {
          hw.push_back(pick_function(k == 0 ? 2 : 1));
        }
      }
      r.history.push_back(join_words(hw));
    }
    r.tags.push_back("persona:" + pick(topic));
    if (!topic_words_used.empty()) {
      r.tags.push_back("topic:" + topic_words_used[rng.next_u64() % topic_words_used.size()]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace swipekit
