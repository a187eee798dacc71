#include "swipekit/spell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swipekit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_alphabet(const std::string& s, const EditCostModel& costs, const char* role) {
  for (char c : s) {
    if (!costs.in_alphabet(c)) {
      throw std::invalid_argument(std::string("spatial edit distance: ") + role +
                                  " character '" + std::string(1, c) +
                                  "' is outside the layout alphabet");
    }
  }
}

bool is_prefix_of(const std::string& input, const std::string& intent) {
  return input.size() <= intent.size() &&
         std::equal(input.begin(), input.end(), intent.begin());
}

}  // namespace

EditCostModel EditCostModel::from_layout(const KeyboardLayout& layout,
                                         double adjacency_radius) {
  EditCostModel m;
  m.adjacency = AdjacencyMap(layout, adjacency_radius);
  m.alphabet.reserve(layout.keys().size());
  for (const Key& k : layout.keys()) {
    m.alphabet.push_back(k.label);
    m.alphabet_table[static_cast<unsigned char>(k.label)] = true;
  }
  return m;
}

Alignment spatial_edit_logprob(const std::string& intent, const std::string& input,
                               const EditCostModel& costs) {
  check_alphabet(intent, costs, "intent");
  check_alphabet(input, costs, "input");
  const std::size_t m = intent.size();
  const std::size_t n = input.size();

  // The free-suffix route: input is a prefix of the intent, the rest of the
  // intent is omitted at zero cost.
  if (is_prefix_of(input, intent)) {
    Alignment out;
    out.n_ins = static_cast<int>(m - n);
    out.n_ins_free = out.n_ins;
    out.log_p_ed = 0.0;
    return out;
  }

  // Otherwise every operation is paid. dp[i][j]: best log probability
  // aligning intent[0..i) with input[0..j).
  std::vector<std::vector<double>> dp(m + 1, std::vector<double>(n + 1, kNegInf));
  // 1 = insertion (omitted intent char), 2 = stray input char, 3 = match/sub
  std::vector<std::vector<unsigned char>> back(m + 1, std::vector<unsigned char>(n + 1, 0));
  dp[0][0] = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == 0 && j == 0) continue;
      double best = kNegInf;
      unsigned char move = 0;
      if (i > 0) {
        const double v = dp[i - 1][j] + costs.log_p_omit;
        if (v > best) {
          best = v;
          move = 1;
        }
      }
      if (j > 0) {
        const double v = dp[i][j - 1] + costs.log_p_stray;
        if (v > best) {
          best = v;
          move = 2;
        }
      }
      if (i > 0 && j > 0) {
        const double v = dp[i - 1][j - 1] + costs.substitution_cost(intent[i - 1], input[j - 1]);
        if (v >= best) {  // prefer match/substitution on ties
          best = v;
          move = 3;
        }
      }
      dp[i][j] = best;
      back[i][j] = move;
    }
  }

  Alignment out;
  out.log_p_ed = dp[m][n];
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    switch (back[i][j]) {
      case 1:
        ++out.n_ins;
        --i;
        break;
      case 2:
        ++out.n_del;
        --j;
        break;
      case 3:
        if (intent[i - 1] != input[j - 1]) {
          out.substitutions.emplace_back(intent[i - 1], input[j - 1]);
        }
        --i;
        --j;
        break;
      default:
        throw std::logic_error("spatial edit distance: broken backtrack");
    }
  }
  std::reverse(out.substitutions.begin(), out.substitutions.end());
  return out;
}

namespace {

// Paid-operations banded DP core with caller-provided scratch rows; the
// free-suffix route and alphabet checks live in the wrappers.
std::optional<double> banded_core(const std::string& intent, const std::string& input,
                                  const EditCostModel& costs, int band,
                                  std::vector<double>& prev, std::vector<double>& cur) {
  const auto m = static_cast<long>(intent.size());
  const auto n = static_cast<long>(input.size());
  const auto idx = [](long j) { return static_cast<std::size_t>(j); };
  prev.assign(idx(n) + 1, kNegInf);
  cur.assign(idx(n) + 1, kNegInf);
  prev[0] = 0.0;
  for (long j = 1; j <= std::min(n, static_cast<long>(band)); ++j) {
    prev[idx(j)] = prev[idx(j - 1)] + costs.log_p_stray;
  }
  for (long i = 1; i <= m; ++i) {
    std::fill(cur.begin(), cur.end(), kNegInf);
    const long lo = std::max<long>(0, i - band);
    const long hi = std::min(n, i + band);
    for (long j = lo; j <= hi; ++j) {
      double best = kNegInf;
      if (prev[idx(j)] > kNegInf) {
        best = std::max(best, prev[idx(j)] + costs.log_p_omit);
      }
      if (j > 0 && cur[idx(j - 1)] > kNegInf) {
        best = std::max(best, cur[idx(j - 1)] + costs.log_p_stray);
      }
      if (j > 0 && prev[idx(j - 1)] > kNegInf) {
        best = std::max(best, prev[idx(j - 1)] + costs.substitution_cost(intent[idx(i - 1)],
                                                                         input[idx(j - 1)]));
      }
      cur[idx(j)] = best;
    }
    std::swap(prev, cur);
  }
  const double best = prev[idx(n)];
  if (best == kNegInf || !std::isfinite(best)) {
    return std::nullopt;
  }
  return best;
}

}  // namespace

std::optional<double> spatial_edit_logprob_banded(const std::string& intent,
                                                  const std::string& input,
                                                  const EditCostModel& costs, int band) {
  check_alphabet(intent, costs, "intent");
  check_alphabet(input, costs, "input");
  if (band < 0) {
    return std::nullopt;
  }
  if (is_prefix_of(input, intent)) {
    return 0.0;  // free omitted suffix
  }
  std::vector<double> prev, cur;
  return banded_core(intent, input, costs, band, prev, cur);
}

std::vector<ScoredCandidate> correction_scores(const std::string& raw,
                                               const Vocabulary& vocab,
                                               const EditCostModel& costs,
                                               const CorrectionOptions& options) {
  if (raw.empty()) {
    throw std::invalid_argument("correction_scores: empty raw decoding");
  }
  check_alphabet(raw, costs, "input");
  std::vector<ScoredCandidate> out;
  out.reserve(vocab.size());
  std::vector<double> scratch_prev, scratch_cur;
  for (const VocabEntry& e : vocab.entries()) {
    // Words with characters the layout cannot type are skipped, not errors.
    bool typable = true;
    for (char c : e.word) {
      typable = typable && costs.in_alphabet(c);
    }
    if (!typable) {
      continue;
    }
    if (options.band) {
      // A shorter intent needs at least len(raw) - len(word) strays; an
      // omitted suffix is free, so longer intents are never length-pruned.
      if (static_cast<long>(raw.size()) - static_cast<long>(e.word.size()) >
          static_cast<long>(*options.band)) {
        continue;
      }
      if (is_prefix_of(raw, e.word)) {
        out.push_back({e.word, 0.0});
        continue;
      }
      const auto score = banded_core(e.word, raw, costs, *options.band, scratch_prev, scratch_cur);
      if (score) {
        out.push_back({e.word, *score});
      }
    } else {
      out.push_back({e.word, spatial_edit_logprob(e.word, raw, costs).log_p_ed});
    }
  }
  std::sort(out.begin(), out.end(), [&](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    const double fa = vocab.frequency(a.word);
    const double fb = vocab.frequency(b.word);
    if (fa != fb) return fa > fb;
    return a.word < b.word;
  });
  return out;
}

}  // namespace swipekit
