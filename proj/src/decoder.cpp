#include "swipekit/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace swipekit {

namespace {

constexpr double kLog10E = 0.4342944819032518;

bool valid_word_char(char c) { return (c >= 'a' && c <= 'z') || c == '\''; }

// In-place base-10 log-softmax over candidate scores.
void log_softmax10(std::vector<ScoredCandidate>& cands) {
  if (cands.empty()) {
    return;
  }
  double m = cands.front().log_score;
  for (const auto& c : cands) m = std::max(m, c.log_score);
  double sum = 0.0;
  for (const auto& c : cands) sum += std::pow(10.0, c.log_score - m);
  const double lse = m + std::log10(sum);
  for (auto& c : cands) c.log_score -= lse;
}

void sort_candidates(std::vector<ScoredCandidate>& cands) {
  std::sort(cands.begin(), cands.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    return a.word < b.word;
  });
}

}  // namespace

Vocabulary::Vocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("vocabulary: no entries");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const VocabEntry& e = entries_[i];
    if (e.word.empty()) {
      throw std::invalid_argument("vocabulary: empty word");
    }
    for (char c : e.word) {
      if (!valid_word_char(c)) {
        throw std::invalid_argument("vocabulary: invalid character in word '" + e.word + "'");
      }
    }
    if (!std::isfinite(e.frequency) || e.frequency < 0.0) {
      throw std::invalid_argument("vocabulary: bad frequency for word '" + e.word + "'");
    }
    if (!index_.emplace(e.word, static_cast<int>(i)).second) {
      throw std::invalid_argument("vocabulary: duplicate word '" + e.word + "'");
    }
  }
}

double Vocabulary::frequency(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? 0.0 : entries_[static_cast<std::size_t>(it->second)].frequency;
}

int Vocabulary::index_of(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? -1 : it->second;
}

std::vector<Point> resample_by_arc_length(const Trajectory& traj, int n) {
  if (n < 2) {
    throw std::invalid_argument("resample_by_arc_length: need n >= 2");
  }
  if (traj.empty()) {
    throw std::invalid_argument("resample_by_arc_length: empty trajectory");
  }
  const auto& s = traj.samples;
  std::vector<double> cum(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    cum[i] = cum[i - 1] + distance(s[i].p, s[i - 1].p);
  }
  const double total = cum.back();
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  if (total <= 0.0) {
    out.assign(static_cast<std::size_t>(n), s.front().p);
    return out;
  }
  std::size_t seg = 1;
  for (int k = 0; k < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg < s.size() - 1 && cum[seg] < target) {
      ++seg;
    }
    const double span = cum[seg] - cum[seg - 1];
    const double u = span > 0.0 ? (target - cum[seg - 1]) / span : 0.0;
    out.push_back(lerp(s[seg - 1].p, s[seg].p, std::clamp(u, 0.0, 1.0)));
  }
  return out;
}

Trajectory ideal_template(const std::string& word, const KeyboardLayout& layout, int n) {
  if (word.empty()) {
    throw std::invalid_argument("ideal_template: empty word");
  }
  if (n < 2) {
    throw std::invalid_argument("ideal_template: need n >= 2");
  }
  Trajectory path;
  path.word = word;
  double t = 0.0;
  for (char c : word) {
    path.samples.push_back({t, layout.key(c).center});
    t += 1.0;
  }
  const std::vector<Point> pts = resample_by_arc_length(path, n);
  Trajectory out;
  out.word = word;
  out.samples.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    out.samples.push_back({static_cast<double>(k) / static_cast<double>(n - 1), pts[k]});
  }
  return out;
}

ShapeDecoder::ShapeDecoder(KeyboardLayout layout, ShapeDecoderConfig cfg)
    : layout_(std::move(layout)), cfg_(cfg) {}

double ShapeDecoder::template_distance(const Trajectory& traj, const std::string& word) const {
  const std::vector<Point> q = resample_by_arc_length(traj, cfg_.resample_points);
  const Trajectory tmpl = ideal_template(word, layout_, cfg_.resample_points);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double d = distance(q[i], tmpl.samples[i].p);
    sum += d * d;
  }
  return sum / static_cast<double>(q.size());
}

std::vector<ScoredCandidate> ShapeDecoder::decode(const Trajectory& traj,
                                                  const Vocabulary& vocab, int beam) const {
  if (traj.size() < 2) {
    throw std::invalid_argument("shape decode: trajectory needs at least two samples");
  }
  if (beam < 1) {
    throw std::invalid_argument("shape decode: beam must be >= 1");
  }
  const std::vector<Point> q = resample_by_arc_length(traj, cfg_.resample_points);
  const Point front = q.front();
  const Point back = q.back();

  const auto score_words = [&](bool use_filter) {
    std::vector<ScoredCandidate> scored;
    for (const VocabEntry& e : vocab.entries()) {
      bool on_layout = true;
      for (char c : e.word) {
        if (!layout_.has_key(c)) {
          on_layout = false;
          break;
        }
      }
      if (!on_layout) {
        continue;
      }
      if (use_filter) {
        const Point first_c = layout_.key(e.word.front()).center;
        const Point last_c = layout_.key(e.word.back()).center;
        if (distance(first_c, front) > cfg_.prefilter_radius ||
            distance(last_c, back) > cfg_.prefilter_radius) {
          continue;
        }
      }
      const Trajectory tmpl = ideal_template(e.word, layout_, cfg_.resample_points);
      double sum = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double d = distance(q[i], tmpl.samples[i].p);
        sum += d * d;
      }
      const double mean_sq = sum / static_cast<double>(q.size());
      const double score = -mean_sq / (2.0 * cfg_.channel_sigma * cfg_.channel_sigma) * kLog10E +
                           cfg_.prior_weight * std::log10(1.0 + e.frequency);
      scored.push_back({e.word, score});
    }
    return scored;
  };

  std::vector<ScoredCandidate> scored = score_words(cfg_.prefilter);
  if (scored.empty() && cfg_.prefilter) {
    scored = score_words(false);
  }
  if (scored.empty()) {
    throw std::invalid_argument("shape decode: no scorable vocabulary words");
  }
  sort_candidates(scored);
  if (scored.size() > static_cast<std::size_t>(beam)) {
    scored.resize(static_cast<std::size_t>(beam));
  }
  log_softmax10(scored);
  return scored;
}

TraceDecoder::TraceDecoder(KeyboardLayout layout, TraceDecoderConfig cfg)
    : layout_(std::move(layout)), cfg_(cfg) {}

std::vector<TraceDecoder::Anchor> TraceDecoder::extract_anchors(const Trajectory& traj) const {
  std::vector<Anchor> anchors;
  const auto& s = traj.samples;
  if (s.size() < 2) {
    if (!s.empty()) {
      anchors.push_back({s.front().p, 0.0});
    }
    return anchors;
  }
  std::vector<double> step(s.size(), 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    step[i] = distance(s[i].p, s[i - 1].p);
  }
  // Per-step distance threshold derived from the absolute dwell speed.
  const double dt = (s.back().t - s.front().t) / static_cast<double>(s.size() - 1);
  const double thresh = cfg_.dwell_speed * std::max(dt, 1e-9);

  // Runs of consecutive slow steps become dwell clusters. A run over steps
  // [i..j] covers samples [i-1..j].
  constexpr std::size_t kMinRun = 2;
  std::size_t i = 1;
  while (i < s.size()) {
    if (step[i] >= thresh) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.size() && step[j + 1] < thresh) {
      ++j;
    }
    if (j - i + 1 >= kMinRun) {
      Point mean{0.0, 0.0};
      std::size_t count = 0;
      for (std::size_t k = i - 1; k <= j; ++k) {
        mean = mean + s[k].p;
        ++count;
      }
      mean = mean * (1.0 / static_cast<double>(count));
      anchors.push_back({mean, s[j].t - s[i - 1].t});
    }
    i = j + 1;
  }
  if (anchors.empty()) {
    // Degenerate: no dwells found; fall back to the endpoints.
    anchors.push_back({s.front().p, 0.0});
    anchors.push_back({s.back().p, 0.0});
  }

  // Merge neighbouring clusters that read the same key; a dwell split by a
  // noise blip should count once.
  std::vector<Anchor> merged;
  for (const Anchor& a : anchors) {
    if (!merged.empty()) {
      const Key* prev_key = nullptr;
      const Key* cur_key = nullptr;
      double best_prev = 1e300, best_cur = 1e300;
      for (const Key& k : layout_.keys()) {
        const double dp = distance(k.center, merged.back().position);
        const double dc = distance(k.center, a.position);
        if (dp < best_prev) {
          best_prev = dp;
          prev_key = &k;
        }
        if (dc < best_cur) {
          best_cur = dc;
          cur_key = &k;
        }
      }
      if (prev_key == cur_key) {
        Anchor& m = merged.back();
        m.position = lerp(m.position, a.position, 0.5);
        m.duration += a.duration;
        continue;
      }
    }
    merged.push_back(a);
  }
  return merged;
}

std::vector<ScoredCandidate> TraceDecoder::decode(const Trajectory& traj,
                                                  const Vocabulary& vocab, int beam) const {
  (void)vocab;  // char-level: the beam is over key choices, not words
  if (traj.size() < 2) {
    throw std::invalid_argument("trace decode: trajectory needs at least two samples");
  }
  if (beam < 1) {
    throw std::invalid_argument("trace decode: beam must be >= 1");
  }
  const std::vector<Anchor> anchors = extract_anchors(traj);
  const auto& keys = layout_.keys();

  // Per-anchor normalized key distribution, truncated to the closest few.
  constexpr std::size_t kAltPerAnchor = 3;
  struct KeyAlt {
    char label;
    double log_p;
  };
  std::vector<std::vector<KeyAlt>> alts(anchors.size());
  const double inv_two_sigma_sq = 1.0 / (2.0 * cfg_.channel_sigma * cfg_.channel_sigma);
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    std::vector<KeyAlt> dist;
    dist.reserve(keys.size());
    for (const Key& k : keys) {
      const double d = distance(k.center, anchors[a].position);
      dist.push_back({k.label, -d * d * inv_two_sigma_sq * kLog10E});
    }
    double m = dist.front().log_p;
    for (const auto& ka : dist) m = std::max(m, ka.log_p);
    double sum = 0.0;
    for (const auto& ka : dist) sum += std::pow(10.0, ka.log_p - m);
    const double lse = m + std::log10(sum);
    for (auto& ka : dist) ka.log_p -= lse;
    std::sort(dist.begin(), dist.end(), [](const KeyAlt& x, const KeyAlt& y) {
      if (x.log_p != y.log_p) return x.log_p > y.log_p;
      return x.label < y.label;
    });
    dist.resize(std::min(dist.size(), kAltPerAnchor));
    alts[a] = std::move(dist);
  }

  const auto emit = [&](const std::vector<std::size_t>& choice) {
    std::string out;
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      const char c = alts[a][choice[a]].label;
      const bool doubled =
          cfg_.dwell_time > 0.0 &&
          anchors[a].duration >= cfg_.double_letter_ratio * cfg_.dwell_time;
      if (out.empty() || out.back() != c) {
        out.push_back(c);
      }
      if (doubled) {
        out.push_back(c);
      }
    }
    return out;
  };

  // Best-first enumeration over per-anchor alternatives.
  struct State {
    double score;
    std::vector<std::size_t> choice;
    std::size_t next;  // positions >= next may still be advanced
  };
  const auto joint = [&](const std::vector<std::size_t>& choice) {
    double s = 0.0;
    for (std::size_t a = 0; a < anchors.size(); ++a) s += alts[a][choice[a]].log_p;
    return s;
  };
  const auto cmp = [](const State& x, const State& y) { return x.score < y.score; };
  std::priority_queue<State, std::vector<State>, decltype(cmp)> heap(cmp);
  std::vector<std::size_t> base(anchors.size(), 0);
  heap.push({joint(base), base, 0});

  std::vector<ScoredCandidate> out;
  std::set<std::string> seen;
  int expansions = 0;
  while (!heap.empty() && expansions < cfg_.max_expansions &&
         out.size() < static_cast<std::size_t>(beam)) {
    const State st = heap.top();
    heap.pop();
    ++expansions;
    const std::string word = emit(st.choice);
    if (!word.empty() && seen.insert(word).second) {
      out.push_back({word, st.score});
    }
    for (std::size_t a = st.next; a < anchors.size(); ++a) {
      if (st.choice[a] + 1 < alts[a].size()) {
        State child = st;
        child.choice[a] += 1;
        child.next = a;
        child.score = joint(child.choice);
        heap.push(child);
      }
    }
  }
  if (out.empty()) {
    throw std::runtime_error("trace decode: produced no candidates");
  }
  sort_candidates(out);
  log_softmax10(out);
  return out;
}

}  // namespace swipekit
