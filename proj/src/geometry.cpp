#include "swipekit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace swipekit {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) {
    return v[mid];
  }
  return 0.5 * (v[mid - 1] + v[mid]);
}

bool valid_label(char c) { return (c >= 'a' && c <= 'z') || c == '\''; }

}  // namespace

KeyboardLayout::KeyboardLayout(std::string name, std::vector<Key> keys)
    : name_(std::move(name)), keys_(std::move(keys)) {
  if (keys_.empty()) {
    throw std::invalid_argument("layout '" + name_ + "' has no keys");
  }
  index_.fill(-1);
  std::array<bool, 26> letter_seen{};
  std::vector<double> widths, heights;
  bounds_ = {1e300, 1e300, -1e300, -1e300};
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    const Key& k = keys_[i];
    if (!valid_label(k.label)) {
      throw std::invalid_argument("layout '" + name_ + "': invalid key label '" +
                                  std::string(1, k.label) + "'");
    }
    if (!(k.width > 0.0) || !(k.height > 0.0)) {
      throw std::invalid_argument("layout '" + name_ + "': non-positive key size for '" +
                                  std::string(1, k.label) + "'");
    }
    if (index_[static_cast<unsigned char>(k.label)] >= 0) {
      throw std::invalid_argument("layout '" + name_ + "': duplicate key label '" +
                                  std::string(1, k.label) + "'");
    }
    index_[static_cast<unsigned char>(k.label)] = static_cast<int>(i);
    if (k.label >= 'a' && k.label <= 'z') {
      letter_seen[k.label - 'a'] = true;
    }
    bounds_.min_x = std::min(bounds_.min_x, k.center.x - 0.5 * k.width);
    bounds_.max_x = std::max(bounds_.max_x, k.center.x + 0.5 * k.width);
    bounds_.min_y = std::min(bounds_.min_y, k.center.y - 0.5 * k.height);
    bounds_.max_y = std::max(bounds_.max_y, k.center.y + 0.5 * k.height);
    widths.push_back(k.width);
    heights.push_back(k.height);
  }
  for (char c = 'a'; c <= 'z'; ++c) {
    if (!letter_seen[c - 'a']) {
      throw std::invalid_argument("layout '" + name_ + "': missing key '" +
                                  std::string(1, c) + "'");
    }
  }
  // Key interiors must not overlap; touching edges are fine.
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    for (std::size_t j = i + 1; j < keys_.size(); ++j) {
      const Key& a = keys_[i];
      const Key& b = keys_[j];
      const double dx = std::abs(a.center.x - b.center.x);
      const double dy = std::abs(a.center.y - b.center.y);
      if (dx < 0.5 * (a.width + b.width) - 1e-9 && dy < 0.5 * (a.height + b.height) - 1e-9) {
        throw std::invalid_argument("layout '" + name_ + "': keys '" + std::string(1, a.label) +
                                    "' and '" + std::string(1, b.label) + "' overlap");
      }
    }
  }
  median_width_ = median_of(widths);
  median_height_ = median_of(heights);
}

bool KeyboardLayout::has_key(char label) const {
  return label >= 0 && index_[static_cast<unsigned char>(label)] >= 0;
}

const Key& KeyboardLayout::key(char label) const {
  if (!has_key(label)) {
    throw std::invalid_argument("layout '" + name_ + "' has no key '" +
                                std::string(1, label) + "'");
  }
  return keys_[static_cast<std::size_t>(index_[static_cast<unsigned char>(label)])];
}

namespace {

KeyboardLayout make_row_layout(const std::string& name,
                               const std::vector<std::string>& rows,
                               const std::vector<double>& row_offsets,
                               double key_w, double key_h) {
  std::vector<Key> keys;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      Key k;
      k.label = rows[r][i];
      k.center = {row_offsets[r] + (static_cast<double>(i) + 0.5) * key_w,
                  (static_cast<double>(r) + 0.5) * key_h};
      k.width = key_w;
      k.height = key_h;
      keys.push_back(k);
    }
  }
  return KeyboardLayout(name, std::move(keys));
}

}  // namespace

KeyboardLayout default_qwerty() {
  return make_row_layout("qwerty",
                         {"qwertyuiop", "asdfghjkl", "zxcvbnm"},
                         {0.0, 0.5, 1.5}, 1.0, 1.0);
}

KeyboardLayout compact_qwerty() {
  return make_row_layout("qwerty-compact",
                         {"qwertyuiop", "asdfghjkl'", "zxcvbnm"},
                         {0.0, 0.25, 1.0}, 0.9, 1.1);
}

AdjacencyMap::AdjacencyMap(const KeyboardLayout& layout, double radius) {
  const auto& keys = layout.keys();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      const double dim = std::max({keys[i].width, keys[i].height,
                                   keys[j].width, keys[j].height});
      if (distance(keys[i].center, keys[j].center) <= radius * dim) {
        const auto a = static_cast<unsigned char>(keys[i].label);
        const auto b = static_cast<unsigned char>(keys[j].label);
        table_[a][b] = true;
        table_[b][a] = true;
        pairs_.emplace_back(keys[i].label, keys[j].label);
      }
    }
  }
}

bool AdjacencyMap::adjacent(char a, char b) const {
  if (a < 0 || b < 0) {
    return false;
  }
  return table_[static_cast<unsigned char>(a)][static_cast<unsigned char>(b)];
}

bool AnchorSet::is_identity() const {
  for (const AnchorPair& p : pairs) {
    if (!(p.source == p.destination)) {
      return false;
    }
  }
  return true;
}

namespace {

// Border anchor positions for one layout: three key widths outside the left
// and right letter-region borders, aligned with the top, middle and bottom
// key rows so the anchor rows span the full grid width.
std::array<Point, 6> border_anchors(const KeyboardLayout& layout) {
  double y_top = 1e300, y_bottom = -1e300;
  for (const Key& k : layout.keys()) {
    y_top = std::min(y_top, k.center.y);
    y_bottom = std::max(y_bottom, k.center.y);
  }
  const double y_mid = 0.5 * (y_top + y_bottom);
  const double off = 3.0 * layout.median_key_width();
  const double left = layout.bounds().min_x - off;
  const double right = layout.bounds().max_x + off;
  return {Point{left, y_top},    Point{right, y_top},
          Point{left, y_mid},    Point{right, y_mid},
          Point{left, y_bottom}, Point{right, y_bottom}};
}

}  // namespace

AnchorSet build_anchor_set(const KeyboardLayout& source, const KeyboardLayout& dest) {
  AnchorSet set;
  for (const Key& k : source.keys()) {
    if (dest.has_key(k.label)) {
      set.pairs.push_back({k.center, dest.key(k.label).center});
    }
  }
  if (set.pairs.empty()) {
    throw std::invalid_argument("incompatible layouts: '" + source.name() + "' and '" +
                                dest.name() + "' share no key labels");
  }
  const auto src_border = border_anchors(source);
  const auto dst_border = border_anchors(dest);
  for (std::size_t i = 0; i < src_border.size(); ++i) {
    set.pairs.push_back({src_border[i], dst_border[i]});
  }

  // Group source anchors into rows with a half-key-height tolerance, then
  // sort each row by x.
  std::vector<std::size_t> order(set.pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Point& pa = set.pairs[a].source;
    const Point& pb = set.pairs[b].source;
    if (pa.y != pb.y) return pa.y < pb.y;
    return pa.x < pb.x;
  });
  const double tol = 0.5 * source.median_key_height();
  double row_start_y = 0.0;
  for (std::size_t idx : order) {
    const Point& p = set.pairs[idx].source;
    if (set.grid_rows.empty() || p.y - row_start_y > tol) {
      set.grid_rows.emplace_back();
      row_start_y = p.y;
    }
    set.grid_rows.back().push_back(idx);
  }
  for (auto& row : set.grid_rows) {
    std::sort(row.begin(), row.end(), [&](std::size_t a, std::size_t b) {
      return set.pairs[a].source.x < set.pairs[b].source.x;
    });
  }
  if (set.grid_rows.size() < 2) {
    throw std::invalid_argument("anchor grid needs at least two rows");
  }
  return set;
}

namespace {

struct RowEval {
  Point source;       // point on the source row polyline at query x
  Point destination;  // corresponding point on the destination polyline
  bool ok = false;
};

// Evaluates one anchor row as an x-monotone polyline at the given x.
RowEval eval_row(const AnchorSet& anchors, const std::vector<std::size_t>& row, double x) {
  RowEval out;
  const auto& pairs = anchors.pairs;
  if (row.empty()) {
    return out;
  }
  if (x < pairs[row.front()].source.x || x > pairs[row.back()].source.x) {
    return out;
  }
  if (row.size() == 1) {
    out.source = pairs[row.front()].source;
    out.destination = pairs[row.front()].destination;
    out.ok = true;
    return out;
  }
  // Find the bracketing anchor pair.
  std::size_t hi = 1;
  while (hi < row.size() && pairs[row[hi]].source.x < x) {
    ++hi;
  }
  if (hi == row.size()) {
    hi = row.size() - 1;
  }
  const AnchorPair& a = pairs[row[hi - 1]];
  const AnchorPair& b = pairs[row[hi]];
  const double span = b.source.x - a.source.x;
  const double u = span > 0.0 ? (x - a.source.x) / span : 0.0;
  out.source = lerp(a.source, b.source, u);
  out.destination = lerp(a.destination, b.destination, u);
  out.ok = true;
  return out;
}

}  // namespace

Point warp_point(const Point& p, const AnchorSet& anchors, std::size_t index) {
  const auto fail = [&](const char* why) -> WarpError {
    return WarpError(index, "sample " + std::to_string(index) + " at (" +
                                std::to_string(p.x) + ", " + std::to_string(p.y) +
                                ") is outside the anchor grid: " + why);
  };

  for (std::size_t r = 0; r + 1 < anchors.grid_rows.size(); ++r) {
    const RowEval top = eval_row(anchors, anchors.grid_rows[r], p.x);
    const RowEval bottom = eval_row(anchors, anchors.grid_rows[r + 1], p.x);
    if (!top.ok || !bottom.ok) {
      continue;
    }
    if (p.y < top.source.y - 1e-12) {
      // Above the first covering strip; no earlier strip matched.
      if (r == 0) {
        throw fail("above the top anchor row");
      }
      continue;
    }
    if (p.y > bottom.source.y + 1e-12 && r + 2 < anchors.grid_rows.size()) {
      continue;
    }
    if (p.y > bottom.source.y + 1e-12) {
      throw fail("below the bottom anchor row");
    }
    const double span = bottom.source.y - top.source.y;
    const double t = span > 0.0 ? std::clamp((p.y - top.source.y) / span, 0.0, 1.0) : 0.0;
    return lerp(top.destination, bottom.destination, t);
  }
  throw fail("no cell brackets the sample");
}

Point clamp_to_grid(const Point& p, const AnchorSet& anchors) {
  double min_x = 1e300, max_x = -1e300;
  for (const AnchorPair& a : anchors.pairs) {
    min_x = std::min(min_x, a.source.x);
    max_x = std::max(max_x, a.source.x);
  }
  Point q{std::clamp(p.x, min_x, max_x), p.y};
  const RowEval top = eval_row(anchors, anchors.grid_rows.front(), q.x);
  const RowEval bottom = eval_row(anchors, anchors.grid_rows.back(), q.x);
  if (top.ok && q.y < top.source.y) {
    q.y = top.source.y;
  }
  if (bottom.ok && q.y > bottom.source.y) {
    q.y = bottom.source.y;
  }
  return q;
}

Trajectory warp_trajectory(const Trajectory& traj, const AnchorSet& anchors,
                           bool clamp_outside) {
  if (anchors.is_identity()) {
    return traj;
  }
  Trajectory out;
  out.word = traj.word;
  out.samples.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    Point p = traj.samples[i].p;
    if (clamp_outside) {
      p = clamp_to_grid(p, anchors);
    }
    out.samples.push_back({traj.samples[i].t, warp_point(p, anchors, i)});
  }
  return out;
}

}  // namespace swipekit
