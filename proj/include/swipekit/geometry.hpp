#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "swipekit/trajectory.hpp"

namespace swipekit {

struct Key {
  char label = '\0';  // lowercase a-z or apostrophe
  Point center;
  double width = 1.0;
  double height = 1.0;
};

struct Rect {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

// Immutable keyboard layout. Geometry is stored in "layout units" where the
// letter-region key width is 1.0 for the layouts shipped with the repo;
// loaded layouts are taken as-is.
class KeyboardLayout {
 public:
  KeyboardLayout(std::string name, std::vector<Key> keys);

  const std::string& name() const { return name_; }
  const std::vector<Key>& keys() const { return keys_; }
  const Rect& bounds() const { return bounds_; }

  bool has_key(char label) const;
  const Key& key(char label) const;  // throws on unknown label

  double median_key_width() const { return median_width_; }
  double median_key_height() const { return median_height_; }

 private:
  std::string name_;
  std::vector<Key> keys_;
  std::array<int, 128> index_;
  Rect bounds_;
  double median_width_ = 1.0;
  double median_height_ = 1.0;
};

// Canonical QWERTY reference layout: rows of 10/9/7 unit keys, the bottom
// rows shifted right by 0.5 and 1.5 key widths.
KeyboardLayout default_qwerty();

// Variant with tighter key spacing, different bottom-row shifts and an
// apostrophe key; used to exercise layout-to-layout warping.
KeyboardLayout compact_qwerty();

// Symmetric, irreflexive key adjacency: two keys are adjacent iff the
// distance between their centers is at most radius * max(width, height)
// taken over the pair.
class AdjacencyMap {
 public:
  AdjacencyMap() = default;
  AdjacencyMap(const KeyboardLayout& layout, double radius = 1.2);

  bool adjacent(char a, char b) const;
  const std::vector<std::pair<char, char>>& pairs() const { return pairs_; }

 private:
  std::array<std::array<bool, 128>, 128> table_{};
  std::vector<std::pair<char, char>> pairs_;
};

struct AnchorPair {
  Point source;
  Point destination;
};

// Anchor correspondence between two layouts: the centers of all shared key
// labels plus six border anchors (top/middle/bottom on each side) placed
// three key widths outside the letter region. The source anchors are
// organized into rows; the quads between consecutive rows form the warp grid.
struct AnchorSet {
  std::vector<AnchorPair> pairs;
  // Indices into `pairs`, one vector per grid row, sorted by x within a row
  // and rows sorted top to bottom.
  std::vector<std::vector<std::size_t>> grid_rows;

  bool is_identity() const;
};

// Thrown when a trajectory sample falls outside every warp cell.
class WarpError : public std::runtime_error {
 public:
  WarpError(std::size_t sample_index, const std::string& what)
      : std::runtime_error(what), sample_index(sample_index) {}
  std::size_t sample_index;
};

// Builds the anchor correspondence for warping trajectories recorded on
// `source` onto `dest`. Throws std::invalid_argument if the layouts share no
// key labels.
AnchorSet build_anchor_set(const KeyboardLayout& source, const KeyboardLayout& dest);

// Warps a single point. Throws WarpError (with sample_index = `index`) if the
// point is outside the anchor grid.
Point warp_point(const Point& p, const AnchorSet& anchors, std::size_t index = 0);

// Nearest point of the anchor grid; used for clamped warping of samples that
// stray outside it.
Point clamp_to_grid(const Point& p, const AnchorSet& anchors);

// Piecewise bilinear warp of a trajectory: each sample is mapped by the cell
// of four nearby anchors that encloses it. Anchor points map exactly onto
// their destinations and the map is continuous across cell boundaries.
// Timestamps are preserved. An identity anchor set returns the input
// unchanged. With clamp_outside set, samples outside the grid are projected
// onto it instead of raising WarpError.
Trajectory warp_trajectory(const Trajectory& traj, const AnchorSet& anchors,
                           bool clamp_outside = false);

}  // namespace swipekit
