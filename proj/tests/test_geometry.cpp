#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "swipekit/geometry.hpp"

using namespace swipekit;

namespace {

KeyboardLayout translated_qwerty(double dx, double dy) {
  const KeyboardLayout base = default_qwerty();
  std::vector<Key> keys;
  for (Key k : base.keys()) {
    k.center.x += dx;
    k.center.y += dy;
    keys.push_back(k);
  }
  return KeyboardLayout("qwerty-shifted", std::move(keys));
}

}  // namespace

TEST_CASE("layout invariants are enforced") {
  CHECK_NOTHROW(default_qwerty());
  CHECK_NOTHROW(compact_qwerty());

  // Missing letter
  std::vector<Key> keys = default_qwerty().keys();
  keys.pop_back();
  CHECK_THROWS_AS(KeyboardLayout("broken", keys), std::invalid_argument);

  // Duplicate label
  keys = default_qwerty().keys();
  keys.push_back(keys.front());
  CHECK_THROWS_AS(KeyboardLayout("broken", keys), std::invalid_argument);

  // Non-positive size
  keys = default_qwerty().keys();
  keys[0].width = 0.0;
  CHECK_THROWS_AS(KeyboardLayout("broken", keys), std::invalid_argument);

  // Overlapping key interiors
  keys = default_qwerty().keys();
  keys[1].center = keys[0].center + Point{0.4, 0.0};
  CHECK_THROWS_AS(KeyboardLayout("broken", keys), std::invalid_argument);
}

TEST_CASE("default layout geometry") {
  const KeyboardLayout layout = default_qwerty();
  CHECK(layout.key('q').center.x == doctest::Approx(0.5));
  CHECK(layout.key('q').center.y == doctest::Approx(0.5));
  CHECK(layout.key('a').center.x == doctest::Approx(1.0));
  CHECK(layout.key('z').center.x == doctest::Approx(2.0));
  CHECK(layout.bounds().min_x == doctest::Approx(0.0));
  CHECK(layout.bounds().max_x == doctest::Approx(10.0));
  for (const Key& k : layout.keys()) {
    CHECK(layout.bounds().contains(k.center));
  }
}

TEST_CASE("adjacency matches center distances") {
  const KeyboardLayout layout = default_qwerty();
  const AdjacencyMap adj(layout);

  CHECK(adj.adjacent('q', 'w'));
  CHECK(adj.adjacent('h', 'j'));
  CHECK(adj.adjacent('q', 'a'));   // staggered diagonal
  CHECK_FALSE(adj.adjacent('a', 'a'));  // irreflexive
  CHECK_FALSE(adj.adjacent('q', 'p'));
  CHECK_FALSE(adj.adjacent('q', 's'));

  // Derived from the emitted geometry: adjacency iff distance <= 1.2.
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  for (char a : alphabet) {
    for (char b : alphabet) {
      const bool expect =
          a != b && distance(layout.key(a).center, layout.key(b).center) <= 1.2;
      CHECK(adj.adjacent(a, b) == expect);
      CHECK(adj.adjacent(a, b) == adj.adjacent(b, a));  // symmetry
    }
  }
}

TEST_CASE("anchor set construction") {
  const KeyboardLayout src = default_qwerty();

  SUBCASE("identity layouts give identity pairs") {
    const AnchorSet set = build_anchor_set(src, src);
    CHECK(set.pairs.size() == 32);  // 26 shared keys + 6 border anchors
    CHECK(set.is_identity());
  }

  SUBCASE("apostrophe key is excluded from pairs") {
    const KeyboardLayout dst = compact_qwerty();
    const AnchorSet set = build_anchor_set(src, dst);
    CHECK(set.pairs.size() == 32);
    const AnchorSet reverse = build_anchor_set(dst, src);
    CHECK(reverse.pairs.size() == 32);
  }

  SUBCASE("border anchors sit three key widths outside") {
    const AnchorSet set = build_anchor_set(src, src);
    double min_x = 1e300, max_x = -1e300;
    for (const AnchorPair& p : set.pairs) {
      min_x = std::min(min_x, p.source.x);
      max_x = std::max(max_x, p.source.x);
    }
    CHECK(min_x == doctest::Approx(-3.0));
    CHECK(max_x == doctest::Approx(13.0));
    CHECK(set.grid_rows.size() == 3);
  }
}

TEST_CASE("warp maps anchors exactly") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  for (const AnchorPair& p : set.pairs) {
    const Point mapped = warp_point(p.source, set);
    CHECK(std::abs(mapped.x - p.destination.x) <= 1e-9);
    CHECK(std::abs(mapped.y - p.destination.y) <= 1e-9);
  }
}

TEST_CASE("identity warp is a byte-level no-op") {
  const KeyboardLayout src = default_qwerty();
  const AnchorSet set = build_anchor_set(src, src);
  Trajectory traj;
  traj.word = "qap";
  traj.samples = {{0.0, {0.5, 0.5}}, {0.1, {1.013, 1.471}}, {0.2, {9.499999, 0.511}}};
  const Trajectory out = warp_trajectory(traj, set);
  REQUIRE(out.size() == traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(out.samples[i].p.x == traj.samples[i].p.x);
    CHECK(out.samples[i].p.y == traj.samples[i].p.y);
    CHECK(out.samples[i].t == traj.samples[i].t);
  }
}

TEST_CASE("uniformly translated cells translate interior points") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = translated_qwerty(1.0, 0.0);
  const AnchorSet set = build_anchor_set(src, dst);
  // Midpoints of several cells plus arbitrary interior points.
  const std::vector<Point> probes = {{1.0, 1.0}, {5.25, 2.0}, {3.0, 1.5}, {0.7, 0.9}, {-1.0, 1.0}};
  for (const Point& p : probes) {
    const Point mapped = warp_point(p, set);
    CHECK(mapped.x == doctest::Approx(p.x + 1.0).epsilon(1e-12));
    CHECK(mapped.y == doctest::Approx(p.y).epsilon(1e-12));
  }
}

TEST_CASE("warp agrees with direct bilinear evaluation inside a cell") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  // Cell between 'q'(0.5,0.5)-'w'(1.5,0.5) on top and 'a'(1.0,1.5)-'s'(2.0,1.5)
  // below; probe a point bracketed by q,w above and a,s below.
  const Point p{1.2, 0.9};
  const Point q = dst.key('q').center, w = dst.key('w').center;
  const Point a = dst.key('a').center, s = dst.key('s').center;
  const double u_top = (p.x - 0.5) / 1.0;
  const double u_bot = (p.x - 1.0) / 1.0;
  const double t = (p.y - 0.5) / 1.0;
  const Point expected = lerp(lerp(q, w, u_top), lerp(a, s, u_bot), t);
  const Point mapped = warp_point(p, set);
  CHECK(mapped.x == doctest::Approx(expected.x).epsilon(1e-12));
  CHECK(mapped.y == doctest::Approx(expected.y).epsilon(1e-12));
}

TEST_CASE("warp is continuous across cell boundaries") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  const double eps = 1e-9;
  // Straddle the vertical boundary through 'w' and the horizontal middle row.
  const std::vector<std::pair<Point, Point>> straddles = {
      {{1.5 - eps, 1.0}, {1.5 + eps, 1.0}},
      {{4.2, 1.5 - eps}, {4.2, 1.5 + eps}},
      {{-2.0, 1.5 - eps}, {-2.0, 1.5 + eps}},
  };
  for (const auto& [lhs, rhs] : straddles) {
    const Point ml = warp_point(lhs, set);
    const Point mr = warp_point(rhs, set);
    CHECK(distance(ml, mr) <= 1e-6);
  }
}

TEST_CASE("round-trip warp returns anchors to themselves") {
  const KeyboardLayout a = default_qwerty();
  const KeyboardLayout b = compact_qwerty();
  const AnchorSet ab = build_anchor_set(a, b);
  const AnchorSet ba = build_anchor_set(b, a);
  for (const AnchorPair& p : ab.pairs) {
    const Point there = warp_point(p.source, ab);
    const Point back = warp_point(there, ba);
    CHECK(distance(back, p.source) <= 1e-6);
  }
}

TEST_CASE("points outside the grid raise a warp error with the sample index") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  Trajectory traj;
  traj.samples = {{0.0, {5.0, 1.0}}, {0.1, {5.0, 1.2}}, {0.2, {5.0, 0.1}}};
  try {
    warp_trajectory(traj, set);
    FAIL("expected WarpError");
  } catch (const WarpError& e) {
    CHECK(e.sample_index == 2);
  }
  CHECK_THROWS_AS(warp_point({-3.5, 1.5}, set), WarpError);   // beyond left border
  CHECK_THROWS_AS(warp_point({5.0, 2.9}, set), WarpError);    // below bottom row
}

TEST_CASE("every point of the anchor hull is covered by a cell") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  // The source anchors span [-3, 13] x [0.5, 2.5]; the grid must tile that
  // rectangle without gaps.
  std::size_t checked = 0;
  for (int ix = 0; ix <= 32; ++ix) {
    for (int iy = 0; iy <= 20; ++iy) {
      const Point p{-3.0 + 16.0 * ix / 32.0, 0.5 + 2.0 * iy / 20.0};
      CHECK_NOTHROW(warp_point(p, set));
      ++checked;
    }
  }
  CHECK(checked == 33 * 21);
}

TEST_CASE("clamped warp projects strays onto the grid") {
  const KeyboardLayout src = default_qwerty();
  const KeyboardLayout dst = compact_qwerty();
  const AnchorSet set = build_anchor_set(src, dst);
  Trajectory traj;
  traj.samples = {{0.0, {5.0, 0.1}}, {0.1, {-4.0, 1.0}}, {0.2, {5.0, 1.0}}};
  CHECK_THROWS_AS(warp_trajectory(traj, set), WarpError);
  const Trajectory clamped = warp_trajectory(traj, set, true);
  REQUIRE(clamped.size() == traj.size());
  // The in-grid sample is unaffected by clamping.
  const Point direct = warp_point({5.0, 1.0}, set);
  CHECK(clamped.samples[2].p.x == direct.x);
  CHECK(clamped.samples[2].p.y == direct.y);
  // Clamped points match warping their projections.
  const Point proj = clamp_to_grid({5.0, 0.1}, set);
  CHECK(proj.y == doctest::Approx(0.5));
  CHECK(clamped.samples[0].p.x == warp_point(proj, set).x);
}

TEST_CASE("incompatible layouts are rejected") {
  std::vector<Key> keys;
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    keys.push_back({alphabet[i], {static_cast<double>(i % 9) + 0.5,
                    static_cast<double>(i / 9) + 0.5}, 1.0, 1.0});
  }
  const KeyboardLayout grid_layout("grid", keys);
  CHECK_NOTHROW(build_anchor_set(default_qwerty(), grid_layout));
}
