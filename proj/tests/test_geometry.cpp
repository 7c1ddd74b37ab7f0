#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "loonmesh/errors.hpp"
#include "loonmesh/geometry.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace loonmesh;
using namespace loonmesh::geometry;
using testutil::TestRng;
using testutil::make_id;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::set<NodeId> vertex_set(const ConvexHull& hull) {
  return {hull.vertices.begin(), hull.vertices.end()};
}

void check_hull_invariants(const ConvexHull& hull,
                           const std::map<NodeId, CartesianPoint>& points) {
  REQUIRE(hull.vertices.size() >= 3);
  REQUIRE(hull.vertices.size() == hull.polygon.size());
  // Strict left turn at every vertex; also rules out collinear triples.
  for (std::size_t i = 0; i < hull.polygon.size(); ++i) {
    const auto& a = hull.polygon[i];
    const auto& b = hull.polygon[(i + 1) % hull.polygon.size()];
    const auto& c = hull.polygon[(i + 2) % hull.polygon.size()];
    double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    CHECK(cross > 0.0);
  }
  for (const auto& [id, p] : points) {
    CHECK(oracles::point_in_ccw_polygon(hull.polygon, p, kTolKm));
  }
}

}  // namespace

TEST_CASE("normalize_angle wraps into [0, 2pi)") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kTwoPi) == 0.0);
  CHECK(normalize_angle(-kPi / 2) == doctest::Approx(3 * kPi / 2));
  CHECK(normalize_angle(5 * kTwoPi + 1.0) == doctest::Approx(1.0));
  CHECK(normalize_angle(-1e-18) >= 0.0);
  CHECK(normalize_angle(-1e-18) < kTwoPi);
}

TEST_CASE("polar position construction normalizes and validates") {
  PolarPosition p(2.0, kTwoPi + 0.5, 18.0);
  CHECK(p.angle_rad == doctest::Approx(0.5));
  CHECK_THROWS_AS(PolarPosition(-1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PolarPosition(1.0, 0.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(PolarPosition(1.0, std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("to_cartesian basic directions") {
  auto zero = to_cartesian(PolarPosition(0.0, 1.234, 0.0));
  CHECK(zero.x == doctest::Approx(0.0));
  CHECK(zero.y == doctest::Approx(0.0));

  auto unit = to_cartesian(PolarPosition(1.0, 0.0, 0.0));
  CHECK(unit.x == doctest::Approx(1.0));
  CHECK(unit.y == doctest::Approx(0.0));

  auto up = to_cartesian(PolarPosition(2.0, kPi / 2, 0.0));
  CHECK(up.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(up.y == doctest::Approx(2.0));
}

TEST_CASE("hull of a square with an interior point") {
  std::map<NodeId, CartesianPoint> pts{
      {"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}, {"m", {0.5, 0.5}},
  };
  auto hull = compute_convex_hull(pts);
  CHECK(vertex_set(hull) == std::set<NodeId>{"a", "b", "c", "d"});
  CHECK(hull.centroid.x == doctest::Approx(0.5));
  CHECK(hull.centroid.y == doctest::Approx(0.5));
  check_hull_invariants(hull, pts);
  CHECK(hull.strictly_inside({0.5, 0.5}));
  CHECK(hull.contains({0.0, 0.5}));
  CHECK_FALSE(hull.strictly_inside({0.0, 0.5}));
  CHECK_FALSE(hull.contains({1.5, 0.5}));
}

TEST_CASE("hull of three points is all three") {
  std::map<NodeId, CartesianPoint> pts{{"a", {0, 0}}, {"b", {4, 0}}, {"c", {1, 3}}};
  auto hull = compute_convex_hull(pts);
  CHECK(vertex_set(hull) == std::set<NodeId>{"a", "b", "c"});
}

TEST_CASE("hull rejects degenerate input") {
  CHECK_THROWS_AS(compute_convex_hull({{"a", {0, 0}}, {"b", {1, 1}}}), DegenerateInput);
  CHECK_THROWS_AS(
      compute_convex_hull({{"a", {0, 0}}, {"b", {1, 1}}, {"c", {2, 2}}, {"d", {3, 3}}}),
      DegenerateInput);
  // Coincident points collapse before the distinct-count check.
  CHECK_THROWS_AS(compute_convex_hull({{"a", {0, 0}}, {"b", {0, 0}}, {"c", {2, 2}}}),
                  DegenerateInput);
}

TEST_CASE("collinear boundary points are not vertices") {
  std::map<NodeId, CartesianPoint> pts{
      {"a", {0, 0}}, {"b", {2, 0}}, {"mid", {1, 0}}, {"c", {1, 1}}};
  auto hull = compute_convex_hull(pts);
  CHECK(vertex_set(hull) == std::set<NodeId>{"a", "b", "c"});
  CHECK(oracles::hull_vertex_oracle(pts) == vertex_set(hull));
}

TEST_CASE("hull order is counterclockwise") {
  std::map<NodeId, CartesianPoint> pts{
      {"a", {0, 0}}, {"b", {2, 0}}, {"c", {2, 2}}, {"d", {0, 2}}};
  auto hull = compute_convex_hull(pts);
  double area2 = 0.0;
  for (std::size_t i = 0; i < hull.polygon.size(); ++i) {
    const auto& p = hull.polygon[i];
    const auto& q = hull.polygon[(i + 1) % hull.polygon.size()];
    area2 += p.x * q.y - q.x * p.y;
  }
  CHECK(area2 > 0.0);
}

TEST_CASE("seeded instance matches the line-side vertex oracle") {
  TestRng rng(0xB00Cu);
  auto pts = testutil::random_disk_points(rng, 10, 25.0);
  auto hull = compute_convex_hull(pts);
  CHECK(vertex_set(hull) == oracles::hull_vertex_oracle(pts));
}

TEST_CASE("hull equals the vertex oracle on random instances") {
  TestRng rng(0x5EED5EEDull);
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.randint(3, 12);
    auto pts = testutil::random_disk_points(rng, n, 40.0);
    std::set<NodeId> got;
    try {
      got = vertex_set(compute_convex_hull(pts));
    } catch (const DegenerateInput&) {
      continue;
    }
    REQUIRE(got == oracles::hull_vertex_oracle(pts));
  }
}

TEST_CASE("hull contains every input point and stays strictly convex") {
  TestRng rng(0xC0FFEEull);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = rng.randint(3, 50);
    auto pts = testutil::random_disk_points(rng, n, 100.0);
    try {
      auto hull = compute_convex_hull(pts);
      check_hull_invariants(hull, pts);
    } catch (const DegenerateInput&) {
    }
  }
}

TEST_CASE("sector count formula") {
  SUBCASE("total term binds") {
    auto sc = sector_angle(12, 3, 4, 3);
    CHECK(sc.sector_count == 3);
    CHECK(sc.sector_angle == doctest::Approx(kTwoPi / 3));
  }
  SUBCASE("single node network") {
    auto sc = sector_angle(1, 0, 8, 3);
    CHECK(sc.sector_count == 1);
    CHECK(sc.sector_angle == doctest::Approx(kTwoPi));
  }
  SUBCASE("hull term binds") {
    auto sc = sector_angle(20, 9, 8, 3);
    CHECK(sc.sector_count == 3);
    CHECK(sc.sector_angle == doctest::Approx(kTwoPi / 3));
  }
  SUBCASE("S times theta covers the circle") {
    TestRng rng(77);
    for (int i = 0; i < 200; ++i) {
      auto sc = sector_angle(rng.randint(1, 200), rng.randint(0, 40), rng.randint(1, 12),
                             rng.randint(1, 6));
      CHECK(std::abs(sc.sector_count * sc.sector_angle - kTwoPi) <= 1e-12);
    }
  }
}

TEST_CASE("partition assigns one node per quadrant") {
  std::map<NodeId, CartesianPoint> pts{
      {"h0", {-100, -100}}, {"h1", {100, -100}}, {"h2", {100, 100}}, {"h3", {-100, 100}}};
  auto deg = [](double d) { return d * kPi / 180.0; };
  pts["q0"] = {10 * std::cos(deg(10)), 10 * std::sin(deg(10))};
  pts["q1"] = {10 * std::cos(deg(100)), 10 * std::sin(deg(100))};
  pts["q2"] = {10 * std::cos(deg(190)), 10 * std::sin(deg(190))};
  pts["q3"] = {10 * std::cos(deg(280)), 10 * std::sin(deg(280))};
  auto hull = compute_convex_hull(pts);
  REQUIRE(hull.centroid.x == doctest::Approx(0.0));
  REQUIRE(hull.centroid.y == doctest::Approx(0.0));
  auto part = partition_sectors(pts, hull, 4);
  CHECK(part.sector_index_of("q0") == 0);
  CHECK(part.sector_index_of("q1") == 1);
  CHECK(part.sector_index_of("q2") == 2);
  CHECK(part.sector_index_of("q3") == 3);
}

TEST_CASE("partition boundary and origin conventions") {
  std::map<NodeId, CartesianPoint> pts{
      {"h0", {-100, -100}}, {"h1", {100, -100}}, {"h2", {100, 100}}, {"h3", {-100, 100}}};
  pts["onb"] = {0, 5};      // angle exactly pi/2 = sector boundary for S=4
  pts["ctr"] = {0, 0};      // coincident with the centroid
  auto hull = compute_convex_hull(pts);
  auto part = partition_sectors(pts, hull, 4);
  CHECK(part.sector_index_of("onb") == 1);  // half-open interval rule
  CHECK(part.sector_index_of("ctr") == 0);
}

TEST_CASE("partition covers every node exactly once") {
  TestRng rng(0xFACEull);
  auto pts = testutil::random_disk_points(rng, 20, 50.0);
  auto hull = compute_convex_hull(pts);
  auto part = partition_sectors(pts, hull, 5);
  std::size_t total = 0;
  std::set<NodeId> seen;
  for (const auto& s : part.sectors) {
    total += s.members.size();
    for (const auto& m : s.members) CHECK(seen.insert(m).second);
  }
  CHECK(total == pts.size());
  for (const auto& [id, p] : pts) CHECK(seen.count(id) == 1);
}

TEST_CASE("partition totality over random instances") {
  TestRng rng(0xABCDull);
  for (int trial = 0; trial < 100; ++trial) {
    int n = rng.randint(3, 40);
    auto pts = testutil::random_disk_points(rng, n, 80.0);
    ConvexHull hull;
    try {
      hull = compute_convex_hull(pts);
    } catch (const DegenerateInput&) {
      continue;
    }
    int s = rng.randint(1, 9);
    auto part = partition_sectors(pts, hull, s);
    std::set<NodeId> seen;
    for (const auto& sec : part.sectors) {
      for (const auto& m : sec.members) REQUIRE(seen.insert(m).second);
    }
    REQUIRE(seen.size() == pts.size());
  }
}

TEST_CASE("angular direction basics") {
  CHECK(angular_direction(1, 2, 6) == Direction::CCW);
  CHECK(angular_direction(1, 5, 6) == Direction::CW);
  CHECK(angular_direction(0, 2, 4) == Direction::CCW);  // tie goes CCW
  CHECK(angular_direction(3, 3, 6) == Direction::None);
}

TEST_CASE("angular direction antisymmetry and optimality") {
  for (int s = 1; s <= 9; ++s) {
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b) {
        auto dir = angular_direction(a, b, s);
        if (a == b) {
          CHECK(dir == Direction::None);
          continue;
        }
        int d_ccw = (b - a + s) % s;
        int d_cw = (a - b + s) % s;
        int chosen = dir == Direction::CCW ? d_ccw : d_cw;
        CHECK(chosen <= (dir == Direction::CCW ? d_cw : d_ccw));
        CHECK(chosen == angular_distance(a, b, s));
        if (d_ccw != d_cw) {
          auto back = angular_direction(b, a, s);
          CHECK(((dir == Direction::CCW && back == Direction::CW) ||
                 (dir == Direction::CW && back == Direction::CCW)));
        }
      }
    }
  }
}

TEST_CASE("single sector partition holds everything") {
  std::map<NodeId, CartesianPoint> pts{{"a", {0, 0}}, {"b", {3, 4}}};
  auto part = single_sector_partition(pts);
  CHECK(part.sector_count == 1);
  CHECK(part.sectors[0].members == std::vector<NodeId>{"a", "b"});
  CHECK(part.origin.x == doctest::Approx(1.5));
  CHECK(part.origin.y == doctest::Approx(2.0));
}
