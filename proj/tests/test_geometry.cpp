// Exact rational segment intersection.

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace bfl;

TEST_CASE("orient gives the sign of the turn") {
  CHECK(orient({0, 0}, {1, 0}, {0, 1}) > 0);   // left turn
  CHECK(orient({0, 0}, {1, 0}, {0, -1}) < 0);  // right turn
  CHECK(orient({0, 0}, {1, 1}, {3, 3}) == 0);  // collinear
  // Exactness survives coordinates that overflow 64-bit cross products.
  grid_point big{3'000'000'000LL, 1};
  CHECK(orient({0, 0}, big, {0, 1}) == bigint(3'000'000'000LL));
}

TEST_CASE("a proper crossing yields the exact point and parameters") {
  auto hit = intersect_segments({0, 0}, {4, 2}, {1, 3}, {2, -1});
  REQUIRE(hit.has_value());
  CHECK(hit->where.x == rational(14, 9));
  CHECK(hit->where.y == rational(7, 9));
  CHECK(hit->t_first == rational(7, 18));
  CHECK(hit->t_second == rational(5, 9));

  // Swapping the segments swaps the parameters but not the point.
  auto swapped = intersect_segments({1, 3}, {2, -1}, {0, 0}, {4, 2});
  REQUIRE(swapped.has_value());
  CHECK(swapped->where == hit->where);
  CHECK(swapped->t_first == hit->t_second);
  CHECK(swapped->t_second == hit->t_first);

  // Reversing one segment reverses its parameter.
  auto reversed = intersect_segments({4, 2}, {0, 0}, {1, 3}, {2, -1});
  REQUIRE(reversed.has_value());
  CHECK(reversed->t_first == rational(11, 18));
  CHECK(reversed->t_second == hit->t_second);
}

TEST_CASE("disjoint segments return nothing") {
  CHECK_FALSE(intersect_segments({0, 0}, {1, 0}, {0, 1}, {1, 1}).has_value());
  // Parallel but not collinear.
  CHECK_FALSE(intersect_segments({0, 0}, {4, 2}, {0, 1}, {4, 3}).has_value());
  // Collinear with disjoint extent.
  CHECK_FALSE(intersect_segments({0, 0}, {1, 1}, {2, 2}, {3, 3}).has_value());
  // One segment's line crosses, the segment itself falls short.
  CHECK_FALSE(intersect_segments({0, 0}, {4, 0}, {2, 3}, {2, 1}).has_value());
}

TEST_CASE("degenerate configurations are rejected") {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const error& e) {
      return e.code();
    }
    return errc::invalid_argument;
  };
  SECTION("zero-length segment") {
    CHECK(code_of([] { intersect_segments({1, 1}, {1, 1}, {0, 0}, {2, 2}); }) ==
          errc::degenerate_intersection);
  }
  SECTION("collinear overlap") {
    CHECK(code_of([] { intersect_segments({0, 0}, {2, 2}, {1, 1}, {3, 3}); }) ==
          errc::degenerate_intersection);
    // Sharing just one endpoint on the same line still counts as overlap.
    CHECK(code_of([] { intersect_segments({0, 0}, {1, 1}, {1, 1}, {2, 2}); }) ==
          errc::degenerate_intersection);
  }
  SECTION("endpoint touching the other segment") {
    // Endpoint in the interior of the other segment.
    CHECK(code_of([] { intersect_segments({0, 0}, {4, 0}, {2, 0}, {2, 2}); }) ==
          errc::degenerate_intersection);
    // Shared endpoint, non-collinear.
    CHECK(code_of([] { intersect_segments({0, 0}, {2, 0}, {2, 0}, {2, 2}); }) ==
          errc::degenerate_intersection);
  }
}

TEST_CASE("census edges only ever cross transversally") {
  // Every declared crossing pair in the bundled file resolves to a proper
  // interior intersection.
  const auto& records = testutil::census();
  for (const auto& r : records) {
    for (auto [e1, e2] : r.crossing_pairs) {
      auto [a1, b1] = r.edges[static_cast<std::size_t>(e1)];
      auto [a2, b2] = r.edges[static_cast<std::size_t>(e2)];
      auto at = [&](int v) {
        return grid_point{r.vertices[static_cast<std::size_t>(v)].first,
                          r.vertices[static_cast<std::size_t>(v)].second};
      };
      auto hit = intersect_segments(at(a1), at(b1), at(a2), at(b2));
      REQUIRE(hit.has_value());
      CHECK(hit->t_first > 0);
      CHECK(hit->t_first < 1);
      CHECK(hit->t_second > 0);
      CHECK(hit->t_second < 1);
    }
  }
}
