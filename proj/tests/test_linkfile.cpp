// Reader, validator and writer for the census link-file format.

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace bfl;

namespace {

bool has_code(const std::vector<diagnostic>& ds, diagnostic_code c) {
  for (const auto& d : ds)
    if (d.code == c) return true;
  return false;
}

}  // namespace

TEST_CASE("census file parses into 36 structurally sound records") {
  const auto& records = testutil::census();
  REQUIRE(records.size() == 36);
  for (const auto& r : records) {
    CHECK(r.vertices.size() == r.edges.size());
    CHECK(r.trailer == -1);
    // Validation passes with no error-severity diagnostics (and the -1
    // trailer means no warnings either).
    CHECK(validate_record(r).empty());
    bool ok = false;
    auto cycles = edge_cycles(r, ok);
    REQUIRE(ok);
    CHECK(cycles.size() == r.component_markers.size());
  }
}

TEST_CASE("census crossing and component counts follow the 11-class layout") {
  const auto& records = testutil::census();
  for (int i = 0; i < 36; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    int number = i + 1;
    int expect_crossings = number <= 2 ? 14 : number <= 14 ? 15 : 16;
    CHECK(static_cast<int>(r.crossing_pairs.size()) == expect_crossings);
    int expect_components = (number >= 19 && number <= 22) ? 3 : 2;
    CHECK(static_cast<int>(r.component_markers.size()) == expect_components);
  }
}

TEST_CASE("serializing the parsed census reproduces the file byte for byte") {
  CHECK(serialize_link_records(testutil::census()) == testutil::census_text());
}

TEST_CASE("parse then serialize round-trips individual records") {
  auto one = testutil::trefoil();
  auto text = serialize_link_records({one});
  auto back = parse_link_records(text);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == one);
  CHECK(serialize_link_records(back) == text);
}

TEST_CASE("empty input parses to zero records") {
  CHECK(parse_link_records("").empty());
  CHECK(parse_link_records("  \n\t ").empty());
}

TEST_CASE("truncation inside a counted block reports count_mismatch") {
  auto text = serialize_link_records({testutil::hopf()});
  // Cut right after the vertex count, inside the vertex block.
  auto cut = text.substr(0, text.find("8\n") + 2);
  try {
    parse_link_records(cut);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::count_mismatch);
    CHECK(e.record_index() == 0);
    CHECK(e.byte_offset() == cut.size());
  }
}

TEST_CASE("truncation before the trailer reports unexpected_end_of_input") {
  auto text = serialize_link_records({testutil::square_unknot()});
  auto cut = text.substr(0, text.rfind("-1"));
  try {
    parse_link_records(cut);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::unexpected_end_of_input);
  }
}

TEST_CASE("non-numeric tokens report invalid_token with a byte offset") {
  try {
    parse_link_records("1\n3 x\n...");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::invalid_token);
    CHECK(e.byte_offset() == 4);
  }
}

TEST_CASE("negative and implausibly large counts are rejected") {
  try {
    parse_link_records("-2\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::negative_count);
  }
  try {
    parse_link_records("2000000\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("a structurally broken record fails parsing with invariant_violation") {
  auto bad = testutil::square_unknot();
  bad.edges[2] = {2, 9};  // vertex index out of range
  try {
    parse_link_records(serialize_link_records({bad}));
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.code() == errc::invariant_violation);
  }
}

TEST_CASE("validate_record flags each defect class") {
  SECTION("vertex index out of range") {
    auto r = testutil::square_unknot();
    r.edges[0].second = 7;
    CHECK(has_code(validate_record(r), diagnostic_code::vertex_index_out_of_range));
  }
  SECTION("edge index out of range in a crossing") {
    auto r = testutil::hopf();
    r.crossing_pairs[0] = {4, 11};
    CHECK(has_code(validate_record(r), diagnostic_code::edge_index_out_of_range));
  }
  SECTION("vertex/edge count mismatch") {
    auto r = testutil::square_unknot();
    r.vertices.push_back({9, 9});
    auto ds = validate_record(r);
    CHECK(has_code(ds, diagnostic_code::vertex_edge_count_mismatch));
  }
  SECTION("edges that do not form disjoint cycles") {
    auto r = testutil::square_unknot();
    r.edges[1] = {0, 2};  // vertex 0 now has out-degree 2, vertex 1 none
    CHECK(has_code(validate_record(r), diagnostic_code::not_disjoint_cycles));
  }
  SECTION("crossing naming the same edge twice") {
    auto r = testutil::hopf();
    r.crossing_pairs[0] = {4, 4};
    CHECK(has_code(validate_record(r), diagnostic_code::crossing_pair_identical));
  }
  SECTION("crossing naming adjacent edges") {
    auto r = testutil::hopf();
    r.crossing_pairs[0] = {0, 1};
    CHECK(has_code(validate_record(r), diagnostic_code::crossing_pair_adjacent));
  }
  SECTION("marker count differing from the cycle count") {
    auto r = testutil::hopf();
    r.component_markers.pop_back();
    CHECK(has_code(validate_record(r), diagnostic_code::marker_count_mismatch));
  }
  SECTION("markers out of order") {
    auto r = testutil::hopf();
    std::swap(r.component_markers[0], r.component_markers[1]);
    auto ds = validate_record(r);
    CHECK((has_code(ds, diagnostic_code::marker_not_increasing) ||
           has_code(ds, diagnostic_code::marker_mismatch)));
  }
  SECTION("marker disagreeing with the cycle partition") {
    auto r = testutil::hopf();
    r.component_markers = {{2, 2}, {7, 7}};
    CHECK(has_code(validate_record(r), diagnostic_code::marker_mismatch));
  }
  SECTION("unusual trailer is a warning, not an error") {
    auto r = testutil::square_unknot();
    r.trailer = 0;
    auto ds = validate_record(r);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == diagnostic_code::unusual_trailer);
    CHECK(ds[0].severity == diagnostic_severity::warning);
    // ... and parsing therefore succeeds.
    auto back = parse_link_records(serialize_link_records({r}));
    REQUIRE(back.size() == 1);
    CHECK(back[0].trailer == 0);
  }
}

TEST_CASE("edge_cycles decomposes multi-component records") {
  bool ok = false;
  auto cycles = edge_cycles(testutil::hopf(), ok);
  REQUIRE(ok);
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(cycles[1] == std::vector<int>{4, 5, 6, 7});

  auto r = testutil::square_unknot();
  r.edges = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};  // two 2-cycles, one marker
  cycles = edge_cycles(r, ok);
  REQUIRE(ok);
  CHECK(cycles.size() == 2);

  r.edges[0] = {0, 0};  // self-loop leaves vertex 1 uncovered
  edge_cycles(r, ok);
  CHECK_FALSE(ok);
}

TEST_CASE("diagnostic_code_name covers every code") {
  CHECK(std::string(diagnostic_code_name(diagnostic_code::marker_mismatch)) ==
        "marker_mismatch");
  CHECK(std::string(diagnostic_code_name(diagnostic_code::unusual_trailer)) ==
        "unusual_trailer");
}
