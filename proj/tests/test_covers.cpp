// Low-index subgroup search, cover homology, and fingerprints.
//
// The centerpiece oracle enumerates, for each test presentation and degree
// d, every tuple of permutations in S_d (one per generator) that satisfies
// the relators and acts transitively, and counts orbits under simultaneous
// conjugation.  That equals the number of conjugacy classes of index-d
// subgroups, which the backtracking search must reproduce exactly.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace bfl;

namespace {

presentation make(std::vector<std::string> names,
                  std::vector<word> relators) {
  presentation p;
  p.generator_names = std::move(names);
  p.relators = std::move(relators);
  return p;
}

word pw(std::initializer_list<std::pair<int, int>> ls) {
  word w;
  for (auto [g, n] : ls)
    for (int i = 0; i < std::abs(n); ++i) w.push_back({g, n > 0 ? 1 : -1});
  return w;
}

std::vector<std::vector<int>> all_perms(int d) {
  std::vector<int> base(static_cast<std::size_t>(d));
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

std::vector<int> invert(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

int count_classes_brute(const presentation& p, int d) {
  const int g = static_cast<int>(p.generator_count());
  auto perms = all_perms(d);
  const std::size_t np = perms.size();

  std::set<std::vector<int>> canon_seen;
  std::vector<std::size_t> choice(static_cast<std::size_t>(g), 0);
  for (;;) {
    std::vector<const std::vector<int>*> fwd(static_cast<std::size_t>(g));
    std::vector<std::vector<int>> inv(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
      fwd[static_cast<std::size_t>(i)] =
          &perms[choice[static_cast<std::size_t>(i)]];
      inv[static_cast<std::size_t>(i)] =
          invert(perms[choice[static_cast<std::size_t>(i)]]);
    }

    bool satisfies = true;
    for (const word& r : p.relators) {
      for (int x0 = 0; x0 < d && satisfies; ++x0) {
        int x = x0;
        for (const letter& l : r)
          x = l.exp > 0
                  ? (*fwd[static_cast<std::size_t>(l.gen)])
                        [static_cast<std::size_t>(x)]
                  : inv[static_cast<std::size_t>(l.gen)]
                       [static_cast<std::size_t>(x)];
        if (x != x0) satisfies = false;
      }
      if (!satisfies) break;
    }

    if (satisfies) {
      // Transitivity by union of generator orbits from point 0.
      std::vector<char> seen(static_cast<std::size_t>(d), 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int i = 0; i < g; ++i)
          for (int y :
               {(*fwd[static_cast<std::size_t>(i)])[static_cast<std::size_t>(
                    x)],
                inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                    x)]})
            if (!seen[static_cast<std::size_t>(y)]) {
              seen[static_cast<std::size_t>(y)] = 1;
              ++reached;
              stack.push_back(y);
            }
      }
      if (reached == d) {
        // Canonical form: lexicographically least simultaneous conjugate.
        std::vector<int> best;
        for (const auto& sigma : perms) {
          auto sigma_inv = invert(sigma);
          std::vector<int> flat;
          flat.reserve(static_cast<std::size_t>(g * d));
          for (int i = 0; i < g; ++i)
            for (int x = 0; x < d; ++x)
              flat.push_back(
                  sigma[static_cast<std::size_t>((*fwd[static_cast<std::size_t>(
                      i)])[static_cast<std::size_t>(
                      sigma_inv[static_cast<std::size_t>(x)])])]);
          if (best.empty() || flat < best) best = std::move(flat);
        }
        canon_seen.insert(std::move(best));
      }
    }

    // Odometer over perms^g.
    int pos = 0;
    while (pos < g) {
      if (++choice[static_cast<std::size_t>(pos)] < np) break;
      choice[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == g) break;
  }
  return static_cast<int>(canon_seen.size());
}

coset_table cyclic_table_z(int n) {
  // The index-n subgroup of Z = <a | >.
  coset_table t;
  t.degree = n;
  t.generator_count = 1;
  for (int i = 0; i < n; ++i) {
    t.cells.push_back((i + 1) % n);
    t.cells.push_back((i + n - 1) % n);
  }
  return t;
}

}  // namespace

TEST_CASE("search counts match the brute-force conjugacy-class oracle") {
  struct sample {
    const char* tag;
    presentation p;
  };
  const std::vector<sample> samples = {
      {"trivial <a | a>", make({"a"}, {pw({{0, 1}})})},
      {"trivial 2-gen", make({"a", "b"}, {pw({{0, 1}}), pw({{1, 1}})})},
      {"Z", make({"a"}, {})},
      {"Z with redundant gen", make({"a", "b"}, {pw({{0, 1}, {1, -1}})})},
      {"Z/2", make({"a"}, {pw({{0, 2}})})},
      {"Z/3", make({"a"}, {pw({{0, 3}})})},
      {"Z/4", make({"a"}, {pw({{0, 4}})})},
      {"Z/5", make({"a"}, {pw({{0, 5}})})},
      {"Z/6", make({"a"}, {pw({{0, 6}})})},
      {"Z/12", make({"a"}, {pw({{0, 12}})})},
      {"free of rank 2", make({"a", "b"}, {})},
      {"Z x Z", make({"a", "b"},
                     {pw({{0, 1}, {1, 1}, {0, -1}, {1, -1}})})},
      {"Z x Z/2", make({"a", "b"},
                       {pw({{0, 1}, {1, 1}, {0, -1}, {1, -1}}),
                        pw({{1, 2}})})},
      {"Klein bottle", make({"a", "b"},
                            {pw({{0, 1}, {1, 1}, {0, 1}, {1, -1}})})},
      {"Klein bottle, other form", make({"a", "b"}, {pw({{0, 2}, {1, 2}})})},
      {"trefoil knot group", make({"x", "y"}, {pw({{0, 2}, {1, -3}})})},
      {"S3", make({"a", "b"},
                  {pw({{0, 2}}), pw({{1, 3}}),
                   pw({{0, 1}, {1, 1}, {0, 1}, {1, 1}})})},
      {"D4", make({"a", "b"},
                  {pw({{0, 4}}), pw({{1, 2}}),
                   pw({{0, 1}, {1, 1}, {0, 1}, {1, 1}})})},
      {"quaternion", make({"a", "b"},
                          {pw({{0, 4}}), pw({{0, 2}, {1, -2}}),
                           pw({{1, -1}, {0, 1}, {1, 1}, {0, 1}})})},
      {"Z/2 * Z/2", make({"a", "b"}, {pw({{0, 2}}), pw({{1, 2}})})},
      {"Z/3 * Z/2", make({"a", "b"}, {pw({{0, 3}}), pw({{1, 2}})})},
      {"Z/5 * Z/4", make({"a", "b"}, {pw({{0, 5}}), pw({{1, 4}})})},
      {"BS(1,2)", make({"a", "b"},
                       {pw({{1, 1}, {0, 1}, {1, -1}, {0, -2}})})},
      {"A4-style triangle", make({"a", "b"},
                                 {pw({{0, 2}}), pw({{1, 3}}),
                                  pw({{0, 1}, {1, 1}, {0, 1}, {1, 1},
                                      {0, 1}, {1, 1}})})},
  };
  for (const auto& s : samples) {
    INFO(s.tag);
    for (int d = 1; d <= 5; ++d) {
      INFO("degree " << d);
      auto tables = low_index_subgroups(s.p, d, subgroup_mode::exact_index);
      for (const auto& t : tables) {
        std::string reason;
        REQUIRE(t.degree == d);
        REQUIRE(verify_table(s.p, t, &reason));
      }
      REQUIRE(static_cast<int>(tables.size()) == count_classes_brute(s.p, d));
    }
  }
}

TEST_CASE("frozen subgroup counts") {
  auto z = make({"a"}, {});
  CHECK(low_index_subgroups(z, 5, subgroup_mode::exact_index).size() == 1);
  CHECK(low_index_subgroups(z, 5, subgroup_mode::up_to_index).size() == 5);

  auto z2 = make({"a", "b"}, {pw({{0, 1}, {1, 1}, {0, -1}, {1, -1}})});
  CHECK(low_index_subgroups(z2, 3, subgroup_mode::exact_index).size() == 4);

  auto tref = make({"x", "y"}, {pw({{0, 2}, {1, -3}})});
  const int expected[] = {1, 1, 2, 3, 2};
  for (int d = 1; d <= 5; ++d)
    CHECK(low_index_subgroups(tref, d, subgroup_mode::exact_index).size() ==
          static_cast<std::size_t>(expected[d - 1]));
}

TEST_CASE("verify_table rejects broken tables") {
  auto z = make({"a"}, {});
  auto t = cyclic_table_z(3);
  std::string reason;
  REQUIRE(verify_table(z, t, &reason));

  auto bad = t;
  bad.cells[1] = 1;  // inverse column no longer matches
  CHECK_FALSE(verify_table(z, bad, &reason));
  CHECK(reason == "inverse columns inconsistent");

  coset_table idle;
  idle.degree = 2;
  idle.generator_count = 1;
  idle.cells = {0, 0, 1, 1};  // identity action: not transitive
  CHECK_FALSE(verify_table(z, idle, &reason));
  CHECK(reason == "action is not transitive");

  auto c2 = make({"a"}, {pw({{0, 2}})});
  CHECK_FALSE(verify_table(c2, cyclic_table_z(3), &reason));
  CHECK(reason == "a relator does not act trivially");

  auto f2 = make({"a", "b"}, {});
  CHECK_FALSE(verify_table(f2, t, &reason));
  CHECK(reason == "generator count mismatch");
}

TEST_CASE("rewriting a cover presentation") {
  SECTION("the index-1 cover is the group itself") {
    auto tref = make({"x", "y"}, {pw({{0, 2}, {1, -3}})});
    coset_table t;
    t.degree = 1;
    t.generator_count = 2;
    t.cells = {0, 0, 0, 0};
    auto sub = reidemeister_schreier(tref, t);
    CHECK(sub.generator_count() == 2);
    CHECK(sub.generator_names[0] == "x@0");
    REQUIRE(sub.relators.size() == 1);
    CHECK(abelianization(sub) == abelianization(tref));
  }
  SECTION("index-5 subgroup of Z is Z") {
    auto z = make({"a"}, {});
    auto sub = reidemeister_schreier(z, cyclic_table_z(5));
    CHECK(sub.generator_count() == 1);
    CHECK(sub.relators.empty());
    CHECK(cover_homology(z, cyclic_table_z(5)).to_string() == "Z");
  }
  SECTION("index-2 subgroup of Z/6 is Z/3") {
    auto c6 = make({"a"}, {pw({{0, 6}})});
    auto t = cyclic_table_z(2);
    CHECK(cover_homology(c6, t).to_string() == "Z/3");
  }
  SECTION("a broken table is rejected") {
    auto z = make({"a"}, {});
    coset_table bad;
    bad.degree = 2;
    bad.generator_count = 1;
    bad.cells = {0, 0, 1, 1};
    try {
      reidemeister_schreier(z, bad);
      FAIL("expected error");
    } catch (const error& e) {
      CHECK(e.code() == errc::invalid_cover_table);
    }
  }
}

TEST_CASE("degree-1 fingerprints carry the abelianization") {
  auto tref = make({"x", "y"}, {pw({{0, 2}, {1, -3}})});
  auto fp = fingerprint(tref, 1);
  REQUIRE(fp.degrees.size() == 1);
  REQUIRE(fp.degrees[0].homology.size() == 1);
  CHECK(fp.degrees[0].homology[0] == abelianization(tref));
}

TEST_CASE("+3 surgery on the right trefoil has the order-24 fingerprint") {
  // The filled group is binary tetrahedral: one subgroup class each at
  // indices 1, 3, 4 and none at 2 or 5, with these cover homologies.
  auto d = build_diagram(testutil::trefoil());
  auto fp = fingerprint(filled_group(d), 5);
  REQUIRE(fp.all_complete());
  REQUIRE(fp.degrees.size() == 5);
  auto str = [&](int deg) {
    std::string s;
    for (const auto& h : fp.degrees[static_cast<std::size_t>(deg - 1)].homology) {
      if (!s.empty()) s += " | ";
      s += h.to_string();
    }
    return s;
  };
  CHECK(str(1) == "Z/3");
  CHECK(str(2) == "");
  CHECK(str(3) == "Z/2 + Z/2");
  CHECK(str(4) == "Z/6");
  CHECK(str(5) == "");
}

TEST_CASE("tables returned for a raw presentation verify against it") {
  // The search simplifies internally; returned tables must still be actions
  // of the caller's generators.
  auto d = build_diagram(testutil::trefoil());
  auto raw = filled_group(d);
  REQUIRE(raw.generator_count() == 3);
  auto tables = low_index_subgroups(raw, 4, subgroup_mode::up_to_index);
  REQUIRE(tables.size() == 3);  // indices 1, 3, 4
  for (const auto& t : tables) {
    std::string reason;
    CHECK(t.generator_count == 3);
    REQUIRE(verify_table(raw, t, &reason));
  }
  // Homology computed through the raw presentation matches the fingerprint.
  CHECK(cover_homology(raw, tables[1]).to_string() == "Z/2 + Z/2");
  CHECK(cover_homology(raw, tables[2]).to_string() == "Z/6");
}

TEST_CASE("fingerprints are invariant under presentation simplification") {
  auto d = build_diagram(testutil::trefoil());
  auto raw = filled_group(d);
  auto slim = tietze_simplify(raw);
  auto fa = fingerprint(raw, 3);
  auto fb = fingerprint(slim, 3);
  auto res = compare_fingerprints(fa, fb);
  CHECK(res.kind == verdict::indistinguishable);
  CHECK(res.all_complete);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(fa.degrees[i].homology == fb.degrees[i].homology);
}

TEST_CASE("search results are deterministic") {
  auto tref = make({"x", "y"}, {pw({{0, 2}, {1, -3}})});
  auto r1 = low_index_search(tref, 4, subgroup_mode::up_to_index, {});
  auto r2 = low_index_search(tref, 4, subgroup_mode::up_to_index, {});
  CHECK(r1.tables == r2.tables);
  CHECK(r1.complete);
  CHECK(r1.definitions_used == r2.definitions_used);
}

TEST_CASE("exhausting the budget is reported, not hidden") {
  auto f2 = make({"a", "b"}, {});
  auto r = low_index_search(f2, 5, subgroup_mode::up_to_index, {10});
  CHECK_FALSE(r.complete);
  try {
    low_index_subgroups(f2, 5, subgroup_mode::up_to_index, {10});
    FAIL("expected error");
  } catch (const error& e) {
    CHECK(e.code() == errc::budget_exceeded);
  }
  // An incomplete degree poisons completeness of the whole fingerprint.
  auto fp = fingerprint(f2, 4, {50});
  CHECK_FALSE(fp.all_complete());
}

TEST_CASE("comparing fingerprints") {
  auto z = make({"a"}, {});
  auto tref = make({"x", "y"}, {pw({{0, 2}, {1, -3}})});
  auto fz = fingerprint(z, 3);
  auto ft = fingerprint(tref, 3);
  auto res = compare_fingerprints(fz, ft);
  CHECK(res.kind == verdict::distinguished);
  CHECK(res.degree == 2);  // Z has one index-2 cover, the trefoil's differs

  auto same = compare_fingerprints(ft, ft);
  CHECK(same.kind == verdict::indistinguishable);
  CHECK(same.degree == 3);
  CHECK(same.all_complete);

  try {
    compare_fingerprints(fingerprint(z, 2), fingerprint(z, 3));
    FAIL("expected error");
  } catch (const error& e) {
    CHECK(e.code() == errc::incomparable_fingerprints);
  }
}
