#pragma once

// Finite-index subgroups, covers and their homology.
//
// low_index_subgroups enumerates, up to conjugacy, the subgroups of index
// at most (or exactly) n of a finitely presented group, as coset tables:
// transitive right actions of the group on {0..n-1} with 0 stabilized by
// the subgroup.  The search is a deterministic backtrack over partial
// tables with deduction propagation; conjugates are removed by keeping only
// tables that are lexicographically least among all base-point
// relabelings.
//
// Because the search cost grows exponentially with the generator count, the
// search always runs on an internally simplified presentation of the same
// group (see detail::prepare_for_search); the recorded eliminations then
// extend each found action back to the caller's generators, so returned
// tables are valid for the input presentation as given.
//
// reidemeister_schreier rewrites a presentation to one of the subgroup
// itself (equivalently, of the corresponding cover): Schreier generators
// are the non-tree edges of the coset graph over a breadth-first spanning
// tree, and each relator is rewritten once per coset.
//
// A cover fingerprint collects, degree by degree, the sorted first-homology
// invariants of all covers of that degree; fingerprints of the same depth
// are compared degree by degree to decide whether two groups (and hence two
// manifolds) are distinguished.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_algebra.hpp"
#include "presentation.hpp"

namespace bfl {

// Right action of every generator (and inverse) on cosets 0..degree-1.
// Column 2g holds the action of generator g, column 2g+1 of its inverse.
struct coset_table {
  int degree = 0;
  int generator_count = 0;
  std::vector<int> cells;  // degree rows * 2*generator_count columns

  int cell(int coset, int column) const {
    return cells[static_cast<std::size_t>(coset) * 2 * generator_count +
                 static_cast<std::size_t>(column)];
  }
  int apply(int coset, int gen, int exp) const {
    return cell(coset, 2 * gen + (exp > 0 ? 0 : 1));
  }

  friend bool operator==(const coset_table&, const coset_table&) = default;
};

// Checks that a table is a genuine transitive action satisfying every
// relator.  Sets `reason` (when given) on failure.
inline bool verify_table(const presentation& p, const coset_table& t,
                         std::string* reason = nullptr) {
  auto fail = [&](const std::string& m) {
    if (reason) *reason = m;
    return false;
  };
  const int n = t.degree;
  const int k = static_cast<int>(p.generator_count());
  if (t.generator_count != k) return fail("generator count mismatch");
  if (n <= 0) return fail("empty table");
  if (t.cells.size() != static_cast<std::size_t>(n) * 2 * k)
    return fail("cell count mismatch");
  for (int v : t.cells)
    if (v < 0 || v >= n) return fail("cell out of range");
  for (int c = 0; c < n; ++c)
    for (int g = 0; g < k; ++g) {
      if (t.cell(t.cell(c, 2 * g), 2 * g + 1) != c)
        return fail("inverse columns inconsistent");
      if (t.cell(t.cell(c, 2 * g + 1), 2 * g) != c)
        return fail("inverse columns inconsistent");
    }
  // Transitivity.
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int col = 0; col < 2 * k; ++col) {
      int y = t.cell(x, col);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        q.push_back(y);
      }
    }
  }
  if (reached != n) return fail("action is not transitive");
  // Relators act trivially.
  for (const word& r : p.relators)
    for (int c = 0; c < n; ++c) {
      int x = c;
      for (const letter& l : r) x = t.apply(x, l.gen, l.exp);
      if (x != c) return fail("a relator does not act trivially");
    }
  return true;
}

enum class subgroup_mode { exact_index, up_to_index };

struct search_budget {
  // Number of cell definitions the search may try before giving up.
  std::uint64_t max_definitions = 1'000'000'000;
};

struct low_index_result {
  std::vector<coset_table> tables;
  bool complete = true;  // false when the budget ran out first
  std::uint64_t definitions_used = 0;
};

namespace detail {

class low_index_searcher {
 public:
  low_index_searcher(const presentation& p, int max_index,
                     std::uint64_t budget)
      : k_(static_cast<int>(p.generator_count())),
        max_index_(max_index),
        budget_(budget),
        relators_(p.relators) {
    for (word& r : relators_) r = cyclic_reduce(r);
    // Scan short relators first: they contradict earliest.
    std::stable_sort(relators_.begin(), relators_.end(),
                     [](const word& a, const word& b) {
                       return a.size() < b.size();
                     });
    table_.assign(static_cast<std::size_t>(max_index_) * 2 * k_, -1);
    n_cosets_ = 1;
  }

  low_index_result run() {
    low_index_result out;
    try {
      solve();
      out.complete = true;
    } catch (const error& e) {
      if (e.code() != errc::budget_exceeded) throw;
      out.complete = false;
    }
    out.definitions_used = definitions_;
    std::sort(results_.begin(), results_.end(),
              [](const coset_table& a, const coset_table& b) {
                if (a.degree != b.degree) return a.degree < b.degree;
                return a.cells < b.cells;
              });
    out.tables = std::move(results_);
    return out;
  }

 private:
  int cell(int c, int col) const {
    return table_[static_cast<std::size_t>(c) * 2 * k_ + col];
  }
  void set_cell(int c, int col, int v) {
    table_[static_cast<std::size_t>(c) * 2 * k_ + col] = v;
  }

  // Defines c.col = d together with the inverse cell; both must be free or
  // already equal.  Returns false on contradiction.
  bool deduce(int c, int col, int d, std::deque<int>& touched) {
    int cur = cell(c, col);
    if (cur != -1) return cur == d;
    if (cell(d, col ^ 1) != -1) return false;
    set_cell(c, col, d);
    trail_.emplace_back(c, col);
    set_cell(d, col ^ 1, c);
    trail_.emplace_back(d, col ^ 1);
    touched.push_back(c);
    touched.push_back(d);
    return true;
  }

  // Scans relator r at coset x; fills a single one-cell gap when found.
  bool scan(const word& r, int x, std::deque<int>& touched) {
    const int len = static_cast<int>(r.size());
    int f = x, i = 0;
    while (i < len) {
      int col = 2 * r[i].gen + (r[i].exp > 0 ? 0 : 1);
      int next = cell(f, col);
      if (next == -1) break;
      f = next;
      ++i;
    }
    if (i == len) return f == x;
    int b = x, j = len;
    while (j > i + 1) {
      int col = 2 * r[j - 1].gen + (r[j - 1].exp > 0 ? 1 : 0);
      int prev = cell(b, col);
      if (prev == -1) break;
      b = prev;
      --j;
    }
    if (j == i + 1) {
      int col = 2 * r[i].gen + (r[i].exp > 0 ? 0 : 1);
      return deduce(f, col, b, touched);
    }
    return true;
  }

  // Re-scans every relator at every touched coset until stable.
  bool propagate(std::deque<int>& touched) {
    while (!touched.empty()) {
      int x = touched.front();
      touched.pop_front();
      for (const word& r : relators_)
        if (!scan(r, x, touched)) return false;
    }
    return true;
  }

  // Conservative first-in-class pruning: compares the table relabeled from
  // every alternative base point against the current table, prefix-wise in
  // row-major order; gives up on a base point at the first undefined cell.
  bool partially_canonical() const {
    for (int p = 1; p < n_cosets_; ++p) {
      std::vector<int> mapped(n_cosets_, -1);
      std::vector<int> order{p};
      mapped[p] = 0;
      int next = 1;
      bool decided = false;
      for (std::size_t ni = 0; ni < order.size() && !decided; ++ni) {
        int old = order[ni];
        for (int col = 0; col < 2 * k_; ++col) {
          int t = cell(old, col);
          int orig = cell(static_cast<int>(ni), col);
          if (t == -1 || orig == -1) {
            decided = true;
            break;
          }
          int mt = mapped[t];
          if (mt == -1) {
            mapped[t] = mt = next++;
            order.push_back(t);
          }
          if (mt < orig) return false;
          if (mt > orig) {
            decided = true;
            break;
          }
        }
      }
    }
    return true;
  }

  std::vector<int> flatten() const {
    std::vector<int> f(table_.begin(),
                       table_.begin() +
                           static_cast<std::size_t>(n_cosets_) * 2 * k_);
    return f;
  }

  std::vector<int> relabel_from(int p) const {
    std::vector<int> mapped(n_cosets_, -1);
    std::vector<int> order{p};
    mapped[p] = 0;
    int next = 1;
    for (std::size_t ni = 0; ni < order.size(); ++ni)
      for (int col = 0; col < 2 * k_; ++col) {
        int t = cell(order[ni], col);
        if (mapped[t] == -1) {
          mapped[t] = next++;
          order.push_back(t);
        }
      }
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n_cosets_) * 2 * k_);
    for (int ni = 0; ni < n_cosets_; ++ni)
      for (int col = 0; col < 2 * k_; ++col)
        flat.push_back(mapped[cell(order[ni], col)]);
    return flat;
  }

  bool is_canonical() const {
    std::vector<int> flat0 = flatten();
    for (int p = 1; p < n_cosets_; ++p)
      if (relabel_from(p) < flat0) return false;
    return true;
  }

  bool table_satisfies_relators() const {
    for (int x = 0; x < n_cosets_; ++x)
      for (const word& r : relators_) {
        int f = x;
        for (const letter& l : r)
          f = cell(f, 2 * l.gen + (l.exp > 0 ? 0 : 1));
        if (f != x) return false;
      }
    return true;
  }

  std::pair<int, int> first_undefined() const {
    for (int c = 0; c < n_cosets_; ++c)
      for (int col = 0; col < 2 * k_; ++col)
        if (cell(c, col) == -1) return {c, col};
    return {-1, -1};
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [c, col] = trail_.back();
      trail_.pop_back();
      set_cell(c, col, -1);
    }
  }

  void solve() {
    auto [c, col] = first_undefined();
    if (c == -1) {
      if (table_satisfies_relators() && is_canonical()) {
        coset_table t;
        t.degree = n_cosets_;
        t.generator_count = k_;
        t.cells = flatten();
        results_.push_back(std::move(t));
      }
      return;
    }
    std::vector<int> candidates;
    for (int d = 0; d < n_cosets_; ++d)
      if (cell(d, col ^ 1) == -1) candidates.push_back(d);
    if (n_cosets_ < max_index_) candidates.push_back(n_cosets_);

    for (int d : candidates) {
      if (++definitions_ > budget_)
        throw error(errc::budget_exceeded,
                    "low-index search exceeded " + std::to_string(budget_) +
                        " cell definitions");
      const std::size_t mark = trail_.size();
      const int saved_n = n_cosets_;
      if (d == n_cosets_) ++n_cosets_;
      std::deque<int> touched;
      bool ok = deduce(c, col, d, touched);
      if (ok && propagate(touched) && partially_canonical()) solve();
      undo_to(mark);
      n_cosets_ = saved_n;
    }
  }

  int k_;
  int max_index_;
  std::uint64_t budget_;
  std::uint64_t definitions_ = 0;
  std::vector<word> relators_;
  std::vector<int> table_;
  int n_cosets_ = 1;
  std::vector<std::pair<int, int>> trail_;
  std::vector<coset_table> results_;
};

// Extends a coset table over the prepared (simplified) generators to one
// over the original generators.  Surviving generators keep their columns;
// eliminated generators act as their recorded defining words, resolved in
// reverse elimination order (each definition only references generators
// that survive or were eliminated later).
inline coset_table lift_table(const coset_table& t, const simplify_trace& trace,
                              std::size_t original_gens) {
  const int n = t.degree;
  std::vector<std::vector<int>> fwd(original_gens), inv(original_gens);
  auto set_perm = [&](int id, std::vector<int> f) {
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) b[static_cast<std::size_t>(f[c])] = c;
    fwd[static_cast<std::size_t>(id)] = std::move(f);
    inv[static_cast<std::size_t>(id)] = std::move(b);
  };
  for (std::size_t g = 0; g < trace.stable_of_current.size(); ++g) {
    std::vector<int> f(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) f[c] = t.cell(c, 2 * static_cast<int>(g));
    set_perm(trace.stable_of_current[g], std::move(f));
  }
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    std::vector<int> f(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
      int x = c;
      for (const letter& l : it->stable_rep)
        x = (l.exp > 0 ? fwd : inv)[static_cast<std::size_t>(l.gen)][x];
      f[c] = x;
    }
    set_perm(it->stable_gen, std::move(f));
  }
  coset_table out;
  out.degree = n;
  out.generator_count = static_cast<int>(original_gens);
  out.cells.resize(static_cast<std::size_t>(n) * 2 * original_gens);
  for (int c = 0; c < n; ++c)
    for (std::size_t g = 0; g < original_gens; ++g) {
      out.cells[static_cast<std::size_t>(c) * 2 * original_gens + 2 * g] =
          fwd[g][c];
      out.cells[static_cast<std::size_t>(c) * 2 * original_gens + 2 * g + 1] =
          inv[g][c];
    }
  return out;
}

}  // namespace detail

// Enumerates coset tables of subgroups up to conjugacy, either of index
// exactly n or of every index 1..n.  Deterministic: results are sorted by
// degree, then by table cells.  Throws error(errc::budget_exceeded) when
// the definition budget runs out; use low_index_search to keep the partial
// result instead.
inline low_index_result low_index_search(const presentation& p, int n,
                                         subgroup_mode mode,
                                         search_budget budget = {}) {
  if (n < 1)
    throw error(errc::invalid_argument, "subgroup index bound must be >= 1");
  auto prep = detail::prepare_for_search(p);
  detail::low_index_searcher s(prep.group, n, budget.max_definitions);
  low_index_result r = s.run();
  if (mode == subgroup_mode::exact_index) {
    std::erase_if(r.tables,
                  [n](const coset_table& t) { return t.degree != n; });
  }
  for (coset_table& t : r.tables)
    t = detail::lift_table(t, prep.trace, p.generator_count());
  std::sort(r.tables.begin(), r.tables.end(),
            [](const coset_table& a, const coset_table& b) {
              if (a.degree != b.degree) return a.degree < b.degree;
              return a.cells < b.cells;
            });
  return r;
}

inline std::vector<coset_table> low_index_subgroups(const presentation& p,
                                                    int n, subgroup_mode mode,
                                                    search_budget budget = {}) {
  low_index_result r = low_index_search(p, n, mode, budget);
  if (!r.complete)
    throw error(errc::budget_exceeded,
                "low-index search exceeded its definition budget");
  return std::move(r.tables);
}

// Presentation of the subgroup described by a coset table (the fundamental
// group of the corresponding cover).  Schreier generators are named
// "<name>@<coset>" for each non-tree edge (coset, generator) of the coset
// graph over a breadth-first spanning tree rooted at coset 0; every relator
// of p is rewritten at every coset.
inline presentation reidemeister_schreier(const presentation& p,
                                          const coset_table& t) {
  std::string reason;
  if (!verify_table(p, t, &reason))
    throw error(errc::invalid_cover_table, reason);

  const int n = t.degree;
  const int k = static_cast<int>(p.generator_count());

  // Spanning tree: BFS from coset 0, trying columns in order.
  std::vector<char> tree(static_cast<std::size_t>(n) * 2 * k, 0);
  std::vector<char> visited(n, 0);
  std::deque<int> q{0};
  visited[0] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int col = 0; col < 2 * k; ++col) {
      int y = t.cell(x, col);
      if (visited[y]) continue;
      visited[y] = 1;
      tree[static_cast<std::size_t>(x) * 2 * k + col] = 1;
      tree[static_cast<std::size_t>(y) * 2 * k + (col ^ 1)] = 1;
      q.push_back(y);
    }
  }

  presentation out;
  std::vector<int> schreier_gen(static_cast<std::size_t>(n) * k, -1);
  for (int x = 0; x < n; ++x)
    for (int g = 0; g < k; ++g) {
      if (tree[static_cast<std::size_t>(x) * 2 * k + 2 * g]) continue;
      schreier_gen[static_cast<std::size_t>(x) * k + g] =
          static_cast<int>(out.generator_names.size());
      out.generator_names.push_back(p.generator_names[g] + "@" +
                                    std::to_string(x));
    }

  for (const word& r : p.relators)
    for (int x0 = 0; x0 < n; ++x0) {
      word w;
      int x = x0;
      for (const letter& l : r) {
        if (l.exp > 0) {
          int y = t.cell(x, 2 * l.gen);
          if (!tree[static_cast<std::size_t>(x) * 2 * k + 2 * l.gen])
            w.push_back(
                {schreier_gen[static_cast<std::size_t>(x) * k + l.gen], 1});
          x = y;
        } else {
          int y = t.cell(x, 2 * l.gen + 1);
          if (!tree[static_cast<std::size_t>(y) * 2 * k + 2 * l.gen])
            w.push_back(
                {schreier_gen[static_cast<std::size_t>(y) * k + l.gen], -1});
          x = y;
        }
      }
      w = cyclic_reduce(w);
      if (!w.empty()) out.relators.push_back(std::move(w));
    }
  return out;
}

// First homology (abelianization) of the cover described by a coset table.
inline abelian_group cover_homology(const presentation& p,
                                    const coset_table& t) {
  return abelianization(reidemeister_schreier(p, t));
}

struct degree_covers {
  int degree = 0;
  bool complete = true;             // false when the budget ran out here
  std::vector<abelian_group> homology;  // sorted by fingerprint_order
};

struct cover_fingerprint {
  int max_degree = 0;
  std::vector<degree_covers> degrees;  // degrees 1..max_degree in order

  bool all_complete() const {
    for (const auto& d : degrees)
      if (!d.complete) return false;
    return true;
  }
};

// Cover homology of every degree-d cover for d = 1..max_degree.  A degree
// whose subgroup search exhausts the budget is flagged incomplete and
// carries the homology of the covers found so far.  The presentation is
// simplified once up front; since the subgroups found are the same up to
// the recorded isomorphism, their homology is computed directly on the
// simplified side.
inline cover_fingerprint fingerprint(const presentation& p, int max_degree,
                                     search_budget budget = {}) {
  if (max_degree < 1)
    throw error(errc::invalid_argument, "fingerprint depth must be >= 1");
  auto prep = detail::prepare_for_search(p);
  cover_fingerprint fp;
  fp.max_degree = max_degree;
  for (int d = 1; d <= max_degree; ++d) {
    detail::low_index_searcher s(prep.group, d, budget.max_definitions);
    low_index_result found = s.run();
    std::erase_if(found.tables,
                  [d](const coset_table& t) { return t.degree != d; });
    degree_covers dc;
    dc.degree = d;
    dc.complete = found.complete;
    for (const coset_table& t : found.tables)
      dc.homology.push_back(cover_homology(prep.group, t));
    std::sort(dc.homology.begin(), dc.homology.end(), fingerprint_order);
    fp.degrees.push_back(std::move(dc));
  }
  return fp;
}

enum class verdict { distinguished, indistinguishable };

inline const char* verdict_name(verdict v) {
  return v == verdict::distinguished ? "distinguished" : "indistinguishable";
}

struct compare_result {
  verdict kind = verdict::indistinguishable;
  // Distinguished: the first degree whose homology multisets differ.
  // Indistinguishable: the common maximum degree.
  int degree = 0;
  // True when every compared degree was complete on both sides; an
  // indistinguishable verdict certifies nothing about incomplete degrees.
  bool all_complete = true;
};

// Compares two fingerprints of equal depth degree by degree.  Only degrees
// complete on both sides can distinguish; a difference at an incomplete
// degree is never trusted.
inline compare_result compare_fingerprints(const cover_fingerprint& a,
                                           const cover_fingerprint& b) {
  if (a.max_degree != b.max_degree)
    throw error(errc::incomparable_fingerprints,
                "fingerprints have different maximum degrees (" +
                    std::to_string(a.max_degree) + " vs " +
                    std::to_string(b.max_degree) + ")");
  compare_result res;
  res.degree = a.max_degree;
  for (int d = 1; d <= a.max_degree; ++d) {
    const degree_covers& da = a.degrees[d - 1];
    const degree_covers& db = b.degrees[d - 1];
    if (!da.complete || !db.complete) {
      res.all_complete = false;
      continue;
    }
    if (da.homology != db.homology) {
      res.kind = verdict::distinguished;
      res.degree = d;
      return res;
    }
  }
  res.kind = verdict::indistinguishable;
  return res;
}

}  // namespace bfl
