#pragma once

// Kauffman bracket of a diagram by exact state-sum evaluation.
//
// Every crossing is smoothed in one of two ways; a state is a choice for
// all crossings.  A state with a type-A smoothings, b type-B smoothings and
// l resulting loops contributes A^(a-b) * delta^(l-1), where
// delta = -A^2 - A^-2.  The bracket is framing-sensitive by design (no
// writhe normalization), matching its role as a blackboard-framed
// invariant: flipping the global chirality convention maps A to A^-1.

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "exact_algebra.hpp"

namespace bfl {

// Laurent polynomial in one variable A with arbitrary-precision integer
// coefficients.
class laurent_poly {
 public:
  laurent_poly() = default;

  static laurent_poly monomial(long long degree, bigint coefficient = 1) {
    laurent_poly p;
    if (coefficient != 0) p.coef_[degree] = std::move(coefficient);
    return p;
  }
  static laurent_poly one() { return monomial(0); }

  bool is_zero() const { return coef_.empty(); }

  const std::map<long long, bigint>& terms() const { return coef_; }

  laurent_poly& operator+=(const laurent_poly& o) {
    for (const auto& [d, c] : o.coef_) {
      bigint& t = coef_[d];
      t += c;
      if (t == 0) coef_.erase(d);
    }
    return *this;
  }

  friend laurent_poly operator+(laurent_poly a, const laurent_poly& b) {
    a += b;
    return a;
  }

  friend laurent_poly operator*(const laurent_poly& a, const laurent_poly& b) {
    laurent_poly r;
    for (const auto& [da, ca] : a.coef_)
      for (const auto& [db, cb] : b.coef_) {
        bigint& t = r.coef_[da + db];
        t += ca * cb;
        if (t == 0) r.coef_.erase(da + db);
      }
    return r;
  }

  // A -> A^-1 (degree negation).
  laurent_poly mirror() const {
    laurent_poly r;
    for (const auto& [d, c] : coef_) r.coef_[-d] = c;
    return r;
  }

  laurent_poly pow(std::size_t n) const {
    laurent_poly r = one();
    for (std::size_t i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  // "0", or terms in decreasing degree: "-A^4 + 2 - A^-4".
  std::string to_string() const {
    if (coef_.empty()) return "0";
    std::string s;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
      const auto& [d, c] = *it;
      bigint a = abs(c);
      if (s.empty())
        s += c < 0 ? "-" : "";
      else
        s += c < 0 ? " - " : " + ";
      bool unit = a == 1;
      if (!unit || d == 0) s += a.str();
      if (d != 0) {
        s += "A";
        if (d != 1) s += "^" + std::to_string(d);
      }
    }
    return s;
  }

  friend bool operator==(const laurent_poly&, const laurent_poly&) = default;

 private:
  std::map<long long, bigint> coef_;  // degree -> nonzero coefficient
};

// delta = -A^2 - A^-2, the value of a closed loop.
inline laurent_poly bracket_loop_value() {
  laurent_poly d;
  d += laurent_poly::monomial(2, -1);
  d += laurent_poly::monomial(-2, -1);
  return d;
}

namespace detail {

struct dsu {
  std::vector<int> parent;
  explicit dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Evaluates the bracket by summing over all 2^c states.  Throws
// error(errc::cap_exceeded) when the diagram has more than max_crossings
// crossings, since the state count grows exponentially.
inline laurent_poly kauffman_bracket(const link_diagram& d,
                                     std::size_t max_crossings = 20) {
  const std::size_t nx = d.crossing_count();
  if (nx > max_crossings)
    throw error(errc::cap_exceeded,
                std::to_string(nx) + " crossings exceeds the state-sum cap of " +
                    std::to_string(max_crossings));

  // Components with no crossing at all each contribute a free loop.
  std::size_t free_loops = 0;
  for (const auto& evs : d.events)
    if (evs.empty()) ++free_loops;

  // Segments: one per event, running from that event to the next along its
  // component.  Endpoint ids: 2*s is the segment's start (at its event),
  // 2*s+1 its end (at the following event).
  std::vector<std::size_t> seg_base(d.component_count(), 0);
  std::size_t total_segments = 0;
  for (std::size_t c = 0; c < d.component_count(); ++c) {
    seg_base[c] = total_segments;
    total_segments += d.events[c].size();
  }

  // Endpoints meeting at each passage: the incoming segment's end and the
  // outgoing segment's start.
  auto incoming_end = [&](int comp, int event) {
    const std::size_t m = d.events[comp].size();
    std::size_t seg =
        seg_base[comp] + (static_cast<std::size_t>(event) + m - 1) % m;
    return 2 * seg + 1;
  };
  auto outgoing_start = [&](int comp, int event) {
    return 2 * (seg_base[comp] + static_cast<std::size_t>(event));
  };

  struct smoothing_ends {
    std::size_t u_in, u_out, o_in, o_out;
  };
  std::vector<smoothing_ends> ends(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const auto& x = d.crossings[i];
    ends[i] = {incoming_end(x.under_component, x.under_event),
               outgoing_start(x.under_component, x.under_event),
               incoming_end(x.over_component, x.over_event),
               outgoing_start(x.over_component, x.over_event)};
  }

  const laurent_poly delta = bracket_loop_value();
  // Pre-compute delta powers up to the maximum possible loop count.
  std::vector<laurent_poly> delta_pow(total_segments + free_loops + 2);
  delta_pow[0] = laurent_poly::one();
  for (std::size_t i = 1; i < delta_pow.size(); ++i)
    delta_pow[i] = delta_pow[i - 1] * delta;

  laurent_poly result;
  const std::uint64_t states = std::uint64_t(1) << nx;
  detail::dsu uf(2 * total_segments);
  for (std::uint64_t state = 0; state < states; ++state) {
    uf = detail::dsu(2 * total_segments);
    // Each segment connects its two endpoints.
    for (std::size_t s = 0; s < total_segments; ++s) uf.unite(2 * s, 2 * s + 1);
    long long a_minus_b = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      bool b_smoothing = (state >> i) & 1;
      a_minus_b += b_smoothing ? -1 : 1;
      const auto& e = ends[i];
      // Rotating the over-strand counterclockwise onto the under-strand
      // sweeps the two A-regions; opening them joins, at a positive
      // crossing, each incoming end to the other strand's outgoing end.
      // At a negative crossing the two smoothing types swap.  (Checked
      // against the right-handed trefoil: -A^5 - A^-3 + A^-7.)
      bool join_in_in = (d.crossings[i].sign < 0) != b_smoothing;
      if (join_in_in) {
        uf.unite(static_cast<int>(e.u_in), static_cast<int>(e.o_in));
        uf.unite(static_cast<int>(e.u_out), static_cast<int>(e.o_out));
      } else {
        uf.unite(static_cast<int>(e.u_in), static_cast<int>(e.o_out));
        uf.unite(static_cast<int>(e.u_out), static_cast<int>(e.o_in));
      }
    }
    std::size_t loops = free_loops;
    for (std::size_t p = 0; p < 2 * total_segments; ++p)
      if (uf.find(static_cast<int>(p)) == static_cast<int>(p)) ++loops;
    // The empty diagram has no loop and bracket 1.
    result += laurent_poly::monomial(a_minus_b) *
              delta_pow[loops == 0 ? 0 : loops - 1];
  }
  return result;
}

}  // namespace bfl
