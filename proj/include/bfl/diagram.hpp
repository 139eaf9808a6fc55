#pragma once

// Reconstruction of blackboard-framed link diagrams from raw records.
//
// A record stores straight-line arcs with integer endpoints plus, for each
// crossing, the unordered pair of edges involved.  Building a diagram means
// recomputing every pairwise edge intersection exactly, checking that the
// computed crossing set equals the declared one, orienting each crossing,
// and cutting every component into arcs at its under-passes.
//
// Which element of a declared crossing pair passes underneath is a global
// convention.  first_under reads each pair as (under, over); first_over
// reads it as (over, under).  Flipping the convention mirrors the diagram:
// every crossing sign negates, and so does the linking matrix.
//
// Crossing sign: +1 when (over direction, under direction) is a positively
// oriented basis of the y-up plane, i.e. det(over_dir, under_dir) > 0.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact_algebra.hpp"
#include "geometry.hpp"
#include "linkfile.hpp"

namespace bfl {

enum class chirality { first_under, first_over };

inline const char* chirality_name(chirality c) {
  return c == chirality::first_under ? "first_under" : "first_over";
}

struct crossing {
  int under_edge = -1;
  int over_edge = -1;
  rational under_param;  // position along the under edge, in (0, 1)
  rational over_param;   // position along the over edge, in (0, 1)
  rational_point where;
  int sign = 0;  // +1 or -1

  // Location of the two passages in the per-component event streams.
  int under_component = -1, under_event = -1;
  int over_component = -1, over_event = -1;
};

// One passage of a strand through a crossing, as met along a component.
struct strand_event {
  int crossing;  // index into link_diagram::crossings
  bool under;    // true: passes underneath; false: passes over
};

// A maximal run of a component between consecutive under-passes, stored as
// parameter intervals on the underlying edges.
struct arc_piece {
  int edge;
  rational from, to;
};

struct diagram_arc {
  std::vector<arc_piece> pieces;
};

struct link_diagram {
  chirality handedness = chirality::first_under;
  std::vector<grid_point> vertices;
  std::vector<std::pair<int, int>> edges;

  // components[c] lists edge indices in traversal order, starting from the
  // component's lowest-numbered edge; components are ordered by that edge.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of_edge;

  std::vector<crossing> crossings;  // in declared record order

  // events[c] lists every passage of component c through a crossing, in
  // traversal order from the component's basepoint (the tail of its first
  // edge).
  std::vector<std::vector<strand_event>> events;

  // arcs[c] are the under-pass-to-under-pass runs of component c.  Arc 0 is
  // the one containing the basepoint; arcs follow in traversal order.  A
  // component that never passes underneath forms a single closed arc.
  std::vector<std::vector<diagram_arc>> arcs;

  // arc_of_event[c][i]: for an over event, the arc passing over; for an
  // under event, the incoming arc (the outgoing arc is the next one
  // cyclically).
  std::vector<std::vector<int>> arc_of_event;

  std::size_t component_count() const { return components.size(); }
  std::size_t crossing_count() const { return crossings.size(); }
  std::size_t arc_count(std::size_t c) const { return arcs[c].size(); }
};

// Sum of crossing signs over self-crossings of component c: the blackboard
// framing coefficient of that component.
inline long long self_writhe(const link_diagram& d, std::size_t c) {
  long long w = 0;
  for (const auto& x : d.crossings)
    if (x.under_component == static_cast<int>(c) &&
        x.over_component == static_cast<int>(c))
      w += x.sign;
  return w;
}

// Sum of all crossing signs.
inline long long total_writhe(const link_diagram& d) {
  long long w = 0;
  for (const auto& x : d.crossings) w += x.sign;
  return w;
}

// Symmetric integer matrix with self-writhes on the diagonal and pairwise
// linking numbers (half the signed sum of mutual crossings) elsewhere.
inline int_matrix linking_matrix(const link_diagram& d) {
  const std::size_t n = d.component_count();
  int_matrix m(n, n);
  for (const auto& x : d.crossings) {
    std::size_t i = static_cast<std::size_t>(x.under_component);
    std::size_t j = static_cast<std::size_t>(x.over_component);
    m(i, j) += x.sign;
    if (i != j) m(j, i) += x.sign;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) % 2 != 0)
        throw error(errc::geometric_mismatch,
                    "odd signed mutual crossing sum between closed curves");
      m(i, j) /= 2;
      m(j, i) = m(i, j);
    }
  return m;
}

// First homology of the 3-manifold given by blackboard-framed surgery on
// the diagram: the cokernel of its linking matrix.
inline abelian_group h1_from_linking(const int_matrix& linking) {
  return cokernel_invariants(linking);
}

// Builds the diagram.  Throws error(errc::invariant_violation) when the
// record fails validation, error(errc::degenerate_intersection) when the
// drawing is not in general position, and error(errc::geometric_mismatch)
// when the exactly computed crossing set differs from the declared one.
inline link_diagram build_diagram(const raw_link_record& r,
                                  chirality handedness = chirality::first_under) {
  for (const auto& diag : validate_record(r))
    if (diag.severity == diagnostic_severity::error)
      throw error(errc::invariant_violation, diag.message);

  link_diagram d;
  d.handedness = handedness;
  d.vertices.reserve(r.vertices.size());
  for (auto [x, y] : r.vertices) d.vertices.push_back(grid_point{x, y});
  d.edges = r.edges;

  bool cyc_ok = false;
  d.components = edge_cycles(r, cyc_ok);
  d.component_of_edge.assign(d.edges.size(), -1);
  for (std::size_t c = 0; c < d.components.size(); ++c)
    for (int e : d.components[c]) d.component_of_edge[e] = static_cast<int>(c);

  // Recompute every transversal intersection between non-adjacent edges.
  const int ne = static_cast<int>(d.edges.size());
  auto endpoints = [&](int e) {
    return std::pair{d.vertices[d.edges[e].first],
                     d.vertices[d.edges[e].second]};
  };
  auto adjacent = [&](int e, int f) {
    auto [a, b] = d.edges[e];
    auto [c, g] = d.edges[f];
    return a == c || a == g || b == c || b == g;
  };
  std::map<std::pair<int, int>, segment_crossing> found;
  for (int e = 0; e < ne; ++e)
    for (int f = e + 1; f < ne; ++f) {
      if (adjacent(e, f)) continue;
      auto [p0, p1] = endpoints(e);
      auto [q0, q1] = endpoints(f);
      if (auto hit = intersect_segments(p0, p1, q0, q1))
        found.emplace(std::pair{e, f}, *hit);
    }

  // The computed crossing set must equal the declared one.
  std::map<std::pair<int, int>, int> declared;
  for (auto [a, b] : r.crossing_pairs)
    ++declared[{std::min(a, b), std::max(a, b)}];
  for (auto& [pair, count] : declared) {
    if (count > 1)
      throw error(errc::geometric_mismatch,
                  "edges " + std::to_string(pair.first) + "," +
                      std::to_string(pair.second) + " declared crossing " +
                      std::to_string(count) + " times");
    if (!found.count(pair))
      throw error(errc::geometric_mismatch,
                  "declared crossing of edges " + std::to_string(pair.first) +
                      "," + std::to_string(pair.second) +
                      " does not occur geometrically");
  }
  for (auto& [pair, hit] : found)
    if (!declared.count(pair))
      throw error(errc::geometric_mismatch,
                  "geometric crossing of edges " + std::to_string(pair.first) +
                      "," + std::to_string(pair.second) + " is not declared");

  // Orient the declared crossings.
  d.crossings.reserve(r.crossing_pairs.size());
  for (auto [a, b] : r.crossing_pairs) {
    crossing x;
    x.under_edge = handedness == chirality::first_under ? a : b;
    x.over_edge = handedness == chirality::first_under ? b : a;
    const auto& hit = found.at({std::min(a, b), std::max(a, b)});
    bool under_is_lower = x.under_edge == std::min(a, b);
    x.under_param = under_is_lower ? hit.t_first : hit.t_second;
    x.over_param = under_is_lower ? hit.t_second : hit.t_first;
    x.where = hit.where;
    auto dir = [&](int e) {
      auto [p0, p1] = endpoints(e);
      return grid_point{p1.x - p0.x, p1.y - p0.y};
    };
    grid_point od = dir(x.over_edge), ud = dir(x.under_edge);
    bigint det = bigint(od.x) * ud.y - bigint(od.y) * ud.x;
    x.sign = det > 0 ? 1 : -1;
    d.crossings.push_back(std::move(x));
  }

  // Order the passages along each edge, then along each component.
  std::vector<std::vector<std::pair<rational, std::pair<int, bool>>>> per_edge(
      d.edges.size());
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& x = d.crossings[i];
    per_edge[x.under_edge].push_back(
        {x.under_param, {static_cast<int>(i), true}});
    per_edge[x.over_edge].push_back(
        {x.over_param, {static_cast<int>(i), false}});
  }
  for (auto& ev : per_edge) {
    std::sort(ev.begin(), ev.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < ev.size(); ++i)
      if (ev[i - 1].first == ev[i].first)
        throw error(errc::degenerate_intersection,
                    "two crossings at the same point of an edge");
  }

  d.events.resize(d.components.size());
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    for (int e : d.components[c])
      for (const auto& [param, ev] : per_edge[e]) {
        auto [xi, under] = ev;
        int pos = static_cast<int>(d.events[c].size());
        d.events[c].push_back(strand_event{xi, under});
        if (under) {
          d.crossings[xi].under_component = static_cast<int>(c);
          d.crossings[xi].under_event = pos;
        } else {
          d.crossings[xi].over_component = static_cast<int>(c);
          d.crossings[xi].over_event = pos;
        }
      }
  }

  // Cut each component into arcs at its under-passes.
  d.arcs.resize(d.components.size());
  d.arc_of_event.resize(d.components.size());
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const auto& cyc = d.components[c];
    const auto& evs = d.events[c];
    std::size_t under_count = 0;
    for (const auto& ev : evs)
      if (ev.under) ++under_count;
    const std::size_t na = under_count == 0 ? 1 : under_count;

    auto& labels = d.arc_of_event[c];
    labels.reserve(evs.size());
    std::size_t cur = 0;
    for (const auto& ev : evs) {
      labels.push_back(static_cast<int>(cur));
      if (ev.under) cur = (cur + 1) % na;
    }

    auto& arcs = d.arcs[c];
    if (under_count == 0) {
      diagram_arc whole;
      for (int e : cyc) whole.pieces.push_back({e, rational(0), rational(1)});
      arcs.push_back(std::move(whole));
      continue;
    }

    // Under-pass boundary points in traversal order: (position in cycle,
    // parameter on that edge).
    std::vector<std::pair<std::size_t, rational>> bounds;
    {
      std::vector<std::size_t> pos_of_edge(d.edges.size());
      for (std::size_t p = 0; p < cyc.size(); ++p) pos_of_edge[cyc[p]] = p;
      for (const auto& ev : evs)
        if (ev.under) {
          const auto& x = d.crossings[ev.crossing];
          bounds.emplace_back(pos_of_edge[x.under_edge], x.under_param);
        }
    }

    const std::size_t L = cyc.size();
    for (std::size_t j = 0; j < under_count; ++j) {
      const auto& start = bounds[(j + under_count - 1) % under_count];
      const auto& end = bounds[j];
      diagram_arc arc;
      bool same_event = under_count == 1;
      if (!same_event && start.first == end.first &&
          start.second < end.second) {
        arc.pieces.push_back({cyc[start.first], start.second, end.second});
      } else {
        arc.pieces.push_back({cyc[start.first], start.second, rational(1)});
        for (std::size_t q = (start.first + 1) % L; q != end.first;
             q = (q + 1) % L)
          arc.pieces.push_back({cyc[q], rational(0), rational(1)});
        arc.pieces.push_back({cyc[end.first], rational(0), end.second});
      }
      arcs.push_back(std::move(arc));
    }
  }
  return d;
}

}  // namespace bfl
