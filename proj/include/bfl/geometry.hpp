#pragma once

// Exact planar geometry over the rationals.
//
// Link projections are straight-line drawings with integer vertex
// coordinates in a y-up plane.  Crossing locations are therefore rational;
// everything here is computed with exact arithmetic so that two segments
// either provably cross, provably miss, or are provably degenerate.

#include <algorithm>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace bfl {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

struct grid_point {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const grid_point&, const grid_point&) = default;
};

struct rational_point {
  rational x;
  rational y;
  friend bool operator==(const rational_point&, const rational_point&) = default;
};

// z-component of the cross product of (b - a) and (c - a); positive when
// a, b, c make a left turn in y-up coordinates.
inline bigint orient(const grid_point& a, const grid_point& b,
                     const grid_point& c) {
  bigint ux = bigint(b.x) - a.x, uy = bigint(b.y) - a.y;
  bigint vx = bigint(c.x) - a.x, vy = bigint(c.y) - a.y;
  return ux * vy - uy * vx;
}

struct segment_crossing {
  rational_point where;  // the common interior point
  rational t_first;      // parameter along the first segment, in (0, 1)
  rational t_second;     // parameter along the second segment, in (0, 1)
};

namespace detail {

inline bool bounding_boxes_overlap(const grid_point& p0, const grid_point& p1,
                                   const grid_point& q0, const grid_point& q1) {
  auto lohi = [](long long a, long long b) {
    return a <= b ? std::pair{a, b} : std::pair{b, a};
  };
  auto [pxl, pxh] = lohi(p0.x, p1.x);
  auto [qxl, qxh] = lohi(q0.x, q1.x);
  auto [pyl, pyh] = lohi(p0.y, p1.y);
  auto [qyl, qyh] = lohi(q0.y, q1.y);
  return pxl <= qxh && qxl <= pxh && pyl <= qyh && qyl <= pyh;
}

}  // namespace detail

// Transversal interior intersection of segments p0-p1 and q0-q1.
//
// Returns the crossing when the two open segments meet at a single point.
// Returns nullopt when the closed segments are disjoint.  Configurations a
// general-position diagram must not contain -- a zero-length segment,
// collinear segments with overlapping extent, or contact at a segment
// endpoint -- raise error(errc::degenerate_intersection).
inline std::optional<segment_crossing> intersect_segments(
    const grid_point& p0, const grid_point& p1, const grid_point& q0,
    const grid_point& q1) {
  if (p0 == p1 || q0 == q1)
    throw error(errc::degenerate_intersection, "zero-length segment");

  bigint d1 = orient(p0, p1, q0);
  bigint d2 = orient(p0, p1, q1);
  bigint d3 = orient(q0, q1, p0);
  bigint d4 = orient(q0, q1, p1);

  if (d1 == 0 && d2 == 0) {
    // Collinear: any bounding-box contact means overlapping extent.
    if (detail::bounding_boxes_overlap(p0, p1, q0, q1))
      throw error(errc::degenerate_intersection,
                  "collinear segments with overlapping extent");
    return std::nullopt;
  }

  bool p_straddles = (d3 < 0 && d4 > 0) || (d3 > 0 && d4 < 0);
  bool q_straddles = (d1 < 0 && d2 > 0) || (d1 > 0 && d2 < 0);
  if (p_straddles && q_straddles) {
    // Proper crossing.  The signed area of q(t) against the line p0-p1 is
    // linear in t with values d1 at t=0 and d2 at t=1, so it vanishes at
    // t = d1/(d1-d2); symmetrically along p.
    rational tq = rational(d1) / (rational(d1) - rational(d2));
    rational tp = rational(d3) / (rational(d3) - rational(d4));
    rational wx = rational(p0.x) + tp * (rational(p1.x) - rational(p0.x));
    rational wy = rational(p0.y) + tp * (rational(p1.y) - rational(p0.y));
    return segment_crossing{rational_point{wx, wy}, tp, tq};
  }

  // Not a proper crossing.  Distinguish a clean miss from endpoint contact:
  // contact happens exactly when some endpoint lies on the other closed
  // segment.
  auto on_segment = [](const grid_point& a, const grid_point& b,
                       const grid_point& c) {
    // c collinear with a-b and within the bounding box => c on closed a-b.
    if (orient(a, b, c) != 0) return false;
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
  };
  if (on_segment(p0, p1, q0) || on_segment(p0, p1, q1) ||
      on_segment(q0, q1, p0) || on_segment(q0, q1, p1))
    throw error(errc::degenerate_intersection,
                "segment contact at an endpoint");
  return std::nullopt;
}

}  // namespace bfl
