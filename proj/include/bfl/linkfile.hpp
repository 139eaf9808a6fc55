#pragma once

// Reader, writer and validator for the plain-text link-projection format.
//
// A file is a whitespace-separated stream of decimal integers holding one
// or more records.  Each record is laid out as
//
//   component-count
//   (last-vertex last-edge) per component          -- the component markers
//   vertex-count
//   (x y) per vertex                                -- integer coordinates
//   edge-count
//   (tail head) per edge                            -- vertex indices
//   crossing-count
//   (first second) per crossing                     -- edge indices
//   trailer                                         -- conventionally -1
//
// Vertices and edges are numbered 0..n-1 in file order.  The edges form
// disjoint directed cycles, one per link component; each component occupies
// a contiguous index block and its marker names the last vertex and last
// edge of that block.  Each crossing names the two edges that cross; which
// of the pair goes under is a chirality convention chosen when the diagram
// is built, not part of this file model.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bfl {

struct raw_link_record {
  std::vector<std::pair<int, int>> component_markers;      // (last vertex, last edge)
  std::vector<std::pair<long long, long long>> vertices;   // (x, y)
  std::vector<std::pair<int, int>> edges;                  // (tail, head)
  std::vector<std::pair<int, int>> crossing_pairs;         // (first, second) edges
  long long trailer = -1;

  friend bool operator==(const raw_link_record&, const raw_link_record&) = default;
};

enum class diagnostic_severity { warning, error };

enum class diagnostic_code {
  vertex_index_out_of_range,   // an edge endpoint is not a valid vertex index
  edge_index_out_of_range,     // a crossing names an edge index out of range
  vertex_edge_count_mismatch,  // |vertices| != |edges|
  not_disjoint_cycles,         // edges do not form disjoint cycles covering
                               // every vertex with in/out degree one
  crossing_pair_identical,     // a crossing names the same edge twice
  crossing_pair_adjacent,      // a crossing names edges sharing an endpoint
  marker_count_mismatch,       // marker count != number of edge cycles
  marker_not_increasing,       // marker values not strictly increasing
  marker_mismatch,             // a marker disagrees with the cycle partition
  unusual_trailer,             // trailer is not -1 (warning only)
};

inline const char* diagnostic_code_name(diagnostic_code c) {
  switch (c) {
    case diagnostic_code::vertex_index_out_of_range:  return "vertex_index_out_of_range";
    case diagnostic_code::edge_index_out_of_range:    return "edge_index_out_of_range";
    case diagnostic_code::vertex_edge_count_mismatch: return "vertex_edge_count_mismatch";
    case diagnostic_code::not_disjoint_cycles:        return "not_disjoint_cycles";
    case diagnostic_code::crossing_pair_identical:    return "crossing_pair_identical";
    case diagnostic_code::crossing_pair_adjacent:     return "crossing_pair_adjacent";
    case diagnostic_code::marker_count_mismatch:      return "marker_count_mismatch";
    case diagnostic_code::marker_not_increasing:      return "marker_not_increasing";
    case diagnostic_code::marker_mismatch:            return "marker_mismatch";
    case diagnostic_code::unusual_trailer:            return "unusual_trailer";
  }
  return "unknown";
}

struct diagnostic {
  diagnostic_code code;
  diagnostic_severity severity;
  std::string message;
};

// Decomposes the edge list into directed cycles.  Returns one vector of edge
// indices per cycle, each starting at its lowest edge index, cycles ordered
// by that index.  Returns an empty result and sets ok=false when the edges
// do not form disjoint cycles covering every vertex exactly once in and out.
inline std::vector<std::vector<int>> edge_cycles(const raw_link_record& r,
                                                 bool& ok) {
  ok = false;
  const int nv = static_cast<int>(r.vertices.size());
  const int ne = static_cast<int>(r.edges.size());
  std::vector<int> out_edge(nv, -1), in_count(nv, 0);
  for (int e = 0; e < ne; ++e) {
    auto [tail, head] = r.edges[e];
    if (tail < 0 || tail >= nv || head < 0 || head >= nv) return {};
    if (out_edge[tail] != -1) return {};  // two edges leave the same vertex
    out_edge[tail] = e;
    ++in_count[head];
  }
  for (int v = 0; v < nv; ++v)
    if (out_edge[v] == -1 || in_count[v] != 1) return {};

  std::vector<std::vector<int>> cycles;
  std::vector<char> used(ne, 0);
  for (int e0 = 0; e0 < ne; ++e0) {
    if (used[e0]) continue;
    std::vector<int> cyc;
    int e = e0;
    do {
      if (used[e]) return {};  // paths merged; not disjoint cycles
      used[e] = 1;
      cyc.push_back(e);
      e = out_edge[r.edges[e].second];
    } while (e != e0);
    cycles.push_back(std::move(cyc));
  }
  ok = true;
  return cycles;
}

// Checks every structural invariant of a record.  The result is empty (or
// warnings only) exactly when the record is well-formed.
inline std::vector<diagnostic> validate_record(const raw_link_record& r) {
  std::vector<diagnostic> out;
  auto fail = [&out](diagnostic_code c, std::string msg) {
    out.push_back({c, diagnostic_severity::error, std::move(msg)});
  };

  const int nv = static_cast<int>(r.vertices.size());
  const int ne = static_cast<int>(r.edges.size());

  if (nv != ne)
    fail(diagnostic_code::vertex_edge_count_mismatch,
         std::to_string(nv) + " vertices but " + std::to_string(ne) + " edges");

  bool indices_ok = true;
  for (int e = 0; e < ne; ++e) {
    auto [tail, head] = r.edges[e];
    if (tail < 0 || tail >= nv || head < 0 || head >= nv) {
      fail(diagnostic_code::vertex_index_out_of_range,
           "edge " + std::to_string(e) + " references vertex outside 0.." +
               std::to_string(nv - 1));
      indices_ok = false;
    }
  }
  for (std::size_t c = 0; c < r.crossing_pairs.size(); ++c) {
    auto [a, b] = r.crossing_pairs[c];
    if (a < 0 || a >= ne || b < 0 || b >= ne) {
      fail(diagnostic_code::edge_index_out_of_range,
           "crossing " + std::to_string(c) + " references edge outside 0.." +
               std::to_string(ne - 1));
      indices_ok = false;
    } else {
      if (a == b)
        fail(diagnostic_code::crossing_pair_identical,
             "crossing " + std::to_string(c) + " names edge " +
                 std::to_string(a) + " twice");
      else {
        auto ea = r.edges[a], eb = r.edges[b];
        if (ea.first == eb.first || ea.first == eb.second ||
            ea.second == eb.first || ea.second == eb.second)
          fail(diagnostic_code::crossing_pair_adjacent,
               "crossing " + std::to_string(c) + " names adjacent edges " +
                   std::to_string(a) + " and " + std::to_string(b));
      }
    }
  }

  if (indices_ok && nv == ne) {
    bool cyc_ok = false;
    auto cycles = edge_cycles(r, cyc_ok);
    if (!cyc_ok)
      fail(diagnostic_code::not_disjoint_cycles,
           "edges do not decompose into disjoint vertex-covering cycles");
    else {
      if (r.component_markers.size() != cycles.size())
        fail(diagnostic_code::marker_count_mismatch,
             std::to_string(r.component_markers.size()) + " markers for " +
                 std::to_string(cycles.size()) + " cycles");
      else {
        // Each marker must name the (last vertex, last edge) of its cycle's
        // contiguous index block, in increasing order.
        int prev = -1;
        bool increasing = true;
        for (auto [mv, me] : r.component_markers) {
          if (mv <= prev) increasing = false;
          prev = mv;
        }
        if (!increasing)
          fail(diagnostic_code::marker_not_increasing,
               "component markers are not strictly increasing");

        for (std::size_t i = 0; i < cycles.size(); ++i) {
          int max_edge = -1, max_vertex = -1;
          int min_edge = static_cast<int>(r.edges.size());
          for (int e : cycles[i]) {
            max_edge = std::max(max_edge, e);
            min_edge = std::min(min_edge, e);
            max_vertex = std::max(max_vertex, r.edges[e].first);
            max_vertex = std::max(max_vertex, r.edges[e].second);
          }
          // Contiguity: the cycle's edges must fill [min_edge, max_edge].
          bool contiguous =
              max_edge - min_edge + 1 == static_cast<int>(cycles[i].size());
          auto [mv, me] = r.component_markers[i];
          if (!contiguous || mv != max_vertex || me != max_edge)
            fail(diagnostic_code::marker_mismatch,
                 "marker " + std::to_string(i) + " = (" + std::to_string(mv) +
                     ", " + std::to_string(me) +
                     ") does not match its cycle block");
        }
      }
    }
  }

  if (r.trailer != -1)
    out.push_back({diagnostic_code::unusual_trailer,
                   diagnostic_severity::warning,
                   "trailer is " + std::to_string(r.trailer) +
                       " instead of -1"});
  return out;
}

namespace detail {

class token_reader {
 public:
  explicit token_reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t offset() const { return pos_; }
  void set_record(std::size_t r) { record_ = r; }

  // Reads one signed decimal integer.  `context` names the field for error
  // messages; `inside_block` selects the error code used at end-of-input.
  long long next(const char* context, bool inside_block) {
    skip_ws();
    if (pos_ >= text_.size()) {
      if (inside_block)
        throw parse_error(errc::count_mismatch,
                          std::string("input ended inside ") + context,
                          record_, pos_);
      throw parse_error(errc::unexpected_end_of_input,
                        std::string("input ended where ") + context +
                            " was expected",
                        record_, pos_);
    }
    std::size_t start = pos_;
    bool neg = false;
    if (text_[pos_] == '-' || text_[pos_] == '+') {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw parse_error(errc::invalid_token,
                        std::string("expected an integer for ") + context,
                        record_, start);
    long long value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ < text_.size() &&
        !std::isspace(static_cast<unsigned char>(text_[pos_])))
      throw parse_error(errc::invalid_token,
                        std::string("malformed integer for ") + context,
                        record_, start);
    return neg ? -value : value;
  }

  // Reads a declared count: a non-negative integer.
  int next_count(const char* context) {
    std::size_t at = pos_;
    long long v = next(context, /*inside_block=*/false);
    if (v < 0)
      throw parse_error(errc::negative_count,
                        std::string(context) + " is negative", record_, at);
    if (v > 1'000'000)
      throw parse_error(errc::invalid_argument,
                        std::string(context) + " is implausibly large",
                        record_, at);
    return static_cast<int>(v);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t record_ = 0;
};

}  // namespace detail

// Parses every record in `text`.  Throws parse_error on malformed input and
// on records that fail validation (error-severity diagnostics); warning
// diagnostics such as an unusual trailer do not block parsing.
inline std::vector<raw_link_record> parse_link_records(std::string_view text) {
  detail::token_reader in(text);
  std::vector<raw_link_record> records;
  while (!in.at_end()) {
    in.set_record(records.size());
    raw_link_record r;
    int nc = in.next_count("component count");
    r.component_markers.reserve(nc);
    for (int i = 0; i < nc; ++i) {
      int a = static_cast<int>(in.next("component marker block", true));
      int b = static_cast<int>(in.next("component marker block", true));
      r.component_markers.emplace_back(a, b);
    }
    int nv = in.next_count("vertex count");
    r.vertices.reserve(nv);
    for (int i = 0; i < nv; ++i) {
      long long x = in.next("vertex block", true);
      long long y = in.next("vertex block", true);
      r.vertices.emplace_back(x, y);
    }
    int ne = in.next_count("edge count");
    r.edges.reserve(ne);
    for (int i = 0; i < ne; ++i) {
      int a = static_cast<int>(in.next("edge block", true));
      int b = static_cast<int>(in.next("edge block", true));
      r.edges.emplace_back(a, b);
    }
    int nx = in.next_count("crossing count");
    r.crossing_pairs.reserve(nx);
    for (int i = 0; i < nx; ++i) {
      int a = static_cast<int>(in.next("crossing block", true));
      int b = static_cast<int>(in.next("crossing block", true));
      r.crossing_pairs.emplace_back(a, b);
    }
    r.trailer = in.next("record trailer", false);

    for (const auto& d : validate_record(r))
      if (d.severity == diagnostic_severity::error)
        throw parse_error(errc::invariant_violation, d.message, records.size(),
                          in.offset());
    records.push_back(std::move(r));
  }
  return records;
}

// Writes records in the canonical layout: counts bare, marker/edge/crossing
// pairs as %4d %4d, vertex pairs as %5d %5d, a -1 trailer, and a blank line
// between consecutive records.  parse -> serialize reproduces a canonical
// file byte for byte.
inline std::string serialize_link_records(
    const std::vector<raw_link_record>& records) {
  std::string out;
  char buf[64];
  auto pair4 = [&](long long a, long long b) {
    std::snprintf(buf, sizeof buf, "%4lld %4lld\n", a, b);
    out += buf;
  };
  auto pair5 = [&](long long a, long long b) {
    std::snprintf(buf, sizeof buf, "%5lld %5lld\n", a, b);
    out += buf;
  };
  bool first = true;
  for (const auto& r : records) {
    if (!first) out += '\n';
    first = false;
    out += std::to_string(r.component_markers.size());
    out += '\n';
    for (auto [a, b] : r.component_markers) pair4(a, b);
    out += std::to_string(r.vertices.size());
    out += '\n';
    for (auto [x, y] : r.vertices) pair5(x, y);
    out += std::to_string(r.edges.size());
    out += '\n';
    for (auto [a, b] : r.edges) pair4(a, b);
    out += std::to_string(r.crossing_pairs.size());
    out += '\n';
    for (auto [a, b] : r.crossing_pairs) pair4(a, b);
    out += std::to_string(r.trailer);
    out += '\n';
  }
  return out;
}

}  // namespace bfl
