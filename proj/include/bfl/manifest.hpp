#pragma once

// The census manifest: what the bundled 36-record corpus is expected to
// contain, record by record.  Records are grouped into classes of mutually
// homeomorphic surgery descriptions; each class carries the common crossing
// number (its name's prefix), the component count and the expected first
// homology of the surgered manifold.  Labels name the individual surgery
// descriptions within a class.
//
// An override manifest can be loaded from text with one entry per line:
//
//     record class label crossings components h1
//
// where record is 1-based; '#' starts a comment.

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace bfl {

struct manifest_entry {
  int record = 0;  // 1-based position in the file
  std::string class_id;
  std::string label;
  int crossings = 0;
  int components = 0;
  std::string h1;  // expected homology of the surgered manifold
};

inline const std::vector<manifest_entry>& default_manifest() {
  static const std::vector<manifest_entry> table = [] {
    struct class_row {
      const char* id;
      int size;
      int components;
      const char* h1;
      std::vector<const char*> labels;  // empty: positional b1..bN
    };
    const class_row classes[] = {
        {"14t24", 2, 2, "0", {"T71", "T79"}},
        {"15t16", 4, 2, "0", {"T118", "T119", "T181", "T205"}},
        {"15t19", 4, 2, "0", {}},
        {"15t22", 4, 2, "0", {}},
        {"16t42", 4, 2, "0", {}},
        {"16t56", 4, 3, "Z", {}},
        {"16t140", 4, 2, "0", {}},
        {"16t141", 2, 2, "0", {}},
        {"16t142", 2, 2, "0", {}},
        {"16t149", 4, 2, "0", {}},
        {"16t233", 2, 2, "0", {}},
    };
    std::vector<manifest_entry> t;
    int record = 1;
    for (const auto& c : classes) {
      int crossings = std::stoi(std::string(c.id).substr(0, std::string(c.id).find('t')));
      for (int i = 0; i < c.size; ++i, ++record) {
        manifest_entry e;
        e.record = record;
        e.class_id = c.id;
        e.label = c.labels.empty() ? "b" + std::to_string(i + 1)
                                   : std::string(c.labels[i]);
        e.crossings = crossings;
        e.components = c.components;
        e.h1 = c.h1;
        t.push_back(std::move(e));
      }
    }
    return t;
  }();
  return table;
}

// Parses an override manifest.  Throws error(errc::manifest_mismatch) on
// malformed lines.
inline std::vector<manifest_entry> parse_manifest(std::string_view text) {
  std::vector<manifest_entry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;  // blank or comment-only line
    std::istringstream ls(line);
    manifest_entry e;
    std::string tail;
    if (!(ls >> e.record >> e.class_id >> e.label >> e.crossings >>
          e.components >> e.h1) ||
        (ls >> tail))
      throw error(errc::manifest_mismatch,
                  "malformed manifest line " + std::to_string(lineno));
    out.push_back(std::move(e));
  }
  return out;
}

// Records (1-based) belonging to a class, in manifest order.
inline std::vector<int> records_in_class(
    const std::vector<manifest_entry>& manifest, std::string_view class_id) {
  std::vector<int> out;
  for (const auto& e : manifest)
    if (e.class_id == class_id) out.push_back(e.record);
  if (out.empty())
    throw error(errc::manifest_mismatch,
                "unknown class '" + std::string(class_id) + "'");
  return out;
}

}  // namespace bfl
