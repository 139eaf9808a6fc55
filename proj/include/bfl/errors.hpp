#pragma once

// Error taxonomy shared by the whole library.
//
// Every failure the library can signal carries a stable machine-readable
// code (errc) plus a human-readable message.  Parse failures additionally
// carry the record index and byte offset at which reading stopped.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bfl {

enum class errc {
  // tokenizer / record reader
  invalid_token,            // a token that is not a decimal integer
  negative_count,           // a declared count field is negative
  count_mismatch,           // input ended inside a counted block
  unexpected_end_of_input,  // input ended where a count or trailer was required
  invariant_violation,      // a structurally complete record failed validation

  // planar geometry / diagram reconstruction
  degenerate_intersection,  // touching, collinear-overlapping or concurrent segments
  geometric_mismatch,       // computed crossing set differs from the declared one

  // resource limits
  cap_exceeded,             // hard size cap (e.g. state-sum crossing cap)
  budget_exceeded,          // search budget exhausted before completion

  // covers / fingerprints
  invalid_cover_table,      // a coset table failed verification
  incomparable_fingerprints,// fingerprints with different maximum degrees

  // manifest
  manifest_mismatch,        // input disagrees with the manifest expectations

  invalid_argument,         // malformed option or parameter
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_token:             return "invalid_token";
    case errc::negative_count:            return "negative_count";
    case errc::count_mismatch:            return "count_mismatch";
    case errc::unexpected_end_of_input:   return "unexpected_end_of_input";
    case errc::invariant_violation:       return "invariant_violation";
    case errc::degenerate_intersection:   return "degenerate_intersection";
    case errc::geometric_mismatch:        return "geometric_mismatch";
    case errc::cap_exceeded:              return "cap_exceeded";
    case errc::budget_exceeded:           return "budget_exceeded";
    case errc::invalid_cover_table:       return "invalid_cover_table";
    case errc::incomparable_fingerprints: return "incomparable_fingerprints";
    case errc::manifest_mismatch:         return "manifest_mismatch";
    case errc::invalid_argument:          return "invalid_argument";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Reader failure: remembers which record was being read (0-based) and the
// byte offset of the offending token (or of end-of-input).
class parse_error : public error {
 public:
  parse_error(errc code, const std::string& message, std::size_t record_index,
              std::size_t byte_offset)
      : error(code, message + " (record " + std::to_string(record_index) +
                        ", byte " + std::to_string(byte_offset) + ")"),
        record_index_(record_index),
        byte_offset_(byte_offset) {}

  std::size_t record_index() const noexcept { return record_index_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t record_index_;
  std::size_t byte_offset_;
};

}  // namespace bfl
