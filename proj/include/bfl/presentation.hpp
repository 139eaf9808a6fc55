#pragma once

// Finite group presentations from framed link diagrams.
//
// wirtinger_presentation: one generator per arc (a small loop passing under
// that arc), one relator per crossing.  With incoming under-arc a, outgoing
// under-arc b, over-arc o and crossing sign e, the relator is
//
//     b^-1 o^e a o^-e
//
// longitude_words: for each component, the word read off by traversing the
// component once and recording, at every under-pass, the over-arc raised to
// the opposite of the crossing sign.  With the blackboard framing this word
// is the surgery (longitude) relator of the component.
//
// filled_group: Wirtinger presentation plus one longitude relator per
// component -- a presentation of the fundamental group of the 3-manifold
// obtained by blackboard-framed surgery on the link.
//
// tietze_simplify: deterministic presentation shrinking that preserves the
// group up to isomorphism.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "exact_algebra.hpp"

namespace bfl {

// One letter of a group word: generator index with exponent +1 or -1.
struct letter {
  int gen;
  int exp;
  friend bool operator==(const letter&, const letter&) = default;
  friend auto operator<=>(const letter&, const letter&) = default;
};

using word = std::vector<letter>;

inline word inverse_word(const word& w) {
  word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back({it->gen, -it->exp});
  return r;
}

// Cancels adjacent inverse pairs until none remain.
inline word free_reduce(const word& w) {
  word r;
  r.reserve(w.size());
  for (const letter& l : w) {
    if (!r.empty() && r.back().gen == l.gen && r.back().exp == -l.exp)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

// Free reduction plus removal of cancelling first/last letters, so the
// result is a shortest representative of the cyclic word.
inline word cyclic_reduce(word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front().gen == w.back().gen &&
         w.front().exp == -w.back().exp) {
    w.erase(w.begin());
    w.pop_back();
    w = free_reduce(w);
  }
  return w;
}

// Canonical representative of a relator viewed as an unoriented cyclic
// word: the lexicographically least rotation of the word or of its inverse.
inline word cyclic_canonical(const word& w0) {
  word w = cyclic_reduce(w0);
  if (w.empty()) return w;
  word best = w;
  word inv = inverse_word(w);
  for (const word* base : {&w, &inv}) {
    for (std::size_t r = 0; r < base->size(); ++r) {
      word rot(base->begin() + r, base->end());
      rot.insert(rot.end(), base->begin(), base->begin() + r);
      if (rot < best) best = rot;
    }
  }
  return best;
}

struct presentation {
  std::vector<std::string> generator_names;
  std::vector<word> relators;

  std::size_t generator_count() const { return generator_names.size(); }
};

inline std::string word_to_string(const word& w,
                                  const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string s;
  for (const letter& l : w) {
    if (!s.empty()) s += ' ';
    s += names[l.gen];
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

// Plain-text export: one line with comma-separated generator names, then
// one relator per line in letter-exponent notation.
inline std::string to_text(const presentation& p) {
  std::string s;
  for (std::size_t i = 0; i < p.generator_names.size(); ++i) {
    if (i) s += ", ";
    s += p.generator_names[i];
  }
  s += '\n';
  for (const word& r : p.relators) {
    s += word_to_string(r, p.generator_names);
    s += '\n';
  }
  return s;
}

// Generators of the diagram's arc groupoid are numbered component by
// component: generator id = arc_base(c) + arc index within component c.
inline std::vector<std::size_t> arc_bases(const link_diagram& d) {
  std::vector<std::size_t> base(d.component_count() + 1, 0);
  for (std::size_t c = 0; c < d.component_count(); ++c)
    base[c + 1] = base[c] + d.arc_count(c);
  return base;
}

inline presentation wirtinger_presentation(const link_diagram& d) {
  presentation p;
  auto base = arc_bases(d);
  for (std::size_t c = 0; c < d.component_count(); ++c)
    for (std::size_t a = 0; a < d.arc_count(c); ++a)
      p.generator_names.push_back("c" + std::to_string(c) + "a" +
                                  std::to_string(a));

  for (const auto& x : d.crossings) {
    const std::size_t cu = static_cast<std::size_t>(x.under_component);
    const std::size_t co = static_cast<std::size_t>(x.over_component);
    const std::size_t na = d.arc_count(cu);
    int a_in = d.arc_of_event[cu][x.under_event];
    int a_out = static_cast<int>((static_cast<std::size_t>(a_in) + 1) % na);
    int o = d.arc_of_event[co][x.over_event];
    int ga = static_cast<int>(base[cu]) + a_in;
    int gb = static_cast<int>(base[cu]) + a_out;
    int go = static_cast<int>(base[co]) + o;
    // b^-1 o^e a o^-e
    p.relators.push_back(free_reduce(
        word{{gb, -1}, {go, x.sign}, {ga, 1}, {go, -x.sign}}));
  }
  return p;
}

// Longitude word of each component under the blackboard framing, read from
// the component's basepoint.  start_event[c] (optional) rotates the reading
// to begin at the given event index instead; any rotation changes the word
// only by conjugation.
inline std::vector<word> longitude_words(
    const link_diagram& d, const std::vector<std::size_t>& start_event = {}) {
  auto base = arc_bases(d);
  std::vector<word> out;
  for (std::size_t c = 0; c < d.component_count(); ++c) {
    const auto& evs = d.events[c];
    word w;
    const std::size_t m = evs.size();
    const std::size_t s0 = start_event.empty() ? 0 : start_event[c] % std::max<std::size_t>(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& ev = evs[(s0 + i) % m];
      if (!ev.under) continue;
      const auto& x = d.crossings[ev.crossing];
      int go = static_cast<int>(base[static_cast<std::size_t>(x.over_component)]) +
               d.arc_of_event[x.over_component][x.over_event];
      w.push_back({go, -x.sign});
    }
    out.push_back(free_reduce(w));
  }
  return out;
}

// Fundamental group of the closed 3-manifold obtained by blackboard-framed
// surgery: the Wirtinger presentation with every longitude word added as a
// relator.
inline presentation filled_group(const link_diagram& d) {
  presentation p = wirtinger_presentation(d);
  for (word& w : longitude_words(d)) p.relators.push_back(std::move(w));
  return p;
}

// Integer abelianization matrix: one row per relator, one column per
// generator, entry = exponent sum.
inline int_matrix relation_matrix(const presentation& p) {
  int_matrix m(p.relators.size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (const letter& l : p.relators[i])
      m(i, static_cast<std::size_t>(l.gen)) += l.exp;
  return m;
}

inline abelian_group abelianization(const presentation& p) {
  return cokernel_invariants(relation_matrix(p));
}

namespace detail {

// Cyclically reduces all relators, drops empty ones, and removes duplicates
// (up to rotation and inversion), keeping first occurrences in order.
inline void normalize_presentation(presentation& p) {
  std::vector<word> kept;
  std::vector<word> canon_seen;
  for (const word& r : p.relators) {
    word red = cyclic_reduce(r);
    if (red.empty()) continue;
    word canon = cyclic_canonical(red);
    if (std::find(canon_seen.begin(), canon_seen.end(), canon) !=
        canon_seen.end())
      continue;
    canon_seen.push_back(std::move(canon));
    kept.push_back(std::move(red));
  }
  p.relators = std::move(kept);
}

// Substitutes gen := rep in w (and gen^-1 := rep^-1), freely reducing.
inline word substitute(const word& w, int gen, const word& rep) {
  word out;
  for (const letter& l : w) {
    if (l.gen != gen) {
      out.push_back(l);
    } else if (l.exp == 1) {
      out.insert(out.end(), rep.begin(), rep.end());
    } else {
      word inv = inverse_word(rep);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

// Drops generator `gen` from the name table and renumbers letters above it.
inline void drop_generator(presentation& p, int gen) {
  p.generator_names.erase(p.generator_names.begin() + gen);
  for (word& r : p.relators)
    for (letter& l : r)
      if (l.gen > gen) --l.gen;
}

// Record of the generator eliminations a simplification performed, kept in
// terms of stable ids (positions in the original generator list), so that a
// subgroup action computed on the simplified generators can be extended
// back to the original ones.
struct elimination_step {
  int stable_gen = -1;  // original position of the eliminated generator
  word stable_rep;      // its defining word, letters referring to stable ids
};

struct simplify_trace {
  // stable_of_current[i]: original position of current generator i.
  std::vector<int> stable_of_current;
  std::vector<elimination_step> steps;  // in elimination order

  void init(std::size_t generator_count) {
    stable_of_current.resize(generator_count);
    for (std::size_t i = 0; i < generator_count; ++i)
      stable_of_current[i] = static_cast<int>(i);
    steps.clear();
  }
};

// The elimination loop shared by tietze_simplify and the cover-search
// preprocessing.  Performs at most max_passes eliminations (each pass: scan
// relators shortest first, ties by index; within a relator left to right;
// eliminate the first generator with a unique occurrence whose substitution
// keeps every relator within max_relator_length).  Returns the number of
// eliminations performed; records them in `trace` when given.
inline std::size_t tietze_engine(presentation& p,
                                 std::size_t max_relator_length,
                                 std::size_t max_passes,
                                 simplify_trace* trace) {
  normalize_presentation(p);
  std::size_t eliminations = 0;

  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    // Scan order: shortest relator first, ties by index.
    std::vector<std::size_t> order(p.relators.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return p.relators[a].size() < p.relators[b].size();
                     });

    bool eliminated = false;
    for (std::size_t oi = 0; oi < order.size() && !eliminated; ++oi) {
      const std::size_t ri = order[oi];
      const word& r = p.relators[ri];
      for (std::size_t pos = 0; pos < r.size() && !eliminated; ++pos) {
        const int g = r[pos].gen;
        std::size_t occurrences = 0;
        for (const letter& l : r)
          if (l.gen == g) ++occurrences;
        if (occurrences != 1) continue;

        // Rotate the relator to start at the unique occurrence; then
        // g^e w = 1 solves to g = (w^-1)^e.
        word rot(r.begin() + pos, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + pos);
        word rest(rot.begin() + 1, rot.end());
        word rep = rot[0].exp == 1 ? inverse_word(rest) : rest;

        // Tentatively rewrite everything else and enforce the length cap.
        std::vector<word> rewritten;
        rewritten.reserve(p.relators.size() - 1);
        bool fits = true;
        for (std::size_t j = 0; j < p.relators.size() && fits; ++j) {
          if (j == ri) continue;
          word nw = cyclic_reduce(detail::substitute(p.relators[j], g, rep));
          if (nw.size() > max_relator_length) fits = false;
          rewritten.push_back(std::move(nw));
        }
        if (!fits) continue;

        if (trace) {
          elimination_step step;
          step.stable_gen = trace->stable_of_current[g];
          step.stable_rep = rep;
          for (letter& l : step.stable_rep)
            l.gen = trace->stable_of_current[l.gen];
          trace->steps.push_back(std::move(step));
          trace->stable_of_current.erase(trace->stable_of_current.begin() +
                                         g);
        }
        p.relators = std::move(rewritten);
        detail::drop_generator(p, g);
        detail::normalize_presentation(p);
        eliminated = true;
        ++eliminations;
      }
    }
    if (!eliminated) break;
  }
  return eliminations;
}

}  // namespace detail

// Deterministic Tietze simplification.
//
// Each pass performs at most one generator elimination: relators are
// scanned shortest first (ties by position); within a relator, positions
// left to right.  A generator occurring exactly once in some relator can be
// eliminated by solving that relator for it, provided every rewritten
// relator stays within max_relator_length after free and cyclic reduction.
// Relators are renormalized (cyclically reduced, deduplicated) after every
// elimination.  Stops after max_passes eliminations or when none applies.
inline presentation tietze_simplify(presentation p,
                                    std::size_t max_relator_length = 64,
                                    std::size_t max_passes = 20) {
  detail::tietze_engine(p, max_relator_length, max_passes, nullptr);
  return p;
}

namespace detail {

// Tries to shorten `target` using the relation rewriter = 1: if a cyclic
// subword w of rewriter (or of its inverse) with 2|w| > |rewriter| occurs
// as a cyclic subword of target, the relation lets w be replaced by the
// inverse of the complementary part, which is strictly shorter.  Scans
// longer subwords first, then inverse variant, rotation, and target offset
// in fixed order.  Returns true when a replacement happened.
inline bool shorten_once(word& target, const word& rewriter) {
  const std::size_t m = rewriter.size(), n = target.size();
  if (m == 0 || n == 0) return false;
  const word variants[2] = {rewriter, inverse_word(rewriter)};
  for (std::size_t k = std::min(m, n); 2 * k > m; --k) {
    for (const word& base : variants) {
      for (std::size_t rot = 0; rot < m; ++rot) {
        for (std::size_t off = 0; off < n; ++off) {
          bool match = true;
          for (std::size_t i = 0; i < k && match; ++i)
            match = target[(off + i) % n] == base[(rot + i) % m];
          if (!match) continue;
          // w * c = 1 cyclically, so w can be replaced by c^-1, and
          // |c| = m - k < k.
          word comp;
          for (std::size_t i = k; i < m; ++i)
            comp.push_back(base[(rot + i) % m]);
          word out = inverse_word(comp);
          for (std::size_t i = k; i < n; ++i)
            out.push_back(target[(off + i) % n]);
          target = cyclic_reduce(out);
          return true;
        }
      }
    }
  }
  return false;
}

// Shortens relators against each other until no replacement applies.
// Total relator length strictly decreases with every replacement, so this
// terminates.
inline void shorten_relators(presentation& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> order(p.relators.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return p.relators[a].size() < p.relators[b].size();
                     });
    for (std::size_t oi = 0; oi < order.size() && !changed; ++oi)
      for (std::size_t tj = 0; tj < p.relators.size() && !changed; ++tj) {
        if (tj == order[oi]) continue;
        if (shorten_once(p.relators[tj], p.relators[order[oi]]))
          changed = true;
      }
    if (changed) normalize_presentation(p);
  }
}

struct prepared_presentation {
  presentation group;    // same group, usually far fewer generators
  simplify_trace trace;  // how to map results back to the input generators
};

// Deterministic preprocessing for the subgroup search, whose cost grows
// exponentially with the generator count.  Combines the tietze_simplify
// elimination move (with a generous length cap) with relator-vs-relator
// subword shortening, which routinely breaks the fixpoints the elimination
// move alone gets stuck in.  Several pre-simplification variants are tried;
// the result with the fewest generators (ties: smallest total relator
// length, then earliest variant) wins.  All moves are Tietze
// transformations, so the group is preserved up to isomorphism.
inline prepared_presentation prepare_for_search(const presentation& p) {
  constexpr std::size_t relator_cap = 65536;
  const std::pair<std::size_t, std::size_t> ladder[] = {
      {0, 0}, {64, 20}, {256, 200}};

  prepared_presentation best;
  std::size_t best_gens = SIZE_MAX, best_len = SIZE_MAX;
  for (const auto& [len, passes] : ladder) {
    prepared_presentation cand;
    cand.group = p;
    cand.trace.init(p.generator_count());
    if (len) tietze_engine(cand.group, len, passes, &cand.trace);
    for (;;) {
      normalize_presentation(cand.group);
      shorten_relators(cand.group);
      if (tietze_engine(cand.group, relator_cap, 1, &cand.trace) == 0) break;
    }
    std::size_t total = 0;
    for (const word& r : cand.group.relators) total += r.size();
    if (cand.group.generator_count() < best_gens ||
        (cand.group.generator_count() == best_gens && total < best_len)) {
      best_gens = cand.group.generator_count();
      best_len = total;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace detail

}  // namespace bfl
