#pragma once

// Exact integer linear algebra: arbitrary-precision matrices, Smith normal
// form with transform tracking, and invariants of finitely generated
// abelian groups presented by integer relation matrices.

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace bfl {

using bigint = boost::multiprecision::cpp_int;

class int_matrix {
 public:
  int_matrix() = default;
  int_matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static int_matrix identity(std::size_t n) {
    int_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bigint& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const bigint& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += q * row b
  void add_row(std::size_t a, std::size_t b, const bigint& q) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(a, j) += q * (*this)(b, j);
  }
  // col a += q * col b
  void add_col(std::size_t a, std::size_t b, const bigint& q) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, a) += q * (*this)(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(a, j) = -(*this)(a, j);
  }

  friend int_matrix operator*(const int_matrix& a, const int_matrix& b) {
    if (a.cols() != b.rows())
      throw error(errc::invalid_argument, "matrix dimension mismatch");
    int_matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const bigint& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const int_matrix&, const int_matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<bigint> data_;
};

// Round-to-nearest integer division (ties toward zero): the unique q
// minimizing |a - q*b| with the tie broken toward smaller |q|.
inline bigint round_div(const bigint& a, const bigint& b) {
  bigint q = a / b;  // truncates toward zero
  bigint r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

struct smith_decomposition {
  int_matrix u;  // unimodular rows x rows
  int_matrix d;  // diagonal, d(i,i) >= 0, d(i,i) divides d(i+1,i+1)
  int_matrix v;  // unimodular cols x cols;  d == u * a * v
};

// Smith normal form by exact elimination.  Pivot rule: the nonzero entry of
// least absolute value in the remaining submatrix (ties: lowest row, then
// lowest column).  The pivot is re-selected after every elementary
// operation, so each reduction always divides by the smallest entry
// available; this keeps intermediate entries from compounding.  Reductions
// use round-to-nearest quotients, so any nonzero remainder is at most half
// the pivot and becomes the next pivot.  A divisibility sweep pulls any
// interior entry the pivot does not divide into the pivot row, which forces
// a strictly smaller pivot; signs are normalized at the end.
inline smith_decomposition smith_normal_form(int_matrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  int_matrix u = int_matrix::identity(m);
  int_matrix v = int_matrix::identity(n);

  for (std::size_t t = 0; t < m && t < n; ++t) {
    for (;;) {
      // Select the pivot: least |value|, ties by lowest row then column.
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const bigint& x = a(i, j);
          if (x == 0) continue;
          if (!found || abs(x) < abs(a(pi, pj))) {
            found = true;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        // Remaining submatrix is zero; the decomposition is complete.
        t = std::min(m, n);
        break;
      }
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      // One reduction against the current pivot, then re-select.  The
      // pivot is the global minimum, so the quotient is never zero and the
      // entry shrinks to a remainder of at most half the pivot.
      std::size_t i = t + 1;
      while (i < m && a(i, t) == 0) ++i;
      if (i < m) {
        bigint q = round_div(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        continue;
      }
      std::size_t j = t + 1;
      while (j < n && a(t, j) == 0) ++j;
      if (j < n) {
        bigint q = round_div(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        continue;
      }

      // Row and column t are clear.  Pull in one row holding an entry the
      // pivot does not divide; reducing it will shrink the pivot.
      bool pulled = false;
      for (std::size_t r = t + 1; r < m && !pulled; ++r)
        for (std::size_t c = t + 1; c < n && !pulled; ++c)
          if (a(r, c) % a(t, t) != 0) {
            a.add_row(t, r, 1);
            u.add_row(t, r, 1);
            pulled = true;
          }
      if (!pulled) break;
    }
  }

  // Normalize signs on the diagonal.
  for (std::size_t t = 0; t < m && t < n; ++t)
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  return smith_decomposition{std::move(u), std::move(a), std::move(v)};
}

// Invariants of a finitely generated abelian group: free rank plus the
// invariant-factor torsion chain (each entry > 1, each dividing the next).
struct abelian_group {
  std::size_t free_rank = 0;
  std::vector<bigint> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  // "0" for the trivial group, otherwise torsion factors in divisibility
  // order followed by one "Z" per free summand, joined by " + ".
  std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    for (const bigint& d : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.str();
    }
    for (std::size_t i = 0; i < free_rank; ++i) {
      if (!s.empty()) s += " + ";
      s += "Z";
    }
    return s;
  }

  friend bool operator==(const abelian_group&, const abelian_group&) = default;
};

// Display order for lists of groups: larger free rank first, then torsion
// chains compared lexicographically.
inline bool fingerprint_order(const abelian_group& a, const abelian_group& b) {
  if (a.free_rank != b.free_rank) return a.free_rank > b.free_rank;
  return a.torsion < b.torsion;
}

// Invariants of the cokernel of Z^rows -> Z^cols, i.e. of the abelian group
// generated by the columns subject to one relation per row.
inline abelian_group cokernel_invariants(const int_matrix& relations) {
  auto [u, d, v] = smith_normal_form(relations);
  (void)u;
  (void)v;
  abelian_group g;
  std::size_t rank = 0;
  for (std::size_t t = 0; t < d.rows() && t < d.cols(); ++t) {
    if (d(t, t) == 0) continue;
    ++rank;
    if (d(t, t) > 1) g.torsion.push_back(d(t, t));
  }
  g.free_rank = relations.cols() - rank;
  return g;
}

}  // namespace bfl
