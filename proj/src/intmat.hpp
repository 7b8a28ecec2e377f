#pragma once
// Exact integer matrices and normal forms (Smith, column Hermite).
//
// Everything in this layer is over Z with arbitrary-precision entries;
// intermediate entry growth during elimination is the usual hazard and is
// absorbed by cpp_int.  Finite quotient structure (invariant factors)
// always fits in int64 because every quotient we form is killed by the
// working modulus.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace morita {

using bigint = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(std::size_t(rows) * cols) {}

  static IntMatrix identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bigint& at(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
  const bigint& at(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

  IntMatrix mul(const IntMatrix& other) const;
  bool is_zero() const;
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void addmul_row(int dst, int src, const bigint& k);  // row[dst] += k*row[src]
  void addmul_col(int dst, int src, const bigint& k);
  void negate_row(int i);
  void negate_col(int j);

 private:
  int r_ = 0, c_ = 0;
  std::vector<bigint> a_;
};

// Invariant factors d_1 | d_2 | ... | d_k of a finite abelian group,
// each >= 2 (trivial group has an empty list).
struct AbelianStructure {
  std::vector<std::int64_t> factors;

  std::int64_t order() const;
  std::int64_t exponent() const { return factors.empty() ? 1 : factors.back(); }
  bool trivial() const { return factors.empty(); }
  std::string str() const;  // e.g. "Z/2 x Z/4", "1" for trivial
  friend bool operator==(const AbelianStructure& a, const AbelianStructure& b) {
    return a.factors == b.factors;
  }
};

// U*A*V = S with U, V unimodular and S diagonal, diag entries nonnegative
// in a divisibility chain.  uinv is U^{-1}, kept because cokernel class
// representatives are its columns.
struct SNFResult {
  std::vector<bigint> diag;  // min(rows, cols) entries
  IntMatrix U, Uinv, V;
  int rank = 0;  // number of nonzero diagonal entries
};

SNFResult smith_normal_form(const IntMatrix& A);

// Column Hermite form: A*U = H with U unimodular; columns of H are a
// canonical basis of the column lattice of A, with strictly increasing
// pivot rows, positive pivots, and entries left of each pivot reduced.
// Zero columns are moved to the end.
struct HermiteResult {
  IntMatrix H;
  int rank = 0;
};

HermiteResult column_hermite(const IntMatrix& A);

// Structure of (Z/m)^rows / column-span(A), i.e. the cokernel of
// [A | m*I] as a map into Z^rows.
AbelianStructure cokernel_structure(const IntMatrix& A, std::int64_t m);

// Solves L*y = c exactly for lower-triangular L with nonzero diagonal
// (columns of a full-rank column-Hermite basis).  Throws if any division
// fails, which means c is outside the lattice.
std::vector<bigint> solve_lower_triangular(const IntMatrix& L,
                                           const std::vector<bigint>& c);

}  // namespace morita
