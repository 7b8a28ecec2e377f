#pragma once
// Linear algebra over Z/m: reusable factorization, many right-hand sides.
//
// A ModSolver takes the columns of an integer matrix A (rows x cols) and a
// modulus m, and computes a column echelon form with Howell completion,
// tracking every column as a combination of the original unknowns.  After
// the one-time factorization:
//   * solve(b) answers A x = b (mod m) in O(#pivots * rows) per call,
//   * kernel() spans {x : A x = 0 (mod m)} completely.
// The completion step (adjoining (m/d) times each pivot column) is what
// makes greedy back-substitution complete over Z/m: without it a residue
// divisible by the pivot gcd could still be missed.
//
// Cohomology solves reuse one factorization across hundreds of right-hand
// sides (one per translate / per class pair), which is where the engine
// spends most of its time; keep this class allocation-light.

#include <cstdint>
#include <optional>
#include <vector>

namespace morita {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                     std::int64_t& y);
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

class ModSolver {
 public:
  // columns[j] has length `rows`; entries may be any int64 (reduced mod m
  // internally).  m >= 1.
  ModSolver(int rows, std::vector<std::vector<std::int64_t>> columns,
            std::int64_t m);

  std::int64_t modulus() const { return m_; }
  int rows() const { return rows_; }
  int unknowns() const { return nunk_; }

  // Particular solution of A x = b (mod m), or nullopt if none exists.
  // A zero right-hand side always yields the zero solution.
  std::optional<std::vector<std::int64_t>> solve(
      const std::vector<std::int64_t>& b) const;

  // Generators of the solution set of A x = 0 (mod m).
  const std::vector<std::vector<std::int64_t>>& kernel() const {
    return kernel_;
  }

  // Echelon view of the column span.  Pivot t has its first nonzero entry
  // at pivot_lead(t); leads strictly increase and entries above a lead are
  // zero.  Together with the completion columns folded in during
  // factorization this is a Howell-style basis: every span element has a
  // greedy top-down expression over the pivots.
  int pivot_count() const { return int(pivots_.size()); }
  int pivot_lead(int t) const { return pivots_[t].lead; }
  const std::vector<std::int64_t>& pivot_column(int t) const {
    return pivots_[t].a;
  }

  // Coordinates of b over the pivot columns, or nullopt if b is outside
  // the column span.
  std::optional<std::vector<std::int64_t>> express(
      const std::vector<std::int64_t>& b) const;

 private:
  struct Col {
    std::vector<std::int64_t> a;  // length rows, reduced mod m
    std::vector<std::int64_t> x;  // length nunk_, expression in unknowns
    int lead = -1;                // topmost nonzero row of a
  };

  void combine_into(Col& dst, Col& src, int row);  // zero src at row
  int recompute_lead(const Col& c, int from) const;

  int rows_ = 0;
  int nunk_ = 0;
  std::int64_t m_ = 1;
  std::vector<Col> pivots_;  // strictly increasing lead rows
  std::vector<std::vector<std::int64_t>> kernel_;
};

// Diagonalization of a module presentation over Z/m.  The input columns
// are relations on `rows` generators of (Z/m)^rows; the quotient is
// isomorphic to the direct sum of Z/diag[t].  All arithmetic stays below
// m^2, so this never leaves int64 no matter how the relations interact —
// the exact-integer Smith form is reserved for small matrices.
//
// diag has length `rows`; every entry divides m (m itself encodes a free
// Z/m summand) and diag[t] | diag[t+1].  uinv_cols[t] expresses the
// generator of the t-th summand in the original generators, mod m.  The
// reduction self-checks: the tracked transforms are verified to be
// mutually inverse and to carry every input column into the diagonal span.
struct ModSmithResult {
  std::vector<std::int64_t> diag;
  std::vector<std::vector<std::int64_t>> uinv_cols;
};

ModSmithResult smith_mod(std::vector<std::vector<std::int64_t>> columns,
                         int rows, std::int64_t m);

}  // namespace morita
