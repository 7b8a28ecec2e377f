#include "intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace morita {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  if (c_ != other.r_) throw std::logic_error("IntMatrix::mul: shape mismatch");
  IntMatrix out(r_, other.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const bigint& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < other.c_; ++j) {
        const bigint& bkj = other.at(k, j);
        if (bkj != 0) out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
}
void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
}
void IntMatrix::addmul_row(int dst, int src, const bigint& k) {
  if (k == 0) return;
  for (int t = 0; t < c_; ++t) at(dst, t) += k * at(src, t);
}
void IntMatrix::addmul_col(int dst, int src, const bigint& k) {
  if (k == 0) return;
  for (int t = 0; t < r_; ++t) at(t, dst) += k * at(t, src);
}
void IntMatrix::negate_row(int i) {
  for (int k = 0; k < c_; ++k) at(i, k) = -at(i, k);
}
void IntMatrix::negate_col(int j) {
  for (int k = 0; k < r_; ++k) at(k, j) = -at(k, j);
}

std::int64_t AbelianStructure::order() const {
  std::int64_t n = 1;
  for (auto d : factors) n *= d;
  return n;
}

std::string AbelianStructure::str() const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(factors[i]);
  }
  return s;
}

namespace {

// Applies the row operation "row[dst] += k*row[src]" to A and U, and the
// mirror column operation to Uinv so that Uinv stays the exact inverse.
struct SNFWork {
  IntMatrix A, U, Uinv, V;

  void row_addmul(int dst, int src, const bigint& k) {
    A.addmul_row(dst, src, k);
    U.addmul_row(dst, src, k);
    Uinv.addmul_col(src, dst, -k);
  }
  void row_swap(int i, int j) {
    A.swap_rows(i, j);
    U.swap_rows(i, j);
    Uinv.swap_cols(i, j);
  }
  void row_negate(int i) {
    A.negate_row(i);
    U.negate_row(i);
    Uinv.negate_col(i);
  }
  void col_addmul(int dst, int src, const bigint& k) {
    A.addmul_col(dst, src, k);
    V.addmul_col(dst, src, k);
  }
  void col_swap(int i, int j) {
    A.swap_cols(i, j);
    V.swap_cols(i, j);
  }
  void col_negate(int j) {
    A.negate_col(j);
    V.negate_col(j);
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& A0) {
  const int r = A0.rows(), c = A0.cols();
  SNFWork w{A0, IntMatrix::identity(r), IntMatrix::identity(r),
            IntMatrix::identity(c)};

  const int steps = std::min(r, c);
  for (int t = 0; t < steps; ++t) {
    // Locate the entry of smallest absolute value in the remaining block;
    // small pivots keep coefficient growth down.
    int pi = -1, pj = -1;
    bigint best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j) {
        bigint v = abs(w.A.at(i, j));
        if (v != 0 && (pi < 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // block is zero
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    // Alternate row/column reduction until the pivot divides everything
    // in its row and column and stands alone.
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < r; ++i) {
        if (w.A.at(i, t) == 0) continue;
        bigint q = w.A.at(i, t) / w.A.at(t, t);
        w.row_addmul(i, t, -q);
        if (w.A.at(i, t) != 0) {  // remainder smaller than pivot: swap up
          w.row_swap(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (w.A.at(t, j) == 0) continue;
        bigint q = w.A.at(t, j) / w.A.at(t, t);
        w.col_addmul(j, t, -q);
        if (w.A.at(t, j) != 0) {
          w.col_swap(t, j);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
    if (w.A.at(t, t) < 0) w.row_negate(t);
  }

  // Enforce the divisibility chain d_t | d_{t+1} with 2x2 unimodular
  // fixups (standard gcd/lcm trick).
  for (;;) {
    bool changed = false;
    for (int t = 0; t + 1 < steps; ++t) {
      bigint a = w.A.at(t, t), b = w.A.at(t + 1, t + 1);
      if (a == 0 && b != 0) {
        w.row_swap(t, t + 1);
        w.col_swap(t, t + 1);
        changed = true;
        continue;
      }
      if (a == 0 || b == 0 || b % a == 0) continue;
      // Put b into position (t+1, t), then clear the 2x2 block again.
      w.col_addmul(t, t + 1, 1);  // column t gains b at row t+1
      for (;;) {
        bool dirty = false;
        if (w.A.at(t + 1, t) != 0) {
          if (w.A.at(t, t) == 0 || (w.A.at(t + 1, t) != 0 &&
                                    abs(w.A.at(t + 1, t)) < abs(w.A.at(t, t))))
            w.row_swap(t, t + 1);
          bigint q = w.A.at(t + 1, t) / w.A.at(t, t);
          w.row_addmul(t + 1, t, -q);
          if (w.A.at(t + 1, t) != 0) dirty = true;
        }
        if (w.A.at(t, t + 1) != 0) {
          bigint q = w.A.at(t, t + 1) / w.A.at(t, t);
          w.col_addmul(t + 1, t, -q);
          if (w.A.at(t, t + 1) != 0) {
            w.col_swap(t, t + 1);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
      if (w.A.at(t, t) < 0) w.row_negate(t);
      if (w.A.at(t + 1, t + 1) < 0) w.row_negate(t + 1);
      changed = true;
    }
    if (!changed) break;
  }

  SNFResult res;
  res.diag.resize(steps);
  for (int t = 0; t < steps; ++t) {
    res.diag[t] = w.A.at(t, t);
    if (res.diag[t] != 0) res.rank = t + 1;
  }
  res.U = std::move(w.U);
  res.Uinv = std::move(w.Uinv);
  res.V = std::move(w.V);

  // Verify U*A*V == diag by multiplication when the matrices are small
  // enough for that to be cheap; unit tests cover the rest randomly.
  if (std::size_t(r) * c <= 40000) {
    IntMatrix prod = res.U.mul(A0).mul(res.V);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        bigint want = (i == j && i < steps) ? res.diag[i] : bigint(0);
        if (prod.at(i, j) != want)
          throw std::logic_error("smith_normal_form: verification failed");
      }
  }
  return res;
}

HermiteResult column_hermite(const IntMatrix& A0) {
  IntMatrix H = A0;
  const int r = H.rows(), c = H.cols();
  int t = 0;  // next column slot to fill
  for (int row = 0; row < r && t < c; ++row) {
    // gcd-combine all columns >= t that are nonzero in this row.
    int lead = -1;
    for (int j = t; j < c; ++j)
      if (H.at(row, j) != 0) {
        if (lead < 0)
          lead = j;
        else {
          // Euclid on the pair (lead, j) at this row.
          while (H.at(row, j) != 0) {
            bigint q = H.at(row, lead) / H.at(row, j);
            H.addmul_col(lead, j, -q);
            H.swap_cols(lead, j);
          }
        }
      }
    if (lead < 0) continue;
    H.swap_cols(t, lead);
    if (H.at(row, t) < 0) H.negate_col(t);
    // Canonical reduction: entries of this row in earlier pivot columns
    // are reduced into [0, pivot).
    for (int j = 0; j < t; ++j) {
      bigint q = H.at(row, j) / H.at(row, t);
      if (H.at(row, j) - q * H.at(row, t) < 0) q -= 1;
      H.addmul_col(j, t, -q);
    }
    ++t;
  }
  HermiteResult res;
  res.rank = t;
  res.H = std::move(H);
  return res;
}

AbelianStructure cokernel_structure(const IntMatrix& A, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("cokernel_structure: modulus < 1");
  const int r = A.rows(), c = A.cols();
  IntMatrix B(r, c + r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) B.at(i, j) = A.at(i, j);
    B.at(i, c + i) = m;
  }
  SNFResult snf = smith_normal_form(B);
  AbelianStructure s;
  for (const bigint& d : snf.diag) {
    if (d == 0)
      throw std::logic_error("cokernel_structure: unexpected free part");
    if (d > 1) {
      if (d > m) throw std::logic_error("cokernel_structure: factor exceeds modulus");
      s.factors.push_back(std::int64_t(d));
    }
  }
  return s;
}

std::vector<bigint> solve_lower_triangular(const IntMatrix& L,
                                           const std::vector<bigint>& c) {
  const int n = L.rows();
  if (L.cols() != n || int(c.size()) != n)
    throw std::logic_error("solve_lower_triangular: shape mismatch");
  std::vector<bigint> y(n);
  for (int i = 0; i < n; ++i) {
    bigint acc = c[i];
    for (int j = 0; j < i; ++j)
      if (L.at(i, j) != 0) acc -= L.at(i, j) * y[j];
    if (L.at(i, i) == 0 || acc % L.at(i, i) != 0)
      throw std::logic_error("solve_lower_triangular: vector outside lattice");
    y[i] = acc / L.at(i, i);
  }
  return y;
}

}  // namespace morita
