#include "modsolve.hpp"

#include <numeric>
#include <stdexcept>

namespace morita {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                     std::int64_t& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t x, y;
  std::int64_t g = ext_gcd(((a % m) + m) % m, m, x, y);
  if (g != 1) throw std::logic_error("inv_mod: not invertible");
  return ((x % m) + m) % m;
}

namespace {
inline std::int64_t norm(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}
}  // namespace

ModSolver::ModSolver(int rows, std::vector<std::vector<std::int64_t>> columns,
                     std::int64_t m)
    : rows_(rows), nunk_(int(columns.size())), m_(m) {
  if (m < 1) throw std::invalid_argument("ModSolver: modulus < 1");

  std::vector<Col> pending;
  pending.reserve(columns.size());
  for (int j = 0; j < nunk_; ++j) {
    Col c;
    c.a = std::move(columns[j]);
    if (int(c.a.size()) != rows_)
      throw std::invalid_argument("ModSolver: column length mismatch");
    for (auto& v : c.a) v = norm(v, m_);
    c.x.assign(nunk_, 0);
    c.x[j] = 1 % m_;
    c.lead = recompute_lead(c, 0);
    pending.push_back(std::move(c));
  }

  for (int row = 0; row < rows_; ++row) {
    // Gather pending columns alive at this row; fold them into one.
    int acc = -1;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].lead != row) continue;
      if (acc < 0) {
        acc = int(i);
      } else {
        combine_into(pending[acc], pending[i], row);
        pending[i].lead = recompute_lead(pending[i], row + 1);
      }
    }
    if (acc < 0) continue;

    Col piv = std::move(pending[acc]);
    pending.erase(pending.begin() + acc);

    // Howell completion: (m/d) * pivot column re-enters the pool so that
    // later rows see every multiple the pivot can shed.
    std::int64_t d = std::gcd(piv.a[row], m_);
    std::int64_t f = m_ / d;
    if (f > 1) {
      Col comp;
      comp.a.resize(rows_);
      comp.x.resize(nunk_);
      for (int i = 0; i < rows_; ++i) comp.a[i] = norm(piv.a[i] * f, m_);
      for (int j = 0; j < nunk_; ++j) comp.x[j] = norm(piv.x[j] * f, m_);
      comp.lead = recompute_lead(comp, row + 1);
      pending.push_back(std::move(comp));
    }
    pivots_.push_back(std::move(piv));

    // Drop spent columns as we go, keeping x if it is a kernel vector.
    std::size_t w = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i].lead < 0) {
        bool nonzero = false;
        for (auto v : pending[i].x)
          if (v != 0) { nonzero = true; break; }
        if (nonzero) kernel_.push_back(std::move(pending[i].x));
      } else {
        if (w != i) pending[w] = std::move(pending[i]);
        ++w;
      }
    }
    pending.resize(w);
  }

  for (auto& c : pending) {
    bool nonzero = false;
    for (auto v : c.x)
      if (v != 0) { nonzero = true; break; }
    if (nonzero) kernel_.push_back(std::move(c.x));
  }
}

int ModSolver::recompute_lead(const Col& c, int from) const {
  for (int i = from; i < rows_; ++i)
    if (c.a[i] != 0) return i;
  return -1;
}

void ModSolver::combine_into(Col& dst, Col& src, int row) {
  // Replace (dst, src) by (u*dst + v*src, (b/g)*dst - (a/g)*src) where
  // a = dst.a[row], b = src.a[row], g = gcd: a unimodular pair operation
  // leaving src zero at `row`.
  std::int64_t a = dst.a[row], b = src.a[row];
  std::int64_t u, v;
  std::int64_t g = ext_gcd(a, b, u, v);
  std::int64_t p = b / g, q = a / g;
  for (int i = 0; i < rows_; ++i) {
    std::int64_t da = dst.a[i], sa = src.a[i];
    dst.a[i] = norm(u * da + v * sa, m_);
    src.a[i] = norm(p * da - q * sa, m_);
  }
  for (int j = 0; j < nunk_; ++j) {
    std::int64_t dx = dst.x[j], sx = src.x[j];
    dst.x[j] = norm(u * dx + v * sx, m_);
    src.x[j] = norm(p * dx - q * sx, m_);
  }
}

std::optional<std::vector<std::int64_t>> ModSolver::solve(
    const std::vector<std::int64_t>& b) const {
  if (int(b.size()) != rows_)
    throw std::invalid_argument("ModSolver::solve: rhs length mismatch");
  std::vector<std::int64_t> r(rows_);
  bool all_zero = true;
  for (int i = 0; i < rows_; ++i) {
    r[i] = norm(b[i], m_);
    if (r[i] != 0) all_zero = false;
  }
  std::vector<std::int64_t> x(nunk_, 0);
  if (all_zero) return x;  // canonical zero witness for a zero rhs

  for (const Col& piv : pivots_) {
    int row = piv.lead;
    if (r[row] == 0) continue;
    std::int64_t v = piv.a[row];
    std::int64_t d = std::gcd(v, m_);
    if (r[row] % d != 0) return std::nullopt;
    std::int64_t md = m_ / d;  // >= 2: pivot entries are nonzero mod m
    std::int64_t y = norm((r[row] / d) % md * inv_mod(v / d, md), md);
    for (int i = row; i < rows_; ++i)
      r[i] = norm(r[i] - y * piv.a[i], m_);
    for (int j = 0; j < nunk_; ++j) x[j] = norm(x[j] + y * piv.x[j], m_);
  }
  for (int i = 0; i < rows_; ++i)
    if (r[i] != 0) return std::nullopt;
  return x;
}

std::optional<std::vector<std::int64_t>> ModSolver::express(
    const std::vector<std::int64_t>& b) const {
  if (int(b.size()) != rows_)
    throw std::invalid_argument("ModSolver::express: length mismatch");
  std::vector<std::int64_t> r(rows_);
  for (int i = 0; i < rows_; ++i) r[i] = norm(b[i], m_);
  std::vector<std::int64_t> c(pivots_.size(), 0);
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    const Col& piv = pivots_[t];
    int row = piv.lead;
    if (r[row] == 0) continue;
    std::int64_t v = piv.a[row];
    std::int64_t d = std::gcd(v, m_);
    if (r[row] % d != 0) return std::nullopt;
    std::int64_t md = m_ / d;
    std::int64_t y = norm((r[row] / d) % md * inv_mod(v / d, md), md);
    for (int i = row; i < rows_; ++i)
      r[i] = norm(r[i] - y * piv.a[i], m_);
    c[t] = y;
  }
  for (int i = 0; i < rows_; ++i)
    if (r[i] != 0) return std::nullopt;
  return c;
}

// ---------------------------------------------------------------------------
// smith_mod
// ---------------------------------------------------------------------------

ModSmithResult smith_mod(std::vector<std::vector<std::int64_t>> columns,
                         int rows, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("smith_mod: modulus < 1");
  const int nc = int(columns.size());
  std::vector<std::vector<std::int64_t>> M(rows,
                                           std::vector<std::int64_t>(nc, 0));
  for (int j = 0; j < nc; ++j) {
    if (int(columns[j].size()) != rows)
      throw std::invalid_argument("smith_mod: column length mismatch");
    for (int i = 0; i < rows; ++i) M[i][j] = norm(columns[j][i], m);
  }
  const auto original = M;

  // U (row-major) and its tracked inverse (column-major); row operations
  // on M are applied identically to U and mirrored inversely on Uinv.
  std::vector<std::vector<std::int64_t>> U(rows,
                                           std::vector<std::int64_t>(rows, 0));
  std::vector<std::vector<std::int64_t>> uinv(
      rows, std::vector<std::int64_t>(rows, 0));
  for (int i = 0; i < rows; ++i) U[i][i] = uinv[i][i] = 1 % m;

  auto row_swap = [&](int a, int b) {
    std::swap(M[a], M[b]);
    std::swap(U[a], U[b]);
    std::swap(uinv[a], uinv[b]);
  };
  // R_i -= k R_t; inverse transform adds k C_i to Uinv's column t.
  auto row_sub = [&](int i, int t, std::int64_t k) {
    k = norm(k, m);
    for (int j = 0; j < nc; ++j) M[i][j] = norm(M[i][j] - k * M[t][j], m);
    for (int j = 0; j < rows; ++j) {
      U[i][j] = norm(U[i][j] - k * U[t][j], m);
      uinv[t][j] = norm(uinv[t][j] + k * uinv[i][j], m);
    }
  };
  // (R_t, R_i) <- (u R_t + v R_i, (b/g) R_t - (a/g) R_i), the same
  // unimodular pair step combine_into uses for columns; the inverse is
  // [[a/g, v], [b/g, -u]], applied to Uinv's columns t and i.
  auto row_pair = [&](int t, int i, std::int64_t a, std::int64_t b) {
    std::int64_t u, v;
    std::int64_t g = ext_gcd(a, b, u, v);
    std::int64_t p = b / g, q = a / g;
    for (int j = 0; j < nc; ++j) {
      std::int64_t x = M[t][j], y = M[i][j];
      M[t][j] = norm(u * x + v * y, m);
      M[i][j] = norm(p * x - q * y, m);
    }
    for (int j = 0; j < rows; ++j) {
      std::int64_t x = U[t][j], y = U[i][j];
      U[t][j] = norm(u * x + v * y, m);
      U[i][j] = norm(p * x - q * y, m);
      x = uinv[t][j], y = uinv[i][j];
      uinv[t][j] = norm(q * x + p * y, m);
      uinv[i][j] = norm(v * x - u * y, m);
    }
  };
  auto col_sub = [&](int j, int t, std::int64_t k) {
    k = norm(k, m);
    for (int i = 0; i < rows; ++i) M[i][j] = norm(M[i][j] - k * M[i][t], m);
  };
  auto col_pair = [&](int t, int j, std::int64_t a, std::int64_t b) {
    std::int64_t u, v;
    std::int64_t g = ext_gcd(a, b, u, v);
    std::int64_t p = b / g, q = a / g;
    for (int i = 0; i < rows; ++i) {
      std::int64_t x = M[i][t], y = M[i][j];
      M[i][t] = norm(u * x + v * y, m);
      M[i][j] = norm(p * x - q * y, m);
    }
  };

  for (int t = 0; t < rows && t < nc; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int bi = -1, bj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < nc; ++j)
        if (M[i][j] != 0 && (bi < 0 || M[i][j] < M[bi][bj])) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    if (bi != t) row_swap(t, bi);
    if (bj != t)
      for (int i = 0; i < rows; ++i) std::swap(M[i][t], M[i][bj]);

    // Alternate clearing the pivot row and column.  Every pair step
    // replaces the pivot by a proper divisor, so this settles quickly.
    for (int guard = 0;; ++guard) {
      if (guard > 128)
        throw std::logic_error("smith_mod: pivot reduction did not settle");
      for (int j = t + 1; j < nc; ++j) {
        std::int64_t e = M[t][j];
        if (e == 0) continue;
        if (e % M[t][t] == 0)
          col_sub(j, t, e / M[t][t]);
        else
          col_pair(t, j, M[t][t], e);
      }
      for (int i = t + 1; i < rows; ++i) {
        std::int64_t e = M[i][t];
        if (e == 0) continue;
        if (e % M[t][t] == 0)
          row_sub(i, t, e / M[t][t]);
        else
          row_pair(t, i, M[t][t], e);
      }
      bool clean = true;
      for (int j = t + 1; j < nc && clean; ++j) clean = (M[t][j] == 0);
      if (clean) break;
    }
  }

  ModSmithResult res;
  res.diag.assign(rows, 0);
  for (int t = 0; t < rows; ++t)
    res.diag[t] = std::gcd(t < nc ? M[t][t] : 0, m);  // gcd(0, m) = m

  // Divisibility chain: fix adjacent violations with the same unimodular
  // pair step; diag(a, b) becomes diag(gcd, lcm), and the lcm of two
  // divisors of m again divides m.
  for (int pass = 0;; ++pass) {
    if (pass > rows * rows + 8)
      throw std::logic_error("smith_mod: divisibility chain did not settle");
    bool changed = false;
    for (int i = 0; i + 1 < rows; ++i) {
      std::int64_t a = res.diag[i], b = res.diag[i + 1];
      if (b % a == 0) continue;
      std::int64_t u, v;
      std::int64_t g = ext_gcd(a, b, u, v);
      std::int64_t l = (a / g) * b;
      for (int j = 0; j < rows; ++j) {
        std::int64_t x = U[i][j], y = U[i + 1][j];
        U[i][j] = norm(u * x + v * y, m);
        U[i + 1][j] = norm((b / g) * x - (a / g) * y, m);
        x = uinv[i][j], y = uinv[i + 1][j];
        uinv[i][j] = norm((a / g) * x + (b / g) * y, m);
        uinv[i + 1][j] = norm(v * x - u * y, m);
      }
      res.diag[i] = g;
      res.diag[i + 1] = l;
      changed = true;
    }
    if (!changed) break;
  }

  // The tracked transforms must be mutually inverse, and U must carry
  // every input column into the span of the diagonal.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) {
      std::int64_t acc = 0;
      for (int k = 0; k < rows; ++k)
        acc = norm(acc + U[i][k] * uinv[j][k], m);
      if (acc != ((i == j) ? 1 % m : 0))
        throw std::logic_error("smith_mod: transform inverse check failed");
    }
  for (int j = 0; j < nc; ++j)
    for (int i = 0; i < rows; ++i) {
      std::int64_t acc = 0;
      for (int k = 0; k < rows; ++k)
        acc = norm(acc + U[i][k] * original[k][j], m);
      if (acc % res.diag[i] != 0)
        throw std::logic_error("smith_mod: reduction check failed");
    }

  res.uinv_cols.resize(rows);
  for (int t = 0; t < rows; ++t) {
    res.uinv_cols[t].resize(rows);
    for (int i = 0; i < rows; ++i) res.uinv_cols[t][i] = uinv[t][i];
  }
  return res;
}

}  // namespace morita
