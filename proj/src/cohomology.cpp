#include "cohomology.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "modsolve.hpp"

namespace morita {

namespace {

// One term of the coboundary formula: which input tuple/coordinate a given
// output tuple reads, with what sign.  Enumerated symbolically so the
// evaluator and the matrix builder cannot drift apart.
template <typename Visit>
void delta_terms(const FiniteGroup& G, const CoefModule& mod, int out_deg,
                 const int* o, int coord, Visit&& visit) {
  const int d = out_deg - 1;  // input degree
  // First face: g_0 acts on the coefficient.
  {
    int acted = coord;
    if (mod.kind == CoefKind::coinduced) acted = mod.cs->act(coord, o[0]);
    visit(o + 1, acted, +1);
  }
  // Interior faces: merge adjacent entries.  Stack buffer: this runs once
  // per output entry, and the complex stops at degree 4.
  if (d > 8) fail_internal("coboundary term buffer is sized for degree <= 8");
  std::array<int, 8> tup;
  for (int i = 1; i <= d; ++i) {
    for (int t = 0; t < i - 1; ++t) tup[t] = o[t];
    tup[i - 1] = G.mul(o[i - 1], o[i]);
    for (int t = i; t < d; ++t) tup[t] = o[t + 1];
    visit(tup.data(), coord, (i % 2 == 0) ? +1 : -1);
  }
  // Last face: drop g_{d+1} (the coefficient action is trivial on the
  // left-module side).
  visit(o, coord, (out_deg % 2 == 0) ? +1 : -1);
}

}  // namespace

Cochain coboundary(const Cochain& f) {
  const FiniteGroup& G = f.group();
  Cochain out(G, f.degree() + 1, f.module());
  const int nc = f.ncoords();
  const std::int64_t tuples = out.tuple_count();
  std::vector<int> o(out.degree());
  for (std::int64_t r = 0; r < tuples; ++r) {
    out.unrank(r, o.data());
    for (int x = 0; x < nc; ++x) {
      QmodZ acc;
      delta_terms(G, f.module(), out.degree(), o.data(), x,
                  [&](const int* tup, int coord, int sign) {
                    QmodZ v = f.eval(tup, coord);
                    if (sign > 0)
                      acc += v;
                    else
                      acc -= v;
                  });
      out.set(o.data(), x, acc);
    }
  }
  return out;
}

bool coboundary_matches_lift(const Cochain& f, const Cochain& scal) {
  const FiniteGroup& G = f.group();
  if (scal.degree() != f.degree() + 1 || scal.group().id() != G.id() ||
      scal.module().kind != CoefKind::trivial)
    fail_invalid(
        "coboundary_matches_lift expects a scalar cochain one degree up on "
        "the same group");
  if (f.is_zero()) return scal.is_zero();  // delta 0 = 0
  const int nc = f.ncoords();
  const int out_deg = f.degree() + 1;
  const std::int64_t tuples = scal.tuple_count();
  std::vector<int> o(out_deg);
  for (std::int64_t r = 0; r < tuples; ++r) {
    scal.unrank(r, o.data());
    const QmodZ want = scal.eval(o.data());
    for (int x = 0; x < nc; ++x) {
      QmodZ acc;
      delta_terms(G, f.module(), out_deg, o.data(), x,
                  [&](const int* tup, int coord, int sign) {
                    QmodZ v = f.eval(tup, coord);
                    if (sign > 0)
                      acc += v;
                    else
                      acc -= v;
                  });
      if (!(acc == want)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::int64_t>> delta_columns(const FiniteGroup& G,
                                                     CoefModule mod,
                                                     int degree) {
  Cochain in(G, degree, mod), out(G, degree + 1, mod);
  const int nc = mod.ncoords();
  const std::int64_t in_dim = in.tuple_count() * nc;
  const std::int64_t out_dim = out.tuple_count() * nc;
  std::vector<std::vector<std::int64_t>> cols(
      in_dim, std::vector<std::int64_t>(out_dim, 0));
  std::vector<int> o(degree + 1);
  for (std::int64_t r = 0; r < out.tuple_count(); ++r) {
    out.unrank(r, o.data());
    for (int x = 0; x < nc; ++x) {
      const std::int64_t row = r * nc + x;
      delta_terms(G, mod, degree + 1, o.data(), x,
                  [&](const int* tup, int coord, int sign) {
                    for (int i = 0; i < degree; ++i)
                      if (tup[i] == 0) return;  // normalized: term vanishes
                    cols[in.rank(tup) * nc + coord][row] += sign;
                  });
    }
  }
  return cols;
}

// ---------------------------------------------------------------------------
// Solver cache
// ---------------------------------------------------------------------------

namespace {

struct CacheKey {
  std::int64_t group_id;
  int kind;
  std::vector<int> subgroup;  // H elements for coinduced modules
  int degree;                 // degree of the *input* cochain space
  std::int64_t modulus;
  auto tie() const {
    return std::tie(group_id, kind, subgroup, degree, modulus);
  }
  bool operator<(const CacheKey& o) const { return tie() < o.tie(); }
};

std::mutex g_cache_mutex;
std::map<CacheKey, std::shared_ptr<ModSolver>> g_solvers;

CacheKey make_key(const FiniteGroup& G, const CoefModule& mod, int degree,
                  std::int64_t modulus) {
  CacheKey k;
  k.group_id = G.id();
  k.kind = int(mod.kind);
  if (mod.kind == CoefKind::coinduced) k.subgroup = mod.cs->subgroup().elems;
  k.degree = degree;
  k.modulus = modulus;
  return k;
}

// Solver for delta : C^degree -> C^{degree+1} over Z/modulus.
std::shared_ptr<ModSolver> delta_solver(const FiniteGroup& G,
                                        const CoefModule& mod, int degree,
                                        std::int64_t modulus) {
  CacheKey key = make_key(G, mod, degree, modulus);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_solvers.find(key);
    if (it != g_solvers.end()) return it->second;
  }
  Cochain out(G, degree + 1, mod);
  auto cols = delta_columns(G, mod, degree);
  auto solver = std::make_shared<ModSolver>(
      int(out.tuple_count() * mod.ncoords()), std::move(cols), modulus);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_solvers.emplace(key, std::move(solver));
  (void)inserted;
  return it->second;
}

std::vector<std::int64_t> cochain_residues(const Cochain& f, std::int64_t m) {
  const std::vector<QmodZ>& raw = f.raw();
  std::vector<std::int64_t> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out[i] = to_residue(raw[i], m);
  return out;
}

Cochain cochain_from_residues(const FiniteGroup& G, int degree,
                              const CoefModule& mod,
                              const std::vector<std::int64_t>& num,
                              std::int64_t m) {
  Cochain c(G, degree, mod);
  auto& raw = c.raw();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = QmodZ::make(num[i], m);
  return c;
}

}  // namespace

void clear_cohomology_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_solvers.clear();
}

std::optional<Cochain> is_coboundary(const Cochain& f) {
  std::int64_t m = std::int64_t(f.group().order()) * f.lcm_denominator();
  return is_coboundary(f, m);
}

std::optional<Cochain> is_coboundary(const Cochain& f, std::int64_t modulus) {
  if (f.degree() < 1) fail_invalid("is_coboundary needs degree >= 1");
  const FiniteGroup& G = f.group();
  Cochain witness(G, f.degree() - 1, f.module());
  if (f.is_zero()) return witness;  // canonical zero witness
  if (f.lcm_denominator() != 1 && modulus % f.lcm_denominator() != 0)
    fail_internal("coboundary modulus does not cover the cochain");
  auto solver = delta_solver(G, f.module(), f.degree() - 1, modulus);
  auto sol = solver->solve(cochain_residues(f, modulus));
  if (!sol) return std::nullopt;
  Cochain c = cochain_from_residues(G, f.degree() - 1, f.module(), *sol,
                                    modulus);
  if (!(coboundary(c) == f)) fail_internal("coboundary witness failed recheck");
  return c;
}

bool class_equal(const Cochain& f, const Cochain& g) {
  if (f == g) return true;
  return is_coboundary(f - g).has_value();
}

// ---------------------------------------------------------------------------
// cohomology_group
// ---------------------------------------------------------------------------

namespace {

// Degree-2 classes of an abelian group with trivial coefficients come from
// bilinear forms on a cyclic decomposition: for basis generators of orders
// d_i the forms
//   mu_{ij}(a, b) = x_i(a) x_j(b) / gcd(d_i, d_j),   i < j,
// are normalized 2-cocycles (bilinearity telescopes the cocycle identity),
// and their classes generate all of H^2 independently, with exact order
// gcd(d_i, d_j): antisymmetrization f(a,b) - f(b,a) kills coboundaries and
// pairs mu_{ij} diagonally against the basis pairs.  This route avoids the
// generic relation system, whose row count grows with the cube of the
// order and would dominate memory on groups as small as (Z/7)^2.
CohomologyGroup abelian_h2(const FiniteGroup& G) {
  AbelianBasis basis = abelian_basis(G);
  CohomologyGroup H;
  H.level = G.order();
  Cochain model(G, 2, CoefModule::trivial_module());
  H.zero = model;

  struct Form {
    std::int64_t ord;
    int i, j;
  };
  std::vector<Form> forms;
  for (std::size_t i = 0; i < basis.orders.size(); ++i)
    for (std::size_t j = i + 1; j < basis.orders.size(); ++j) {
      std::int64_t g = std::gcd(basis.orders[i], basis.orders[j]);
      if (g > 1) forms.push_back({g, int(i), int(j)});
    }
  std::stable_sort(forms.begin(), forms.end(),
                   [](const Form& a, const Form& b) { return a.ord < b.ord; });

  for (const Form& f : forms) {
    Cochain rep = model;
    for (int a = 1; a < G.order(); ++a)
      for (int b = 1; b < G.order(); ++b) {
        std::int64_t v = std::int64_t(basis.coords[a][f.i]) *
                         basis.coords[b][f.j] % f.ord;
        if (v == 0) continue;
        int gs[2] = {a, b};
        rep.set(gs, 0, QmodZ::make(v, f.ord));
      }
    H.structure.factors.push_back(f.ord);
    H.reps.push_back(std::move(rep));
  }

  // The antisymmetrized pairing against basis pairs must come out diagonal;
  // together with the shared verification block below this pins both the
  // coordinates and the advertised structure.
  for (std::size_t t = 0; t < forms.size(); ++t)
    for (std::size_t i = 0; i < basis.orders.size(); ++i)
      for (std::size_t j = i + 1; j < basis.orders.size(); ++j) {
        QmodZ v = H.reps[t].eval2(basis.gens[i], basis.gens[j]) -
                  H.reps[t].eval2(basis.gens[j], basis.gens[i]);
        QmodZ want = (int(i) == forms[t].i && int(j) == forms[t].j)
                         ? QmodZ::make(1, forms[t].ord)
                         : QmodZ{};
        if (!(v == want)) fail_internal("bilinear form pairing is off");
      }
  return H;
}

CohomologyGroup generic_cohomology_group(const FiniteGroup& G, CoefModule mod,
                                         int degree) {
  const std::int64_t N = G.order();
  CohomologyGroup H;
  H.level = N;

  Cochain model(G, degree, mod);
  H.zero = model;
  const int d_n = int(model.tuple_count() * mod.ncoords());
  if (d_n == 0) return H;  // trivial group: nothing in positive degrees

  // The module of level-N cocycles, as an echelon basis of ker(delta mod N).
  auto up = delta_solver(G, mod, degree, N);
  ModSolver lambda(d_n, up->kernel(), N);
  const int s = lambda.pivot_count();
  if (s == 0) return H;  // no nonzero cocycles at this level

  // Relations on the pivot generators.  Three kinds: the order relation of
  // each pivot (its (N/d)-multiple falls back into later pivots), the
  // integer coboundary columns, and the corrections (B w)/N for w in
  // ker(B mod N) — the coboundaries of cochains one denominator level
  // deeper, which is exactly what identifies level-N classes that merge
  // over Q/Z.
  std::vector<std::vector<std::int64_t>> rel;
  auto express_or_die = [&](const std::vector<std::int64_t>& v,
                            const char* what) {
    auto c = lambda.express(v);
    if (!c) fail_internal(what);
    return *c;
  };

  for (int t = 0; t < s; ++t) {
    const auto& pc = lambda.pivot_column(t);
    std::int64_t d = std::gcd(pc[lambda.pivot_lead(t)], N);
    std::int64_t f = N / d;
    std::vector<std::int64_t> mult(d_n);
    for (int i = 0; i < d_n; ++i) mult[i] = (pc[i] * f) % N;
    auto c = express_or_die(mult, "pivot completion left the cocycle module");
    c[t] -= f;
    rel.push_back(std::move(c));
  }

  auto bcols = delta_columns(G, mod, degree - 1);
  const int d_lo = int(bcols.size());
  for (const auto& b : bcols)
    rel.push_back(express_or_die(b, "coboundary is not a cocycle"));

  auto down = delta_solver(G, mod, degree - 1, N);
  for (const auto& w : down->kernel()) {
    std::vector<std::int64_t> corr(d_n);
    for (int i = 0; i < d_n; ++i) {
      std::int64_t acc = 0;  // at most degree+1 terms per row, far from 2^63
      for (int t = 0; t < d_lo; ++t)
        if (bcols[t][i] != 0) acc += bcols[t][i] * w[t];
      if (acc % N != 0) fail_internal("denominator correction not divisible");
      corr[i] = acc / N;
    }
    rel.push_back(express_or_die(corr, "correction left the cocycle module"));
  }

  ModSmithResult sm = smith_mod(std::move(rel), s, N);

  for (int t = 0; t < s; ++t) {
    if (sm.diag[t] == 1) continue;
    H.structure.factors.push_back(sm.diag[t]);
    // Class generator: the t-th transformed generator, back in cochain
    // coordinates over N.
    std::vector<std::int64_t> num(d_n, 0);
    for (int j = 0; j < s; ++j) {
      std::int64_t c = sm.uinv_cols[t][j];
      if (c == 0) continue;
      const auto& pc = lambda.pivot_column(j);
      for (int i = 0; i < d_n; ++i) num[i] = (num[i] + c * pc[i]) % N;
    }
    H.reps.push_back(cochain_from_residues(G, degree, mod, num, N));
  }
  return H;
}

}  // namespace

CohomologyGroup cohomology_group(const FiniteGroup& G, CoefModule mod,
                                 int degree) {
  if (degree < 1 || degree > 3) fail_invalid("cohomology degree must be 1..3");
  CohomologyGroup H =
      (degree == 2 && mod.kind == CoefKind::trivial && G.is_abelian())
          ? abelian_h2(G)
          : generic_cohomology_group(G, mod, degree);

  // Representatives are genuine cocycles of the advertised order,
  // nontrivial, and pairwise non-cohomologous.
  for (std::size_t i = 0; i < H.reps.size(); ++i) {
    if (!coboundary(H.reps[i]).is_zero())
      fail_internal("cohomology representative is not a cocycle");
    if (is_coboundary(H.reps[i]))
      fail_internal("cohomology representative is trivial");
    const std::int64_t f = H.structure.factors[i];
    auto check_proper_multiple = [&](std::int64_t p) {
      Cochain power = H.reps[i];
      for (auto& q : power.raw()) q = (f / p) * q;
      if (is_coboundary(power))
        fail_internal("cohomology representative has too small an order");
    };
    std::int64_t rem = f;
    for (std::int64_t p = 2; p * p <= rem; ++p) {
      if (rem % p != 0) continue;
      while (rem % p == 0) rem /= p;
      check_proper_multiple(p);
    }
    if (rem > 1) check_proper_multiple(rem);
    for (std::size_t j = i + 1; j < H.reps.size(); ++j)
      if (class_equal(H.reps[i], H.reps[j]))
        fail_internal("cohomology representatives are cohomologous");
  }
  return H;
}

std::vector<Cochain> all_classes(const CohomologyGroup& H) {
  std::vector<Cochain> out;
  if (H.reps.empty()) {
    if (H.zero) out.push_back(*H.zero);  // the one class of a trivial group
    return out;
  }
  const auto& d = H.structure.factors;
  std::vector<std::int64_t> e(d.size(), 0);
  for (;;) {
    Cochain c = H.reps[0];  // shape template
    for (auto& q : c.raw()) q = QmodZ{};
    for (std::size_t i = 0; i < d.size(); ++i)
      if (e[i] != 0) {
        const auto& raw = H.reps[i].raw();
        auto& craw = c.raw();
        for (std::size_t t = 0; t < craw.size(); ++t)
          craw[t] += e[i] * raw[t];
      }
    out.push_back(std::move(c));
    int p = int(d.size()) - 1;
    while (p >= 0 && ++e[p] == d[p]) e[p--] = 0;
    if (p < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shapiro maps
// ---------------------------------------------------------------------------

Cochain shapiro_phi1(const CosetSpace& cs, const std::vector<QmodZ>& rho) {
  const FiniteGroup& G = cs.group();
  const Subgroup& H = cs.subgroup();
  if (int(rho.size()) != H.order()) fail_invalid("phi1: character size mismatch");
  Cochain out(G, 1, CoefModule::coinduced(cs));
  for (int g = 1; g < G.order(); ++g)
    for (int x = 0; x < cs.size(); ++x)
      out.set(&g, x, rho[H.local(cs.kappa(x, g))]);
  return out;
}

std::vector<QmodZ> shapiro_psi1(const Cochain& gamma) {
  if (gamma.degree() != 1 || gamma.module().kind != CoefKind::coinduced)
    fail_invalid("psi1 expects a degree-1 coinduced cochain");
  const CosetSpace& cs = *gamma.module().cs;
  const Subgroup& H = cs.subgroup();
  std::vector<QmodZ> rho(H.order());
  for (int i = 0; i < H.order(); ++i)
    rho[i] = gamma.eval1(H.elems[i], 0);
  return rho;
}

Cochain shapiro_phi(const CosetSpace& cs, const FiniteGroup& Hgrp,
                    const Cochain& mu) {
  const FiniteGroup& G = cs.group();
  const Subgroup& H = cs.subgroup();
  if (mu.degree() != 2 || &mu.group() != &Hgrp)
    fail_invalid("phi expects a degree-2 cochain on the subgroup table");
  Cochain out(G, 2, CoefModule::coinduced(cs));
  int gs[2];
  for (gs[0] = 1; gs[0] < G.order(); ++gs[0])
    for (gs[1] = 1; gs[1] < G.order(); ++gs[1])
      for (int x = 0; x < cs.size(); ++x) {
        int k1 = H.local(cs.kappa(x, gs[0]));
        int k2 = H.local(cs.kappa(cs.act(x, gs[0]), gs[1]));
        out.set(gs, x, mu.eval2(k1, k2));
      }
  return out;
}

Cochain shapiro_psi(const Cochain& gamma, const FiniteGroup& Hgrp) {
  if (gamma.degree() != 2 || gamma.module().kind != CoefKind::coinduced)
    fail_invalid("psi expects a degree-2 coinduced cochain");
  const CosetSpace& cs = *gamma.module().cs;
  const Subgroup& H = cs.subgroup();
  if (Hgrp.order() != H.order()) fail_invalid("psi: subgroup table mismatch");
  Cochain out(Hgrp, 2);
  int hs[2];
  for (hs[0] = 1; hs[0] < Hgrp.order(); ++hs[0])
    for (hs[1] = 1; hs[1] < Hgrp.order(); ++hs[1])
      out.set(hs, 0, gamma.eval2(H.elems[hs[0]], H.elems[hs[1]], 0));
  return out;
}

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

Cochain coset_translate(const Cochain& gamma, int x) {
  if (gamma.module().kind != CoefKind::coinduced)
    fail_invalid("coset_translate needs coinduced coefficients");
  const CosetSpace& cs = *gamma.module().cs;
  // Well-defined only for stable cosets; callers pass K^H members.
  for (int h : cs.subgroup().elems)
    if (cs.act(x, h) != x) fail_invalid("coset_translate: coset not stable");
  Cochain out = gamma;
  const int nc = gamma.ncoords();
  auto& raw = out.raw();
  const auto& src = gamma.raw();
  for (std::int64_t t = 0; t < gamma.tuple_count(); ++t)
    for (int y = 0; y < nc; ++y)
      raw[t * nc + y] = src[t * nc + cs.coset_mul(x, y)];
  return out;
}

Cochain conjugate_cocycle(const Cochain& mu, const FiniteGroup& parent,
                          const Subgroup& H, int g) {
  const FiniteGroup& Hgrp = mu.group();
  if (Hgrp.order() != H.order()) fail_invalid("conjugate_cocycle: table mismatch");
  std::vector<int> perm(H.order());
  for (int i = 0; i < H.order(); ++i) {
    int c = parent.conj(H.elems[i], g);
    if (!H.contains(c)) fail_invalid("conjugate_cocycle: g does not normalize H");
    perm[i] = H.local(c);
  }
  Cochain out(Hgrp, mu.degree(), mu.module());
  std::vector<int> tup(mu.degree()), ptup(mu.degree());
  for (std::int64_t t = 0; t < mu.tuple_count(); ++t) {
    mu.unrank(t, tup.data());
    for (int i = 0; i < mu.degree(); ++i) ptup[i] = perm[tup[i]];
    out.set(tup.data(), 0, mu.eval(ptup.data(), 0));
  }
  return out;
}

std::vector<Cochain> invariant_classes(const CohomologyGroup& H2,
                                       const FiniteGroup& parent,
                                       const Subgroup& H,
                                       const CosetSpace& cs) {
  std::vector<Cochain> out;
  for (const Cochain& c : all_classes(H2)) {
    bool invariant = true;
    for (int y = 1; y < cs.size() && invariant; ++y)
      invariant = class_equal(conjugate_cocycle(c, parent, H, cs.rep(y)), c);
    if (invariant) out.push_back(c);
  }
  return out;
}

Cochain pullback(const Cochain& f, const FiniteGroup& Gsrc,
                 const std::vector<int>& a) {
  if (f.module().kind != CoefKind::trivial)
    fail_invalid("pullback supports trivial coefficients only");
  if (int(a.size()) != Gsrc.order()) fail_invalid("pullback: map size mismatch");
  Cochain out(Gsrc, f.degree());
  std::vector<int> tup(f.degree()), itup(f.degree());
  for (std::int64_t t = 0; t < out.tuple_count(); ++t) {
    out.unrank(t, tup.data());
    for (int i = 0; i < f.degree(); ++i) itup[i] = a[tup[i]];
    out.set(tup.data(), 0, f.eval(itup.data(), 0));
  }
  return out;
}

}  // namespace morita
