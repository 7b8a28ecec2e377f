#include "duality.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "errors.hpp"
#include "modsolve.hpp"
#include "sampler.hpp"

namespace morita {

namespace {

void require_parent(const PointedCategory& parent,
                    const ModuleCategoryData& data, const char* who) {
  if (!data.cs || &data.cs->group() != parent.group.get())
    fail_invalid(std::string(who) + ": module data is not over this category");
}

}  // namespace

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

SectionTable min_section(const CosetSpace& cs) {
  SectionTable u(cs.size());
  for (int x = 0; x < cs.size(); ++x) u[x] = cs.rep(x);
  return u;
}

SectionTable alternate_section(const CosetSpace& cs) {
  const FiniteGroup& G = cs.group();
  std::vector<std::vector<int>> members(cs.size());
  for (int g = 0; g < G.order(); ++g) members[cs.coset_of(g)].push_back(g);
  SectionTable u(cs.size());
  u[0] = 0;  // the base representative stays the identity (normalization)
  for (int x = 1; x < cs.size(); ++x)
    u[x] = members[x].size() > 1 ? members[x][1] : members[x][0];
  return u;
}

namespace {

void require_section(const CosetSpace& cs, const SectionTable& u) {
  if (int(u.size()) != cs.size()) fail_invalid("section has the wrong size");
  if (u[0] != 0)
    fail_invalid("section must keep the identity over the base coset");
  for (int x = 0; x < cs.size(); ++x)
    if (u[x] < 0 || u[x] >= cs.group().order() || cs.coset_of(u[x]) != x)
      fail_invalid("section entry lies outside its coset");
}

}  // namespace

// ---------------------------------------------------------------------------
// is_dual_pointed
// ---------------------------------------------------------------------------

DualDiagnosis is_dual_pointed(const PointedCategory& parent,
                              const ModuleCategoryData& data) {
  require_parent(parent, data, "is_dual_pointed");
  const FiniteGroup& G = *parent.group;
  const CosetSpace& cs = *data.cs;
  const Subgroup& H = cs.subgroup();

  DualDiagnosis diag;
  if (!is_abelian(G, H)) {
    diag.reason = "subgroup is not abelian";
    return diag;
  }
  if (!is_normal(G, H)) {
    diag.reason = "subgroup is not normal";
    return diag;
  }

  FiniteGroup Hgrp = subgroup_group(G, H);
  // Translating mu by a coset changes it by a 2-cocycle (the associator
  // contribution is constant along cosets and cancels); the class of that
  // change, restricted to H, is the obstruction.
  const bool zero_omega = parent.omega.is_zero();
  std::optional<Cochain> mu0;
  if (zero_omega) mu0 = shapiro_psi(data.mu, Hgrp);

  for (int y = 1; y < cs.size(); ++y) {
    Cochain shift = coset_translate(data.mu, y) - data.mu;
    bool invariant = is_coboundary(shapiro_psi(shift, Hgrp)).has_value();
    if (zero_omega) {
      // Independent route: conjugate the restricted class directly.
      bool direct = class_equal(
          conjugate_cocycle(*mu0, G, H, cs.rep(y)), *mu0);
      if (direct != invariant)
        fail_internal("translation and conjugation invariance disagree");
    }
    if (!invariant) {
      diag.reason = "module class moves under conjugation";
      diag.witness_y = y;
      return diag;
    }
  }
  diag.pointed = true;
  return diag;
}

// ---------------------------------------------------------------------------
// eta_family / nu_tilde
// ---------------------------------------------------------------------------

std::vector<Cochain> eta_family(const PointedCategory& parent,
                                const ModuleCategoryData& data) {
  require_parent(parent, data, "eta_family");
  const FiniteGroup& G = *parent.group;
  const CosetSpace& cs = *data.cs;
  // One modulus covers every right-hand side, so the k solves share one
  // cached elimination.
  const std::int64_t m =
      std::int64_t(G.order()) * data.mu.lcm_denominator();

  std::vector<Cochain> etas;
  etas.reserve(cs.size());
  etas.emplace_back(G, 1, CoefModule::coinduced(cs));
  for (int y = 1; y < cs.size(); ++y) {
    Cochain rhs = coset_translate(data.mu, y) - data.mu;
    std::optional<Cochain> eta = is_coboundary(rhs, m);
    if (!eta)
      fail_internal("eta_family: translation shift is not a coboundary");
    etas.push_back(std::move(*eta));
  }
  return etas;
}

NuTilde nu_tilde(const ModuleCategoryData& data,
                 const std::vector<Cochain>& etas) {
  const CosetSpace& cs = *data.cs;
  const int k = cs.size();
  if (int(etas.size()) != k) fail_invalid("nu_tilde: eta family size");
  if (!etas[0].is_zero())
    fail_invalid("nu_tilde: eta at the base coset must vanish");

  bool all_zero = true;
  for (const Cochain& e : etas) all_zero = all_zero && e.is_zero();

  NuTilde nut;
  nut.k = k;
  nut.values.reserve(std::size_t(k) * k);
  for (int y1 = 0; y1 < k; ++y1)
    for (int y2 = 0; y2 < k; ++y2) {
      Cochain v = coset_translate(etas[y1], y2) + etas[y2] -
                  etas[cs.coset_mul(y1, y2)];
      if ((y1 == 0 || y2 == 0) && !v.is_zero())
        fail_internal("nu_tilde is not normalized");
      nut.values.push_back(std::move(v));
    }

  if (all_zero) return nut;  // every value is zero; both identities hold

  // Each value is a cocycle in the coset-function module, and the family
  // satisfies the translated 2-cocycle identity on K; deltabar-exactness
  // of the construction guarantees both, so failures are internal.
  for (const Cochain& v : nut.values)
    if (!coboundary(v).is_zero())
      fail_internal("nu_tilde value is not a cocycle");
  for (int y1 = 0; y1 < k; ++y1)
    for (int y2 = 0; y2 < k; ++y2)
      for (int y3 = 0; y3 < k; ++y3) {
        Cochain lhs = nut.at(y2, y3) - nut.at(cs.coset_mul(y1, y2), y3) +
                      nut.at(y1, cs.coset_mul(y2, y3)) -
                      coset_translate(nut.at(y1, y2), y3);
        if (!lhs.is_zero())
          fail_internal("nu_tilde misses the 2-cocycle identity");
      }
  return nut;
}

// ---------------------------------------------------------------------------
// kappa
// ---------------------------------------------------------------------------

std::vector<int> kappa_cocycle(const CosetSpace& cs, const SectionTable& u) {
  require_section(cs, u);
  const FiniteGroup& G = cs.group();
  const Subgroup& H = cs.subgroup();
  const int k = cs.size();
  std::vector<int> kap(std::size_t(k) * k);
  for (int x1 = 0; x1 < k; ++x1)
    for (int x2 = 0; x2 < k; ++x2) {
      int v = G.mul(G.mul(u[x1], u[x2]),
                    G.inverse(u[cs.coset_mul(x1, x2)]));
      if (!H.contains(v)) fail_internal("kappa left the subgroup");
      kap[std::size_t(x1) * k + x2] = v;
    }
  // Twisted cocycle identity:
  //   kappa(x1,x2) kappa(x1 x2, x3) = u(x1) kappa(x2,x3) u(x1)^{-1}
  //                                   kappa(x1, x2 x3).
  for (int x1 = 0; x1 < k; ++x1)
    for (int x2 = 0; x2 < k; ++x2)
      for (int x3 = 0; x3 < k; ++x3) {
        int lhs = G.mul(kap[std::size_t(x1) * k + x2],
                        kap[std::size_t(cs.coset_mul(x1, x2)) * k + x3]);
        int rhs = G.mul(G.conj(kap[std::size_t(x2) * k + x3], u[x1]),
                        kap[std::size_t(x1) * k + cs.coset_mul(x2, x3)]);
        if (lhs != rhs) fail_internal("kappa misses the twisted identity");
      }
  return kap;
}

// ---------------------------------------------------------------------------
// crossed_product
// ---------------------------------------------------------------------------

CrossedProduct crossed_product(std::shared_ptr<const CosetSpace> cs,
                               const NuTilde& nut, const SectionTable& u) {
  if (!cs) fail_invalid("crossed_product: null coset space");
  const FiniteGroup& G = cs->group();
  const Subgroup& H = cs->subgroup();
  const int k = cs->size();
  if (nut.k != k) fail_invalid("crossed_product: nu_tilde size mismatch");
  require_section(*cs, u);
  if (!is_normal(G, H))
    fail_invalid("crossed_product needs a normal subgroup");

  CrossedProduct cp;
  cp.cs = std::move(cs);
  cp.section = u;
  cp.hat = dual_group(G, H);
  cp.hsize = cp.hat.size();
  cp.ksize = k;
  const int h = cp.hsize;

  // nu composes psi1 with nu_tilde: evaluate each value on H at the base
  // coset; the result must be a genuine character, which index_of enforces.
  cp.nu.resize(std::size_t(k) * k);
  for (int x1 = 0; x1 < k; ++x1)
    for (int x2 = 0; x2 < k; ++x2) {
      std::vector<QmodZ> vals(H.order());
      const Cochain& g = nut.at(x1, x2);
      for (int j = 1; j < H.order(); ++j) vals[j] = g.eval1(H.elems[j], 0);
      cp.nu[std::size_t(x1) * k + x2] = cp.hat.index_of(vals);
    }

  cp.kappa = kappa_cocycle(*cp.cs, u);

  // Conjugation action of K on characters.
  cp.act.assign(k, std::vector<int>(h));
  for (int x = 0; x < k; ++x) {
    std::vector<int> hperm(H.order());
    for (int j = 0; j < H.order(); ++j)
      hperm[j] = H.local(G.conj(H.elems[j], u[x]));
    for (int rho = 0; rho < h; ++rho)
      cp.act[x][rho] = cp.hat.permuted(rho, hperm);
  }

  // Character group arithmetic tables.
  cp.hat_mul_table.resize(std::size_t(h) * h);
  cp.hat_inv_table.resize(h);
  for (int c1 = 0; c1 < h; ++c1) {
    std::vector<QmodZ> neg(H.order());
    for (int j = 0; j < H.order(); ++j) neg[j] = -cp.hat.eval(c1, j);
    cp.hat_inv_table[c1] = cp.hat.index_of(neg);
    for (int c2 = 0; c2 < h; ++c2) {
      std::vector<QmodZ> sum(H.order());
      for (int j = 0; j < H.order(); ++j)
        sum[j] = cp.hat.eval(c1, j) + cp.hat.eval(c2, j);
      cp.hat_mul_table[std::size_t(c1) * h + c2] = cp.hat.index_of(sum);
    }
  }

  // Realize the table; from_table validates associativity and inverses,
  // which is exactly the right-module 2-cocycle condition on nu.
  const int n = h * k;
  std::vector<int> flat(std::size_t(n) * n);
  for (int e1 = 0; e1 < n; ++e1) {
    const int rho1 = cp.rho_of(e1), x1 = cp.x_of(e1);
    for (int e2 = 0; e2 < n; ++e2) {
      const int rho2 = cp.rho_of(e2), x2 = cp.x_of(e2);
      int chi = cp.hat_mul(cp.hat_mul(cp.nu[std::size_t(x1) * k + x2],
                                      cp.act[x2][rho1]),
                           rho2);
      flat[std::size_t(e1) * n + e2] =
          cp.idx(chi, cp.cs->coset_mul(x1, x2));
    }
  }
  cp.table = std::make_shared<FiniteGroup>(
      FiniteGroup::from_table(n, std::move(flat), true));
  if (cp.table->order() != G.order())
    fail_internal("crossed product has the wrong order");
  return cp;
}

// ---------------------------------------------------------------------------
// varpi
// ---------------------------------------------------------------------------

namespace {

// Longhand evaluation of the degree-3 coboundary at one tuple.
QmodZ delta3_at(const FiniteGroup& G, const Cochain& w, int g0, int g1,
                int g2, int g3) {
  return w.eval3(g1, g2, g3) - w.eval3(G.mul(g0, g1), g2, g3) +
         w.eval3(g0, G.mul(g1, g2), g3) - w.eval3(g0, g1, G.mul(g2, g3)) +
         w.eval3(g0, g1, g2);
}

}  // namespace

Cochain varpi_cocycle(const NuTilde& nut, const CrossedProduct& cp) {
  const FiniteGroup& D = *cp.table;
  const Subgroup& H = cp.cs->subgroup();
  const int k = cp.ksize, n = D.order();
  if (nut.k != k) fail_invalid("varpi_cocycle: nu_tilde size mismatch");

  Cochain w(D, 3, CoefModule::trivial_module());

  bool nut_zero = true;
  for (const Cochain& v : nut.values) nut_zero = nut_zero && v.is_zero();
  bool kappa_split = true;
  for (int v : cp.kappa) kappa_split = kappa_split && v == 0;

  if (!(nut_zero && kappa_split)) {
    for (int e1 = 1; e1 < n; ++e1) {
      const int rho1 = cp.rho_of(e1), x1 = cp.x_of(e1);
      for (int e2 = 1; e2 < n; ++e2) {
        const int x2 = cp.x_of(e2);
        const Cochain& nt = nut.at(x1, x2);
        for (int e3 = 1; e3 < n; ++e3) {
          const int x3 = cp.x_of(e3);
          QmodZ val = nt.eval1(cp.section[x3], 0) +
                      cp.hat.eval(rho1,
                                  H.local(cp.kappa[std::size_t(x2) * k + x3]));
          if (val.is_zero()) continue;
          int gs[3] = {e1, e2, e3};
          w.set(gs, 0, val);
        }
      }
    }
  }
  // else: both ingredients vanish identically, so varpi is the zero
  // cochain and trivially a normalized cocycle.

  if (!w.is_zero()) {
    if (n <= 32) {
      if (!coboundary(w).is_zero())
        fail_internal("varpi is not a 3-cocycle");
    } else {
      // The exhaustive kappa and nu_tilde identities above already force
      // the cocycle condition; spot-check a reproducible sample rather
      // than materializing the degree-4 cochain.
      Sampler rng(0x76617270ull + std::uint64_t(n));
      for (int t = 0; t < 4096; ++t) {
        int g0 = rng.below(n), g1 = rng.below(n);
        int g2 = rng.below(n), g3 = rng.below(n);
        if (!delta3_at(D, w, g0, g1, g2, g3).is_zero())
          fail_internal("varpi is not a 3-cocycle");
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// dual_pointed_category
// ---------------------------------------------------------------------------

DualPresentation dual_pointed_category(const PointedCategory& parent,
                                       const ModuleCategoryData& data,
                                       const SectionTable& u) {
  DualDiagnosis diag = is_dual_pointed(parent, data);
  if (!diag.pointed)
    fail_invalid("dual is not pointed here: " + diag.reason);

  DualPresentation dual;
  dual.etas = eta_family(parent, data);
  dual.nut = nu_tilde(data, dual.etas);
  dual.cp = crossed_product(data.cs, dual.nut, u);
  dual.varpi = varpi_cocycle(dual.nut, dual.cp);
  dual.varpi_trivial = is_coboundary(dual.varpi).has_value();
  dual.profile = group_profile(*dual.cp.table);
  return dual;
}

DualPresentation dual_pointed_category(const PointedCategory& parent,
                                       const ModuleCategoryData& data) {
  return dual_pointed_category(parent, data, min_section(*data.cs));
}

// ---------------------------------------------------------------------------
// Right-module coboundary solve for nu
// ---------------------------------------------------------------------------

std::optional<std::vector<int>> hat_coboundary_witness(
    const CrossedProduct& cp, const std::vector<int>& target) {
  const int k = cp.ksize;
  if (int(target.size()) != k * k)
    fail_invalid("hat_coboundary_witness: target size");
  for (int y = 0; y < k; ++y)
    if (target[y] != 0 || target[std::size_t(y) * k] != 0)
      fail_invalid("hat_coboundary_witness: target is not normalized");

  if (cp.hsize == 1 || k == 1)
    return std::vector<int>(k, 0);  // everything in sight is trivial

  const FiniteGroup& G = cp.cs->group();
  const Subgroup& H = cp.cs->subgroup();
  FiniteGroup Hgrp = subgroup_group(G, H);
  AbelianBasis basis = abelian_basis(Hgrp);
  const int r = int(basis.gens.size());
  const std::int64_t L = basis.orders.back();  // exponent of H

  // Unknowns: X[y][i] in Z/L for y = 1..k-1, the character beta(y) having
  // value X[y][i]/L on basis generator i; rows constrain every pair
  // equation on every generator, plus d_i X[y][i] = 0 mod L to keep the
  // values inside the character group.
  auto unknown = [&](int y, int i) { return (y - 1) * r + i; };
  const int cols = (k - 1) * r;
  const int rows = (k - 1) * (k - 1) * r + cols;
  std::vector<std::vector<std::int64_t>> mat(
      cols, std::vector<std::int64_t>(rows, 0));
  std::vector<std::int64_t> rhs(rows, 0);

  int row = 0;
  for (int y1 = 1; y1 < k; ++y1)
    for (int y2 = 1; y2 < k; ++y2) {
      const int y12 = cp.cs->coset_mul(y1, y2);
      for (int j = 0; j < r; ++j, ++row) {
        // beta(y1) evaluated on u(y2) gen_j u(y2)^{-1}.
        int conj_local = H.local(
            G.conj(H.elems[basis.gens[j]], cp.section[y2]));
        const std::vector<int>& cjc = basis.coords[conj_local];
        for (int i = 0; i < r; ++i)
          if (cjc[i] != 0) mat[unknown(y1, i)][row] += cjc[i];
        mat[unknown(y2, j)][row] += 1;
        if (y12 != 0) mat[unknown(y12, j)][row] -= 1;
        QmodZ t = cp.hat.eval(target[std::size_t(y1) * k + y2],
                              basis.gens[j]);
        rhs[row] = to_residue(t, L);
      }
    }
  for (int y = 1; y < k; ++y)
    for (int i = 0; i < r; ++i, ++row)
      mat[unknown(y, i)][row] = basis.orders[i];

  ModSolver solver(rows, std::move(mat), L);
  std::optional<std::vector<std::int64_t>> sol = solver.solve(rhs);
  if (!sol) return std::nullopt;

  std::vector<int> beta(k, 0);
  for (int y = 1; y < k; ++y) {
    std::vector<QmodZ> vals(H.order());
    for (int j = 0; j < H.order(); ++j) {
      QmodZ v;
      const std::vector<int>& c = basis.coords[j];
      for (int i = 0; i < r; ++i)
        v += QmodZ::make(c[i] * (*sol)[unknown(y, i)], L);
      vals[j] = v;
    }
    beta[y] = cp.hat.index_of(vals);
  }
  // Replay the equation through the character tables.
  for (int y1 = 0; y1 < k; ++y1)
    for (int y2 = 0; y2 < k; ++y2) {
      int lhs = cp.hat_mul(
          cp.hat_mul(cp.act[y2][beta[y1]], beta[y2]),
          cp.hat_inv(beta[cp.cs->coset_mul(y1, y2)]));
      if (lhs != target[std::size_t(y1) * k + y2])
        fail_internal("hat coboundary witness failed replay");
    }
  return beta;
}

bool nu_class_trivial(const CrossedProduct& cp) {
  return hat_coboundary_witness(cp, cp.nu).has_value();
}

// ---------------------------------------------------------------------------
// lambda_group
// ---------------------------------------------------------------------------

LambdaGroup lambda_group(const PointedCategory& parent,
                         const ModuleCategoryData& data,
                         const std::vector<Cochain>& etas, int max_order) {
  require_parent(parent, data, "lambda_group");
  const FiniteGroup& G = *parent.group;
  const CosetSpace& cs = *data.cs;
  const Subgroup& H = cs.subgroup();
  const int k = cs.size();
  if (G.order() > max_order)
    fail_invalid("lambda_group: order exceeds the brute-force bound");
  if (int(etas.size()) != k || !etas[0].is_zero())
    fail_invalid("lambda_group: bad eta family");

  // Classes over a fixed coset x are eta_x + (cocycle classes); the
  // character label evaluates a cocycle on H at the base coset, and the
  // cocycle representatives are indexed by their labels.
  DualGroup hat = dual_group(G, H);
  const int h = hat.size();
  CohomologyGroup h1 =
      cohomology_group(G, CoefModule::coinduced(cs), 1);
  std::vector<Cochain> classes = all_classes(h1);
  if (int(classes.size()) != h)
    fail_internal("degree-1 classes do not match the character count");
  std::vector<std::optional<Cochain>> by_label(h);
  for (Cochain& z : classes) {
    int chi = hat.index_of(shapiro_psi1(z));
    if (by_label[chi]) fail_internal("duplicate character label");
    by_label[chi] = std::move(z);
  }

  const int n = h * k;
  std::vector<int> flat(std::size_t(n) * n);
  auto gamma_of = [&](int e) {
    return etas[e / h] + *by_label[e % h];
  };
  for (int e1 = 0; e1 < n; ++e1) {
    const int x1 = e1 / h;
    Cochain g1 = gamma_of(e1);
    for (int e2 = 0; e2 < n; ++e2) {
      const int x2 = e2 / h;
      const int x12 = cs.coset_mul(x1, x2);
      Cochain prod = coset_translate(g1, x2) + gamma_of(e2) - etas[x12];
      // Locate the class of `prod`: label it, then certify with a
      // coboundary solve against the labeled representative.
      int chi = hat.index_of(shapiro_psi1(prod));
      if (!is_coboundary(prod - *by_label[chi]))
        fail_internal("functor product does not match its label");
      flat[std::size_t(e1) * n + e2] = x12 * h + chi;
    }
  }

  LambdaGroup lam;
  lam.hsize = h;
  lam.ksize = k;
  lam.table = std::make_shared<FiniteGroup>(
      FiniteGroup::from_table(n, std::move(flat), true));
  if (lam.table->order() != G.order())
    fail_internal("functor group has the wrong order");
  return lam;
}

bool check_T_isomorphism(const LambdaGroup& lam, const CrossedProduct& cp) {
  if (lam.hsize != cp.hsize || lam.ksize != cp.ksize) return false;
  return lam.table->flat_table() == cp.table->flat_table();
}

// ---------------------------------------------------------------------------
// skeleton_associator
// ---------------------------------------------------------------------------

Cochain skeleton_associator(const PointedCategory& parent,
                            const ModuleCategoryData& data,
                            const DualPresentation& dual) {
  require_parent(parent, data, "skeleton_associator");
  const FiniteGroup& G = *parent.group;
  const CosetSpace& cs = *data.cs;
  const CrossedProduct& cp = dual.cp;
  const FiniteGroup& D = *cp.table;
  const int h = cp.hsize, k = cp.ksize, n = D.order();
  if (G.order() > 32)
    fail_invalid("skeleton_associator: order exceeds the brute-force bound");

  // Simple objects are (zeta_x(rho), x) with zeta_x(rho) = eta_x + the
  // coinduced form of rho.
  std::vector<Cochain> phis;
  phis.reserve(h);
  for (int rho = 0; rho < h; ++rho)
    phis.push_back(shapiro_phi1(cs, cp.hat.values(rho)));
  auto zeta = [&](int rho, int x) { return dual.etas[x] + phis[rho]; };

  // For every pair, the product object carries two cocycles: the one from
  // the crossed-product label and the literal translate-and-multiply one.
  // They differ by the coboundary of a coset function f, pinned by fixing
  // f(base) = 0; transitivity of G on the cosets then reads f off the
  // section, and the full relation is replayed as a check.
  std::vector<std::vector<QmodZ>> f(std::size_t(n) * n);
  for (int e1 = 0; e1 < n; ++e1) {
    const int rho1 = cp.rho_of(e1), x1 = cp.x_of(e1);
    for (int e2 = 0; e2 < n; ++e2) {
      const int rho2 = cp.rho_of(e2), x2 = cp.x_of(e2);
      const int e12 = D.mul(e1, e2);
      Cochain diff = coset_translate(zeta(rho1, x1), x2) + zeta(rho2, x2) -
                     zeta(cp.rho_of(e12), cp.x_of(e12));
      std::vector<QmodZ>& fv = f[std::size_t(e1) * n + e2];
      fv.resize(k);
      for (int y = 0; y < k; ++y) fv[y] = diff.eval1(cp.section[y], 0);
      for (int g = 1; g < G.order(); ++g)
        for (int y = 0; y < k; ++y)
          if (!(diff.eval1(g, y) == fv[cs.act(y, g)] - fv[y]))
            fail_internal("structure isomorphism does not close");
    }
  }

  // The associator compares the two ways of peeling a triple product; on
  // a simple object it is a constant coset function, and that constant is
  // its value.  Constancy across cosets is part of the check.
  Cochain w(D, 3, CoefModule::trivial_module());
  for (int e1 = 1; e1 < n; ++e1)
    for (int e2 = 1; e2 < n; ++e2) {
      const std::vector<QmodZ>& f12 = f[std::size_t(e1) * n + e2];
      for (int e3 = 1; e3 < n; ++e3) {
        const int x3 = cp.x_of(e3);
        const std::vector<QmodZ>& f12_3 =
            f[std::size_t(D.mul(e1, e2)) * n + e3];
        const std::vector<QmodZ>& f23 = f[std::size_t(e2) * n + e3];
        const std::vector<QmodZ>& f1_23 =
            f[std::size_t(e1) * n + D.mul(e2, e3)];
        QmodZ val = f12[cs.coset_mul(x3, 0)] - f1_23[0] + f12_3[0] - f23[0];
        for (int y = 1; y < k; ++y) {
          QmodZ other = f12[cs.coset_mul(x3, y)] - f1_23[y] + f12_3[y] -
                        f23[y];
          if (!(other == val))
            fail_internal("associator is not constant on cosets");
        }
        if (val.is_zero()) continue;
        int gs[3] = {e1, e2, e3};
        w.set(gs, 0, val);
      }
    }
  return w;
}

}  // namespace morita
