#include "morita.hpp"

#include <algorithm>
#include <future>

#include "errors.hpp"

namespace morita {

namespace {

std::shared_ptr<const FiniteGroup> borrow(const FiniteGroup& G) {
  return std::shared_ptr<const FiniteGroup>(&G, [](const FiniteGroup*) {});
}

// Candidate subgroups in search order: normal abelian, by decreasing
// order, ties in element-list order (all_subgroups already sorts those).
std::vector<Subgroup> candidate_subgroups(const FiniteGroup& G) {
  std::vector<Subgroup> keep;
  for (Subgroup& H : all_subgroups(G))
    if (is_abelian(G, H) && is_normal(G, H)) keep.push_back(std::move(H));
  std::stable_sort(keep.begin(), keep.end(),
                   [](const Subgroup& a, const Subgroup& b) {
                     return a.order() > b.order();
                   });
  return keep;
}

struct Candidate {
  Subgroup H;
  ModuleCategoryData data;
  int mu_class = 0;
};

struct EvalResult {
  std::optional<MoritaWitness> witness;
  bool budget_hit = false;
};

// The heavy half of one candidate: build the dual, walk isomorphisms
// from C2's group onto its crossed product as the backtracker emits
// them, and stop at the first certificate trivializing the pulled-back
// associator difference.
EvalResult evaluate(const PointedCategory& C1, const PointedCategory& C2,
                    const Candidate& cand, const MoritaBudget& budget) {
  EvalResult res;
  DualPresentation dual = dual_pointed_category(C1, cand.data);
  std::size_t tried = 0;
  bool exhausted = for_each_isomorphism(
      *C2.group, *dual.cp.table, [&](const std::vector<int>& a) {
        Cochain diff = pullback(dual.varpi, *C2.group, a) - C2.omega;
        if (std::optional<Cochain> g = is_coboundary(diff)) {
          res.witness = MoritaWitness{cand.H, cand.mu_class, a, std::move(*g)};
          return false;
        }
        return ++tried < budget.iso_budget;
      });
  res.budget_hit = !res.witness.has_value() && !exhausted;
  return res;
}

std::optional<MoritaWitness> search(const PointedCategory& C1,
                                    const PointedCategory& C2,
                                    const MoritaBudget& budget,
                                    bool check_invariant_route) {
  if (C1.group->order() != C2.group->order()) return std::nullopt;
  const FiniteGroup& G = *C1.group;

  // Gate one subgroup, sequentially and deterministically: which of its
  // module classes make the dual pointed at all.
  auto gate = [&](const Subgroup& H) {
    std::vector<Candidate> out;
    auto cs = std::make_shared<CosetSpace>(coset_space(G, H));
    if (!solve_module_structure(C1, *cs)) return out;  // omega obstructed on H
    ModuleClassCatalog cat = module_class_catalog(C1, cs);
    for (int m = 0; m < int(cat.reps.size()); ++m)
      if (is_dual_pointed(C1, cat.reps[m]).pointed)
        out.push_back(Candidate{H, cat.reps[m], m});
    if (check_invariant_route) {
      // Zero associators: the gate must agree with the direct count of
      // conjugation-invariant module classes over this subgroup.
      FiniteGroup Hgrp = subgroup_group(G, H);
      CohomologyGroup h2 =
          cohomology_group(Hgrp, CoefModule::trivial_module(), 2);
      int direct = int(invariant_classes(h2, G, H, *cs).size());
      if (direct != int(out.size()))
        fail_internal(
            "invariant-class count disagrees with the translation gate");
    }
    return out;
  };

  // Evaluation phase: first witness in candidate order wins.  Subgroups
  // are gated lazily as the evaluator consumes candidates, so a witness
  // under a large subgroup spares the gating work below it.  With
  // jobs > 1 a block of candidates is evaluated speculatively; the merge
  // still picks the first in order, so the answer does not depend on the
  // thread count.
  std::vector<Subgroup> hs = candidate_subgroups(G);
  std::size_t next_h = 0;
  std::vector<Candidate> cands;
  std::size_t cursor = 0;
  const int jobs = std::max(1, budget.jobs);
  bool budget_hit = false;
  std::optional<MoritaWitness> found;
  while (!found) {
    while (cands.size() - cursor < std::size_t(jobs) && next_h < hs.size())
      for (Candidate& c : gate(hs[next_h++])) cands.push_back(std::move(c));
    if (cursor >= cands.size()) break;
    const std::size_t base = cursor;
    const std::size_t end = std::min(cands.size(), base + jobs);
    cursor = end;
    std::vector<EvalResult> block(end - base);
    if (jobs == 1) {
      block[0] = evaluate(C1, C2, cands[base], budget);
    } else {
      std::vector<std::future<EvalResult>> futs;
      for (std::size_t i = base; i < end; ++i)
        futs.push_back(std::async(std::launch::async, [&, i] {
          return evaluate(C1, C2, cands[i], budget);
        }));
      for (std::size_t i = 0; i < futs.size(); ++i) block[i] = futs[i].get();
    }
    for (EvalResult& r : block) {
      if (r.witness) {
        found = std::move(r.witness);
        break;
      }
      budget_hit = budget_hit || r.budget_hit;
    }
  }

  if (found) {
    verify_witness(C1, C2, *found);
    return found;
  }
  if (budget_hit)
    throw EngineError(Err::budget,
                      "inconclusive(budget): isomorphism enumeration was "
                      "truncated before any witness was found");
  return std::nullopt;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t modpow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
  }
  return r;
}

}  // namespace

std::optional<MoritaWitness> morita_equivalent(const PointedCategory& C1,
                                               const PointedCategory& C2,
                                               const MoritaBudget& budget) {
  return search(C1, C2, budget, false);
}

std::optional<MoritaWitness> morita_equivalent_groups(
    const FiniteGroup& G1, const FiniteGroup& G2, const MoritaBudget& budget) {
  PointedCategory C1 =
      make_pointed(borrow(G1), Cochain(G1, 3, CoefModule::trivial_module()));
  PointedCategory C2 =
      make_pointed(borrow(G2), Cochain(G2, 3, CoefModule::trivial_module()));
  return search(C1, C2, budget, true);
}

void verify_witness(const PointedCategory& C1, const PointedCategory& C2,
                    const MoritaWitness& w) {
  const FiniteGroup& G = *C1.group;
  const FiniteGroup& Gp = *C2.group;

  // Condition 1: normal abelian subgroup, restricted associator trivial
  // (that is exactly solvability of the module structure).
  Subgroup H = subgroup_from_elems(G, w.H.elems);
  if (!is_abelian(G, H)) fail_internal("witness: H is not abelian");
  if (!is_normal(G, H)) fail_internal("witness: H is not normal");
  auto cs = std::make_shared<CosetSpace>(coset_space(G, H));
  if (!solve_module_structure(C1, *cs))
    fail_internal("witness: module structure is obstructed on H");

  // Condition 2: the class passes the pointedness gate and the iso maps
  // C2's group onto the crossed product.
  ModuleClassCatalog cat = module_class_catalog(C1, cs);
  if (w.mu_class < 0 || w.mu_class >= int(cat.reps.size()))
    fail_internal("witness: module class index out of range");
  const ModuleCategoryData& data = cat.reps[w.mu_class];
  if (!is_dual_pointed(C1, data).pointed)
    fail_internal("witness: module class fails the pointedness gate");
  DualPresentation dual = dual_pointed_category(C1, data);
  const FiniteGroup& D = *dual.cp.table;
  const int n = Gp.order();
  if (D.order() != n || int(w.iso.size()) != n)
    fail_internal("witness: isomorphism has the wrong shape");
  std::vector<char> seen(n, 0);
  for (int g : w.iso) {
    if (g < 0 || g >= n || seen[g])
      fail_internal("witness: isomorphism is not a bijection");
    seen[g] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (w.iso[Gp.mul(a, b)] != D.mul(w.iso[a], w.iso[b]))
        fail_internal("witness: isomorphism is not a homomorphism");

  // Condition 3: the certificate trivializes a*varpi minus omega'.
  Cochain diff = pullback(dual.varpi, Gp, w.iso) - C2.omega;
  if (!(coboundary(w.certificate) == diff))
    fail_internal("witness: certificate does not trivialize the difference");
}

MoritaWitness trivial_self_witness(const PointedCategory& C,
                                   const MoritaBudget& budget) {
  const FiniteGroup& G = *C.group;
  Subgroup H = subgroup_from_elems(G, {0});
  auto cs = std::make_shared<CosetSpace>(coset_space(G, H));
  ModuleClassCatalog cat = module_class_catalog(C, cs);
  EvalResult res = evaluate(C, C, Candidate{H, cat.reps[0], 0}, budget);
  if (!res.witness) {
    if (res.budget_hit)
      throw EngineError(Err::budget,
                        "inconclusive(budget): isomorphism enumeration was "
                        "truncated before any witness was found");
    fail_internal("self-equivalence through the trivial subgroup failed");
  }
  verify_witness(C, C, *res.witness);
  return *std::move(res.witness);
}

std::pair<FiniteGroup, FiniteGroup> dual_pair_general(
    const FiniteGroup& H, const FiniteGroup& G0,
    const std::vector<std::vector<int>>& action, bool verify) {
  if (!H.is_abelian()) fail_invalid("dual pair: H must be abelian");
  const int h = H.order(), k = G0.order();
  if (int(action.size()) != k)
    fail_invalid("dual pair: one action row per acting element required");
  for (const std::vector<int>& row : action) {
    if (int(row.size()) != h)
      fail_invalid("dual pair: action row length must be |H|");
    std::vector<char> seen(h, 0);
    for (int v : row) {
      if (v < 0 || v >= h || seen[v])
        fail_invalid("dual pair: action row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int x = 0; x < h; ++x)
    if (action[0][x] != x)
      fail_invalid("dual pair: the identity must act trivially");
  for (int g = 0; g < k; ++g)
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < h; ++b)
        if (action[g][H.mul(a, b)] != H.mul(action[g][a], action[g][b]))
          fail_invalid("dual pair: action is not by automorphisms");
  for (int g1 = 0; g1 < k; ++g1)
    for (int g2 = 0; g2 < k; ++g2) {
      const int g12 = G0.mul(g1, g2);
      for (int x = 0; x < h; ++x)
        if (action[g12][x] != action[g2][action[g1][x]])
          fail_invalid("dual pair: not a right action");
    }

  auto semidirect_table = [&](const FiniteGroup& N,
                              const std::vector<std::vector<int>>& act) {
    const int nn = N.order(), n = nn * k;
    std::vector<int> flat(std::size_t(n) * n);
    for (int g1 = 0; g1 < k; ++g1)
      for (int n1 = 0; n1 < nn; ++n1)
        for (int g2 = 0; g2 < k; ++g2)
          for (int n2 = 0; n2 < nn; ++n2) {
            const int e1 = g1 * nn + n1, e2 = g2 * nn + n2;
            flat[std::size_t(e1) * n + e2] =
                G0.mul(g1, g2) * nn + N.mul(act[g2][n1], n2);
          }
    return FiniteGroup::from_table(n, std::move(flat), true);
  };

  FiniteGroup A = semidirect_table(H, action);

  // The character group of H with the induced action
  // (chi <| g)(x) = chi(x <| g^{-1}).
  std::vector<int> all(h);
  for (int i = 0; i < h; ++i) all[i] = i;
  Subgroup full = subgroup_from_elems(H, all);
  DualGroup hat = dual_group(H, full);
  std::vector<std::vector<int>> dual_action(k, std::vector<int>(h));
  for (int g = 0; g < k; ++g) {
    const std::vector<int>& back = action[G0.inverse(g)];
    for (int chi = 0; chi < h; ++chi) dual_action[g][chi] = hat.permuted(chi, back);
  }
  FiniteGroup B = semidirect_table(hat.group(), dual_action);

  if (verify) {
    std::optional<MoritaWitness> w = morita_equivalent_groups(A, B);
    if (!w) fail_internal("dual pair failed its own equivalence check");
  }
  return {std::move(A), std::move(B)};
}

FamilyReport family_report(const FamilyParams& params,
                           const MoritaBudget& budget) {
  const int p = params.p, q = params.q;
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    fail_invalid("family: p must be an odd prime");
  if (q < 3 || q % 2 == 0 || !is_prime(q))
    fail_invalid("family: q must be an odd prime");
  if ((p - 1) % q != 0) fail_invalid("family: q must divide p-1");
  const int t = int(((params.t % p) + p) % p);
  if (t == 0 || t == 1) fail_invalid("family: t must be nontrivial mod p");
  if (modpow(t, q, p) != 1) fail_invalid("family: t^q must be 1 mod p");
  const int tinv = int(modpow(t, q - 1, p));

  // M = Z/p x| Z/q scaling by t; the family pair puts the conjugation
  // module Z/p in front of M (eigenvalue t), and its character dual in
  // front of the same M (eigenvalue t^{-1}).
  std::vector<std::vector<int>> inner(q, std::vector<int>(p));
  for (int c = 0; c < q; ++c) {
    const std::int64_t f = modpow(t, c, p);
    for (int b = 0; b < p; ++b) inner[c][b] = int(b * f % p);
  }
  GroupSpec Mspec;
  Mspec.kind = GroupSpec::Kind::semidirect;
  Mspec.factors = {GroupSpec{}, GroupSpec{}};
  Mspec.factors[0].n = p;
  Mspec.factors[1].n = q;
  Mspec.action = std::move(inner);

  auto outer = [&](int eig) {
    std::vector<std::vector<int>> act(p * q, std::vector<int>(p));
    for (int m = 0; m < p * q; ++m) {
      const std::int64_t f = modpow(eig, m / p, p);
      for (int a = 0; a < p; ++a) act[m][a] = int(a * f % p);
    }
    return act;
  };
  auto front = [&](int eig) {
    GroupSpec s;
    s.kind = GroupSpec::Kind::semidirect;
    s.factors = {GroupSpec{}, Mspec};
    s.factors[0].n = p;
    s.action = outer(eig);
    return s;
  };

  auto G = std::make_shared<FiniteGroup>(make_group(front(t)));
  auto Gp = std::make_shared<FiniteGroup>(make_group(front(tinv)));

  std::optional<MoritaWitness> w = morita_equivalent_groups(*G, *Gp, budget);
  if (!w) fail_internal("family pair failed the equivalence search");

  FamilyReport rep{params,
                   G,
                   Gp,
                   *std::move(w),
                   is_isomorphic(*G, *Gp),
                   normal_subgroup_census(*G),
                   normal_subgroup_census(*Gp),
                   0,
                   0};
  rep.classes_G = rep.census_G.conjugacy_class_count;
  rep.classes_Gprime = rep.census_Gprime.conjugacy_class_count;
  return rep;
}

DistinguisherReport grothendieck_distinguishers(const FiniteGroup& G1,
                                                const FiniteGroup& G2) {
  DistinguisherReport rep{normal_subgroup_census(G1),
                          normal_subgroup_census(G2), group_profile(G1),
                          group_profile(G2), false};
  rep.distinguished =
      rep.census1.normal_by_order != rep.census2.normal_by_order ||
      !(rep.census1.abelianization == rep.census2.abelianization) ||
      rep.census1.conjugacy_class_count != rep.census2.conjugacy_class_count;
  return rep;
}

}  // namespace morita
