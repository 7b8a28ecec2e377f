#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <numeric>
#include <random>

#include "cohomology.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "pointed.hpp"

using namespace morita;

namespace {

GroupSpec cyclic(int n) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::cyclic;
  s.n = n;
  return s;
}
GroupSpec product(std::vector<GroupSpec> fs) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::product;
  s.factors = std::move(fs);
  return s;
}
GroupSpec semidirect(GroupSpec n, GroupSpec a, std::vector<std::vector<int>> act) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::semidirect;
  s.factors = {std::move(n), std::move(a)};
  s.action = std::move(act);
  return s;
}
GroupSpec dihedral(int m) {
  std::vector<int> id(m), inv(m);
  std::iota(id.begin(), id.end(), 0);
  for (int i = 0; i < m; ++i) inv[i] = (m - i) % m;
  return semidirect(cyclic(m), cyclic(2), {id, inv});
}

std::shared_ptr<const FiniteGroup> shared_group(const GroupSpec& spec) {
  return std::make_shared<FiniteGroup>(make_group(spec));
}

Cochain random_cochain(std::mt19937_64& rng, const FiniteGroup& G, int degree,
                       CoefModule mod, int maxden) {
  Cochain c(G, degree, mod);
  for (auto& q : c.raw()) {
    std::int64_t den = 1 + std::int64_t(rng() % maxden);
    q = QmodZ::make(std::int64_t(rng() % (2 * den)), den);
  }
  return c;
}

// The degree-3 cocycle condition written out longhand, as an oracle for
// check_pentagon.
QmodZ delta3_manual(const FiniteGroup& G, const Cochain& w, int g0, int g1,
                    int g2, int g3) {
  return w.eval3(g1, g2, g3) - w.eval3(G.mul(g0, g1), g2, g3) +
         w.eval3(g0, G.mul(g1, g2), g3) - w.eval3(g0, g1, G.mul(g2, g3)) +
         w.eval3(g0, g1, g2);
}

bool is_iso_table(const FiniteGroup& A, const FiniteGroup& B,
                  const std::vector<int>& a) {
  if (int(a.size()) != A.order() || B.order() != A.order()) return false;
  std::vector<char> hit(a.size(), 0);
  for (int g : a) {
    if (g < 0 || g >= B.order() || hit[g]) return false;
    hit[g] = 1;
  }
  for (int x = 0; x < A.order(); ++x)
    for (int y = 0; y < A.order(); ++y)
      if (a[A.mul(x, y)] != B.mul(a[x], a[y])) return false;
  return true;
}

}  // namespace

TEST_CASE("pentagon check accepts cocycles and pinpoints violations") {
  auto D8 = shared_group(dihedral(4));
  CHECK(check_pentagon(Cochain(*D8, 3)).ok);

  // Z/2 with omega(1,1,1) = 1/2: all sixteen quadruples verified longhand.
  auto Z2 = shared_group(cyclic(2));
  Cochain half(*Z2, 3);
  int ones[3] = {1, 1, 1};
  half.set(ones, 0, QmodZ::make(1, 2));
  CHECK(check_pentagon(half).ok);
  int quadruples = 0;
  for (int g0 = 0; g0 < 2; ++g0)
    for (int g1 = 0; g1 < 2; ++g1)
      for (int g2 = 0; g2 < 2; ++g2)
        for (int g3 = 0; g3 < 2; ++g3) {
          CHECK(delta3_manual(*Z2, half, g0, g1, g2, g3).is_zero());
          ++quadruples;
        }
  CHECK(quadruples == 16);

  auto Z4 = shared_group(cyclic(4));
  CohomologyGroup h3 = cohomology_group(*Z4, {}, 3);
  REQUIRE(h3.structure.factors == std::vector<std::int64_t>{4});
  CHECK(check_pentagon(h3.reps[0]).ok);

  // A single-value bump breaks the condition, and the reported quadruple
  // really violates it by the reported defect.
  Cochain bad = h3.reps[0];
  int tup[3] = {1, 2, 3};
  bad.set(tup, 0, bad.eval3(1, 2, 3) + QmodZ::make(1, 3));
  PentagonReport report = check_pentagon(bad);
  REQUIRE_FALSE(report.ok);
  QmodZ there = delta3_manual(*Z4, bad, report.violation[0],
                              report.violation[1], report.violation[2],
                              report.violation[3]);
  CHECK_FALSE(there.is_zero());
  CHECK(there == report.defect);

  CHECK_THROWS_AS(check_pentagon(Cochain(*Z4, 2)), EngineError);
}

TEST_CASE("pointed categories validate on construction") {
  auto Z4 = shared_group(cyclic(4));
  CohomologyGroup h3 = cohomology_group(*Z4, {}, 3);
  PointedCategory C = make_pointed(Z4, h3.reps[0]);
  CHECK(C.fpdim() == 4);
  CHECK(C.omega == h3.reps[0]);

  Cochain bad = h3.reps[0];
  int tup[3] = {1, 1, 2};
  bad.set(tup, 0, bad.eval3(1, 1, 2) + QmodZ::make(1, 3));
  CHECK_THROWS_AS(make_pointed(Z4, bad), EngineError);

  // The associator must live on the very group object handed over.
  auto other = shared_group(cyclic(4));
  CHECK_THROWS_AS(make_pointed(other, h3.reps[0]), EngineError);
}

TEST_CASE("equivalence of pointed categories") {
  auto Z2 = shared_group(cyclic(2));
  Cochain half(*Z2, 3);
  int ones[3] = {1, 1, 1};
  half.set(ones, 0, QmodZ::make(1, 2));
  PointedCategory Z2triv = make_pointed(Z2, Cochain(*Z2, 3));
  PointedCategory Z2half = make_pointed(Z2, half);

  // A category is equivalent to itself, and the returned isomorphism is a
  // genuine one satisfying the pullback condition.
  auto self = pointed_equivalent(Z2half, Z2half);
  REQUIRE(self.has_value());
  CHECK(is_iso_table(*Z2, *Z2, *self));
  CHECK(class_equal(pullback(Z2half.omega, *Z2, *self), Z2half.omega));

  // The two Z/2 associator classes are inequivalent either way round.
  CHECK_FALSE(pointed_equivalent(Z2triv, Z2half).has_value());
  CHECK_FALSE(pointed_equivalent(Z2half, Z2triv).has_value());

  // Inversion on Z/4 relates omega to its pullback.
  auto Z4 = shared_group(cyclic(4));
  Cochain gen = cohomology_group(*Z4, {}, 3).reps[0];
  std::vector<int> inversion = {0, 3, 2, 1};
  PointedCategory A = make_pointed(Z4, gen);
  PointedCategory B = make_pointed(Z4, pullback(gen, *Z4, inversion));
  auto ab = pointed_equivalent(A, B);
  REQUIRE(ab.has_value());
  CHECK(class_equal(pullback(A.omega, *Z4, *ab), B.omega));

  // On Z/5 an automorphism g -> cg moves the generator class v to c^2 v,
  // so v ~ 4v but v is not equivalent to 2v.
  auto Z5 = shared_group(cyclic(5));
  Cochain v = cohomology_group(*Z5, {}, 3).reps[0];
  PointedCategory V = make_pointed(Z5, v);
  PointedCategory V2 = make_pointed(Z5, v + v);
  PointedCategory V4 = make_pointed(Z5, v + v + v + v);
  CHECK(pointed_equivalent(V, V4).has_value());
  CHECK_FALSE(pointed_equivalent(V, V2).has_value());

  // Cutting the isomorphism budget below |Aut(Z/5)| = 4 leaves the
  // negative answer unsettled.
  try {
    pointed_equivalent(V, V2, 2);
    FAIL("budget breach not reported");
  } catch (const EngineError& e) {
    CHECK(e.code == Err::budget);
  }

  // Non-isomorphic groups are never equivalent.
  auto K4 = shared_group(product({cyclic(2), cyclic(2)}));
  PointedCategory P4 = make_pointed(Z4, Cochain(*Z4, 3));
  PointedCategory PK = make_pointed(K4, Cochain(*K4, 3));
  CHECK_FALSE(pointed_equivalent(P4, PK).has_value());
  CHECK_FALSE(pointed_equivalent(PK, P4).has_value());
}

TEST_CASE("pointed equivalence is reflexive and symmetric") {
  std::mt19937_64 rng(414);
  std::vector<GroupSpec> specs = {cyclic(6), dihedral(4),
                                  product({cyclic(2), cyclic(4)})};
  for (const auto& spec : specs) {
    auto G = shared_group(spec);
    CohomologyGroup h3 = cohomology_group(*G, {}, 3);
    std::vector<Cochain> classes = all_classes(h3);
    IsoSearchResult aut = isomorphisms(*G, *G, 5000);
    REQUIRE(aut.exhausted);

    for (int iter = 0; iter < 4; ++iter) {
      // omega1: a random class moved off its canonical representative.
      Cochain w1 = classes[rng() % classes.size()] +
                   coboundary(random_cochain(rng, *G, 2, {}, 4));
      PointedCategory C1 = make_pointed(G, w1);
      CHECK(pointed_equivalent(C1, C1).has_value());

      // omega2: omega1 twisted by a random automorphism and a coboundary
      // must come out equivalent, in both directions.
      const auto& a = aut.isos[rng() % aut.isos.size()].map;
      Cochain w2 = pullback(w1, *G, a) +
                   coboundary(random_cochain(rng, *G, 2, {}, 4));
      PointedCategory C2 = make_pointed(G, w2);
      CHECK(pointed_equivalent(C1, C2).has_value());
      CHECK(pointed_equivalent(C2, C1).has_value());

      // And against an arbitrary class the verdict is symmetric.
      Cochain w3 = classes[rng() % classes.size()];
      PointedCategory C3 = make_pointed(G, w3);
      CHECK(pointed_equivalent(C1, C3).has_value() ==
            pointed_equivalent(C3, C1).has_value());
    }
  }
}

TEST_CASE("module structures solve exactly when the restriction is trivial") {
  // Trivial associator: the zero cochain is always a module structure.
  auto D8 = shared_group(dihedral(4));
  PointedCategory P = make_pointed(D8, Cochain(*D8, 3));
  for (const auto& elems : std::vector<std::vector<int>>{
           {0}, {0, 2}, {0, 4}, {0, 1, 2, 3}, {0, 2, 4, 6},
           {0, 1, 2, 3, 4, 5, 6, 7}}) {
    CosetSpace cs = coset_space(*D8, subgroup_from_elems(*D8, elems));
    auto mu = solve_module_structure(P, cs);
    REQUIRE(mu.has_value());
    CHECK(mu->is_zero());
  }

  // Z/2 inside Z/4: restriction carries the H^3(Z/4) generator to the
  // H^3(Z/2) generator, so the odd multiples are obstructed while twice
  // the generator — still a nontrivial class — admits a structure whose
  // coboundary recovers the constant lift on the nose.
  auto Z4 = shared_group(cyclic(4));
  Cochain gen = cohomology_group(*Z4, {}, 3).reps[0];
  CosetSpace half = coset_space(*Z4, subgroup_from_elems(*Z4, {0, 2}));
  CHECK_FALSE(solve_module_structure(make_pointed(Z4, gen), half).has_value());
  CHECK_FALSE(
      solve_module_structure(make_pointed(Z4, gen + gen + gen), half)
          .has_value());

  std::mt19937_64 rng(7);
  Cochain twice = gen + gen + coboundary(random_cochain(rng, *Z4, 2, {}, 4));
  REQUIRE_FALSE(is_coboundary(twice).has_value());
  PointedCategory T = make_pointed(Z4, twice);
  auto tmu = solve_module_structure(T, half);
  REQUIRE(tmu.has_value());
  CHECK(coboundary(*tmu) == lift_constant(twice, half));

  // Over the full subgroup the restriction is the class itself.
  CosetSpace full = coset_space(*Z4, subgroup_from_elems(*Z4, {0, 1, 2, 3}));
  CHECK_FALSE(solve_module_structure(make_pointed(Z4, gen), full).has_value());

  auto Z2 = shared_group(cyclic(2));
  Cochain halfw(*Z2, 3);
  int ones[3] = {1, 1, 1};
  halfw.set(ones, 0, QmodZ::make(1, 2));
  PointedCategory H = make_pointed(Z2, halfw);
  CosetSpace z2full = coset_space(*Z2, subgroup_from_elems(*Z2, {0, 1}));
  CosetSpace z2triv = coset_space(*Z2, subgroup_from_elems(*Z2, {0}));
  CHECK_FALSE(solve_module_structure(H, z2full).has_value());
  auto free_mu = solve_module_structure(H, z2triv);
  REQUIRE(free_mu.has_value());
  CHECK(coboundary(*free_mu) == lift_constant(halfw, z2triv));

  // Klein four-group with the associator pulled back from Z/2 along the
  // first-coordinate projection: obstructed exactly on the subgroups the
  // projection embeds.
  auto K4 = shared_group(product({cyclic(2), cyclic(2)}));
  std::vector<int> proj = {0, 1, 0, 1};  // first factor fastest
  PointedCategory PK = make_pointed(K4, pullback(halfw, *K4, proj));
  CosetSpace along = coset_space(*K4, subgroup_from_elems(*K4, {0, 1}));
  CosetSpace diag = coset_space(*K4, subgroup_from_elems(*K4, {0, 3}));
  CosetSpace kernel = coset_space(*K4, subgroup_from_elems(*K4, {0, 2}));
  CosetSpace whole = coset_space(*K4, subgroup_from_elems(*K4, {0, 1, 2, 3}));
  CHECK_FALSE(solve_module_structure(PK, along).has_value());
  CHECK_FALSE(solve_module_structure(PK, diag).has_value());
  CHECK_FALSE(solve_module_structure(PK, whole).has_value());
  auto km = solve_module_structure(PK, kernel);
  REQUIRE(km.has_value());
  CHECK(coboundary(*km) == lift_constant(PK.omega, kernel));
}

TEST_CASE("module class catalogs enumerate H^2 of the subgroup") {
  auto D8 = shared_group(dihedral(4));
  PointedCategory P = make_pointed(D8, Cochain(*D8, 3));

  auto catalog_size = [&](const PointedCategory& C,
                          const std::vector<int>& elems) {
    auto cs = std::make_shared<const CosetSpace>(
        coset_space(*C.group, subgroup_from_elems(*C.group, elems)));
    return module_class_catalog(C, cs).reps.size();
  };

  CHECK(catalog_size(P, {0}) == 1);                          // trivial H
  CHECK(catalog_size(P, {0, 1, 2, 3}) == 1);                 // cyclic H
  CHECK(catalog_size(P, {0, 2}) == 1);                       // the center
  CHECK(catalog_size(P, {0, 2, 4, 6}) == 2);                 // Klein four
  CHECK(catalog_size(P, {0, 1, 2, 3, 4, 5, 6, 7}) == 2);     // H^2(D8) = Z/2

  // With a nontrivial associator on Z/4 (twice the generator, the class
  // that restricts trivially) the Z/2 catalog still has one class, and
  // its entry is the solved structure.
  auto Z4 = shared_group(cyclic(4));
  Cochain gen = cohomology_group(*Z4, {}, 3).reps[0];
  PointedCategory C = make_pointed(Z4, gen + gen);
  auto half = std::make_shared<const CosetSpace>(
      coset_space(*Z4, subgroup_from_elems(*Z4, {0, 2})));
  ModuleClassCatalog cat = module_class_catalog(C, half);
  REQUIRE(cat.reps.size() == 1);
  CHECK(cat.reps[0].subgroup().elems == std::vector<int>{0, 2});
  CHECK(coboundary(cat.reps[0].mu) == lift_constant(C.omega, *half));
  auto mu0 = solve_module_structure(C, *half);
  REQUIRE(mu0.has_value());
  CHECK(cat.reps[0].mu == *mu0);

  // Obstructed subgroup: the catalog refuses.  The generator class
  // restricts to the H^3(Z/2) generator, so the same Z/2 obstructs it.
  PointedCategory Cgen = make_pointed(Z4, gen);
  try {
    module_class_catalog(Cgen, half);
    FAIL("obstruction not propagated");
  } catch (const EngineError& e) {
    CHECK(e.code == Err::invalid);
  }

  // Distinct Klein-four structures on D8 really differ as classes.
  auto v4 = std::make_shared<const CosetSpace>(
      coset_space(*D8, subgroup_from_elems(*D8, {0, 2, 4, 6})));
  ModuleClassCatalog kcat = module_class_catalog(P, v4);
  REQUIRE(kcat.reps.size() == 2);
  CHECK_FALSE(class_equal(kcat.reps[0].mu, kcat.reps[1].mu));
  CHECK(kcat.reps[0].mu.is_zero());

  // make_module_data rejects a perturbed structure.
  Cochain broken = kcat.reps[1].mu;
  broken.raw()[0] += QmodZ::make(1, 3);
  CHECK_THROWS_AS(make_module_data(P, v4, broken), EngineError);
}
