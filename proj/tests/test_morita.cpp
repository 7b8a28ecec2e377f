#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "cohomology.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "morita.hpp"
#include "pointed.hpp"

using namespace morita;

namespace {

std::shared_ptr<FiniteGroup> named(const std::string& name) {
  return std::make_shared<FiniteGroup>(make_group(catalog_entry(name).spec));
}

PointedCategory plain(std::shared_ptr<const FiniteGroup> G) {
  return make_pointed(G, Cochain(*G, 3, CoefModule::trivial_module()));
}

// The Klein four-group carrying the associator dual to (Z/4, 0) over its
// order-2 subgroup.  This is the canonical pair of equivalent categories
// on non-isomorphic groups at order 4.
struct TwistedKlein {
  std::shared_ptr<FiniteGroup> Z4, V4;
  PointedCategory C1;  // (Z/4, 0)
  PointedCategory C2;  // (V4, pulled-back dual associator)
};

TwistedKlein twisted_klein() {
  TwistedKlein t;
  t.Z4 = named("Z4");
  t.V4 = named("Z2xZ2");
  t.C1 = plain(t.Z4);
  Subgroup H = subgroup_from_elems(*t.Z4, {0, 2});
  auto cs = std::make_shared<CosetSpace>(coset_space(*t.Z4, H));
  ModuleClassCatalog cat = module_class_catalog(t.C1, cs);
  DualPresentation dual = dual_pointed_category(t.C1, cat.reps[0]);
  IsoSearchResult isos = isomorphisms(*t.V4, *dual.cp.table, 10);
  REQUIRE(!isos.isos.empty());
  t.C2 = make_pointed(t.V4, pullback(dual.varpi, *t.V4, isos.isos[0].map));
  return t;
}

}  // namespace

TEST_CASE("the catalog is complete through order 16 and well ordered") {
  const std::vector<CatalogEntry>& cat = group_catalog();
  CHECK(cat.size() == 62);

  std::set<std::string> names;
  std::map<int, int> by_order;
  std::pair<int, std::string> prev{0, ""};
  for (const CatalogEntry& e : cat) {
    CHECK(names.insert(e.name).second);
    FiniteGroup G = make_group(e.spec);
    std::pair<int, std::string> key{G.order(), e.name};
    CHECK(prev < key);
    prev = key;
    ++by_order[G.order()];
  }
  const std::map<int, int> expected{
      {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},
      {8, 5},  {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2},
      {15, 1}, {16, 14}, {18, 5}, {20, 5}, {21, 2}, {22, 2}, {24, 6}};
  CHECK(by_order == expected);

  CHECK(catalog_entry("Q8").name == "Q8");
  CHECK_THROWS_AS(catalog_entry("Z17"), EngineError);
}

TEST_CASE("catalog entries of equal order are pairwise non-isomorphic") {
  std::map<int, std::vector<FiniteGroup>> buckets;
  for (const CatalogEntry& e : group_catalog()) {
    FiniteGroup G = make_group(e.spec);
    buckets[G.order()].push_back(std::move(G));
  }
  for (const auto& [order, groups] : buckets) {
    CAPTURE(order);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      CHECK(is_isomorphic(groups[i], groups[i]));
      for (std::size_t j = i + 1; j < groups.size(); ++j)
        CHECK(!is_isomorphic(groups[i], groups[j]));
    }
  }
}

TEST_CASE("the cyclic four-group is equivalent to the twisted Klein group") {
  TwistedKlein t = twisted_klein();
  REQUIRE(!is_coboundary(t.C2.omega));  // the twist is essential

  std::optional<MoritaWitness> w = morita_equivalent(t.C1, t.C2);
  REQUIRE(w);
  CHECK(w->H.elems == std::vector<int>{0, 2});
  CHECK(w->mu_class == 0);
  verify_witness(t.C1, t.C2, *w);

  // The relation is symmetric, and the search proves it from the other
  // side as well (now hunting through subgroups of the Klein group).
  std::optional<MoritaWitness> back = morita_equivalent(t.C2, t.C1);
  REQUIRE(back);
  CHECK(back->H.order() == 2);
  verify_witness(t.C2, t.C1, *back);

  // Dropping the twist breaks the equivalence: two non-isomorphic
  // abelian groups with zero associators are never equivalent.
  CHECK(!morita_equivalent(t.C1, plain(t.V4)));
}

TEST_CASE("plain groups: order mismatch, abelian rigidity, dihedral vs quaternion") {
  auto Z4 = named("Z4"), V4 = named("Z2xZ2"), Z8 = named("Z8");
  auto Z4xZ2 = named("Z4xZ2"), E8 = named("Z2^3");
  auto D8 = named("D8"), Q8 = named("Q8");

  CHECK(!morita_equivalent_groups(*Z4, *Z8));  // order mismatch, instant

  CHECK(!morita_equivalent_groups(*Z4, *V4));
  CHECK(!morita_equivalent_groups(*Z8, *Z4xZ2));
  CHECK(!morita_equivalent_groups(*Z8, *E8));
  CHECK(!morita_equivalent_groups(*Z4xZ2, *E8));

  // D8 and Q8 have identical normal-subgroup censuses, abelianizations
  // and class counts, yet the full search still separates them.
  CHECK(!morita_equivalent_groups(*D8, *Q8));
  DistinguisherReport rep = grothendieck_distinguishers(*D8, *Q8);
  CHECK(!rep.distinguished);

  std::optional<MoritaWitness> self = morita_equivalent_groups(*D8, *D8);
  REQUIRE(self);
  CHECK(self->H.order() == 4);  // decreasing order finds a rotation-type H first
  CHECK(self->certificate.is_zero());
}

TEST_CASE("self-equivalence through the trivial subgroup") {
  for (const std::string& name :
       {std::string("Z1"), std::string("Z6"), std::string("D8"),
        std::string("Q8"), std::string("A4")}) {
    CAPTURE(name);
    auto G = named(name);
    PointedCategory C = plain(G);
    MoritaWitness w = trivial_self_witness(C);
    CHECK(w.H.order() == 1);
    CHECK(w.mu_class == 0);
    CHECK(w.certificate.is_zero());
  }

  // A nonzero associator makes the regular module genuinely work: the
  // dual associator only matches the original up to a coboundary.
  TwistedKlein t = twisted_klein();
  MoritaWitness w = trivial_self_witness(t.C2);
  CHECK(w.H.order() == 1);
  verify_witness(t.C2, t.C2, w);
}

TEST_CASE("witness tampering is caught on replay") {
  TwistedKlein t = twisted_klein();
  std::optional<MoritaWitness> w = morita_equivalent(t.C1, t.C2);
  REQUIRE(w);

  MoritaWitness bad = *w;
  std::swap(bad.iso[1], bad.iso[2]);
  CHECK_THROWS_AS(verify_witness(t.C1, t.C2, bad), EngineError);

  bad = *w;
  bad.mu_class = 7;
  CHECK_THROWS_AS(verify_witness(t.C1, t.C2, bad), EngineError);

  bad = *w;
  bad.H.elems = {0, 1};  // not a subgroup
  CHECK_THROWS_AS(verify_witness(t.C1, t.C2, bad), EngineError);

  bad = *w;
  int gs[2] = {1, 1};
  bad.certificate.set(gs, 0, bad.certificate.eval2(1, 1) + qz(1, 2));
  CHECK_THROWS_AS(verify_witness(t.C1, t.C2, bad), EngineError);
}

TEST_CASE("a truncated isomorphism search refuses to say no") {
  auto Z4 = named("Z4"), V4 = named("Z2xZ2");
  PointedCategory C1 = plain(Z4), C2 = plain(V4);

  // With room to breathe the answer is an honest "no"...
  CHECK(!morita_equivalent(C1, C2));

  // ...but capping the per-candidate isomorphism enumeration at one hit
  // leaves automorphisms of the Klein dual unexplored, and the search
  // must refuse rather than guess.
  MoritaBudget tight;
  tight.iso_budget = 1;
  try {
    morita_equivalent(C1, C2, tight);
    FAIL("expected the budget error");
  } catch (const EngineError& e) {
    CHECK(e.code == Err::budget);
  }
}

TEST_CASE("the thread count never changes the verdict") {
  auto D8 = named("D8"), Z4 = named("Z4"), V4 = named("Z2xZ2");
  MoritaBudget serial, wide;
  wide.jobs = 4;

  std::optional<MoritaWitness> a = morita_equivalent_groups(*D8, *D8, serial);
  std::optional<MoritaWitness> b = morita_equivalent_groups(*D8, *D8, wide);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->H.elems == b->H.elems);
  CHECK(a->mu_class == b->mu_class);
  CHECK(a->iso == b->iso);
  CHECK(a->certificate == b->certificate);

  CHECK(!morita_equivalent_groups(*Z4, *V4, wide));
}

TEST_CASE("general dual pairs come back equivalent") {
  // Trivial action: both sides are plain products.
  FiniteGroup Z3 = make_group(catalog_entry("Z3").spec);
  FiniteGroup Z2 = make_group(catalog_entry("Z2").spec);
  auto [A1, B1] = dual_pair_general(Z3, Z2, {{0, 1, 2}, {0, 1, 2}});
  CHECK(A1.order() == 6);
  CHECK(is_isomorphic(A1, B1));

  // Inversion: self-dual up to isomorphism (both sides dihedral).
  FiniteGroup Z5 = make_group(catalog_entry("Z5").spec);
  auto [A2, B2] = dual_pair_general(Z5, Z2, {{0, 1, 2, 3, 4}, {0, 4, 3, 2, 1}});
  CHECK(is_isomorphic(A2, B2));
  CHECK(is_isomorphic(A2, make_group(catalog_entry("D10").spec)));

  // Bad actions are rejected up front.
  CHECK_THROWS_AS(dual_pair_general(Z5, Z2, {{0, 1, 2, 3, 4}}), EngineError);
  CHECK_THROWS_AS(
      dual_pair_general(Z5, Z2, {{0, 1, 2, 3, 4}, {0, 0, 1, 2, 3}}),
      EngineError);
  CHECK_THROWS_AS(
      dual_pair_general(Z5, Z2, {{0, 4, 3, 2, 1}, {0, 1, 2, 3, 4}}),
      EngineError);  // identity must act trivially
  CHECK_THROWS_AS(
      dual_pair_general(Z5, Z2, {{0, 1, 2, 3, 4}, {1, 2, 3, 4, 0}}),
      EngineError);  // a shift is not an automorphism
  FiniteGroup S3 = make_group(catalog_entry("S3").spec);
  std::vector<int> id6{0, 1, 2, 3, 4, 5};
  CHECK_THROWS_AS(dual_pair_general(S3, Z2, {id6, id6}), EngineError);
  FiniteGroup Z4 = make_group(catalog_entry("Z4").spec);
  CHECK_THROWS_AS(
      dual_pair_general(Z5, Z4,
                        {{0, 1, 2, 3, 4},
                         {0, 2, 4, 1, 3},
                         {0, 4, 3, 2, 1},
                         {0, 2, 4, 1, 3}}),
      EngineError);  // powers of doubling must close up: the last row is wrong
}

TEST_CASE("the scaling family: equivalent pair, separated censuses") {
  FamilyReport rep = family_report({7, 3, 2});
  CHECK(rep.G->order() == 147);
  CHECK(rep.Gprime->order() == 147);

  // The witness runs through the front Z/7 line with the split section.
  CHECK(rep.witness.H.elems == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(rep.witness.mu_class == 0);
  CHECK(rep.witness.certificate.is_zero());

  // Equivalent but not isomorphic, and the censuses say why not:
  // every order-7 subgroup of G is normal, G' keeps only two.
  CHECK(!rep.groups_isomorphic);
  CHECK(rep.census_G.normal_by_order.at(7) == 8);
  CHECK(rep.census_Gprime.normal_by_order.at(7) == 2);

  // What the censuses cannot see apart: same abelianization, same
  // number of conjugacy classes.
  CHECK(rep.census_G.abelianization.order() == 3);
  CHECK(rep.census_Gprime.abelianization.order() == 3);
  CHECK(rep.classes_G == 19);
  CHECK(rep.classes_Gprime == 19);

  DistinguisherReport d = grothendieck_distinguishers(*rep.G, *rep.Gprime);
  CHECK(d.distinguished);
  CHECK(!grothendieck_distinguishers(*rep.G, *rep.G).distinguished);

  // The witness replays against freshly wrapped categories.
  verify_witness(plain(rep.G), plain(rep.Gprime), rep.witness);

  // The family builder agrees with the general dual-pair construction
  // over H = Z/7 with M = Z/7 x| Z/3 acting through its quotient.
  FiniteGroup Z7 = make_group(catalog_entry("Z7").spec);
  FiniteGroup M = make_group(catalog_entry("Z7:Z3").spec);
  std::vector<std::vector<int>> act(21, std::vector<int>(7));
  for (int m = 0; m < 21; ++m) {
    int f = 1;
    for (int c = 0; c < m / 7; ++c) f = f * 2 % 7;
    for (int a = 0; a < 7; ++a) act[m][a] = a * f % 7;
  }
  auto [A, B] = dual_pair_general(Z7, M, act, /*verify=*/false);
  CHECK(is_isomorphic(A, *rep.G));
  CHECK(is_isomorphic(B, *rep.Gprime));
}

TEST_CASE("the scaling family at the other eigenvalue") {
  FamilyReport rep = family_report({7, 3, 4});
  CHECK(!rep.groups_isomorphic);
  CHECK(rep.witness.certificate.is_zero());
  CHECK(rep.census_G.normal_by_order.at(7) == 8);
  CHECK(rep.census_Gprime.normal_by_order.at(7) == 2);
  CHECK(rep.classes_G == rep.classes_Gprime);
}

TEST_CASE("family parameters are validated") {
  CHECK_THROWS_AS(family_report({5, 3, 2}), EngineError);   // 3 does not divide 4
  CHECK_THROWS_AS(family_report({7, 3, 3}), EngineError);   // 3^3 = 6 mod 7
  CHECK_THROWS_AS(family_report({9, 3, 4}), EngineError);   // 9 is not prime
  CHECK_THROWS_AS(family_report({7, 2, 6}), EngineError);   // q must be odd
  CHECK_THROWS_AS(family_report({7, 3, 1}), EngineError);   // t must be nontrivial
  try {
    family_report({7, 3, 3});
    FAIL("expected the invalid error");
  } catch (const EngineError& e) {
    CHECK(e.code == Err::invalid);
  }
}
