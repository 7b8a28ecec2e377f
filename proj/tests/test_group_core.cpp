#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "errors.hpp"
#include "group.hpp"

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

GroupSpec semidirect(GroupSpec normal, GroupSpec acting,
                     std::vector<std::vector<int>> action) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::semidirect;
  s.factors = {std::move(normal), std::move(acting)};
  s.action = std::move(action);
  return s;
}

// Dihedral of order 2m as Z/m x| Z/2 with inversion.
GroupSpec dihedral(int m) {
  std::vector<int> id(m), inv(m);
  std::iota(id.begin(), id.end(), 0);
  for (int i = 0; i < m; ++i) inv[i] = (m - i) % m;
  return semidirect(cyclic(m), cyclic(2), {id, inv});
}

const std::vector<std::vector<int>> kQ8Table = {
    {0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6},
    {2, 3, 1, 0, 6, 7, 5, 4}, {3, 2, 0, 1, 7, 6, 4, 5},
    {4, 5, 7, 6, 1, 0, 2, 3}, {5, 4, 6, 7, 0, 1, 3, 2},
    {6, 7, 4, 5, 3, 2, 1, 0}, {7, 6, 5, 4, 2, 3, 0, 1}};

GroupSpec q8() {
  GroupSpec s;
  s.kind = GroupSpec::Kind::table;
  s.n = 8;
  s.table = kQ8Table;
  return s;
}

// Symmetric group on {0..3} built from permutation composition, as an
// independent oracle for table-based invariants.
FiniteGroup sym4() {
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::array<int, 4>, int> index;
  for (int i = 0; i < 24; ++i) index[perms[i]] = i;
  std::vector<int> flat(24 * 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      std::array<int, 4> c;
      for (int t = 0; t < 4; ++t) c[t] = perms[i][perms[j][t]];
      flat[i * 24 + j] = index[c];
    }
  return FiniteGroup::from_table(24, flat, true);
}

std::map<int, int> order_profile(const FiniteGroup& G) {
  std::map<int, int> m;
  for (int a = 0; a < G.order(); ++a) m[G.elt_order(a)]++;
  return m;
}

}  // namespace

TEST_CASE("make_group: cyclic, product, semidirect, table") {
  FiniteGroup Z6 = make_group(cyclic(6));
  CHECK(Z6.order() == 6);
  CHECK(Z6.mul(4, 5) == 3);
  CHECK(Z6.inverse(2) == 4);
  CHECK(Z6.elt_order(2) == 3);
  CHECK(Z6.is_abelian());
  CHECK(Z6.exponent() == 6);

  FiniteGroup Z2xZ3 = make_group(product({cyclic(2), cyclic(3)}));
  CHECK(Z2xZ3.order() == 6);
  CHECK(is_isomorphic(Z2xZ3, Z6));

  FiniteGroup D8 = make_group(dihedral(4));
  CHECK(D8.order() == 8);
  CHECK_FALSE(D8.is_abelian());
  // r = (1,0) at index 1, s = (0,1) at index 4; s r s^{-1} = r^{-1}.
  CHECK(D8.elt_order(1) == 4);
  CHECK(D8.elt_order(4) == 2);
  CHECK(D8.conj(1, 4) == 3);
  CHECK(order_profile(D8) == std::map<int, int>{{1, 1}, {2, 5}, {4, 2}});

  FiniteGroup Q8 = make_group(q8());
  CHECK(Q8.order() == 8);
  CHECK(order_profile(Q8) == std::map<int, int>{{1, 1}, {2, 1}, {4, 6}});
  CHECK_FALSE(is_isomorphic(D8, Q8));

  // Semidirect with trivial action degenerates to the direct product.
  std::vector<int> id4{0, 1, 2, 3};
  FiniteGroup P = make_group(semidirect(cyclic(4), cyclic(2), {id4, id4}));
  CHECK(P.is_abelian());
  CHECK(is_isomorphic(P, make_group(product({cyclic(4), cyclic(2)}))));
}

TEST_CASE("make_group: validation failures") {
  // Non-automorphism action (constant map is not a permutation).
  CHECK_THROWS_AS(
      make_group(semidirect(cyclic(3), cyclic(2),
                            {{0, 1, 2}, {0, 0, 0}})),
      EngineError);
  // Permutation that is not an automorphism: swaps identity away.
  CHECK_THROWS_AS(
      make_group(semidirect(cyclic(3), cyclic(2),
                            {{0, 1, 2}, {1, 0, 2}})),
      EngineError);
  // Left-but-not-right compatible action tables are rejected by the
  // compatibility sweep; here action[1] has order 3 but Z/2 needs order 2.
  CHECK_THROWS_AS(
      make_group(semidirect(cyclic(7), cyclic(2),
                            {{0, 1, 2, 3, 4, 5, 6}, {0, 2, 4, 6, 1, 3, 5}})),
      EngineError);

  GroupSpec bad;
  bad.kind = GroupSpec::Kind::table;
  bad.n = 2;
  bad.table = {{0, 1}, {1, 1}};  // not a Latin square
  CHECK_THROWS_AS(make_group(bad), EngineError);

  GroupSpec badid;
  badid.kind = GroupSpec::Kind::table;
  badid.n = 2;
  badid.table = {{1, 0}, {0, 1}};  // 0 is not the identity
  CHECK_THROWS_AS(make_group(badid), EngineError);
}

TEST_CASE("subgroups: closure, enumeration, normality") {
  FiniteGroup D8 = make_group(dihedral(4));

  Subgroup R = subgroup_closure(D8, {1});
  CHECK(R.elems == std::vector<int>{0, 1, 2, 3});
  CHECK(is_normal(D8, R));
  CHECK(is_abelian(D8, R));

  Subgroup S = subgroup_closure(D8, {4});
  CHECK(S.order() == 2);
  CHECK_FALSE(is_normal(D8, S));

  auto subs = all_subgroups(D8);
  CHECK(subs.size() == 10);
  int normal = 0;
  for (const auto& H : subs)
    if (is_normal(D8, H)) ++normal;
  CHECK(normal == 6);

  CHECK(center(D8).elems == std::vector<int>{0, 2});
  CHECK(derived_subgroup(D8).elems == std::vector<int>{0, 2});
  CHECK(conjugacy_classes(D8).size() == 5);

  CHECK_THROWS_AS(subgroup_from_elems(D8, {0, 1}), EngineError);  // not closed
  Subgroup V = subgroup_from_elems(D8, {0, 2, 4, 6});
  CHECK(V.order() == 4);
  CHECK(V.local(4) == 2);
}

TEST_CASE("coset spaces: action, kappa identity, stable cosets, quotients") {
  FiniteGroup D8 = make_group(dihedral(4));

  SUBCASE("non-normal subgroup <s>") {
    Subgroup H = subgroup_closure(D8, {4});
    CosetSpace cs = coset_space(D8, H);
    CHECK(cs.size() == 4);
    CHECK(cs.rep(0) == 0);
    CHECK(cs.coset_of(0) == 0);

    // Right-action and kappa laws, exhaustively.
    for (int x = 0; x < cs.size(); ++x) {
      CHECK(cs.coset_of(cs.rep(x)) == x);
      for (int g1 = 0; g1 < 8; ++g1) {
        for (int g2 = 0; g2 < 8; ++g2) {
          int g12 = D8.mul(g1, g2);
          CHECK(cs.act(x, g12) == cs.act(cs.act(x, g1), g2));
          CHECK(cs.kappa(x, g12) ==
                D8.mul(cs.kappa(x, g1), cs.kappa(cs.act(x, g1), g2)));
        }
        // Defining property u(x) g = kappa_{x,g} u(x <| g).
        CHECK(D8.mul(cs.rep(x), g1) ==
              D8.mul(cs.kappa(x, g1), cs.rep(cs.act(x, g1))));
      }
    }

    // N_D8(<s>) = {1, s, r^2, r^2 s}, so exactly two stable cosets.
    CHECK(stable_cosets(cs).size() == 2);
    CHECK_THROWS_AS(quotient_group(cs), EngineError);
  }

  SUBCASE("central subgroup quotient") {
    Subgroup Z = center(D8);
    CosetSpace cs = coset_space(D8, Z);
    CHECK(cs.size() == 4);
    CHECK(stable_cosets(cs).size() == 4);
    FiniteGroup Q = quotient_group(cs);
    CHECK(Q.order() == 4);
    CHECK(is_isomorphic(Q, make_group(product({cyclic(2), cyclic(2)}))));
  }
}

TEST_CASE("dual groups of abelian subgroups") {
  SUBCASE("Z/4 in itself") {
    FiniteGroup Z4 = make_group(cyclic(4));
    Subgroup H = subgroup_closure(Z4, {1});
    DualGroup D = dual_group(Z4, H);
    CHECK(D.size() == 4);
    CHECK(is_isomorphic(D.group(), Z4));
    // Index 0 is the trivial character.
    for (int h = 0; h < 4; ++h) CHECK(D.eval(0, h).is_zero());
    // Every entry is a homomorphism; pointwise sums match the table.
    for (int i = 0; i < 4; ++i) {
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          CHECK(D.eval(i, Z4.mul(a, b)) == D.eval(i, a) + D.eval(i, b));
      for (int j = 0; j < 4; ++j) {
        std::vector<QmodZ> sum(4);
        for (int h = 0; h < 4; ++h) sum[h] = D.eval(i, h) + D.eval(j, h);
        CHECK(D.index_of(sum) == D.group().mul(i, j));
      }
    }
  }

  SUBCASE("Klein four group") {
    FiniteGroup V = make_group(product({cyclic(2), cyclic(2)}));
    DualGroup D = dual_group(V, subgroup_closure(V, {1, 2}));
    CHECK(D.size() == 4);
    CHECK(is_isomorphic(D.group(), V));
    for (int i = 0; i < 4; ++i)
      for (int h = 0; h < 4; ++h) CHECK(D.eval(i, h).den <= 2);
  }

  SUBCASE("conjugation permutation on characters of <r> in D8") {
    FiniteGroup D8 = make_group(dihedral(4));
    Subgroup R = subgroup_closure(D8, {1});
    DualGroup D = dual_group(D8, R);
    // Conjugation by s inverts r, permuting H locally.
    std::vector<int> hperm(4);
    for (int i = 0; i < 4; ++i)
      hperm[i] = R.local(D8.conj(R.elems[i], 4));
    int moved = 0;
    for (int chi = 0; chi < 4; ++chi) {
      int im = D.permuted(chi, hperm);
      // chi^s = chi^{-1} for the cyclic dual.
      CHECK(im == D.group().inverse(chi));
      if (im != chi) ++moved;
    }
    CHECK(moved == 2);
    CHECK_THROWS_AS(dual_group(D8, subgroup_closure(D8, {1, 4})), EngineError);
  }
}

TEST_CASE("isomorphism search") {
  FiniteGroup Z6 = make_group(cyclic(6));
  FiniteGroup Z23 = make_group(product({cyclic(2), cyclic(3)}));
  auto res = isomorphisms(Z6, Z23, 100);
  CHECK(res.isos.size() == 2);  // |Aut(Z/6)| = 2
  CHECK(res.exhausted);
  for (const auto& iso : res.isos)
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        CHECK(iso.map[Z6.mul(a, b)] == Z23.mul(iso.map[a], iso.map[b]));

  FiniteGroup V = make_group(product({cyclic(2), cyclic(2)}));
  auto limited = isomorphisms(V, V, 2);
  CHECK(limited.isos.size() == 2);
  CHECK_FALSE(limited.exhausted);  // |Aut(V4)| = 6
  auto full = isomorphisms(V, V, 100);
  CHECK(full.isos.size() == 6);
  CHECK(full.exhausted);

  CHECK(isomorphisms(make_group(dihedral(4)), make_group(q8()), 10).isos.empty());
  CHECK_FALSE(is_isomorphic(make_group(cyclic(4)), V));
}

TEST_CASE("abelian invariants and abelianization") {
  CHECK(abelian_invariants(make_group(cyclic(12))).factors ==
        std::vector<std::int64_t>{12});
  CHECK(abelian_invariants(make_group(product({cyclic(2), cyclic(4)}))).factors ==
        std::vector<std::int64_t>{2, 4});
  CHECK(abelian_invariants(make_group(product({cyclic(6), cyclic(4)}))).factors ==
        std::vector<std::int64_t>{2, 12});
  CHECK(abelian_invariants(make_group(product({cyclic(2), cyclic(2), cyclic(2)})))
            .factors == std::vector<std::int64_t>{2, 2, 2});
  CHECK(abelianization(make_group(dihedral(4))).factors ==
        std::vector<std::int64_t>{2, 2});
  CHECK(abelianization(make_group(q8())).factors ==
        std::vector<std::int64_t>{2, 2});
  CHECK_THROWS_AS(abelian_invariants(make_group(dihedral(4))), EngineError);
}

TEST_CASE("census against the symmetric group oracle") {
  FiniteGroup S4 = sym4();
  CHECK(S4.order() == 24);
  CHECK_FALSE(S4.is_abelian());
  CHECK(conjugacy_classes(S4).size() == 5);
  CHECK(center(S4).order() == 1);
  CHECK(derived_subgroup(S4).order() == 12);

  Census c = normal_subgroup_census(S4);
  CHECK(c.normal_by_order ==
        std::map<int, int>{{1, 1}, {4, 1}, {12, 1}, {24, 1}});
  CHECK(c.abelianization.factors == std::vector<std::int64_t>{2});
  CHECK(c.conjugacy_class_count == 5);
  CHECK(all_subgroups(S4).size() == 30);

  // A4 as V4 x| Z/3 (cycle the three involutions).
  std::vector<std::vector<int>> rot = {
      {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  FiniteGroup A4 = make_group(
      semidirect(product({cyclic(2), cyclic(2)}), cyclic(3), rot));
  CHECK(A4.order() == 12);
  Census ca = normal_subgroup_census(A4);
  CHECK(ca.normal_by_order == std::map<int, int>{{1, 1}, {4, 1}, {12, 1}});
  CHECK(ca.abelianization.factors == std::vector<std::int64_t>{3});
  CHECK(ca.conjugacy_class_count == 4);

  GroupProfile p = group_profile(S4);
  CHECK(p.order == 24);
  CHECK(p.order_profile == std::map<int, int>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(p.exponent == 12);
}

TEST_CASE("abelian bases give divisor-chain coordinates") {
  // Cyclic: one generator of full order.
  FiniteGroup C12 = make_group(cyclic(12));
  AbelianBasis b12 = abelian_basis(C12);
  CHECK(b12.orders == std::vector<std::int64_t>{12});
  CHECK(C12.elt_order(b12.gens[0]) == 12);
  CHECK(b12.coords[7] == std::vector<int>{
                             [&] {
                               int c = 0, g = 0;
                               while (g != 7) g = C12.mul(g, b12.gens[0]), ++c;
                               return c;
                             }()});

  // Z/4 x Z/6 has invariants 2 | 12.
  FiniteGroup G = make_group(product({cyclic(4), cyclic(6)}));
  AbelianBasis b = abelian_basis(G);
  CHECK(b.orders == std::vector<std::int64_t>{2, 12});
  CHECK(abelian_invariants(G).factors == b.orders);

  // Every element is reproduced by its coordinate tuple, uniquely.
  std::vector<int> seen(G.order(), 0);
  for (int g = 0; g < G.order(); ++g) {
    int acc = 0;
    for (std::size_t i = 0; i < b.gens.size(); ++i)
      for (int t = 0; t < b.coords[g][i]; ++t) acc = G.mul(acc, b.gens[i]);
    CHECK(acc == g);
    seen[g]++;
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

  // Coordinates are additive: coords(gh) = coords(g) + coords(h) mod orders.
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) {
      int gh = G.mul(g, h);
      for (std::size_t i = 0; i < b.gens.size(); ++i)
        CHECK((b.coords[g][i] + b.coords[h][i]) % b.orders[i] ==
              b.coords[gh][i]);
    }

  // Homogeneous: (Z/7)^2 splits as 7 | 7.
  FiniteGroup E49 = make_group(product({cyclic(7), cyclic(7)}));
  CHECK(abelian_basis(E49).orders == std::vector<std::int64_t>{7, 7});

  // (Z/2)^4: four independent involutions.
  FiniteGroup E16 =
      make_group(product({cyclic(2), cyclic(2), cyclic(2), cyclic(2)}));
  AbelianBasis b16 = abelian_basis(E16);
  CHECK(b16.orders == std::vector<std::int64_t>{2, 2, 2, 2});

  CHECK_THROWS_AS(abelian_basis(make_group(dihedral(4))), EngineError);

  // Trivial group: empty basis, one empty coordinate tuple.
  AbelianBasis b1 = abelian_basis(make_group(cyclic(1)));
  CHECK(b1.gens.empty());
  CHECK(b1.coords == std::vector<std::vector<int>>{{}});
}
