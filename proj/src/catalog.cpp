#include "catalog.hpp"

#include <algorithm>
#include <array>

#include "errors.hpp"

namespace morita {

GroupSpec spec_cyclic(int n) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::cyclic;
  s.n = n;
  return s;
}

GroupSpec spec_product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::product;
  s.factors = std::move(factors);
  return s;
}

GroupSpec spec_semidirect(GroupSpec normal, GroupSpec acting,
                          std::vector<std::vector<int>> action) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::semidirect;
  s.factors = {std::move(normal), std::move(acting)};
  s.action = std::move(action);
  return s;
}

GroupSpec spec_dihedral(int m) {
  std::vector<int> id(m), inv(m);
  for (int i = 0; i < m; ++i) {
    id[i] = i;
    inv[i] = (m - i) % m;
  }
  return spec_semidirect(spec_cyclic(m), spec_cyclic(2), {id, inv});
}

GroupSpec spec_dicyclic(int m) {
  // Elements a^i b^j with i < 2m, j < 2, encoded as j*2m + i; b^2 = a^m
  // makes this a non-split extension, so the table is written out.
  if (m < 2) fail_invalid("dicyclic: need m >= 2");
  const int n = 4 * m;
  GroupSpec s;
  s.kind = GroupSpec::Kind::table;
  s.n = n;
  s.table.assign(n, std::vector<int>(n, 0));
  auto idx = [&](int i, int j) { return j * 2 * m + ((i % (2 * m)) + 2 * m) % (2 * m); };
  for (int i = 0; i < 2 * m; ++i)
    for (int j = 0; j < 2; ++j)
      for (int i2 = 0; i2 < 2 * m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int r;
          if (j == 0)
            r = idx(i + i2, j2);
          else if (j2 == 0)
            r = idx(i - i2, 1);
          else
            r = idx(i - i2 + m, 0);
          s.table[idx(i, j)][idx(i2, j2)] = r;
        }
  return s;
}

namespace {

// Scaling action of Z/q on Z/p: c acts by x -> x * t^c.
std::vector<std::vector<int>> scaling_action(int p, int q, int t) {
  std::vector<std::vector<int>> act(q, std::vector<int>(p));
  std::int64_t tc = 1;
  for (int c = 0; c < q; ++c) {
    for (int x = 0; x < p; ++x) act[c][x] = int((x * tc) % p);
    tc = (tc * t) % p;
  }
  return act;
}

// Z/2 swapping the two factors of Z/2 x Z/2 (index a + 2b).
std::vector<std::vector<int>> swap_action_v4() {
  return {{0, 1, 2, 3}, {0, 2, 1, 3}};
}

// Inversion on both coordinates of Z/3 x Z/3 (index a + 3b).
std::vector<std::vector<int>> invert_action_e9() {
  std::vector<int> id(9), inv(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      id[a + 3 * b] = a + 3 * b;
      inv[a + 3 * b] = (3 - a) % 3 + 3 * ((3 - b) % 3);
    }
  return {id, inv};
}

// Z/4 acting on Z/m through inversion at the odd steps.
std::vector<std::vector<int>> inversion_through_z4(int m) {
  std::vector<int> id(m), inv(m);
  for (int i = 0; i < m; ++i) {
    id[i] = i;
    inv[i] = (m - i) % m;
  }
  return {id, inv, id, inv};
}

// Z/8 acting on Z/3 through inversion at the odd steps.
std::vector<std::vector<int>> inversion_through_z8() {
  std::vector<int> id = {0, 1, 2}, inv = {0, 2, 1};
  return {id, inv, id, inv, id, inv, id, inv};
}

GroupSpec spec_table_of(const FiniteGroup& G) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::table;
  s.n = G.order();
  s.table.assign(s.n, std::vector<int>(s.n));
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) s.table[a][b] = G.mul(a, b);
  return s;
}

// The central product of D8 and Z/4 over the shared center: quotient of
// D8 x Z/4 by the diagonal central involution (r^2, 2).
GroupSpec spec_pauli16() {
  FiniteGroup big =
      make_group(spec_product({spec_dihedral(4), spec_cyclic(4)}));
  // r^2 is index 2 in D8; the product index of (r^2, 2) is 2 + 8*2.
  Subgroup Z = subgroup_closure(big, {2 + 8 * 2});
  CosetSpace cs = coset_space(big, Z);
  return spec_table_of(quotient_group(cs));
}

GroupSpec spec_s4() {
  // Permutations of 4 letters in lexicographic order (identity first);
  // (s*t)(x) = s(t(x)).
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::vector<std::array<int, 4>> ps;
  do {
    ps.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const int n = int(ps.size());
  GroupSpec s;
  s.kind = GroupSpec::Kind::table;
  s.n = n;
  s.table.assign(n, std::vector<int>(n));
  auto find = [&](const std::array<int, 4>& p) {
    return int(std::lower_bound(ps.begin(), ps.end(), p) - ps.begin());
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 4> c;
      for (int x = 0; x < 4; ++x) c[x] = ps[a][ps[b][x]];
      s.table[a][b] = find(c);
    }
  return s;
}

GroupSpec spec_sl23() {
  // 2x2 matrices over F_3 with determinant 1, identity first, the rest
  // in enumeration order.
  struct M {
    int a, b, c, d;
  };
  std::vector<M> ms;
  ms.push_back({1, 0, 0, 1});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          if (((a * d - b * c) % 3 + 3) % 3 != 1) continue;
          if (a == 1 && b == 0 && c == 0 && d == 1) continue;
          ms.push_back({a, b, c, d});
        }
  const int n = int(ms.size());
  if (n != 24) fail_internal("SL(2,3) enumeration is off");
  GroupSpec s;
  s.kind = GroupSpec::Kind::table;
  s.n = n;
  s.table.assign(n, std::vector<int>(n));
  auto find = [&](int a, int b, int c, int d) {
    for (int i = 0; i < n; ++i)
      if (ms[i].a == a && ms[i].b == b && ms[i].c == c && ms[i].d == d)
        return i;
    fail_internal("SL(2,3) product left the group");
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const M &x = ms[i], &y = ms[j];
      s.table[i][j] =
          find((x.a * y.a + x.b * y.c) % 3, (x.a * y.b + x.b * y.d) % 3,
               (x.c * y.a + x.d * y.c) % 3, (x.c * y.b + x.d * y.d) % 3);
    }
  return s;
}

// A4 as V4 x| Z/3, cycling the three involutions.
GroupSpec spec_a4() {
  return spec_semidirect(spec_product({spec_cyclic(2), spec_cyclic(2)}),
                         spec_cyclic(3),
                         {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}});
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;
  auto add = [&](std::string name, GroupSpec spec) {
    cat.push_back({std::move(name), std::move(spec)});
  };

  for (int n : {1, 2, 3, 5, 7, 11, 13})
    add("Z" + std::to_string(n), spec_cyclic(n));

  add("Z4", spec_cyclic(4));
  add("Z2xZ2", spec_product({spec_cyclic(2), spec_cyclic(2)}));

  add("Z6", spec_cyclic(6));
  add("S3", spec_dihedral(3));

  add("Z8", spec_cyclic(8));
  add("Z4xZ2", spec_product({spec_cyclic(4), spec_cyclic(2)}));
  add("Z2^3", spec_product({spec_cyclic(2), spec_cyclic(2), spec_cyclic(2)}));
  add("D8", spec_dihedral(4));
  add("Q8", spec_dicyclic(2));

  add("Z9", spec_cyclic(9));
  add("Z3xZ3", spec_product({spec_cyclic(3), spec_cyclic(3)}));

  add("Z10", spec_cyclic(10));
  add("D10", spec_dihedral(5));

  add("Z12", spec_cyclic(12));
  add("Z6xZ2", spec_product({spec_cyclic(6), spec_cyclic(2)}));
  add("D12", spec_dihedral(6));
  add("A4", spec_a4());
  add("Dic3", spec_dicyclic(3));

  add("Z14", spec_cyclic(14));
  add("D14", spec_dihedral(7));

  add("Z15", spec_cyclic(15));

  // Order 16, all fourteen types.
  add("Z16", spec_cyclic(16));
  add("Z8xZ2", spec_product({spec_cyclic(8), spec_cyclic(2)}));
  add("Z4xZ4", spec_product({spec_cyclic(4), spec_cyclic(4)}));
  add("Z4xZ2^2",
      spec_product({spec_cyclic(4), spec_cyclic(2), spec_cyclic(2)}));
  add("Z2^4", spec_product({spec_cyclic(2), spec_cyclic(2), spec_cyclic(2),
                            spec_cyclic(2)}));
  add("D16", spec_dihedral(8));
  add("Q16", spec_dicyclic(4));
  add("SD16", spec_semidirect(spec_cyclic(8), spec_cyclic(2),
                              {{0, 1, 2, 3, 4, 5, 6, 7},
                               {0, 3, 6, 1, 4, 7, 2, 5}}));  // a -> a^3
  add("M16", spec_semidirect(spec_cyclic(8), spec_cyclic(2),
                             {{0, 1, 2, 3, 4, 5, 6, 7},
                              {0, 5, 2, 7, 4, 1, 6, 3}}));  // a -> a^5
  add("D8xZ2", spec_product({spec_dihedral(4), spec_cyclic(2)}));
  add("Q8xZ2", spec_product({spec_dicyclic(2), spec_cyclic(2)}));
  add("Z4:Z4",
      spec_semidirect(spec_cyclic(4), spec_cyclic(4), inversion_through_z4(4)));
  add("(Z2xZ2):Z4",
      spec_semidirect(spec_product({spec_cyclic(2), spec_cyclic(2)}),
                      spec_cyclic(4),
                      {swap_action_v4()[0], swap_action_v4()[1],
                       swap_action_v4()[0], swap_action_v4()[1]}));
  add("D8*Z4", spec_pauli16());

  // A spread through order 24.
  add("Z18", spec_cyclic(18));
  add("Z3xZ6", spec_product({spec_cyclic(3), spec_cyclic(6)}));
  add("D18", spec_dihedral(9));
  add("Z3xS3", spec_product({spec_cyclic(3), spec_dihedral(3)}));
  add("(Z3xZ3):Z2",
      spec_semidirect(spec_product({spec_cyclic(3), spec_cyclic(3)}),
                      spec_cyclic(2), invert_action_e9()));

  add("Z20", spec_cyclic(20));
  add("Z10xZ2", spec_product({spec_cyclic(10), spec_cyclic(2)}));
  add("D20", spec_dihedral(10));
  add("F20", spec_semidirect(spec_cyclic(5), spec_cyclic(4),
                             scaling_action(5, 4, 2)));
  add("Dic5", spec_dicyclic(5));

  add("Z21", spec_cyclic(21));
  add("Z7:Z3", spec_semidirect(spec_cyclic(7), spec_cyclic(3),
                               scaling_action(7, 3, 2)));

  add("Z22", spec_cyclic(22));
  add("D22", spec_dihedral(11));

  add("Z24", spec_cyclic(24));
  add("D24", spec_dihedral(12));
  add("A4xZ2", spec_product({spec_a4(), spec_cyclic(2)}));
  add("S4", spec_s4());
  add("SL(2,3)", spec_sl23());
  add("Z3:Z8", spec_semidirect(spec_cyclic(3), spec_cyclic(8),
                               inversion_through_z8()));

  std::vector<std::pair<int, CatalogEntry>> keyed;
  keyed.reserve(cat.size());
  for (CatalogEntry& e : cat)
    keyed.emplace_back(make_group(e.spec).order(), std::move(e));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) {
                     return a.first != b.first ? a.first < b.first
                                               : a.second.name < b.second.name;
                   });
  cat.clear();
  for (auto& [o, e] : keyed) cat.push_back(std::move(e));
  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& group_catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : group_catalog())
    if (e.name == name) return e;
  fail_invalid("unknown catalog group: " + name);
}

}  // namespace morita
