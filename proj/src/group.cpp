#include "group.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

#include "errors.hpp"

namespace morita {

namespace {
std::atomic<std::int64_t> g_next_group_id{1};
}

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

FiniteGroup FiniteGroup::from_table(int n, std::vector<int> flat,
                                    bool check_assoc) {
  if (n < 1) fail_invalid("group order must be >= 1");
  if (flat.size() != std::size_t(n) * n)
    fail_invalid("multiplication table has wrong size");
  for (int v : flat)
    if (v < 0 || v >= n) fail_invalid("table entry out of range");

  auto mul = [&](int a, int b) { return flat[std::size_t(a) * n + b]; };

  for (int i = 0; i < n; ++i)
    if (mul(0, i) != i || mul(i, 0) != i)
      fail_invalid("element 0 is not a two-sided identity");

  // Latin square: rows and columns are permutations.
  std::vector<char> seen(n);
  for (int i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      if (seen[mul(i, j)]) fail_invalid("table row is not a permutation");
      seen[mul(i, j)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < n; ++j) {
      if (seen[mul(j, i)]) fail_invalid("table column is not a permutation");
      seen[mul(j, i)] = 1;
    }
  }

  if (check_assoc) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = mul(a, b);
        for (int c = 0; c < n; ++c)
          if (mul(ab, c) != mul(a, mul(b, c)))
            fail_invalid("table is not associative");
      }
  }

  FiniteGroup G;
  G.n_ = n;
  G.mul_ = std::move(flat);
  G.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul(a, b) == 0) {
        G.inv_[a] = b;
        break;
      }
  for (int a = 0; a < n; ++a)
    if (G.inv_[a] < 0 || G.mul(G.inv_[a], a) != 0)
      fail_invalid("element without a two-sided inverse");

  G.ord_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = G.mul(x, a);
      ++k;
    }
    G.ord_[a] = k;
  }
  G.id_ = g_next_group_id.fetch_add(1);
  return G;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::exponent() const {
  std::int64_t e = 1;
  for (int a = 0; a < n_; ++a) e = std::lcm(e, std::int64_t(ord_[a]));
  return int(e);
}

// ---------------------------------------------------------------------------
// make_group
// ---------------------------------------------------------------------------

namespace {

FiniteGroup build_cyclic(int n) {
  if (n < 1) fail_invalid("cyclic group order must be >= 1");
  std::vector<int> flat(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[std::size_t(i) * n + j] = (i + j) % n;
  return FiniteGroup::from_table(n, std::move(flat), false);
}

FiniteGroup build_product(const std::vector<FiniteGroup>& fs) {
  int n = 1;
  for (const auto& f : fs) n *= f.order();
  // Mixed-radix index, first factor fastest.
  std::vector<int> flat(std::size_t(n) * n);
  std::vector<int> da(fs.size()), db(fs.size());
  for (int a = 0; a < n; ++a) {
    int t = a;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      da[i] = t % fs[i].order();
      t /= fs[i].order();
    }
    for (int b = 0; b < n; ++b) {
      t = b;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        db[i] = t % fs[i].order();
        t /= fs[i].order();
      }
      int prod = 0, stride = 1;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        prod += stride * fs[i].mul(da[i], db[i]);
        stride *= fs[i].order();
      }
      flat[std::size_t(a) * n + b] = prod;
    }
  }
  return FiniteGroup::from_table(n, std::move(flat), false);
}

FiniteGroup build_semidirect(const FiniteGroup& N, const FiniteGroup& Q,
                             const std::vector<std::vector<int>>& action) {
  const int nn = N.order(), nq = Q.order();
  if (int(action.size()) != nq)
    fail_invalid("semidirect action must list one permutation per acting element");
  for (const auto& p : action) {
    if (int(p.size()) != nn) fail_invalid("semidirect action permutation has wrong size");
    std::vector<char> seen(nn, 0);
    for (int v : p) {
      if (v < 0 || v >= nn || seen[v])
        fail_invalid("semidirect action entry is not a permutation");
      seen[v] = 1;
    }
  }
  for (int i = 0; i < nn; ++i)
    if (action[0][i] != i) fail_invalid("identity must act trivially in semidirect action");
  // Each permutation is an automorphism of N.
  for (int q = 0; q < nq; ++q)
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        if (action[q][N.mul(a, b)] != N.mul(action[q][a], action[q][b]))
          fail_invalid("semidirect action is not by automorphisms");
  // Right-action compatibility: i <| (q1 q2) = (i <| q1) <| q2.
  for (int q1 = 0; q1 < nq; ++q1)
    for (int q2 = 0; q2 < nq; ++q2) {
      int q12 = Q.mul(q1, q2);
      for (int i = 0; i < nn; ++i)
        if (action[q12][i] != action[q2][action[q1][i]])
          fail_invalid("semidirect action is not a right action");
    }

  const int n = nn * nq;
  std::vector<int> flat(std::size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    int n1 = a % nn, q1 = a / nn;
    for (int b = 0; b < n; ++b) {
      int n2 = b % nn, q2 = b / nn;
      int np = N.mul(action[q2][n1], n2);
      int qp = Q.mul(q1, q2);
      flat[std::size_t(a) * n + b] = sd_index(np, qp, nn);
    }
  }
  return FiniteGroup::from_table(n, std::move(flat), false);
}

}  // namespace

FiniteGroup make_group(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::cyclic:
      return build_cyclic(spec.n);
    case GroupSpec::Kind::product: {
      std::vector<FiniteGroup> fs;
      fs.reserve(spec.factors.size());
      for (const auto& f : spec.factors) fs.push_back(make_group(f));
      if (fs.empty()) return build_cyclic(1);
      return build_product(fs);
    }
    case GroupSpec::Kind::semidirect: {
      if (spec.factors.size() != 2)
        fail_invalid("semidirect spec needs exactly normal and acting parts");
      FiniteGroup N = make_group(spec.factors[0]);
      FiniteGroup Q = make_group(spec.factors[1]);
      return build_semidirect(N, Q, spec.action);
    }
    case GroupSpec::Kind::table: {
      if (spec.n < 1 || int(spec.table.size()) != spec.n)
        fail_invalid("table spec has wrong row count");
      std::vector<int> flat;
      flat.reserve(std::size_t(spec.n) * spec.n);
      for (const auto& row : spec.table) {
        if (int(row.size()) != spec.n) fail_invalid("table spec has a ragged row");
        flat.insert(flat.end(), row.begin(), row.end());
      }
      return FiniteGroup::from_table(spec.n, std::move(flat), true);
    }
  }
  fail_internal("unknown group spec kind");
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

int Subgroup::local(int g) const {
  if (g < 0 || g >= int(pos.size()) || pos[g] < 0)
    fail_internal("element outside subgroup");
  return pos[g];
}

static Subgroup finish_subgroup(const FiniteGroup& G, std::set<int> elems) {
  Subgroup H;
  H.elems.assign(elems.begin(), elems.end());
  H.pos.assign(G.order(), -1);
  for (int i = 0; i < int(H.elems.size()); ++i) H.pos[H.elems[i]] = i;
  return H;
}

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
  for (int g : gens)
    if (g < 0 || g >= G.order()) fail_invalid("generator index out of range");
  std::set<int> elems{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int g : gens) {
      int y = G.mul(x, g);
      if (elems.insert(y).second) frontier.push_back(y);
    }
  }
  return finish_subgroup(G, std::move(elems));
}

Subgroup subgroup_from_elems(const FiniteGroup& G, std::vector<int> elems) {
  std::set<int> s(elems.begin(), elems.end());
  if (s.empty() || !s.count(0)) fail_invalid("subgroup must contain the identity");
  for (int a : s) {
    if (a < 0 || a >= G.order()) fail_invalid("subgroup element out of range");
    if (!s.count(G.inverse(a))) fail_invalid("subgroup not closed under inverse");
    for (int b : s)
      if (!s.count(G.mul(a, b))) fail_invalid("subgroup not closed under product");
  }
  return finish_subgroup(G, std::move(s));
}

FiniteGroup subgroup_group(const FiniteGroup& G, const Subgroup& H) {
  const int hn = H.order();
  std::vector<int> flat(std::size_t(hn) * hn);
  for (int i = 0; i < hn; ++i)
    for (int j = 0; j < hn; ++j)
      flat[std::size_t(i) * hn + j] = H.local(G.mul(H.elems[i], H.elems[j]));
  return FiniteGroup::from_table(hn, std::move(flat), false);
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
  for (int g = 0; g < G.order(); ++g)
    for (int h : H.elems)
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& G, const Subgroup& H) {
  for (int a : H.elems)
    for (int b : H.elems)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G, int limit) {
  // Closure-extension breadth search: every subgroup arises from a smaller
  // one by adjoining a single element, so this enumeration is complete.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  auto add = [&](const Subgroup& H) {
    if (seen.insert(H.elems).second) {
      queue.push_back(H.elems);
      if (int(seen.size()) > limit)
        fail_invalid("subgroup enumeration exceeded limit");
    }
  };
  add(subgroup_closure(G, {}));
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<int> base = queue[qi];
    for (int g = 1; g < G.order(); ++g) {
      if (std::binary_search(base.begin(), base.end(), g)) continue;
      std::vector<int> gens = base;
      gens.push_back(g);
      add(subgroup_closure(G, gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& e : seen) {
    Subgroup H;
    H.elems = e;
    H.pos.assign(G.order(), -1);
    for (int i = 0; i < int(e.size()); ++i) H.pos[e[i]] = i;
    out.push_back(std::move(H));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elems < b.elems;
  });
  return out;
}

Subgroup center(const FiniteGroup& G) {
  std::vector<int> elems;
  for (int a = 0; a < G.order(); ++a) {
    bool central = true;
    for (int b = 0; b < G.order() && central; ++b)
      central = G.mul(a, b) == G.mul(b, a);
    if (central) elems.push_back(a);
  }
  return subgroup_from_elems(G, std::move(elems));
}

Subgroup derived_subgroup(const FiniteGroup& G) {
  std::vector<int> comms;
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) {
      int c = G.mul(G.mul(a, b), G.inverse(G.mul(b, a)));
      comms.push_back(c);
    }
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_closure(G, comms);
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<int> cls(G.order(), -1);
  std::vector<std::vector<int>> classes;
  for (int a = 0; a < G.order(); ++a) {
    if (cls[a] >= 0) continue;
    std::vector<int> orbit;
    for (int g = 0; g < G.order(); ++g) {
      int c = G.conj(a, g);
      if (cls[c] < 0) {
        cls[c] = int(classes.size());
        orbit.push_back(c);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// CosetSpace
// ---------------------------------------------------------------------------

CosetSpace::CosetSpace(const FiniteGroup& G, Subgroup H) : G_(&G), H_(std::move(H)) {
  const int n = G.order();
  coset_of_.assign(n, -1);
  // Enumerate right cosets Hg in order of their minimal element; the coset
  // of the identity is H itself and lands at index 0.
  for (int g = 0; g < n; ++g) {
    if (coset_of_[g] >= 0) continue;
    int idx = k_++;
    rep_.push_back(g);  // g is minimal in Hg by scan order
    for (int h : H_.elems) coset_of_[G.mul(h, g)] = idx;
  }
  act_.assign(std::size_t(k_) * n, -1);
  kappa_.assign(std::size_t(k_) * n, -1);
  for (int x = 0; x < k_; ++x)
    for (int g = 0; g < n; ++g) {
      int ug = G.mul(rep_[x], g);
      int xg = coset_of_[ug];
      act_[std::size_t(x) * n + g] = xg;
      int kap = G.mul(ug, G.inverse(rep_[xg]));
      if (!H_.contains(kap)) fail_internal("kappa landed outside the subgroup");
      kappa_[std::size_t(x) * n + g] = kap;
    }
}

CosetSpace coset_space(const FiniteGroup& G, const Subgroup& H) {
  return CosetSpace(G, H);
}

std::vector<int> stable_cosets(const CosetSpace& cs) {
  std::vector<int> out;
  for (int x = 0; x < cs.size(); ++x) {
    bool stable = true;
    for (int h : cs.subgroup().elems)
      if (cs.act(x, h) != x) {
        stable = false;
        break;
      }
    if (stable) out.push_back(x);
  }
  return out;
}

FiniteGroup quotient_group(const CosetSpace& cs) {
  if (!is_normal(cs.group(), cs.subgroup()))
    fail_invalid("quotient requires a normal subgroup");
  const int k = cs.size();
  std::vector<int> flat(std::size_t(k) * k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      flat[std::size_t(x) * k + y] = cs.coset_mul(x, y);
  return FiniteGroup::from_table(k, std::move(flat), false);
}

// ---------------------------------------------------------------------------
// DualGroup
// ---------------------------------------------------------------------------

DualGroup dual_group(const FiniteGroup& G, const Subgroup& H) {
  if (!is_abelian(G, H)) fail_invalid("dual group requires an abelian subgroup");
  const int hn = H.order();

  // Build all homomorphisms H -> Q/Z by extending along a cyclic tower:
  // adjoin the smallest missing element a, whose relative order over the
  // current layer is m; each character picks one of the m values v with
  // m*v = chi(a^m).
  struct Partial {
    std::vector<int> members;          // local indices covered so far
    std::vector<QmodZ> vals;           // size hn, meaningful on members
  };
  std::vector<char> covered(hn, 0);
  covered[H.local(0)] = 1;
  Partial base;
  base.vals.assign(hn, QmodZ{});
  base.members = {H.local(0)};
  std::vector<Partial> layer{base};
  std::vector<int> covered_list = base.members;

  while (int(covered_list.size()) < hn) {
    int a_local = -1;
    for (int i = 0; i < hn; ++i)
      if (!covered[i]) {
        a_local = i;
        break;
      }
    int a = H.elems[a_local];
    // Relative order m: smallest m >= 1 with a^m inside the covered set.
    int m = 1, p = a;
    while (!covered[H.local(p)]) {
      p = G.mul(p, a);
      ++m;
    }
    // p == a^m, inside the layer's domain.
    std::vector<Partial> next;
    next.reserve(layer.size() * m);
    for (const Partial& chi : layer) {
      QmodZ target = chi.vals[H.local(p)];
      // v = (target.num + k*target.den) / (m * target.den), k = 0..m-1.
      for (int k = 0; k < m; ++k) {
        Partial ext = chi;
        QmodZ v = QmodZ::make(target.num + std::int64_t(k) * target.den,
                              std::int64_t(m) * target.den);
        // Fill values on the new coset layer a^j * s.
        int aj = 0;  // a^j
        for (int j = 0; j < m; ++j) {
          if (j > 0) {
            for (int s_local : chi.members) {
              int e = G.mul(aj, H.elems[s_local]);
              ext.vals[H.local(e)] = std::int64_t(j) * v + chi.vals[s_local];
              ext.members.push_back(H.local(e));
            }
          }
          aj = G.mul(aj, a);
        }
        next.push_back(std::move(ext));
      }
    }
    // Mark the enlarged domain (same for every character).
    layer = std::move(next);
    for (int i : layer.front().members)
      if (!covered[i]) {
        covered[i] = 1;
        covered_list.push_back(i);
      }
  }

  DualGroup D;
  D.chars_.reserve(layer.size());
  for (auto& p : layer) D.chars_.push_back(std::move(p.vals));
  std::sort(D.chars_.begin(), D.chars_.end());
  if (int(D.chars_.size()) != hn) fail_internal("character count mismatch");
  for (int i = 0; i < hn; ++i) D.lookup_[D.chars_[i]] = i;

  std::vector<int> flat(std::size_t(hn) * hn);
  std::vector<QmodZ> sum(hn);
  for (int i = 0; i < hn; ++i)
    for (int j = 0; j < hn; ++j) {
      for (int t = 0; t < hn; ++t) sum[t] = D.chars_[i][t] + D.chars_[j][t];
      auto it = D.lookup_.find(sum);
      if (it == D.lookup_.end()) fail_internal("character sum escaped the dual");
      flat[std::size_t(i) * hn + j] = it->second;
    }
  D.group_ = FiniteGroup::from_table(hn, std::move(flat), false);
  return D;
}

int DualGroup::index_of(const std::vector<QmodZ>& values) const {
  auto it = lookup_.find(values);
  if (it == lookup_.end()) fail_internal("value vector is not a character");
  return it->second;
}

int DualGroup::permuted(int chi, const std::vector<int>& hperm) const {
  std::vector<QmodZ> v(chars_[chi].size());
  for (std::size_t h = 0; h < v.size(); ++h) v[h] = chars_[chi][hperm[h]];
  return index_of(v);
}

// ---------------------------------------------------------------------------
// Isomorphisms
// ---------------------------------------------------------------------------

namespace {

struct WordStructure {
  std::vector<int> gens;
  std::vector<int> bfs_order;   // all elements, identity first
  std::vector<int> def_parent;  // element = def_parent * gens[def_gen]
  std::vector<int> def_gen;
  std::vector<int> gen_prefix_order;  // |<g_1..g_i>| for i = 1..#gens
};

WordStructure word_structure(const FiniteGroup& G) {
  WordStructure w;
  Subgroup cl = subgroup_closure(G, {});
  while (cl.order() < G.order()) {
    int g = 0;
    while (cl.contains(g)) ++g;
    w.gens.push_back(g);
    std::vector<int> gens = w.gens;
    cl = subgroup_closure(G, gens);
    w.gen_prefix_order.push_back(cl.order());
  }
  const int n = G.order();
  w.def_parent.assign(n, -1);
  w.def_gen.assign(n, -1);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  w.bfs_order.push_back(0);
  for (std::size_t i = 0; i < w.bfs_order.size(); ++i) {
    int e = w.bfs_order[i];
    for (std::size_t q = 0; q < w.gens.size(); ++q) {
      int f = G.mul(e, w.gens[q]);
      if (!seen[f]) {
        seen[f] = 1;
        w.def_parent[f] = e;
        w.def_gen[f] = int(q);
        w.bfs_order.push_back(f);
      }
    }
  }
  return w;
}

}  // namespace

namespace {

// Shared DFS behind the two public entry points.  Calls visit on every
// isomorphism in deterministic order; a false return from visit stops the
// search.  Returns true when the space was swept to the end.
template <typename Visit>
bool iso_dfs(const FiniteGroup& G1, const FiniteGroup& G2, Visit&& visit) {
  if (G1.order() != G2.order()) return true;
  if (group_profile(G1) != group_profile(G2)) return true;
  const int n = G1.order();
  if (n == 1) {
    visit(std::vector<int>{0});
    return true;
  }

  WordStructure w = word_structure(G1);
  const int ng = int(w.gens.size());

  // Candidate images per generator slot, filtered by element order.
  std::vector<std::vector<int>> cands(ng);
  for (int q = 0; q < ng; ++q)
    for (int g = 1; g < n; ++g)
      if (G2.elt_order(g) == G1.elt_order(w.gens[q])) cands[q].push_back(g);

  std::vector<int> img_gens(ng, -1);
  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  bool stopped = false;

  auto try_leaf = [&]() {
    std::fill(img.begin(), img.end(), -1);
    std::fill(used.begin(), used.end(), 0);
    img[0] = 0;
    used[0] = 1;
    for (std::size_t i = 1; i < w.bfs_order.size(); ++i) {
      int e = w.bfs_order[i];
      int v = G2.mul(img[w.def_parent[e]], img_gens[w.def_gen[e]]);
      if (used[v]) return;  // not injective
      img[e] = v;
      used[v] = 1;
    }
    // Homomorphism on generator edges suffices by induction on words.
    for (int e = 0; e < n; ++e)
      for (int q = 0; q < ng; ++q)
        if (img[G1.mul(e, w.gens[q])] != G2.mul(img[e], img_gens[q])) return;
    if (!visit(img)) stopped = true;
  };

  // Depth-first over generator images, pruning by partial closure order.
  auto dfs = [&](auto&& self, int depth) -> void {
    if (stopped) return;
    if (depth == ng) {
      try_leaf();
      return;
    }
    for (int c : cands[depth]) {
      img_gens[depth] = c;
      std::vector<int> placed(img_gens.begin(), img_gens.begin() + depth + 1);
      if (subgroup_closure(G2, placed).order() == w.gen_prefix_order[depth])
        self(self, depth + 1);
      if (stopped) return;
    }
  };
  dfs(dfs, 0);
  return !stopped;
}

}  // namespace

IsoSearchResult isomorphisms(const FiniteGroup& G1, const FiniteGroup& G2,
                             std::size_t limit) {
  IsoSearchResult res;
  if (limit == 0) {
    res.exhausted = false;
    return res;
  }
  res.exhausted = iso_dfs(G1, G2, [&](const std::vector<int>& map) {
    res.isos.push_back(GroupIso{map});
    return res.isos.size() < limit;
  });
  return res;
}

bool for_each_isomorphism(
    const FiniteGroup& G1, const FiniteGroup& G2,
    const std::function<bool(const std::vector<int>&)>& visit) {
  return iso_dfs(G1, G2, visit);
}

bool is_isomorphic(const FiniteGroup& G1, const FiniteGroup& G2) {
  return !isomorphisms(G1, G2, 1).isos.empty();
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

AbelianStructure abelian_invariants(const FiniteGroup& G) {
  if (!G.is_abelian()) fail_invalid("abelian invariants of a nonabelian group");
  // Peel off a maximal-order cyclic direct summand and recurse on the
  // quotient; the orders collected form the invariant chain from the top.
  std::vector<std::int64_t> rev;
  FiniteGroup cur = G;
  while (cur.order() > 1) {
    int e = cur.exponent();
    int a = 1;
    while (cur.elt_order(a) != e) ++a;
    rev.push_back(e);
    Subgroup A = subgroup_closure(cur, {a});
    cur = quotient_group(coset_space(cur, A));
  }
  AbelianStructure s;
  s.factors.assign(rev.rbegin(), rev.rend());
  for (std::size_t i = 0; i + 1 < s.factors.size(); ++i)
    if (s.factors[i + 1] % s.factors[i] != 0)
      fail_internal("abelian invariants do not form a chain");
  return s;
}

AbelianStructure abelianization(const FiniteGroup& G) {
  Subgroup D = derived_subgroup(G);
  if (D.order() == G.order()) return AbelianStructure{};
  return abelian_invariants(quotient_group(coset_space(G, D)));
}

AbelianBasis abelian_basis(const FiniteGroup& A) {
  if (!A.is_abelian()) fail_invalid("abelian_basis needs an abelian group");

  // Peel maximal-order cyclic summands.  An element of order equal to the
  // exponent generates a direct summand, and a complement survives as an
  // actual subgroup: the first subgroup of complementary order meeting the
  // generated cycle trivially.  The peel runs inside a shrinking subgroup
  // S of A, tracked by its elements in A.
  std::vector<int> gens_desc;
  std::vector<std::int64_t> orders_desc;
  std::vector<int> S(A.order());
  for (int g = 0; g < A.order(); ++g) S[g] = g;
  while (S.size() > 1) {
    Subgroup Ssub = subgroup_from_elems(A, S);
    FiniteGroup Sgrp = subgroup_group(A, Ssub);
    int e = Sgrp.exponent();
    int gen_local = 1;
    while (Sgrp.elt_order(gen_local) != e) ++gen_local;
    gens_desc.push_back(Ssub.elems[gen_local]);
    orders_desc.push_back(e);
    if (e == int(S.size())) break;  // S itself is cyclic

    Subgroup cycle = subgroup_closure(Sgrp, {gen_local});
    const int want = int(S.size()) / e;
    std::vector<int> next;
    for (const Subgroup& B : all_subgroups(Sgrp)) {
      if (B.order() != want) continue;
      bool meets = false;
      for (int b : B.elems)
        if (b != 0 && cycle.contains(b)) { meets = true; break; }
      if (meets) continue;
      next.reserve(B.elems.size());
      for (int b : B.elems) next.push_back(Ssub.elems[b]);
      break;
    }
    if (next.empty()) fail_internal("abelian_basis found no complement");
    S = std::move(next);
  }

  AbelianBasis basis;
  basis.gens.assign(gens_desc.rbegin(), gens_desc.rend());
  basis.orders.assign(orders_desc.rbegin(), orders_desc.rend());
  for (std::size_t i = 0; i + 1 < basis.orders.size(); ++i)
    if (basis.orders[i + 1] % basis.orders[i] != 0)
      fail_internal("abelian_basis orders do not form a chain");

  // Coordinates: walk all tuples and check the map onto A is a bijection.
  const std::size_t r = basis.gens.size();
  basis.coords.assign(A.order(), {});
  std::vector<int> tuple(r, 0);
  std::int64_t count = 0;
  for (;;) {
    int g = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (int t = 0; t < tuple[i]; ++t) g = A.mul(g, basis.gens[i]);
    if (!basis.coords[g].empty() || (g == 0 && count > 0))
      fail_internal("abelian_basis coordinates collide");
    basis.coords[g] = tuple;
    ++count;
    std::size_t p = 0;
    while (p < r && ++tuple[p] == basis.orders[p]) tuple[p++] = 0;
    if (p == r) break;
  }
  if (count != A.order()) fail_internal("abelian_basis does not span");
  return basis;
}

GroupProfile group_profile(const FiniteGroup& G) {
  GroupProfile p;
  p.order = G.order();
  p.abelian = G.is_abelian();
  if (p.abelian) p.invariants = abelian_invariants(G);
  for (int a = 0; a < G.order(); ++a) p.order_profile[G.elt_order(a)]++;
  p.conjugacy_class_count = int(conjugacy_classes(G).size());
  p.center_order = center(G).order();
  p.derived_order = derived_subgroup(G).order();
  p.exponent = G.exponent();
  return p;
}

Census normal_subgroup_census(const FiniteGroup& G) {
  Census c;
  for (const Subgroup& H : all_subgroups(G))
    if (is_normal(G, H)) c.normal_by_order[H.order()]++;
  c.abelianization = abelianization(G);
  c.conjugacy_class_count = int(conjugacy_classes(G).size());
  return c;
}

}  // namespace morita
