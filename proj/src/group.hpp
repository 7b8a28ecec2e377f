#pragma once
// Finite groups as multiplication tables, with the coset machinery the
// rest of the engine is built on.
//
// Conventions used throughout:
//   * element 0 is the identity in every encoding;
//   * a semidirect product N x| Q acts on the right: the element (n, q)
//     has index q*|N| + n, and (n1, q1)(n2, q2) = ((n1 <| q2) n2, q1 q2),
//     so the copy of N occupies indices 0..|N|-1 and conjugating (n, 1)
//     by (0, q) gives (n <| q, 1);
//   * coset spaces are right coset spaces K = H\G with the projection
//     p(g) = Hg; cosets are ordered by their minimal element, so the
//     base coset H itself is index 0; the section u picks the minimal
//     element, hence u(H) = 1.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intmat.hpp"
#include "qmz.hpp"

namespace morita {

// ---------------------------------------------------------------------------
// Group construction specs
// ---------------------------------------------------------------------------

struct GroupSpec {
  enum class Kind { cyclic, product, semidirect, table };
  Kind kind = Kind::cyclic;
  int n = 1;                              // cyclic order or table size
  std::vector<GroupSpec> factors;         // product: >= 1; semidirect: {normal, acting}
  std::vector<std::vector<int>> action;   // semidirect: action[q][i] = i <| q
  std::vector<std::vector<int>> table;    // explicit table, table[i][j] = i*j
};

class FiniteGroup {
 public:
  FiniteGroup() = default;
  // Takes ownership of a flattened multiplication table (validated).
  static FiniteGroup from_table(int n, std::vector<int> flat,
                                bool check_assoc = true);

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[std::size_t(a) * n_ + b]; }
  int inverse(int a) const { return inv_[a]; }
  int conj(int g, int by) const {  // by * g * by^{-1}
    return mul(mul(by, g), inv_[by]);
  }
  int elt_order(int a) const { return ord_[a]; }
  std::int64_t id() const { return id_; }  // unique per instance, for caches
  const std::vector<int>& flat_table() const { return mul_; }

  bool is_abelian() const;
  int exponent() const;

 private:
  int n_ = 0;
  std::vector<int> mul_, inv_;
  std::vector<int> ord_;
  std::int64_t id_ = 0;
};

FiniteGroup make_group(const GroupSpec& spec);

// Index helpers for the semidirect encoding (n, q) <-> q*|N| + n.
inline int sd_index(int n_part, int q_part, int nsize) {
  return q_part * nsize + n_part;
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

struct Subgroup {
  std::vector<int> elems;  // sorted ascending, elems[0] == 0
  std::vector<int> pos;    // size |G|: local index in elems, or -1

  int order() const { return int(elems.size()); }
  bool contains(int g) const { return pos[g] >= 0; }
  int local(int g) const;  // throws on a non-member
};

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);
Subgroup subgroup_from_elems(const FiniteGroup& G, std::vector<int> elems);

bool is_normal(const FiniteGroup& G, const Subgroup& H);
bool is_abelian(const FiniteGroup& G, const Subgroup& H);

// H as an abstract group on its local indices (table[i][j] via G).
FiniteGroup subgroup_group(const FiniteGroup& G, const Subgroup& H);

// Every subgroup, sorted by (order, element list).  `limit` guards against
// combinatorial blowups on unexpectedly rich lattices.
std::vector<Subgroup> all_subgroups(const FiniteGroup& G, int limit = 100000);

Subgroup center(const FiniteGroup& G);
Subgroup derived_subgroup(const FiniteGroup& G);
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& G);

// ---------------------------------------------------------------------------
// Right coset spaces H\G
// ---------------------------------------------------------------------------

class CosetSpace {
 public:
  CosetSpace() = default;
  CosetSpace(const FiniteGroup& G, Subgroup H);

  const FiniteGroup& group() const { return *G_; }
  const Subgroup& subgroup() const { return H_; }
  int size() const { return k_; }

  int coset_of(int g) const { return coset_of_[g]; }
  int rep(int x) const { return rep_[x]; }  // the section u(x), u(0) = 1

  // Right action x <| g = p(u(x) g).
  int act(int x, int g) const { return act_[std::size_t(x) * G_->order() + g]; }

  // kappa_{x,g} = u(x) g u(x <| g)^{-1}, an element of H (as a G-index);
  // satisfies kappa_{x, g1 g2} = kappa_{x, g1} kappa_{x <| g1, g2}.
  int kappa(int x, int g) const {
    return kappa_[std::size_t(x) * G_->order() + g];
  }

  // p(u(x) u(y)): the product in the quotient when H is normal, and more
  // generally the translation entering the K^H-action on cochains.
  int coset_mul(int x, int y) const { return act(x, rep_[y]); }

 private:
  const FiniteGroup* G_ = nullptr;
  Subgroup H_;
  int k_ = 0;
  std::vector<int> coset_of_, rep_, act_, kappa_;
};

CosetSpace coset_space(const FiniteGroup& G, const Subgroup& H);

// Cosets fixed by the right H-action; these form a group under coset_mul
// isomorphic to H\N_G(H).  When H is normal this is all of K.
std::vector<int> stable_cosets(const CosetSpace& cs);

// Quotient group table on the cosets (requires H normal).
FiniteGroup quotient_group(const CosetSpace& cs);

// ---------------------------------------------------------------------------
// Characters of an abelian subgroup
// ---------------------------------------------------------------------------

// The dual of an abelian subgroup H: all homomorphisms H -> Q/Z, indexed
// canonically (lexicographic by value vector, so index 0 is trivial), with
// the group structure under pointwise addition.
class DualGroup {
 public:
  DualGroup() = default;

  const FiniteGroup& group() const { return group_; }
  int size() const { return int(chars_.size()); }
  const std::vector<QmodZ>& values(int chi) const { return chars_[chi]; }
  QmodZ eval(int chi, int h_local) const { return chars_[chi][h_local]; }

  int index_of(const std::vector<QmodZ>& values) const;  // throws if absent

  // Index of the character h -> chars[chi][hperm[h]] for a permutation of
  // H-local indices (e.g. conjugation by a normalizing element).
  int permuted(int chi, const std::vector<int>& hperm) const;

  friend DualGroup dual_group(const FiniteGroup& G, const Subgroup& H);

 private:
  FiniteGroup group_;
  std::vector<std::vector<QmodZ>> chars_;
  std::map<std::vector<QmodZ>, int> lookup_;
};

DualGroup dual_group(const FiniteGroup& G, const Subgroup& H);

// ---------------------------------------------------------------------------
// Isomorphisms
// ---------------------------------------------------------------------------

struct GroupIso {
  std::vector<int> map;  // map[g1] in G2
};

struct IsoSearchResult {
  std::vector<GroupIso> isos;
  bool exhausted = true;  // false when the search stopped at `limit`
};

// Up to `limit` isomorphisms G1 -> G2, deterministic order.  The search
// backtracks over images of a minimal generating sequence of G1.
IsoSearchResult isomorphisms(const FiniteGroup& G1, const FiniteGroup& G2,
                             std::size_t limit);

// Streaming variant: visit is called on each isomorphism as the backtracker
// finds it (same order as `isomorphisms`); returning false stops the search.
// The result is true when the whole space was swept, so a caller that never
// stops can read it as "the listing is complete".
bool for_each_isomorphism(
    const FiniteGroup& G1, const FiniteGroup& G2,
    const std::function<bool(const std::vector<int>&)>& visit);

bool is_isomorphic(const FiniteGroup& G1, const FiniteGroup& G2);

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

AbelianStructure abelian_invariants(const FiniteGroup& G);  // requires abelian
AbelianStructure abelianization(const FiniteGroup& G);

// An explicit cyclic decomposition of an abelian group: generators whose
// orders form the divisor chain d_1 | d_2 | ... | d_r, together with the
// coordinate tuple of every element (g = sum_i coords[g][i] * gens[i]).
struct AbelianBasis {
  std::vector<int> gens;
  std::vector<std::int64_t> orders;
  std::vector<std::vector<int>> coords;  // indexed by G-element
};

AbelianBasis abelian_basis(const FiniteGroup& A);

struct GroupProfile {
  int order = 1;
  bool abelian = true;
  AbelianStructure invariants;          // meaningful when abelian
  std::map<int, int> order_profile;     // element order -> count
  int conjugacy_class_count = 1;
  int center_order = 1;
  int derived_order = 1;
  int exponent = 1;
  friend bool operator==(const GroupProfile&, const GroupProfile&) = default;
};

GroupProfile group_profile(const FiniteGroup& G);

struct Census {
  std::map<int, int> normal_by_order;  // order -> number of normal subgroups
  AbelianStructure abelianization;
  int conjugacy_class_count = 0;
};

Census normal_subgroup_census(const FiniteGroup& G);

}  // namespace morita
