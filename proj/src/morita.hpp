#pragma once
// Deciding categorical Morita equivalence of pointed data.
//
// (G, omega) and (G', omega') are equivalent exactly when some normal
// abelian subgroup H of G and some module class mu over it make the dual
// construction land on (G', omega'): the dual must be pointed, there
// must be a group isomorphism a from G' onto the crossed product, and
// the dual associator must pull back along a to omega' up to
// coboundary.  The search below runs over exactly that space, in a fixed
// deterministic order, and every witness it returns can be replayed from
// scratch.
//
// "No" is only reported after the whole space is exhausted; when an
// isomorphism enumeration hits its budget first, the search refuses to
// answer and throws the budget error instead.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cochain.hpp"
#include "cohomology.hpp"
#include "duality.hpp"
#include "group.hpp"
#include "pointed.hpp"

namespace morita {

struct MoritaWitness {
  Subgroup H;              // normal abelian subgroup of C1's group
  int mu_class = 0;        // index into module_class_catalog(C1, H\G)
  std::vector<int> iso;    // a : C2's group -> the crossed-product table
  Cochain certificate;     // g on C2's group with delta g = a*varpi - omega'
};

struct MoritaBudget {
  // Cap on isomorphisms tried per (H, mu) candidate.  Hitting the cap
  // anywhere without finding a witness makes the result inconclusive
  // rather than "no".
  std::size_t iso_budget = 200000;
  // Worker threads for candidate evaluation.  Candidates are processed
  // in blocks and merged first-in-order, so the answer is identical for
  // every jobs value.
  int jobs = 1;
};

// First witness in the deterministic order — H by decreasing order (ties
// by element list), mu classes in catalog order, isomorphisms in
// enumeration order — or nullopt once every candidate is exhausted.
// Distinct orders return nullopt immediately (duality preserves the
// group order).  Every returned witness has been re-verified.
std::optional<MoritaWitness> morita_equivalent(const PointedCategory& C1,
                                               const PointedCategory& C2,
                                               const MoritaBudget& budget = {});

// The equivalence question for plain groups: both associators zero.  On
// top of the general search this cross-checks the per-class gate against
// the direct count of conjugation-invariant module classes; a mismatch
// between the two routes is an internal error.
std::optional<MoritaWitness> morita_equivalent_groups(
    const FiniteGroup& G1, const FiniteGroup& G2,
    const MoritaBudget& budget = {});

// Replays a witness from scratch: H normal and abelian with a solvable
// module structure, the chosen class passes the pointedness gate, iso is
// a group isomorphism onto the freshly rebuilt crossed product, and
// delta(certificate) equals the pulled-back associator minus C2's.
// Throws the internal error naming the failing condition.
void verify_witness(const PointedCategory& C1, const PointedCategory& C2,
                    const MoritaWitness& w);

// The self-equivalence witness through the trivial subgroup H = {1}
// (the regular module: the dual is the category itself).  Verified
// before returning.
MoritaWitness trivial_self_witness(const PointedCategory& C,
                                   const MoritaBudget& budget = {});

// H x| G0 and H^ x| G0 for an abelian H and a right G0-action on H by
// automorphisms; action[g] is the permutation h -> h <| g, so that
// action[g1 g2] = action[g2] o action[g1] and action[0] = id.  The dual
// side carries the induced action (chi <| g)(h) = chi(h <| g^{-1}).
// With verify set, the pair's equivalence is checked on emission and an
// internal error is thrown if the search fails.
std::pair<FiniteGroup, FiniteGroup> dual_pair_general(
    const FiniteGroup& H, const FiniteGroup& G0,
    const std::vector<std::vector<int>>& action, bool verify = true);

// Parameters for the scaling-eigenvalue family: odd primes p, q with
// q | p-1, and t of multiplicative order q mod p.
struct FamilyParams {
  int p = 0, q = 0, t = 0;
};

// The family pair: G = Z/p x| M and its partner with the inverse
// eigenvalue, where M = Z/p x| Z/q scales by t.  The partner is exactly
// Hhat x| M for the conjugation module H = Z/p, so the two are
// categorically Morita equivalent while their normal-subgroup censuses
// differ.
struct FamilyReport {
  FamilyParams params;
  std::shared_ptr<const FiniteGroup> G, Gprime;
  MoritaWitness witness;           // for (G, 0) ~ (G', 0)
  bool groups_isomorphic = true;   // comes out false for valid params
  Census census_G, census_Gprime;
  int classes_G = 0, classes_Gprime = 0;  // conjugacy class counts
};

// Builds the pair at params, runs the equivalence search, and collects
// the census-level invariants.  Invalid params throw the invalid error;
// a failed equivalence search on a valid pair is an internal error.
FamilyReport family_report(const FamilyParams& params,
                           const MoritaBudget& budget = {});

// Census-level Grothendieck-ring separation: normal-subgroup counts by
// order, abelianization, and conjugacy-class counts.  `distinguished`
// is set when any of them differ.
struct DistinguisherReport {
  Census census1, census2;
  GroupProfile profile1, profile2;
  bool distinguished = false;
};

DistinguisherReport grothendieck_distinguishers(const FiniteGroup& G1,
                                                const FiniteGroup& G2);

}  // namespace morita
