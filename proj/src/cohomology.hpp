#pragma once
// Group cohomology with Q/Z and coinduced coefficients: coboundaries,
// coboundary testing with witnesses, cohomology groups with verified
// representatives, Shapiro maps, and class-invariance machinery.
//
// Modulus policy.  All solving happens over Z/M for a finite M.  For a
// degree-n cochain t with value denominators dividing L, testing
// triviality over Q/Z is complete at M = |G|*L: if t is a coboundary of
// any Q/Z-cochain, it is a coboundary of one with denominators dividing
// |G|*L.  Cohomology groups are computed at level |G|, where the natural
// map from level-|G| classes onto the Q/Z classes is surjective; the
// denominator lattice is enlarged by the columns (B w)/|G| for w in the
// mod-|G| kernel of the lower coboundary matrix B, which is exactly the
// correction that identifies level classes that merge over Q/Z.

#include <cstdint>
#include <optional>
#include <vector>

#include "cochain.hpp"
#include "group.hpp"
#include "intmat.hpp"

namespace morita {

// Left coboundary (delta f)(g_0..g_d) = g_0 |> f(g_1..g_d)
//   + sum_i (-1)^i f(.., g_{i-1} g_i, ..) + (-1)^{d+1} f(g_0..g_{d-1}).
Cochain coboundary(const Cochain& f);

// Columns of the matrix of delta : C^deg -> C^{deg+1} over the normalized
// tuple basis; entries are structure constants in {-2..2}.
std::vector<std::vector<std::int64_t>> delta_columns(const FiniteGroup& G,
                                                     CoefModule mod,
                                                     int degree);

// True exactly when delta f equals the coordinatewise-constant lift of
// `scal` (a scalar cochain of degree f.degree() + 1 on the same group):
// (delta f)(gs)[x] == scal(gs) for every tuple and coordinate.  The
// comparison streams term by term, so neither side is ever materialized
// -- over a large coset space the full degree-(d+1) object would
// dominate memory.
bool coboundary_matches_lift(const Cochain& f, const Cochain& scal);

// Coboundary test with witness: a degree-(n-1) cochain c with delta c = f,
// if one exists over Q/Z.  The zero cochain short-circuits to the zero
// witness without touching a solver.  Solvers are cached per
// (group, module, degree, modulus) and reused across calls.
std::optional<Cochain> is_coboundary(const Cochain& f);
std::optional<Cochain> is_coboundary(const Cochain& f, std::int64_t modulus);

// Equality in cohomology; exact equality short-circuits.
bool class_equal(const Cochain& f, const Cochain& g);

struct CohomologyGroup {
  AbelianStructure structure;
  std::vector<Cochain> reps;   // one verified representative per factor
  std::optional<Cochain> zero; // the zero class, kept as a shape template
  std::int64_t level = 1;      // denominators of reps divide this
};

// H^degree(G, mod) with representatives; degree 1..3.
CohomologyGroup cohomology_group(const FiniteGroup& G, CoefModule mod,
                                 int degree);

// Every element of the computed group as an explicit cochain, in a fixed
// order (exponent vectors over the representatives, last factor fastest).
std::vector<Cochain> all_classes(const CohomologyGroup& H);

// ---------------------------------------------------------------------------
// Shapiro maps between H^*(G, Fun(H\G, Q/Z)) and H^*(H, Q/Z)
// ---------------------------------------------------------------------------

// Degree 1: (phi1(rho)(g))(x) = rho(kappa_{x,g}); rho is given by its
// values on H-local indices.  psi1 evaluates at the base coset.
Cochain shapiro_phi1(const CosetSpace& cs, const std::vector<QmodZ>& rho);
std::vector<QmodZ> shapiro_psi1(const Cochain& gamma);

// Degree 2: (phi(mu)(g1,g2))(x) = mu(kappa_{x,g1}, kappa_{x<|g1,g2}).
// mu lives on the abstract subgroup table Hgrp (local indices); psi
// restricts to H and evaluates at the base coset.  psi o phi = id exactly.
Cochain shapiro_phi(const CosetSpace& cs, const FiniteGroup& Hgrp,
                    const Cochain& mu);
Cochain shapiro_psi(const Cochain& gamma, const FiniteGroup& Hgrp);

// ---------------------------------------------------------------------------
// Actions on cochains
// ---------------------------------------------------------------------------

// (^x gamma)(..)(y) = gamma(..)(p(u(x) u(y))) for a stable coset x.
Cochain coset_translate(const Cochain& gamma, int x);

// mu^g(h_1,..) = mu(g h_1 g^{-1}, ..) on the subgroup table, for g
// normalizing H.
Cochain conjugate_cocycle(const Cochain& mu, const FiniteGroup& parent,
                          const Subgroup& H, int g);

// Classes in H (typically H^2 of the subgroup) whose class is fixed by
// conjugation by every section representative u(y); returns one cochain
// per invariant class in enumeration order.
std::vector<Cochain> invariant_classes(const CohomologyGroup& H2,
                                       const FiniteGroup& parent,
                                       const Subgroup& H,
                                       const CosetSpace& cs);

// Pullback along a homomorphism a : Gsrc -> Gtgt given as an image table;
// (a* f)(g_1,..) = f(a(g_1),..), trivial coefficients only.
Cochain pullback(const Cochain& f, const FiniteGroup& Gsrc,
                 const std::vector<int>& a);

// Test hygiene: drop all cached solvers.
void clear_cohomology_cache();

}  // namespace morita
