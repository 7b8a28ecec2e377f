#pragma once
// Skeletal pointed categories: a finite group together with a normalized
// 3-cocycle (the associator), their equivalence test, and the module
// categories M(H, mu) living over them.
//
// Equivalence of (G1, omega1) and (G2, omega2) means a group isomorphism
// a with omega1 pulled back along a cohomologous to omega2.  A module
// category over (G, omega) is a subgroup H together with mu in
// C^2(G, Fun(H\G, Q/Z)) satisfying delta mu = omega (omega read as a
// constant function of the coset); the classes of such mu for fixed H are
// in bijection with H^2(H, Q/Z).

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "cohomology.hpp"

namespace morita {

struct PointedCategory {
  std::shared_ptr<const FiniteGroup> group;
  Cochain omega;  // degree 3, trivial coefficients, on *group

  int fpdim() const { return group->order(); }
};

struct PentagonReport {
  bool ok = true;
  std::array<int, 4> violation{};  // first failing quadruple when !ok
  QmodZ defect;                    // value of the cocycle condition there
};

// The 3-cocycle condition, reported with the first failing quadruple.
// Exhaustive through order 32; above that the quadruples are drawn from a
// fixed pseudorandom sample (the downstream construction cross-checks
// would surface a miss).
PentagonReport check_pentagon(const Cochain& omega);

// Validating constructor: omega must be a normalized 3-cocycle with
// trivial coefficients living on *G.
PointedCategory make_pointed(std::shared_ptr<const FiniteGroup> G,
                             Cochain omega);

// A group isomorphism a : C2.group -> C1.group (as an image table) under
// which the two associators agree up to coboundary, or nullopt once the
// isomorphism search is exhausted.  Throws the budget error if the search
// hits iso_budget without settling the question.
std::optional<std::vector<int>> pointed_equivalent(const PointedCategory& C1,
                                                   const PointedCategory& C2,
                                                   std::int64_t iso_budget =
                                                       20000);

// A cochain constant in the coset coordinate with the values of f.
Cochain lift_constant(const Cochain& f, const CosetSpace& cs);

// mu with delta mu = omega over the coset space of H, or nullopt when
// omega restricted to H is cohomologically nontrivial.  The direct solve
// and the restriction criterion are computed independently and must
// agree; a mismatch is an internal error.
std::optional<Cochain> solve_module_structure(const PointedCategory& parent,
                                              const CosetSpace& cs);

struct ModuleCategoryData {
  std::shared_ptr<const CosetSpace> cs;  // owns the coset geometry of mu
  Cochain mu;                            // degree 2, coinduced over *cs

  const Subgroup& subgroup() const { return cs->subgroup(); }
};

// Validating constructor: checks delta mu = omega exactly.
ModuleCategoryData make_module_data(const PointedCategory& parent,
                                    std::shared_ptr<const CosetSpace> cs,
                                    Cochain mu);

struct ModuleClassCatalog {
  std::vector<ModuleCategoryData> reps;  // one per class, first is mu0
};

// All module-category structures on H up to equivalence: mu0 + phi(nu)
// for nu ranging over H^2(H, Q/Z).  Representatives are verified pairwise
// inequivalent.  Throws the invalid error when the structure is
// obstructed.
ModuleClassCatalog module_class_catalog(const PointedCategory& parent,
                                        std::shared_ptr<const CosetSpace> cs);

}  // namespace morita
