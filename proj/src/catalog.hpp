#pragma once
// A named catalog of small groups: every isomorphism type of order <= 16
// and a spread of groups up to order 24.  The catalog is the canonical
// input set for the exhaustive sweeps (self-equivalence, abelian
// rigidity, the oracle sweep) and backs the CLI's name shorthand.

#include <string>
#include <vector>

#include "group.hpp"

namespace morita {

struct CatalogEntry {
  std::string name;
  GroupSpec spec;
};

// Entries sorted by (order, name); names are unique.  Orders 1..16 are
// complete up to isomorphism (1,1,1,2,1,2,1,5,2,2,1,5,1,2,1,14 types);
// orders 18..24 carry a representative spread.
const std::vector<CatalogEntry>& group_catalog();

// Lookup by name; throws the invalid error for unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

// Spec builders shared by the catalog, the tests, and the CLI parser.
GroupSpec spec_cyclic(int n);
GroupSpec spec_product(std::vector<GroupSpec> factors);
GroupSpec spec_semidirect(GroupSpec normal, GroupSpec acting,
                          std::vector<std::vector<int>> action);
GroupSpec spec_dihedral(int m);   // order 2m
GroupSpec spec_dicyclic(int m);   // order 4m: <a,b | a^2m, b^2 = a^m, bab^-1 = a^-1>

}  // namespace morita
