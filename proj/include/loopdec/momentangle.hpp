#pragma once

#include "loopdec/algebra.hpp"
#include "loopdec/decompose.hpp"
#include "loopdec/pdcomplex.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace loopdec {

/// Abstract simplicial complex on vertices 1..vertices, stored as facet
/// bitmasks (bit i-1 = vertex i).  Assertions carry user-supplied geometric
/// facts the combinatorics cannot verify ("sphere:3", "minimally_non_Golod").
struct SimplicialComplex {
    std::string name;
    int vertices = 0;
    std::vector<std::uint32_t> facets;
    std::vector<std::string> assertions;
};

/// Validates vertex range, facet non-containment and vertex coverage.
SimplicialComplex make_complex(std::string name, int vertices,
                               const std::vector<std::vector<int>>& facets,
                               std::vector<std::string> assertions = {});

std::vector<int> mask_vertices(std::uint32_t mask);
std::uint32_t full_mask(int vertices);

int dimension(const SimplicialComplex& k);
bool is_face(const SimplicialComplex& k, std::uint32_t mask);

/// Join: every facet is a union of one facet from each factor (vertices of
/// the second factor relabelled upward).
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex cycle_complex(int n);
SimplicialComplex simplex_boundary(int n); // boundary of the n-simplex

/// Every (k+1)-subset of the vertices spans a face.
bool is_k_neighbourly(const SimplicialComplex& k, int deg);
/// Largest k such that is_k_neighbourly holds.
int neighbourliness(const SimplicialComplex& k);

/// Inclusion-minimal non-faces, ascending by (size, mask).
std::vector<std::uint32_t> minimal_missing_faces(const SimplicialComplex& k);

/// Reduced simplicial homology over Z of the full subcomplex on I.
GradedGroup subcomplex_homology(const SimplicialComplex& k, std::uint32_t I);

struct SphereCheck {
    bool ok = false;
    int dim = 0;
    std::vector<std::string> failures;
};

/// Necessary conditions for |K| = S^n: pure, every ridge in exactly two
/// facets, connected facet graph, reduced homology of S^n.  Passing is not a
/// proof; callers must still carry the sphere assertion.
SphereCheck sphere_check(const SimplicialComplex& k, int n);

struct ZkContribution {
    std::uint32_t subset = 0;
    GradedGroup shifted; // reduced homology of K_I shifted up 1+|I|
};

struct ZkSkeleton {
    GradedGroup homology;
    std::vector<ZkContribution> ledger; // ascending by (size, mask)
};

struct ZkOptions {
    bool parallel = true;
    int max_vertices = 20; // subset enumeration budget
};

/// Reduced homology of the punctured moment-angle manifold via the wedge
/// formula: sum over non-faces I (I != full set) of H(K_I) shifted by 1+|I|.
/// Citation: punctured-moment-angle-wedge.
ZkSkeleton zk_skeleton(const SimplicialComplex& k, const ZkOptions& opts = {});
ZkSkeleton zk_skeleton_serial(const SimplicialComplex& k, int max_vertices = 20);

struct ZkReport {
    std::string name;
    int sphere_dim = 0;  // asserted n with |K| = S^n
    int zk_dimension = 0;
    int connectivity = 0; // 2k+2
    int neighbourly = 0;  // max k
    bool minimally_non_golod = false;
    std::vector<std::uint32_t> missing_faces;
    SphereCheck sphere;
    ZkSkeleton skeleton;
    PDComplex complex;
    std::string branch; // "integral-neighbourly" or "local-non-golod"
    std::optional<Decomposition> decomposition;
};

/// Builds the moment-angle PD complex from an asserted sphere triangulation;
/// with decompose = true also runs the loop-space decomposition.  Branch (a):
/// neighbourly odd sphere, integral.  Branch (b): asserted minimally
/// non-Golod, localized away from homology torsion and small primes.
ZkReport zk_decompose(const SimplicialComplex& k, bool decompose = true,
                      const ZkOptions& opts = {});

} // namespace loopdec
