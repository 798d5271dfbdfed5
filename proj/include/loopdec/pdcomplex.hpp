#pragma once

#include "loopdec/algebra.hpp"
#include "loopdec/spacexpr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace loopdec {

enum class SkeletonClass { WedgeSpheres, WedgeSpheresMoore, CoH, Unknown };
enum class Flag { Yes, No, Unknown };

std::string render(SkeletonClass c);
std::string render(Flag f);

/// Asserted structure of a complex: homotopy class of the skeleton (the
/// complex minus its top cell), existence of a left inverse for the bottom
/// sphere inclusion, and a vanishing cup square for a bottom cohomology class.
struct PDFlags {
    SkeletonClass skeleton = SkeletonClass::Unknown;
    Flag bottom_cell_retract = Flag::Unknown;
    Flag cup_square_zero = Flag::Unknown;

    bool operator==(const PDFlags&) const = default;
};

/// An (conn-1)-connected Poincare duality complex of dimension dim, described
/// by its reduced integral homology in degrees conn..dim (top class stored).
struct PDComplex {
    std::string name;
    int dim = 0;  // n >= 3
    int conn = 0; // m, 2 <= m < n
    GradedGroup homology;
    PDFlags flags;
    std::vector<std::string> provenance;
};

/// Canonical constructor: inserts the top class if absent, canonicalizes,
/// and rejects out-of-range degrees (input_error).
PDComplex make_pd(std::string name, int dim, int conn, GradedGroup homology, PDFlags flags,
                  std::vector<std::string> provenance);

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Structural duality checks: top class Z, rank symmetry d_i = d_(n-i),
/// torsion symmetry T_i = T_(n-1-i), degree ranges, flag consistency.
/// Never throws.
ValidationReport validate(const PDComplex& M);

/// Throws hypothesis_error listing every failed check.
void require_valid(const PDComplex& M);

struct SkeletonModel {
    GradedGroup homology; // degrees conn..dim-1
    SkeletonClass cls = SkeletonClass::Unknown;
    std::optional<SpaceExpr> expr; // present for the wedge classes
};

/// The complex minus its top cell.
SkeletonModel skeleton(const PDComplex& M);

/// Least k < dim with a Z summand in H_k; throws hypothesis_error for
/// homotopy-sphere-like inputs (no Z summand below the top degree).
int bottom_degree(const PDComplex& M);

/// Homology with p-torsion removed for every p in the inverted set.
GradedGroup localized_homology(const GradedGroup& g, const std::set<long long>& inverted);

} // namespace loopdec
