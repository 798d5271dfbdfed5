#pragma once

#include "loopdec/evidence.hpp"
#include "loopdec/pdcomplex.hpp"
#include "loopdec/spacexpr.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopdec {

/// The splitting  Omega M ~ Omega S^bottom x Omega(A v (B ^ Omega S^bottom)).
struct Decomposition {
    int bottom = 0;
    SpaceExpr a = SpaceExpr::point();
    SpaceExpr b = SpaceExpr::point();
    SpaceExpr fibre = SpaceExpr::point();
    std::set<long long> inverted; // empty for integral results
    SkeletonClass skeleton_class = SkeletonClass::Unknown;
    GradedGroup effective_skeleton; // skeleton homology after localization
    std::string statement;
    std::vector<std::string> rules;
    HypothesisEvidence evidence;
};

/// Full pipeline: evidence, localization upgrades, wedge enumeration.
/// Throws hypothesis_error naming the first failed hypothesis.
Decomposition decompose(const PDComplex& M);

/// Enumeration given an externally justified plan (used by the moment-angle
/// route, which certifies hypotheses by its own rules).
Decomposition decompose_with_evidence(const PDComplex& M, const HypothesisEvidence& ev);

/// Just the two wedge summands of decompose(M).
std::pair<SpaceExpr, SpaceExpr> compute_AB(const PDComplex& M);

struct Generator {
    int degree = 0;     // degree of the loop-homology generator
    std::string origin; // which skeleton summand it comes from
};

struct OneRelatorPresentation {
    std::vector<Generator> generators; // sorted by (degree, origin)
    int relation_degree = 0;           // dim - 2
    bool quadratic = false;
    Field field = Field::Q();
    std::set<long long> inverted;
    std::string relation_form;
    std::vector<std::string> rules;
};

/// Loop homology of M as a one-relator algebra over the field: generators
/// are the field dimensions of the skeleton shifted down one degree, one
/// relation in degree dim-2.  Coefficients of the relation are not computed.
OneRelatorPresentation one_relator(const PDComplex& M, const Field& f);

/// Hilbert series of H_*(Omega M; field) via the splitting.
TruncatedSeries loop_series_decomposition(const Decomposition& d, const Field& f, int cap);

/// Hilbert series via the one-relator presentation:
/// 1/(1 - W(t) + t^(dim-2)) with W the skeleton series shifted down once.
TruncatedSeries loop_series_one_relator(const PDComplex& M, const Field& f, int cap);

struct CrossCheck {
    bool equal = false;
    int cap = 0;
    Field field = Field::Q();
    std::optional<int> first_disagreement;
    TruncatedSeries via_decomposition;
    TruncatedSeries via_one_relator;
};

/// Runs both series routes under the same localization and compares them
/// coefficientwise through the cap.
CrossCheck cross_check(const PDComplex& M, const Field& f, int cap);

} // namespace loopdec
