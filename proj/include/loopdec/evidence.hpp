#pragma once

#include "loopdec/localize.hpp"
#include "loopdec/pdcomplex.hpp"

#include <set>
#include <string>
#include <vector>

namespace loopdec {

enum class Membership { Yes, Conditional, No };

std::string render(Membership m);

/// Verdict on whether the decomposition hypotheses hold: integrally (Yes),
/// after inverting a finite prime set (Conditional), or not derivably (No).
struct HypothesisEvidence {
    Membership member = Membership::No;
    std::set<long long> inverted; // nonempty only for Conditional
    int bottom = 0;               // degree of the retracting bottom sphere
    SkeletonClass effective_class = SkeletonClass::Unknown;
    std::vector<std::string> reasons;
    std::vector<std::string> rules;
};

/// Decides membership from the asserted flags, upgrading missing hypotheses
/// with localization plans where the ranges allow.  Expects a validated
/// complex (throws hypothesis_error otherwise).
HypothesisEvidence class_a_evidence(const PDComplex& M);

} // namespace loopdec
