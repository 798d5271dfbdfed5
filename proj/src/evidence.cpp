#include "loopdec/evidence.hpp"

#include "loopdec/errors.hpp"

namespace loopdec {

std::string render(Membership m) {
    switch (m) {
    case Membership::Yes: return "yes";
    case Membership::Conditional: return "conditional";
    default: return "no";
    }
}

HypothesisEvidence class_a_evidence(const PDComplex& M) {
    require_valid(M);

    HypothesisEvidence ev;
    bool co_h = M.flags.skeleton != SkeletonClass::Unknown;
    bool retract = M.flags.bottom_cell_retract == Flag::Yes && M.homology.rank_at(M.conn) >= 1;

    if (co_h && retract) {
        ev.member = Membership::Yes;
        ev.bottom = M.conn;
        ev.effective_class = M.flags.skeleton;
        ev.reasons.push_back("skeleton class asserted: " + render(M.flags.skeleton));
        ev.reasons.push_back("bottom-cell retraction asserted with a Z summand in degree " +
                             std::to_string(M.conn));
        ev.rules.push_back("asserted-structure");
        return ev;
    }

    if (co_h && !retract) {
        std::vector<std::string> sub;
        // only the retraction is missing
        auto plan = [&]() -> std::optional<LocalizationPlan> {
            try {
                return retraction_primes(M);
            } catch (const hypothesis_error& e) {
                sub.push_back(e.what());
                return std::nullopt;
            }
        }();
        if (plan) {
            ev.member = Membership::Conditional;
            ev.inverted = plan->inverted;
            ev.bottom = plan->bottom;
            ev.effective_class = M.flags.skeleton;
            ev.reasons.push_back("skeleton class asserted: " + render(M.flags.skeleton));
            ev.reasons.push_back("bottom-cell retraction recovered by localization");
            ev.rules.push_back(plan->rule);
            for (const auto& note : plan->notes)
                ev.reasons.push_back(note);
            return ev;
        }
        ev.member = Membership::No;
        ev.reasons.push_back("bottom-cell retraction not asserted and no localization recovers it");
        for (auto& s : sub)
            ev.reasons.push_back(std::move(s));
        return ev;
    }

    if (!co_h && retract) {
        std::vector<std::string> why;
        auto plan = skeleton_class_plan(M, &why);
        if (plan) {
            ev.member = Membership::Conditional;
            ev.inverted = plan->inverted;
            ev.bottom = M.conn;
            ev.effective_class = plan->resulting_class;
            ev.reasons.push_back("bottom-cell retraction asserted with a Z summand in degree " +
                                 std::to_string(M.conn));
            ev.reasons.push_back("skeleton class recovered by localization: " +
                                 render(plan->resulting_class));
            ev.rules.push_back(plan->rule);
            for (const auto& note : plan->notes)
                ev.reasons.push_back(note);
            return ev;
        }
        ev.member = Membership::No;
        ev.reasons.push_back("skeleton class unknown and no localization recovers it");
        for (auto& s : why)
            ev.reasons.push_back(std::move(s));
        return ev;
    }

    // both hypotheses missing
    std::vector<std::string> why;
    auto plan = full_plan(M, why);
    if (plan) {
        ev.member = Membership::Conditional;
        ev.inverted = plan->inverted;
        ev.bottom = plan->bottom;
        ev.effective_class = plan->resulting_class;
        ev.reasons.push_back("both hypotheses recovered by localization");
        ev.rules.push_back(plan->rule);
        for (const auto& note : plan->notes)
            ev.reasons.push_back(note);
        return ev;
    }
    ev.member = Membership::No;
    ev.reasons.push_back("skeleton class unknown and bottom-cell retraction not asserted");
    for (auto& s : why)
        ev.reasons.push_back(std::move(s));
    return ev;
}

} // namespace loopdec
