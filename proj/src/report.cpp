#include "loopdec/report.hpp"

#include <sstream>

namespace loopdec {

namespace {

nlohmann::json primes_json(const std::set<long long>& ps) {
    nlohmann::json out = nlohmann::json::array();
    for (long long p : ps)
        out.push_back(p);
    return out;
}

std::string primes_text(const std::set<long long>& ps) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (long long p : ps) {
        if (!first)
            os << ", ";
        os << p;
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

nlohmann::json to_json(const GradedGroup& g) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [deg, grp] : g.groups) {
        nlohmann::json entry;
        entry["rank"] = grp.rank;
        nlohmann::json tors = nlohmann::json::array();
        for (const auto& t : grp.torsion)
            tors.push_back({t.prime, t.exponent, t.multiplicity});
        entry["torsion"] = tors;
        out[std::to_string(deg)] = entry;
    }
    return out;
}

nlohmann::json to_json(const TruncatedSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.c)
        coeffs.push_back(c.str());
    return {{"cap", s.cap}, {"coefficients", coeffs}};
}

nlohmann::json to_json(const HypothesisEvidence& ev) {
    return {{"membership", render(ev.member)},
            {"inverted_primes", primes_json(ev.inverted)},
            {"bottom", ev.bottom},
            {"skeleton_class", render(ev.effective_class)},
            {"reasons", ev.reasons},
            {"citations", ev.rules}};
}

nlohmann::json to_json(const LocalizationPlan& plan) {
    return {{"inverted_primes", primes_json(plan.inverted)},
            {"bottom", plan.bottom},
            {"resulting_class", render(plan.resulting_class)},
            {"rule", plan.rule},
            {"notes", plan.notes}};
}

nlohmann::json to_json(const Decomposition& d) {
    return {{"bottom", d.bottom},
            {"A", render(d.a)},
            {"B", render(d.b)},
            {"fibre", render(d.fibre)},
            {"statement", d.statement},
            {"inverted_primes", primes_json(d.inverted)},
            {"skeleton_class", render(d.skeleton_class)},
            {"effective_skeleton", to_json(d.effective_skeleton)},
            {"evidence", to_json(d.evidence)},
            {"citations", d.rules}};
}

nlohmann::json to_json(const OneRelatorPresentation& pres) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : pres.generators)
        gens.push_back({{"degree", g.degree}, {"origin", g.origin}});
    return {{"field", render(pres.field)},
            {"generators", gens},
            {"relation_degree", pres.relation_degree},
            {"quadratic", pres.quadratic},
            {"relation_form", pres.relation_form},
            {"inverted_primes", primes_json(pres.inverted)},
            {"citations", pres.rules}};
}

nlohmann::json to_json(const CrossCheck& cc) {
    nlohmann::json out = {{"equal", cc.equal},
                          {"cap", cc.cap},
                          {"field", render(cc.field)},
                          {"via_decomposition", to_json(cc.via_decomposition)},
                          {"via_one_relator", to_json(cc.via_one_relator)}};
    if (cc.first_disagreement)
        out["first_disagreement"] = *cc.first_disagreement;
    return out;
}

nlohmann::json to_json(const ValidationReport& rep) {
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& i : rep.issues)
        issues.push_back({{"check", i.check}, {"detail", i.detail}});
    return {{"valid", rep.ok()}, {"issues", issues}};
}

nlohmann::json to_json(const ZkReport& rep) {
    nlohmann::json ledger = nlohmann::json::array();
    for (const auto& c : rep.skeleton.ledger)
        ledger.push_back(
            {{"subset", mask_vertices(c.subset)}, {"homology", to_json(c.shifted)}});
    nlohmann::json missing = nlohmann::json::array();
    for (std::uint32_t f : rep.missing_faces)
        missing.push_back(mask_vertices(f));
    nlohmann::json out = {{"name", rep.name},
                          {"sphere_dim", rep.sphere_dim},
                          {"zk_dimension", rep.zk_dimension},
                          {"connectivity", rep.connectivity},
                          {"neighbourliness", rep.neighbourly},
                          {"minimally_non_golod", rep.minimally_non_golod},
                          {"branch", rep.branch},
                          {"minimal_missing_faces", missing},
                          {"sphere_check",
                           {{"ok", rep.sphere.ok}, {"failures", rep.sphere.failures}}},
                          {"skeleton", to_json(rep.skeleton.homology)},
                          {"ledger", ledger}};
    if (rep.decomposition)
        out["decomposition"] = to_json(*rep.decomposition);
    return out;
}

std::string render_text(const PDComplex& m) {
    std::ostringstream os;
    os << m.name << ": dimension " << m.dim << ", " << (m.conn - 1) << "-connected\n";
    for (const auto& [deg, grp] : m.homology.groups)
        os << "  H_" << deg << " = " << render(grp) << "\n";
    os << "  skeleton: " << render(m.flags.skeleton)
       << ", bottom-cell retract: " << render(m.flags.bottom_cell_retract)
       << ", cup square zero: " << render(m.flags.cup_square_zero) << "\n";
    return os.str();
}

std::string render_text(const HypothesisEvidence& ev) {
    std::ostringstream os;
    os << "membership: " << render(ev.member);
    if (!ev.inverted.empty())
        os << " after inverting " << primes_text(ev.inverted);
    os << "\n";
    for (const auto& r : ev.reasons)
        os << "  - " << r << "\n";
    if (!ev.rules.empty()) {
        os << "  citations:";
        for (const auto& r : ev.rules)
            os << " " << r;
        os << "\n";
    }
    return os.str();
}

std::string render_text(const LocalizationPlan& plan) {
    std::ostringstream os;
    os << "invert " << primes_text(plan.inverted) << "; bottom sphere S^" << plan.bottom
       << "; skeleton class " << render(plan.resulting_class) << " [" << plan.rule << "]\n";
    for (const auto& n : plan.notes)
        os << "  - " << n << "\n";
    return os.str();
}

std::string render_text(const Decomposition& d) {
    std::ostringstream os;
    os << d.statement << "\n";
    os << "  A = " << render(d.a) << "\n";
    os << "  B = " << render(d.b) << "\n";
    os << "  fibre = " << render(d.fibre) << "\n";
    if (d.inverted.empty())
        os << "  integral\n";
    else
        os << "  localized away from " << primes_text(d.inverted) << "\n";
    os << "  citations:";
    for (const auto& r : d.rules)
        os << " " << r;
    os << "\n";
    return os.str();
}

std::string render_text(const OneRelatorPresentation& pres) {
    std::ostringstream os;
    os << "one-relator presentation over " << render(pres.field) << "\n";
    os << "  generators:";
    for (const auto& g : pres.generators)
        os << " (" << g.degree << " from " << g.origin << ")";
    os << "\n";
    os << "  relation degree " << pres.relation_degree << (pres.quadratic ? " (quadratic)" : "")
       << "\n";
    os << "  " << pres.relation_form << "\n";
    if (!pres.inverted.empty())
        os << "  localized away from " << primes_text(pres.inverted) << "\n";
    os << "  citations:";
    for (const auto& r : pres.rules)
        os << " " << r;
    os << "\n";
    return os.str();
}

std::string render_text(const CrossCheck& cc) {
    std::ostringstream os;
    os << "via decomposition: " << render(cc.via_decomposition) << "\n";
    os << "via one-relator:   " << render(cc.via_one_relator) << "\n";
    if (cc.equal)
        os << "cross-check: equal through degree " << cc.cap << "\n";
    else
        os << "cross-check: FIRST DISAGREEMENT at degree " << *cc.first_disagreement << "\n";
    return os.str();
}

std::string render_text(const ZkReport& rep) {
    std::ostringstream os;
    os << rep.name << ": moment-angle manifold of an asserted S^" << rep.sphere_dim
       << " triangulation\n";
    os << "  dimension " << rep.zk_dimension << ", " << rep.connectivity << "-connected, "
       << rep.neighbourly << "-neighbourly, branch " << rep.branch << "\n";
    os << "  minimal missing faces:";
    for (std::uint32_t f : rep.missing_faces) {
        os << " {";
        bool first = true;
        for (int v : mask_vertices(f)) {
            if (!first)
                os << ",";
            os << v;
            first = false;
        }
        os << "}";
    }
    os << "\n";
    os << "  skeleton homology: " << render(rep.skeleton.homology) << " ("
       << rep.skeleton.ledger.size() << " contributing subsets)\n";
    os << render_text(rep.complex);
    if (rep.decomposition)
        os << render_text(*rep.decomposition);
    return os.str();
}

} // namespace loopdec
