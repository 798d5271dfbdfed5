#include "loopdec/decompose.hpp"

#include "loopdec/errors.hpp"
#include "loopdec/localize.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i)
        out += (i ? "; " : "") + parts[i];
    return out;
}

void check_field(const Field& f, const std::set<long long>& inverted) {
    if (f.rational() || !inverted.count(f.p))
        return;
    std::ostringstream os;
    os << "coefficients " << render(f)
       << " incompatible with localization away from {";
    bool first = true;
    for (long long p : inverted) {
        if (!first)
            os << ", ";
        os << p;
        first = false;
    }
    os << "}";
    throw hypothesis_error("coefficient field", os.str());
}

void push_rule(std::vector<std::string>& rules, const std::string& r) {
    if (std::find(rules.begin(), rules.end(), r) == rules.end())
        rules.push_back(r);
}

} // namespace

Decomposition decompose_with_evidence(const PDComplex& M, const HypothesisEvidence& ev) {
    if (ev.member == Membership::No)
        throw hypothesis_error("decomposition hypotheses", join(ev.reasons));

    Decomposition d;
    d.evidence = ev;
    d.inverted = ev.inverted;
    d.skeleton_class = ev.effective_class;
    d.bottom = ev.bottom;
    d.rules = ev.rules;

    // a bare co-H skeleton is not enumerable; upgrade to a wedge class
    if (d.skeleton_class != SkeletonClass::WedgeSpheres &&
        d.skeleton_class != SkeletonClass::WedgeSpheresMoore) {
        std::vector<std::string> why;
        auto plan = skeleton_class_plan(M, &why);
        if (!plan)
            throw hypothesis_error("enumerable skeleton", join(why));
        d.inverted.insert(plan->inverted.begin(), plan->inverted.end());
        d.skeleton_class = plan->resulting_class;
        push_rule(d.rules, plan->rule);
    }

    const int n = M.dim;
    const int k = d.bottom;
    GradedGroup eff = localized_homology(skeleton(M).homology, d.inverted);
    d.effective_skeleton = eff;

    for (int deg : eff.support())
        if (deg < k)
            throw std::logic_error("localization plan left homology below the bottom degree");

    long long dk = eff.rank_at(k);
    if (dk < 1)
        throw std::logic_error("no Z summand at the planned bottom degree");
    if (k == n - k) {
        if (dk < 2)
            throw hypothesis_error("second bottom class",
                                   "the diagonal case m = n-m needs two Z summands in degree " +
                                       std::to_string(k));
        if (k % 2 == 0 && M.flags.cup_square_zero != Flag::Yes)
            throw hypothesis_error("cup-square witness",
                                   "the diagonal case with even m needs an asserted x^2 = 0 class");
        push_rule(d.rules, "diagonal-wedge-rule");
    }

    GradedGroup ga;
    ga.add_rank(k, dk - 1);
    for (int i = k + 1; i <= n - k; ++i)
        ga.add_rank(i, eff.rank_at(i));
    for (int i = k; i <= n - k - 1; ++i)
        for (const auto& t : eff.torsion_at(i))
            ga.add_torsion(i, t.prime, t.exponent, t.multiplicity);
    ga.canonicalize();

    // everything in the skeleton is accounted for: one S^k plus A
    {
        GradedGroup recombined = ga;
        recombined.add_rank(k, 1);
        recombined.canonicalize();
        if (!(recombined == eff))
            throw std::logic_error("wedge enumeration dropped part of the skeleton homology");
    }

    GradedGroup gb = ga;
    gb.add_rank(n - k, -1);
    gb.canonicalize();

    d.a = expr_from_homology(ga);
    d.b = expr_from_homology(gb);
    d.fibre = normalize(SpaceExpr::wedge(
        {d.a, SpaceExpr::smash(d.b, SpaceExpr::loop_sphere(k))}));

    push_rule(d.rules, "loop-space-splitting");
    push_rule(d.rules, "wedge-enumeration");
    if (!d.inverted.empty())
        push_rule(d.rules, "localized-splitting");

    std::ostringstream os;
    os << "Ω(" << M.name << ") ≃ ΩS^" << k << " × Ω(" << render(d.fibre) << ")";
    d.statement = os.str();
    return d;
}

Decomposition decompose(const PDComplex& M) {
    return decompose_with_evidence(M, class_a_evidence(M));
}

std::pair<SpaceExpr, SpaceExpr> compute_AB(const PDComplex& M) {
    auto d = decompose(M);
    return {d.a, d.b};
}

namespace {

IntPoly skeleton_generator_poly(const GradedGroup& eff, const Field& f) {
    std::map<int, long long> shifted;
    for (auto& [deg, dim] : field_reduce(eff, f)) {
        if (dim == 0)
            continue;
        if (deg < 1)
            throw std::logic_error("skeleton dimension in degree < 1");
        shifted[deg - 1] = dim;
    }
    return IntPoly::from_dims(shifted);
}

TruncatedSeries one_relator_series_impl(const PDComplex& M, const std::set<long long>& inverted,
                                        const Field& f, int cap) {
    check_field(f, inverted);
    GradedGroup eff = localized_homology(skeleton(M).homology, inverted);
    IntPoly w = skeleton_generator_poly(eff, f);
    IntPoly den = IntPoly::one() - w + IntPoly::monomial(1, M.dim - 2);
    return series_expand(make_rational(IntPoly::one(), den), cap);
}

} // namespace

OneRelatorPresentation one_relator(const PDComplex& M, const Field& f) {
    auto ev = class_a_evidence(M);
    if (ev.member == Membership::No)
        throw hypothesis_error("decomposition hypotheses", join(ev.reasons));
    check_field(f, ev.inverted);

    OneRelatorPresentation pres;
    pres.field = f;
    pres.inverted = ev.inverted;
    pres.relation_degree = M.dim - 2;
    pres.quadratic = f.rational() && M.dim <= 3 * M.conn - 2;
    pres.rules = {"inert-top-cell", "one-relator-presentation"};
    for (const auto& r : ev.rules)
        push_rule(pres.rules, r);
    if (pres.quadratic)
        push_rule(pres.rules, "quadratic-relation-range");

    GradedGroup eff = localized_homology(skeleton(M).homology, ev.inverted);
    for (const auto& [deg, grp] : eff.groups) {
        for (long long i = 0; i < grp.rank; ++i)
            pres.generators.push_back({deg - 1, "S^" + std::to_string(deg)});
        if (!f.rational()) {
            for (const auto& t : grp.torsion) {
                if (t.prime != f.p)
                    continue;
                std::string moore = "P^" + std::to_string(deg + 1) + "(" +
                                    std::to_string(t.prime) + "^" + std::to_string(t.exponent) +
                                    ")";
                for (long long i = 0; i < t.multiplicity; ++i) {
                    pres.generators.push_back({deg - 1, moore + " bottom"});
                    pres.generators.push_back({deg, moore + " top"});
                }
            }
        }
    }
    std::sort(pres.generators.begin(), pres.generators.end(), [](const auto& a, const auto& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.origin < b.origin;
    });

    if (ev.effective_class == SkeletonClass::WedgeSpheres && M.dim <= 3 * M.conn - 1) {
        pres.relation_form = "sum of monomials in the generators (coefficients not computed)";
        push_rule(pres.rules, "monomial-relation");
    } else {
        pres.relation_form = "single relation in degree " + std::to_string(M.dim - 2) +
                             " (coefficients not computed)";
    }
    return pres;
}

TruncatedSeries loop_series_decomposition(const Decomposition& d, const Field& f, int cap) {
    check_field(f, d.inverted);
    RationalFn base = make_rational(
        IntPoly::one(), IntPoly::one() - IntPoly::monomial(1, d.bottom - 1));
    RationalFn fibre = loop_series_rational(d.fibre, f);
    return series_expand(base * fibre, cap);
}

TruncatedSeries loop_series_one_relator(const PDComplex& M, const Field& f, int cap) {
    auto ev = class_a_evidence(M);
    if (ev.member == Membership::No)
        throw hypothesis_error("decomposition hypotheses", join(ev.reasons));
    return one_relator_series_impl(M, ev.inverted, f, cap);
}

CrossCheck cross_check(const PDComplex& M, const Field& f, int cap) {
    auto d = decompose(M);
    CrossCheck cc;
    cc.cap = cap;
    cc.field = f;
    cc.via_decomposition = loop_series_decomposition(d, f, cap);
    // the one-relator route must run under the same localization to compare
    cc.via_one_relator = one_relator_series_impl(M, d.inverted, f, cap);
    cc.equal = true;
    for (int i = 0; i <= cap; ++i) {
        if (cc.via_decomposition.at(i) != cc.via_one_relator.at(i)) {
            cc.equal = false;
            cc.first_disagreement = i;
            break;
        }
    }
    return cc;
}

} // namespace loopdec
