#include "loopdec/localize.hpp"

#include "loopdec/errors.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

std::vector<long long> primes_up_to(long long bound) {
    std::vector<long long> out;
    if (bound < 2)
        return out;
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    for (long long i = 2; i <= bound; ++i) {
        if (!sieve[static_cast<size_t>(i)])
            continue;
        out.push_back(i);
        for (long long j = i * i; j <= bound; j += i)
            sieve[static_cast<size_t>(j)] = false;
    }
    return out;
}

bool sphere_torsion_free(int k, int m, long long p) {
    return k < m + 2 * p - 3;
}

bool moore_trivial(int k, int m, long long p, int /*r*/) {
    if (m < 3 || k < m + 1 || k > 2 * m - 2)
        return false;
    return 2 * p > k - m + 3;
}

bool sphere_coeff_trivial(int k, int m, long long p, int /*r*/) {
    if (m < 3 || k < m + 1 || k > 2 * m - 2)
        return false;
    return 2 * p > k - m + 3;
}

bool moore_coeff_trivial(int k, int m, long long p, int /*r*/, long long q, int /*s*/) {
    if (m < 3 || k < m + 2 || k > 2 * m - 2)
        return false;
    if (p != q)
        return true;
    return 2 * p > k - m + 3;
}

namespace {

std::set<long long> primes_below_threshold(long long twice_threshold) {
    // threshold given as 2x to avoid fractions; p <= floor(twice_threshold/2)
    std::set<long long> out;
    for (long long p : primes_up_to(twice_threshold / 2))
        out.insert(p);
    return out;
}

std::string render_primes(const std::set<long long>& ps) {
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

std::optional<LocalizationPlan> skeleton_class_plan(const PDComplex& M,
                                                    std::vector<std::string>* why_not) {
    int m = M.conn;
    int n = M.dim;
    int d = n - m; // skeleton dimension, by duality

    if (m >= 3 && d <= 2 * m - 2) {
        LocalizationPlan plan;
        plan.inverted = primes_below_threshold(d - m + 3);
        plan.bottom = m;
        plan.resulting_class = SkeletonClass::WedgeSpheresMoore;
        plan.rule = "local-moore-skeleton";
        plan.notes.push_back("skeleton dimension " + std::to_string(d) +
                             " <= 2m-2 = " + std::to_string(2 * m - 2) +
                             "; inverting p <= (d-m+3)/2, torsion kept");
        return plan;
    }
    if (d <= 2 * m - 1) {
        LocalizationPlan plan;
        plan.inverted = primes_below_threshold(d - m + 3);
        for (long long p : torsion_primes(M.homology, m, n - 1))
            plan.inverted.insert(p);
        plan.bottom = m;
        plan.resulting_class = SkeletonClass::WedgeSpheres;
        plan.rule = "local-sphere-skeleton";
        plan.notes.push_back("skeleton dimension " + std::to_string(d) +
                             " <= 2m-1 = " + std::to_string(2 * m - 1) +
                             "; inverting torsion primes and p <= (d-m+3)/2");
        return plan;
    }
    if (why_not)
        why_not->push_back("skeleton dimension n-m = " + std::to_string(d) + " exceeds 2m-1 = " +
                           std::to_string(2 * m - 1));
    return std::nullopt;
}

namespace {

// Shared core for retraction_primes; reports failures instead of throwing.
std::optional<LocalizationPlan> retraction_plan(const PDComplex& M,
                                                std::vector<std::string>* reasons) {
    int n = M.dim;
    int k;
    try {
        k = bottom_degree(M);
    } catch (const hypothesis_error& e) {
        if (reasons)
            reasons->push_back(e.what());
        return std::nullopt;
    }
    bool even = k % 2 == 0;
    if (even && M.flags.cup_square_zero != Flag::Yes) {
        if (reasons)
            reasons->push_back("bottom degree k = " + std::to_string(k) +
                               " is even and the cup-square witness (x^2 = 0) is not asserted");
        return std::nullopt;
    }
    LocalizationPlan plan;
    plan.inverted = primes_below_threshold(even ? n - k + 4 : n - k + 3);
    for (long long p : torsion_primes(M.homology, 0, k - 1))
        plan.inverted.insert(p);
    plan.bottom = k;
    plan.resulting_class = M.flags.skeleton;
    plan.rule = "local-bottom-retraction";
    plan.notes.push_back("bottom Z summand in degree " + std::to_string(k) +
                         (even ? " (even; cup-square witness used)" : " (odd)") +
                         "; inverting torsion primes below k and p <= (n-k+" +
                         (even ? "4" : "3") + ")/2");
    return plan;
}

} // namespace

LocalizationPlan retraction_primes(const PDComplex& M) {
    std::vector<std::string> reasons;
    auto plan = retraction_plan(M, &reasons);
    if (!plan) {
        std::string msg;
        for (size_t i = 0; i < reasons.size(); ++i)
            msg += (i ? "; " : "") + reasons[i];
        throw hypothesis_error("bottom-cell retraction after localization", msg);
    }
    return *plan;
}

std::optional<LocalizationPlan> full_plan(const PDComplex& M, std::vector<std::string>& reasons) {
    int m = M.conn;
    int n = M.dim;

    int k;
    try {
        k = bottom_degree(M);
    } catch (const hypothesis_error& e) {
        reasons.push_back(e.what());
        return std::nullopt;
    }
    bool k_even = k % 2 == 0;
    bool witness = M.flags.cup_square_zero == Flag::Yes;
    if (k_even && !witness) {
        reasons.push_back("bottom degree k = " + std::to_string(k) +
                          " is even and the cup-square witness (x^2 = 0) is not asserted");
        return std::nullopt;
    }

    if (m >= 3 && m < n - m && n <= 3 * m - 2) {
        LocalizationPlan plan;
        plan.inverted = primes_below_threshold(n - k + 3);
        for (long long p : torsion_primes(M.homology, 0, k - 1))
            plan.inverted.insert(p);
        plan.bottom = k;
        plan.resulting_class = SkeletonClass::WedgeSpheresMoore;
        plan.rule = "local-moore-decomposition";
        plan.notes.push_back("range 3 <= m < n-m and n <= 3m-2 holds; torsion survives into "
                             "Moore factors; inverted " +
                             render_primes(plan.inverted));
        return plan;
    }

    if (n <= 3 * m - 1) {
        LocalizationPlan plan;
        plan.inverted = primes_below_threshold(k_even ? n - k + 4 : n - k + 3);
        for (long long p : torsion_primes(M.homology, 0, n - 1))
            plan.inverted.insert(p);
        plan.bottom = k;
        plan.resulting_class = SkeletonClass::WedgeSpheres;
        plan.rule = "local-sphere-decomposition";
        plan.notes.push_back("range n <= 3m-1 holds; all homology torsion inverted; inverted " +
                             render_primes(plan.inverted));
        return plan;
    }

    // fallback: combine a skeleton plan with a retraction plan
    std::vector<std::string> sub;
    auto sk = skeleton_class_plan(M, &sub);
    auto rp = retraction_plan(M, &sub);
    if (sk && rp) {
        LocalizationPlan plan;
        plan.inverted = sk->inverted;
        plan.inverted.insert(rp->inverted.begin(), rp->inverted.end());
        plan.bottom = rp->bottom;
        plan.resulting_class = sk->resulting_class;
        plan.rule = "localized-decomposition-bridge";
        plan.notes.push_back("combined " + sk->rule + " with " + rp->rule);
        for (const auto& note : sk->notes)
            plan.notes.push_back(note);
        for (const auto& note : rp->notes)
            plan.notes.push_back(note);
        return plan;
    }

    reasons.push_back("n <= 3m-2 fails (" + std::to_string(n) + " > " +
                      std::to_string(3 * m - 2) + ") or m < n-m fails");
    reasons.push_back("n <= 3m-1 fails (" + std::to_string(n) + " > " +
                      std::to_string(3 * m - 1) + ")");
    for (auto& r : sub)
        reasons.push_back(std::move(r));
    return std::nullopt;
}

} // namespace loopdec
