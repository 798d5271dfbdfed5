#pragma once

#include "loopdec/pdcomplex.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace loopdec {

/// Primes p <= bound, ascending.
std::vector<long long> primes_up_to(long long bound);

// Vanishing predicates for homotopy groups in a metastable range.  Each
// returns true when the group is guaranteed trivial (or torsion-free) by the
// cited rule; false means "no guarantee", not "nontrivial".

/// pi_k(S^m) has no p-torsion when k < m + 2p - 3.
/// Citation: first-torsion-bound.
bool sphere_torsion_free(int k, int m, long long p);

/// pi_k(P^(m+1)(p^r)) = 0 when m >= 3, m+1 <= k <= 2m-2 and p > (k-m+3)/2.
/// Citation: moore-group-vanishing.
bool moore_trivial(int k, int m, long long p, int r);

/// pi_k(S^m; Z/p^r) = 0 when m >= 3, m+1 <= k <= 2m-2 and p > (k-m+3)/2.
/// Citation: sphere-coefficient-vanishing.
bool sphere_coeff_trivial(int k, int m, long long p, int r);

/// pi_k(P^(m+1)(p^r); Z/q^s) = 0 when m >= 3, m+2 <= k <= 2m-2 and either
/// q != p, or q = p > (k-m+3)/2.  Citation: moore-coefficient-vanishing.
bool moore_coeff_trivial(int k, int m, long long p, int r, long long q, int s);

/// A localization recipe: invert everything in `inverted`, after which the
/// skeleton is in `resulting_class` and the bottom sphere sits in degree
/// `bottom` with a retraction available.
struct LocalizationPlan {
    std::set<long long> inverted;
    int bottom = 0;
    SkeletonClass resulting_class = SkeletonClass::Unknown;
    std::string rule;
    std::vector<std::string> notes;
};

/// Plan making the skeleton a wedge (of spheres, or spheres and Moore
/// spaces) after inverting finitely many primes.  Applies when the skeleton
/// dimension d = n - m satisfies d <= 2m-2 (Moore plan, keeps torsion,
/// needs m >= 3) or d <= 2m-1 (sphere plan, also inverts torsion primes).
/// Returns nullopt and fills `why_not` when out of range.
std::optional<LocalizationPlan> skeleton_class_plan(const PDComplex& M,
                                                    std::vector<std::string>* why_not = nullptr);

/// Primes to invert so that the bottom sphere inclusion S^k -> M admits a
/// retraction, k the least degree with a Z summand.  Inverts torsion primes
/// below k and all p <= (n-k+3)/2 (k odd) or (n-k+4)/2 (k even; also
/// requires the cup-square witness).  Throws hypothesis_error when k does
/// not exist or the witness is missing.
LocalizationPlan retraction_primes(const PDComplex& M);

/// Combined plan delivering both a wedge skeleton and a bottom retraction.
/// Prefers the torsion-keeping range 3 <= m < n-m, n <= 3m-2, then the
/// sphere range n <= 3m-1, then the union of skeleton_class_plan and
/// retraction_primes.  Returns nullopt and fills `reasons` with the failed
/// inequalities when no route applies.
std::optional<LocalizationPlan> full_plan(const PDComplex& M, std::vector<std::string>& reasons);

} // namespace loopdec
