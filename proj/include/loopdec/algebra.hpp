#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace loopdec {

/// Exact integer used for matrix entries and series coefficients.
using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Finitely generated graded abelian groups
// ---------------------------------------------------------------------------

/// `multiplicity` copies of Z/prime^exponent.
struct TorsionSummand {
    long long prime = 0;
    int exponent = 1;
    long long multiplicity = 1;

    auto operator<=>(const TorsionSummand&) const = default;
};

/// One degree of a graded group: Z^rank plus a torsion part in canonical form
/// (sorted by (prime, exponent), multiplicities merged, no zero rows).
struct DegreeGroup {
    long long rank = 0;
    std::vector<TorsionSummand> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const DegreeGroup&) const = default;
};

/// Map degree -> group, trivial degrees absent.
struct GradedGroup {
    std::map<int, DegreeGroup> groups;

    long long rank_at(int deg) const;
    const std::vector<TorsionSummand>& torsion_at(int deg) const;
    bool trivial_at(int deg) const;
    bool trivial() const { return groups.empty(); }

    /// Degrees carrying a nontrivial group, ascending.
    std::vector<int> support() const;

    /// Drop trivial entries, merge and sort torsion summands.
    void canonicalize();

    void add_rank(int deg, long long d);
    void add_torsion(int deg, TorsionSummand t);
    void add_torsion(int deg, long long prime, int exponent, long long multiplicity);

    bool operator==(const GradedGroup&) const = default;
};

/// Degreewise direct sum.
GradedGroup sum(const GradedGroup& a, const GradedGroup& b);

/// Degree shift by s (s may be negative; throws input_error on a negative
/// resulting degree).
GradedGroup shift(const GradedGroup& g, int s);

/// Primes p such that some degree in [lo, hi] carries p-torsion.
std::set<long long> torsion_primes(const GradedGroup& g, int lo, int hi);

/// Abelian-group isomorphism test for single degrees (torsion multisets).
bool same_group(const DegreeGroup& a, const DegreeGroup& b);

std::string render(const DegreeGroup& g);
std::string render(const GradedGroup& g);

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

using Matrix = std::vector<std::vector<Int>>;

/// Invariant factors s_1 | s_2 | ... (positive, divisibility chain) of an
/// integer matrix. Deterministic; empty matrices give an empty list.
std::vector<Int> smith_normal_form(Matrix a);

// ---------------------------------------------------------------------------
// Coefficient fields
// ---------------------------------------------------------------------------

/// Q (p == 0) or F_p (p prime).
struct Field {
    long long p = 0;

    static Field Q() { return Field{0}; }
    static Field Fp(long long p) { return Field{p}; }
    bool rational() const { return p == 0; }
    bool operator==(const Field&) const = default;
};

std::string render(const Field& f);

/// Degreewise dimensions of (graded group) tensor field, by universal
/// coefficients: over Q the ranks; over F_p rank + p-torsion in this degree
/// + p-torsion one degree below.
std::map<int, long long> field_reduce(const GradedGroup& g, const Field& f);

// ---------------------------------------------------------------------------
// Polynomials, rational functions, truncated series
// ---------------------------------------------------------------------------

/// Dense integer polynomial; coefficient of t^i at c[i], no trailing zeros.
struct IntPoly {
    std::vector<Int> c;

    static IntPoly zero() { return {}; }
    static IntPoly one() { return IntPoly{{1}}; }
    /// a * t^k
    static IntPoly monomial(const Int& a, int k);
    static IntPoly from_dims(const std::map<int, long long>& dims);

    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    bool is_zero() const { return c.empty(); }
    Int at(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : Int(0); }
    void trim();

    bool operator==(const IntPoly&) const = default;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

std::string render(const IntPoly& p);

/// num/den with den having nonzero constant term. No cancellation is
/// attempted; equality of values is checked by cross-multiplication.
struct RationalFn {
    IntPoly num;
    IntPoly den = IntPoly::one();

    static RationalFn from_poly(IntPoly p) { return {std::move(p), IntPoly::one()}; }
};

RationalFn make_rational(IntPoly num, IntPoly den);
RationalFn operator+(const RationalFn& a, const RationalFn& b);
RationalFn operator*(const RationalFn& a, const RationalFn& b);
bool same_value(const RationalFn& a, const RationalFn& b);

std::string render(const RationalFn& r);

/// Coefficients 0..cap inclusive.
struct TruncatedSeries {
    std::vector<Int> c;
    int cap = 0;

    static TruncatedSeries zero(int cap);
    Int at(int i) const { return i >= 0 && i <= cap ? c[i] : Int(0); }

    bool operator==(const TruncatedSeries&) const = default;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

/// Power-series expansion of num/den through degree cap. Requires den to have
/// constant term +-1 (throws input_error otherwise: coefficients must stay in Z).
TruncatedSeries series_expand(const RationalFn& r, int cap);

std::string render(const TruncatedSeries& s);

} // namespace loopdec
