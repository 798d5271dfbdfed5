#include "loopdec/algebra.hpp"

#include "loopdec/errors.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

/**** graded groups ****/

long long GradedGroup::rank_at(int deg) const {
    auto it = groups.find(deg);
    return it == groups.end() ? 0 : it->second.rank;
}

const std::vector<TorsionSummand>& GradedGroup::torsion_at(int deg) const {
    static const std::vector<TorsionSummand> none;
    auto it = groups.find(deg);
    return it == groups.end() ? none : it->second.torsion;
}

bool GradedGroup::trivial_at(int deg) const {
    auto it = groups.find(deg);
    return it == groups.end() || it->second.trivial();
}

std::vector<int> GradedGroup::support() const {
    std::vector<int> out;
    for (const auto& [deg, g] : groups)
        if (!g.trivial()) out.push_back(deg);
    return out;
}

static void canonicalize_torsion(std::vector<TorsionSummand>& t) {
    std::sort(t.begin(), t.end(), [](const TorsionSummand& a, const TorsionSummand& b) {
        return std::tie(a.prime, a.exponent) < std::tie(b.prime, b.exponent);
    });
    std::vector<TorsionSummand> merged;
    for (const auto& s : t) {
        if (s.multiplicity == 0) continue;
        if (!merged.empty() && merged.back().prime == s.prime &&
            merged.back().exponent == s.exponent)
            merged.back().multiplicity += s.multiplicity;
        else
            merged.push_back(s);
    }
    t = std::move(merged);
}

void GradedGroup::canonicalize() {
    for (auto it = groups.begin(); it != groups.end();) {
        canonicalize_torsion(it->second.torsion);
        if (it->second.trivial())
            it = groups.erase(it);
        else
            ++it;
    }
}

void GradedGroup::add_rank(int deg, long long d) {
    if (d == 0) return;
    groups[deg].rank += d;
    if (groups[deg].trivial()) groups.erase(deg);
}

void GradedGroup::add_torsion(int deg, long long prime, int exponent, long long multiplicity) {
    add_torsion(deg, TorsionSummand{prime, exponent, multiplicity});
}

void GradedGroup::add_torsion(int deg, TorsionSummand t) {
    if (t.multiplicity == 0) return;
    groups[deg].torsion.push_back(t);
    canonicalize_torsion(groups[deg].torsion);
}

GradedGroup sum(const GradedGroup& a, const GradedGroup& b) {
    GradedGroup out = a;
    for (const auto& [deg, g] : b.groups) {
        out.groups[deg].rank += g.rank;
        for (const auto& t : g.torsion) out.groups[deg].torsion.push_back(t);
    }
    out.canonicalize();
    return out;
}

GradedGroup shift(const GradedGroup& g, int s) {
    GradedGroup out;
    for (const auto& [deg, grp] : g.groups) {
        if (grp.trivial()) continue;
        if (deg + s < 0) throw input_error("graded shift produced a negative degree");
        out.groups[deg + s] = grp;
    }
    return out;
}

std::set<long long> torsion_primes(const GradedGroup& g, int lo, int hi) {
    std::set<long long> out;
    for (const auto& [deg, grp] : g.groups) {
        if (deg < lo || deg > hi) continue;
        for (const auto& t : grp.torsion)
            if (t.multiplicity > 0) out.insert(t.prime);
    }
    return out;
}

bool same_group(const DegreeGroup& a, const DegreeGroup& b) {
    DegreeGroup x = a, y = b;
    canonicalize_torsion(x.torsion);
    canonicalize_torsion(y.torsion);
    return x == y;
}

static Int prime_power(long long p, int e) {
    Int q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    return q;
}

std::string render(const DegreeGroup& g) {
    if (g.trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (g.rank == 1) {
        sep();
        os << "Z";
    } else if (g.rank > 1) {
        sep();
        os << "Z^" << g.rank;
    }
    for (const auto& t : g.torsion) {
        sep();
        os << "Z/" << prime_power(t.prime, t.exponent);
        if (t.multiplicity > 1) os << "^" << t.multiplicity;
    }
    return os.str();
}

std::string render(const GradedGroup& g) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [deg, grp] : g.groups) {
        if (grp.trivial()) continue;
        if (!first) os << ", ";
        first = false;
        os << "H_" << deg << " = " << render(grp);
    }
    return first ? "0" : os.str();
}

/**** Smith normal form ****/

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// floor-free balanced quotient: choose q minimizing |a - q*b|
Int balanced_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (abs_int(r) * 2 > abs_int(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

} // namespace

std::vector<Int> smith_normal_form(Matrix a) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<Int> diag;

    size_t t = 0;
    while (t < rows && t < cols) {
        // locate a nonzero entry of minimal absolute value in the submatrix
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (!found || abs_int(a[i][j]) < abs_int(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(a[t], a[pi]);
        for (size_t i = t; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int q = balanced_div(a[i][t], a[t][t]);
                for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) { // remainder smaller than pivot: promote it
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int q = balanced_div(a[t][j], a[t][t]);
                for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (size_t i = t; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // enforce divisibility of the remaining block by the pivot
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0) a[t][t] = -a[t][t];
        diag.push_back(a[t][t]);
        ++t;
    }
    return diag;
}

/**** fields and universal coefficients ****/

std::string render(const Field& f) {
    return f.rational() ? std::string("Q") : "F" + std::to_string(f.p);
}

std::map<int, long long> field_reduce(const GradedGroup& g, const Field& f) {
    std::map<int, long long> dims;
    for (const auto& [deg, grp] : g.groups) {
        if (grp.rank) dims[deg] += grp.rank;
        if (f.rational()) continue;
        for (const auto& t : grp.torsion) {
            if (t.prime != f.p || t.multiplicity == 0) continue;
            dims[deg] += t.multiplicity;     // (Z/p^e) tensor F_p
            dims[deg + 1] += t.multiplicity; // Tor(Z/p^e, F_p) one degree up
        }
    }
    for (auto it = dims.begin(); it != dims.end();)
        it = it->second == 0 ? dims.erase(it) : std::next(it);
    return dims;
}

/**** polynomials ****/

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::monomial(const Int& a, int k) {
    if (a == 0) return {};
    IntPoly p;
    p.c.assign(k + 1, 0);
    p.c[k] = a;
    return p;
}

IntPoly IntPoly::from_dims(const std::map<int, long long>& dims) {
    IntPoly p;
    for (const auto& [deg, d] : dims) {
        if (d == 0) continue;
        if (deg < 0) throw input_error("polynomial from dimensions: negative degree");
        if ((int)p.c.size() <= deg) p.c.resize(deg + 1, 0);
        p.c[deg] += d;
    }
    p.trim();
    return p;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.at((int)i) + b.at((int)i);
    out.trim();
    return out;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    IntPoly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = a.at((int)i) - b.at((int)i);
    out.trim();
    return out;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.trim();
    return out;
}

std::string render(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        Int a = p.c[i];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = abs_int(a);
        if (mag != 1 || i == 0) os << mag;
        if (i == 1)
            os << "t";
        else if (i > 1)
            os << "t^" << i;
        first = false;
    }
    return os.str();
}

/**** rational functions ****/

RationalFn make_rational(IntPoly num, IntPoly den) {
    if (den.is_zero() || den.at(0) == 0)
        throw input_error("rational function denominator needs a nonzero constant term");
    return {std::move(num), std::move(den)};
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return make_rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return make_rational(a.num * b.num, a.den * b.den);
}

bool same_value(const RationalFn& a, const RationalFn& b) {
    return a.num * b.den == b.num * a.den;
}

std::string render(const RationalFn& r) {
    if (r.den == IntPoly::one()) return render(r.num);
    return "(" + render(r.num) + ") / (" + render(r.den) + ")";
}

/**** truncated series ****/

TruncatedSeries TruncatedSeries::zero(int cap) {
    TruncatedSeries s;
    s.cap = cap;
    s.c.assign(cap + 1, 0);
    return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out = TruncatedSeries::zero(std::min(a.cap, b.cap));
    for (int i = 0; i <= out.cap; ++i) out.c[i] = a.at(i) + b.at(i);
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out = TruncatedSeries::zero(std::min(a.cap, b.cap));
    for (int i = 0; i <= out.cap; ++i)
        for (int j = 0; i + j <= out.cap; ++j) out.c[i + j] += a.at(i) * b.at(j);
    return out;
}

TruncatedSeries series_expand(const RationalFn& r, int cap) {
    if (cap < 0) throw input_error("series cap must be nonnegative");
    Int d0 = r.den.at(0);
    if (d0 != 1 && d0 != -1)
        throw input_error("series expansion needs denominator constant term +-1, got " +
                          d0.str());
    TruncatedSeries s = TruncatedSeries::zero(cap);
    for (int n = 0; n <= cap; ++n) {
        Int acc = r.num.at(n);
        for (int k = 1; k <= std::min(n, r.den.degree()); ++k)
            acc -= r.den.at(k) * s.c[n - k];
        s.c[n] = d0 == 1 ? acc : Int(-acc);
    }
    return s;
}

std::string render(const TruncatedSeries& s) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i <= s.cap; ++i) {
        if (i) os << ", ";
        os << s.c[i];
    }
    os << "]";
    return os.str();
}

} // namespace loopdec
