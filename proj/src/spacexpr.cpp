#include "loopdec/spacexpr.hpp"

#include "loopdec/errors.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

/**** constructors ****/

SpaceExpr SpaceExpr::point() { return {}; }

SpaceExpr SpaceExpr::sphere(int n) {
    if (n < 1) throw input_error("sphere dimension must be >= 1");
    SpaceExpr x;
    x.kind = ExprKind::Sphere;
    x.n = n;
    return x;
}

SpaceExpr SpaceExpr::moore(long long p, int e, int n) {
    if (p < 2) throw input_error("Moore space order must have a prime base");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw input_error("Moore space base " + std::to_string(p) + " is not prime");
    if (e < 1) throw input_error("Moore space order exponent must be >= 1");
    if (n < 2) throw input_error("Moore space P^n(q) needs n >= 2");
    SpaceExpr x;
    x.kind = ExprKind::Moore;
    x.n = n;
    x.prime = p;
    x.exponent = e;
    return x;
}

SpaceExpr SpaceExpr::wedge(std::vector<SpaceExpr> parts) {
    SpaceExpr x;
    x.kind = ExprKind::Wedge;
    x.parts = std::move(parts);
    return x;
}

SpaceExpr SpaceExpr::smash(SpaceExpr a, SpaceExpr b) {
    SpaceExpr x;
    x.kind = ExprKind::Smash;
    x.parts = {std::move(a), std::move(b)};
    return x;
}

SpaceExpr SpaceExpr::suspension(SpaceExpr y) {
    SpaceExpr x;
    x.kind = ExprKind::Suspension;
    x.parts = {std::move(y)};
    return x;
}

SpaceExpr SpaceExpr::half_smash(SpaceExpr a, SpaceExpr b) {
    SpaceExpr x;
    x.kind = ExprKind::HalfSmash;
    x.parts = {std::move(a), std::move(b)};
    return x;
}

SpaceExpr SpaceExpr::loop_sphere(int m) {
    if (m < 2) throw input_error("loop-sphere factor needs sphere dimension >= 2");
    SpaceExpr x;
    x.kind = ExprKind::LoopSphere;
    x.n = m;
    return x;
}

int compare(const SpaceExpr& a, const SpaceExpr& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
    if (a.n != b.n) return a.n < b.n ? -1 : 1;
    if (a.prime != b.prime) return a.prime < b.prime ? -1 : 1;
    if (a.exponent != b.exponent) return a.exponent < b.exponent ? -1 : 1;
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size() ? -1 : 1;
    for (size_t i = 0; i < a.parts.size(); ++i)
        if (int c = compare(a.parts[i], b.parts[i])) return c;
    return 0;
}

SpaceExpr moore_space(long long q, int n) {
    if (q < 2) throw input_error("Moore space order must be >= 2");
    std::vector<SpaceExpr> leaves;
    long long rest = q;
    for (long long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        leaves.push_back(SpaceExpr::moore(p, e, n));
    }
    if (rest > 1) leaves.push_back(SpaceExpr::moore(rest, 1, n));
    if (leaves.size() == 1) return leaves[0];
    return SpaceExpr::wedge(std::move(leaves));
}

SpaceExpr expr_from_homology(const GradedGroup& g) {
    std::vector<SpaceExpr> parts;
    for (const auto& [deg, grp] : g.groups) {
        for (long long i = 0; i < grp.rank; ++i) parts.push_back(SpaceExpr::sphere(deg));
        for (const auto& t : grp.torsion)
            for (long long i = 0; i < t.multiplicity; ++i)
                parts.push_back(SpaceExpr::moore(t.prime, t.exponent, deg + 1));
    }
    return normalize(SpaceExpr::wedge(std::move(parts)));
}

bool is_co_h(const SpaceExpr& x) {
    switch (x.kind) {
        case ExprKind::Point:
        case ExprKind::Sphere:
        case ExprKind::Moore:
        case ExprKind::Suspension:
            return true;
        case ExprKind::Wedge: {
            for (const auto& p : x.parts)
                if (!is_co_h(p)) return false;
            return true;
        }
        case ExprKind::Smash:
            return is_co_h(x.parts[0]) || is_co_h(x.parts[1]);
        case ExprKind::HalfSmash:
        case ExprKind::LoopSphere:
            return false;
    }
    return false;
}

/**** normalization ****/

namespace {

SpaceExpr norm(const SpaceExpr& x);

SpaceExpr suspend(SpaceExpr x, int k) {
    for (int i = 0; i < k; ++i) x = norm(SpaceExpr::suspension(std::move(x)));
    return x;
}

SpaceExpr norm_wedge(std::vector<SpaceExpr> parts) {
    std::vector<SpaceExpr> flat;
    for (auto& p : parts) {
        if (p.is_point()) continue;
        if (p.kind == ExprKind::Wedge)
            for (auto& q : p.parts) flat.push_back(std::move(q));
        else
            flat.push_back(std::move(p));
    }
    if (flat.empty()) return SpaceExpr::point();
    if (flat.size() == 1) return flat[0];
    std::stable_sort(flat.begin(), flat.end(),
                     [](const SpaceExpr& a, const SpaceExpr& b) { return compare(a, b) < 0; });
    return SpaceExpr::wedge(std::move(flat));
}

SpaceExpr norm_smash(SpaceExpr a, SpaceExpr b) {
    if (a.is_point() || b.is_point()) return SpaceExpr::point();
    if (a.kind == ExprKind::Wedge || b.kind == ExprKind::Wedge) {
        const bool split_a = a.kind == ExprKind::Wedge;
        const SpaceExpr& w = split_a ? a : b;
        const SpaceExpr& other = split_a ? b : a;
        std::vector<SpaceExpr> parts;
        for (const auto& p : w.parts)
            parts.push_back(split_a ? norm_smash(p, other) : norm_smash(other, p));
        return norm_wedge(std::move(parts));
    }
    if (b.kind == ExprKind::Sphere) return suspend(std::move(a), b.n);
    if (a.kind == ExprKind::Sphere) return suspend(std::move(b), a.n);
    if (a.kind == ExprKind::LoopSphere && b.kind != ExprKind::LoopSphere)
        std::swap(a, b); // James factor goes last
    return SpaceExpr::smash(std::move(a), std::move(b));
}

SpaceExpr norm(const SpaceExpr& x) {
    switch (x.kind) {
        case ExprKind::Point:
        case ExprKind::Sphere:
        case ExprKind::Moore:
        case ExprKind::LoopSphere:
            return x;
        case ExprKind::Suspension: {
            SpaceExpr y = norm(x.parts[0]);
            switch (y.kind) {
                case ExprKind::Point:
                    return y;
                case ExprKind::Sphere:
                    return SpaceExpr::sphere(y.n + 1);
                case ExprKind::Moore:
                    return SpaceExpr::moore(y.prime, y.exponent, y.n + 1);
                case ExprKind::Wedge: {
                    std::vector<SpaceExpr> parts;
                    for (auto& p : y.parts) parts.push_back(norm(SpaceExpr::suspension(p)));
                    return norm_wedge(std::move(parts));
                }
                case ExprKind::Smash: // Sigma(A ^ B) = (Sigma A) ^ B
                    return norm_smash(norm(SpaceExpr::suspension(y.parts[0])), y.parts[1]);
                default:
                    return SpaceExpr::suspension(std::move(y));
            }
        }
        case ExprKind::Wedge: {
            std::vector<SpaceExpr> parts;
            for (const auto& p : x.parts) parts.push_back(norm(p));
            return norm_wedge(std::move(parts));
        }
        case ExprKind::Smash:
            return norm_smash(norm(x.parts[0]), norm(x.parts[1]));
        case ExprKind::HalfSmash: {
            SpaceExpr a = norm(x.parts[0]);
            SpaceExpr b = norm(x.parts[1]);
            if (!is_co_h(a))
                throw hypothesis_error("co-H factor",
                                       "half-smash splitting needs a co-H first argument, got " +
                                           render(a));
            return norm_wedge({a, norm_smash(a, b)});
        }
    }
    return x;
}

} // namespace

SpaceExpr normalize(const SpaceExpr& x) { return norm(x); }

/**** homology ****/

GradedGroup homology(const SpaceExpr& x) {
    GradedGroup g;
    switch (x.kind) {
        case ExprKind::Point:
            return g;
        case ExprKind::Sphere:
            g.add_rank(x.n, 1);
            return g;
        case ExprKind::Moore:
            g.add_torsion(x.n - 1, {x.prime, x.exponent, 1});
            return g;
        case ExprKind::Wedge: {
            for (const auto& p : x.parts) g = sum(g, homology(p));
            return g;
        }
        case ExprKind::Suspension:
            return shift(homology(x.parts[0]), 1);
        case ExprKind::LoopSphere:
            throw hypothesis_error("bounded homology",
                                   "a loop-sphere factor has homology in infinitely many degrees");
        case ExprKind::Smash:
            if (x.parts[0].kind == ExprKind::Moore && x.parts[1].kind == ExprKind::Moore)
                throw hypothesis_error(
                    "smash homology",
                    "smash of two torsion Moore spaces is supported at the series level only");
            throw hypothesis_error("bounded homology",
                                   "homology of " + render(x) + " is not a finite wedge");
        case ExprKind::HalfSmash:
            return homology(normalize(x));
    }
    return g;
}

/**** series ****/

RationalFn reduced_series(const SpaceExpr& x, const Field& f) {
    switch (x.kind) {
        case ExprKind::Point:
            return RationalFn::from_poly(IntPoly::zero());
        case ExprKind::Sphere:
            return RationalFn::from_poly(IntPoly::monomial(1, x.n));
        case ExprKind::Moore:
            if (!f.rational() && f.p == x.prime)
                return RationalFn::from_poly(IntPoly::monomial(1, x.n - 1) +
                                             IntPoly::monomial(1, x.n));
            return RationalFn::from_poly(IntPoly::zero());
        case ExprKind::Wedge: {
            RationalFn acc = RationalFn::from_poly(IntPoly::zero());
            for (const auto& p : x.parts) acc = acc + reduced_series(p, f);
            return acc;
        }
        case ExprKind::Smash: {
            return reduced_series(x.parts[0], f) * reduced_series(x.parts[1], f);
        }
        case ExprKind::Suspension: {
            return RationalFn::from_poly(IntPoly::monomial(1, 1)) * reduced_series(x.parts[0], f);
        }
        case ExprKind::LoopSphere: {
            // reduced homology of the loop space of S^m: one class in each
            // positive multiple of m-1
            IntPoly den = IntPoly::one() - IntPoly::monomial(1, x.n - 1);
            return make_rational(IntPoly::monomial(1, x.n - 1), std::move(den));
        }
        case ExprKind::HalfSmash:
            return reduced_series(normalize(x), f);
    }
    return RationalFn::from_poly(IntPoly::zero());
}

RationalFn loop_series_rational(const SpaceExpr& x, const Field& f) {
    SpaceExpr y = normalize(x);
    if (!is_co_h(y))
        throw hypothesis_error("co-H expression",
                               "loop homology via tensor algebra needs a co-H input, got " +
                                   render(y));
    RationalFn h = reduced_series(y, f);
    TruncatedSeries low = series_expand(h, 1);
    if (low.at(0) != 0 || low.at(1) != 0)
        throw hypothesis_error("simply connected input",
                               "reduced homology in degree <= 1 shifts to a generator in degree <= 0");
    // 1/(1 - H(t)/t) = den / (den - num/t)
    IntPoly shifted(h.num);
    if (!shifted.c.empty()) shifted.c.erase(shifted.c.begin()); // num has zero constant term
    return make_rational(h.den, h.den - shifted);
}

TruncatedSeries loop_series(const SpaceExpr& x, const Field& f, int cap) {
    return series_expand(loop_series_rational(x, f), cap);
}

/**** rendering ****/

namespace {

void render_to(const SpaceExpr& x, std::ostringstream& os, bool parenthesize_ops) {
    switch (x.kind) {
        case ExprKind::Point:
            os << "*";
            return;
        case ExprKind::Sphere:
            os << "S^" << x.n;
            return;
        case ExprKind::Moore: {
            Int q = 1;
            for (int i = 0; i < x.exponent; ++i) q *= x.prime;
            os << "P^" << x.n << "(" << q << ")";
            return;
        }
        case ExprKind::LoopSphere:
            os << "ΩS^" << x.n;
            return;
        case ExprKind::Suspension:
            os << "Susp(";
            render_to(x.parts[0], os, false);
            os << ")";
            return;
        case ExprKind::HalfSmash:
            os << "HalfSmash(";
            render_to(x.parts[0], os, false);
            os << ", ";
            render_to(x.parts[1], os, false);
            os << ")";
            return;
        case ExprKind::Smash: {
            if (parenthesize_ops) os << "(";
            for (size_t i = 0; i < x.parts.size(); ++i) {
                if (i) os << " ^ ";
                render_to(x.parts[i], os, true);
            }
            if (parenthesize_ops) os << ")";
            return;
        }
        case ExprKind::Wedge: {
            if (parenthesize_ops) os << "(";
            for (size_t i = 0; i < x.parts.size(); ++i) {
                if (i) os << " v ";
                render_to(x.parts[i], os, true);
            }
            if (parenthesize_ops) os << ")";
            return;
        }
    }
}

} // namespace

std::string render(const SpaceExpr& x) {
    std::ostringstream os;
    render_to(x, os, false);
    return os.str();
}

/**** parsing ****/

namespace {

struct Lexer {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(std::string_view word) {
        skip_ws();
        if (s.substr(i, word.size()) != word) return false;
        i += word.size();
        return true;
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    long long number() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw input_error("expression parse: expected a number at offset " +
                                          std::to_string(start));
        return std::stoll(std::string(s.substr(start, i - start)));
    }
    void expect(std::string_view word) {
        if (!eat(word))
            throw input_error("expression parse: expected '" + std::string(word) +
                              "' at offset " + std::to_string(i));
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

SpaceExpr parse_wedge(Lexer& lx);

SpaceExpr parse_atom(Lexer& lx) {
    lx.skip_ws();
    if (lx.eat("*")) return SpaceExpr::point();
    if (lx.eat("ΩS^") || lx.eat("OmegaS^"))
        return SpaceExpr::loop_sphere(static_cast<int>(lx.number()));
    if (lx.eat("S^")) return SpaceExpr::sphere(static_cast<int>(lx.number()));
    if (lx.eat("P^")) {
        int n = static_cast<int>(lx.number());
        lx.expect("(");
        long long q = lx.number();
        lx.expect(")");
        return moore_space(q, n);
    }
    if (lx.eat("Susp(")) {
        SpaceExpr x = parse_wedge(lx);
        lx.expect(")");
        return SpaceExpr::suspension(std::move(x));
    }
    if (lx.eat("HalfSmash(")) {
        SpaceExpr a = parse_wedge(lx);
        lx.expect(",");
        SpaceExpr b = parse_wedge(lx);
        lx.expect(")");
        return SpaceExpr::half_smash(std::move(a), std::move(b));
    }
    if (lx.eat("(")) {
        SpaceExpr x = parse_wedge(lx);
        lx.expect(")");
        return x;
    }
    throw input_error("expression parse: unexpected input at offset " + std::to_string(lx.i));
}

SpaceExpr parse_smash(Lexer& lx) {
    SpaceExpr x = parse_atom(lx);
    while (lx.eat("^")) x = SpaceExpr::smash(std::move(x), parse_atom(lx));
    return x;
}

SpaceExpr parse_wedge(Lexer& lx) {
    std::vector<SpaceExpr> parts;
    parts.push_back(parse_smash(lx));
    while (true) {
        lx.skip_ws();
        // 'v' only acts as the wedge operator when not part of an identifier
        if (lx.i < lx.s.size() && lx.s[lx.i] == 'v') {
            ++lx.i;
            parts.push_back(parse_smash(lx));
        } else {
            break;
        }
    }
    if (parts.size() == 1) return parts[0];
    return SpaceExpr::wedge(std::move(parts));
}

} // namespace

SpaceExpr parse_expr(const std::string& text) {
    Lexer lx{text};
    SpaceExpr x = parse_wedge(lx);
    if (!lx.done())
        throw input_error("expression parse: trailing input at offset " + std::to_string(lx.i));
    return x;
}

} // namespace loopdec
