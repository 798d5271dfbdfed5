#pragma once

#include "loopdec/algebra.hpp"

#include <string>
#include <vector>

namespace loopdec {

/// Pointed-space expressions. Normal forms for the wedge class are flat
/// Wedges of Sphere / Moore leaves plus atomic James terms
/// Smash(leaf, LoopSphere m); other smashes stay opaque.
enum class ExprKind { Point, Sphere, Moore, Smash, Suspension, LoopSphere, HalfSmash, Wedge };

struct SpaceExpr {
    ExprKind kind = ExprKind::Point;
    int n = 0;            // Sphere: dimension; Moore: top cell; LoopSphere: sphere dim
    long long prime = 0;  // Moore order = prime^exponent
    int exponent = 1;
    std::vector<SpaceExpr> parts;

    static SpaceExpr point();
    static SpaceExpr sphere(int n);                         // n >= 1
    static SpaceExpr moore(long long p, int e, int n);      // P^n(p^e), n >= 2
    static SpaceExpr wedge(std::vector<SpaceExpr> parts);
    static SpaceExpr smash(SpaceExpr a, SpaceExpr b);
    static SpaceExpr suspension(SpaceExpr x);
    static SpaceExpr half_smash(SpaceExpr a, SpaceExpr b);  // a must be co-H
    static SpaceExpr loop_sphere(int m);                    // m >= 2

    bool is_point() const { return kind == ExprKind::Point; }
    bool is_leaf() const { return kind == ExprKind::Sphere || kind == ExprKind::Moore; }

    bool operator==(const SpaceExpr&) const = default;
};

/// Total order used for canonical wedge/smash argument ordering.
int compare(const SpaceExpr& a, const SpaceExpr& b);

/// P^n(q) for arbitrary q >= 2: primary decomposition, one Moore leaf per
/// prime-power factor (a wedge when q is composite).
SpaceExpr moore_space(long long q, int n);

/// Wedge of d_i spheres S^i per rank plus one P^(i+1)(p^e) per torsion summand.
SpaceExpr expr_from_homology(const GradedGroup& g);

/// Syntactic co-H recognition: spheres, Moore spaces, suspensions, wedges of
/// such, and smashes with a co-H factor.
bool is_co_h(const SpaceExpr& x);

/// Rewrite to normal form: suspensions of leaves absorbed, smash with spheres
/// turned into suspensions, smash distributed over wedges, half-smashes
/// expanded (co-H first argument required), wedges flattened/sorted, Point
/// dropped. Idempotent.
SpaceExpr normalize(const SpaceExpr& x);

/// Reduced integral homology of a normalized wedge of spheres and Moore
/// spaces (suspension nodes allowed). James factors are rejected: their
/// homology is not bounded.
GradedGroup homology(const SpaceExpr& x);

/// Generating series of reduced field homology; James factors contribute
/// geometric factors t^(m-1)/(1-t^(m-1)).
RationalFn reduced_series(const SpaceExpr& x, const Field& f);

/// Hilbert series of the loop space of a co-H expression: 1/(1 - H(t)/t)
/// with H the reduced series. Rejects generators in degree <= 1.
TruncatedSeries loop_series(const SpaceExpr& x, const Field& f, int cap);
RationalFn loop_series_rational(const SpaceExpr& x, const Field& f);

/// Stable textual form, e.g. "S^3 v P^3(2) v (P^3(2) ^ ΩS^2)".
/// Grammar (round-trips with parse_expr):
///   expr  := smash (" v " smash)*
///   smash := atom (" ^ " atom)*          left associative
///   atom  := "*" | "S^"N | "P^"N"("Q")" | "ΩS^"N | "(" expr ")"
///          | "Susp(" expr ")" | "HalfSmash(" expr "," expr ")"
/// "OmegaS^"N is accepted as an ASCII alias; composite Moore orders parse to
/// their primary wedge decomposition.
std::string render(const SpaceExpr& x);
SpaceExpr parse_expr(const std::string& text);

} // namespace loopdec
