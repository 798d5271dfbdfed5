#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopdec/decompose.hpp"
#include "loopdec/errors.hpp"

#include <random>

using namespace loopdec;

namespace {

PDFlags class_a{SkeletonClass::WedgeSpheres, Flag::Yes, Flag::Yes};
PDFlags class_a_moore{SkeletonClass::WedgeSpheresMoore, Flag::Yes, Flag::Yes};

GradedGroup ranks(std::initializer_list<std::pair<int, long long>> rs) {
    GradedGroup g;
    for (auto [d, r] : rs)
        g.add_rank(d, r);
    return g;
}

PDComplex s2xs3() {
    return make_pd("S2xS3", 5, 2, ranks({{2, 1}, {3, 1}}), class_a, {});
}

PDComplex s2xs3_conn_w() {
    GradedGroup h = ranks({{2, 1}, {3, 1}});
    h.add_torsion(2, 2, 1, 1);
    return make_pd("S2xS3 # W", 5, 2, h, class_a_moore, {});
}

std::vector<long long> coeffs(const TruncatedSeries& s) {
    std::vector<long long> out;
    for (const Int& x : s.c)
        out.push_back(static_cast<long long>(x));
    return out;
}

std::vector<int> degrees(const OneRelatorPresentation& p) {
    std::vector<int> out;
    for (const auto& g : p.generators)
        out.push_back(g.degree);
    return out;
}

} // namespace

TEST_CASE("compute_AB: S2xS3 # W (the worked example)") {
    auto [a, b] = compute_AB(s2xs3_conn_w());
    CHECK(render(a) == "S^3 v P^3(2)");
    CHECK(render(b) == "P^3(2)");
}

TEST_CASE("compute_AB: twisted bundle sum gives the same factors") {
    GradedGroup h = ranks({{2, 1}, {3, 1}});
    h.add_torsion(2, 2, 1, 1);
    PDComplex tw = make_pd("S2xtS3 # W", 5, 2, h, class_a_moore, {});
    auto [a, b] = compute_AB(tw);
    auto [a2, b2] = compute_AB(s2xs3_conn_w());
    CHECK(a == a2);
    CHECK(b == b2);
}

TEST_CASE("compute_AB: products of spheres") {
    PDComplex m = make_pd("S3xS7", 10, 3, ranks({{3, 1}, {7, 1}}), class_a, {});
    auto [a, b] = compute_AB(m);
    CHECK(render(a) == "S^7");
    CHECK(b.is_point());
}

TEST_CASE("compute_AB: diagonal case #3(S3xS3)") {
    PDComplex m = make_pd("#3(S3xS3)", 6, 3, ranks({{3, 6}}), class_a, {});
    auto [a, b] = compute_AB(m);
    REQUIRE(a.kind == ExprKind::Wedge);
    CHECK(a.parts.size() == 5);
    for (const auto& p : a.parts)
        CHECK(p == SpaceExpr::sphere(3));
    CHECK(b.parts.size() == 4);
}

TEST_CASE("diagonal case guards: rank 2 needed, witness when even") {
    // d_3 = 1 in the middle: no second bottom class
    PDComplex thin = make_pd("thin", 6, 3, ranks({{3, 1}}), class_a, {});
    CHECK_THROWS_AS(decompose(thin), hypothesis_error);

    // even diagonal k = 4 = n-k requires the witness
    PDFlags no_witness{SkeletonClass::WedgeSpheres, Flag::Yes, Flag::Unknown};
    PDComplex even = make_pd("even", 8, 4, ranks({{4, 2}}), no_witness, {});
    CHECK_THROWS_AS(decompose(even), hypothesis_error);
    PDComplex even_ok = make_pd("even", 8, 4, ranks({{4, 2}}), class_a, {});
    auto d = decompose(even_ok);
    CHECK(d.bottom == 4);
    CHECK(render(d.a) == "S^4");
}

TEST_CASE("decompose: S2xS3 collapses to loops on a product") {
    auto d = decompose(s2xs3());
    CHECK(d.bottom == 2);
    CHECK(render(d.a) == "S^3");
    CHECK(d.b.is_point());
    CHECK(render(d.fibre) == "S^3");
    CHECK(d.inverted.empty());
    CHECK(d.evidence.member == Membership::Yes);
    CHECK(d.statement.find("ΩS^2") != std::string::npos);
}

TEST_CASE("decompose: gyration homology from the worked table") {
    PDComplex g =
        make_pd("G2_0(S2xS3)", 6, 2, ranks({{2, 1}, {3, 2}, {4, 1}}), class_a, {});
    auto d = decompose(g);
    CHECK(render(d.a) == "S^3 v S^3 v S^4");
    CHECK(render(d.b) == "S^3 v S^3");
}

TEST_CASE("decompose: fibre display of the worked Moore example") {
    auto d = decompose(s2xs3_conn_w());
    CHECK(render(d.fibre) == "S^3 v P^3(2) v (P^3(2) ^ ΩS^2)");
    CHECK(d.inverted.empty());
}

TEST_CASE("splitting bookkeeping: skeleton = S^m v A and A = S^(n-m) v B") {
    std::vector<PDComplex> cases = {
        s2xs3(), s2xs3_conn_w(),
        make_pd("t1", 9, 3, ranks({{3, 2}, {4, 1}, {5, 1}, {6, 2}}), class_a, {}),
        make_pd("t2", 8, 3, ranks({{3, 1}, {4, 2}, {5, 1}}), class_a, {})};
    for (const auto& m : cases) {
        CAPTURE(m.name);
        auto d = decompose(m);
        GradedGroup ga = d.a.is_point() ? GradedGroup{} : homology(d.a);
        GradedGroup gb = d.b.is_point() ? GradedGroup{} : homology(d.b);

        // homology(A) + Z[m] = effective skeleton
        GradedGroup lhs = ga;
        lhs.add_rank(d.bottom, 1);
        lhs.canonicalize();
        CHECK(lhs == d.effective_skeleton);

        // homology(B) + Z[n-m] = homology(A)
        GradedGroup rhs = gb;
        rhs.add_rank(m.dim - d.bottom, 1);
        rhs.canonicalize();
        CHECK(rhs == ga);
    }
}

TEST_CASE("decompose refuses non-members with named hypotheses") {
    // no flags, no plan range: m=2, n=7
    PDComplex stranger =
        make_pd("stranger", 7, 2, ranks({{2, 1}, {3, 1}, {4, 1}, {5, 1}}), {}, {});
    try {
        decompose(stranger);
        FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
        CHECK(std::string(e.hypothesis()).find("hypotheses") != std::string::npos);
    }
}

TEST_CASE("decompose localizes when only a plan certifies membership") {
    // m=3, n=7 range: torsion-preserving plan {2,3}
    GradedGroup h = ranks({{3, 2}, {4, 2}});
    h.add_torsion(3, 7, 1, 1); // self-paired at n-1-3 = 3
    PDComplex m = make_pd("planner", 7, 3, h, {}, {});
    auto d = decompose(m);
    CHECK(d.inverted == std::set<long long>{2, 3});
    CHECK(d.evidence.member == Membership::Conditional);
    // the 7-torsion survives into a Moore factor
    CHECK(render(d.a).find("P^4(7)") != std::string::npos);
}

TEST_CASE("one_relator: generators shift the skeleton down one degree") {
    auto p = one_relator(s2xs3(), Field::Q());
    CHECK(degrees(p) == std::vector<int>{1, 2});
    CHECK(p.relation_degree == 3);
    CHECK(p.field == Field::Q());

    auto pw = one_relator(s2xs3_conn_w(), Field::Fp(2));
    CHECK(degrees(pw) == std::vector<int>{1, 1, 2, 2});
    CHECK(pw.relation_degree == 3);

    // over Q the Moore factor vanishes
    auto pq = one_relator(s2xs3_conn_w(), Field::Q());
    CHECK(degrees(pq) == std::vector<int>{1, 2});
}

TEST_CASE("one_relator: quadratic flag in the metastable range") {
    PDComplex m = make_pd("#2(S3xS4)", 7, 3, ranks({{3, 2}, {4, 2}}), class_a, {});
    auto p = one_relator(m, Field::Q());
    CHECK(p.quadratic);       // 7 <= 3*3-2
    CHECK(p.relation_degree == 5);
    auto p5 = one_relator(s2xs3(), Field::Q());
    CHECK_FALSE(p5.quadratic); // 5 > 3*2-2
}

TEST_CASE("one_relator: field incompatible with the required localization") {
    GradedGroup h = ranks({{3, 2}, {4, 2}});
    PDComplex m = make_pd("local", 7, 3, h, {}, {}); // needs {2,3} inverted
    CHECK_THROWS_AS(one_relator(m, Field::Fp(2)), hypothesis_error);
    CHECK_THROWS_AS(one_relator(m, Field::Fp(3)), hypothesis_error);
    auto ok = one_relator(m, Field::Fp(5));
    CHECK(ok.inverted == std::set<long long>{2, 3});
    auto okq = one_relator(m, Field::Q());
    CHECK(degrees(okq) == std::vector<int>{2, 2, 3, 3});
}

TEST_CASE("series: S2xS3 closed form") {
    auto d = decompose(s2xs3());
    auto s = loop_series_decomposition(d, Field::Q(), 5);
    CHECK(coeffs(s) == std::vector<long long>{1, 1, 2, 2, 3, 3});
    auto o = loop_series_one_relator(s2xs3(), Field::Q(), 5);
    CHECK(coeffs(o) == std::vector<long long>{1, 1, 2, 2, 3, 3});
}

TEST_CASE("series: #2(S2xS3) recurrence") {
    PDComplex m = make_pd("#2(S2xS3)", 5, 2, ranks({{2, 2}, {3, 2}}), class_a, {});
    auto o = loop_series_one_relator(m, Field::Q(), 4);
    CHECK(coeffs(o) == std::vector<long long>{1, 2, 6, 15, 40});
    auto d = decompose(m);
    auto s = loop_series_decomposition(d, Field::Q(), 4);
    CHECK(coeffs(s) == std::vector<long long>{1, 2, 6, 15, 40});
}

TEST_CASE("series: torsion invisible over Q in the #W example") {
    auto o = loop_series_one_relator(s2xs3_conn_w(), Field::Q(), 5);
    CHECK(coeffs(o) == std::vector<long long>{1, 1, 2, 2, 3, 3});
}

TEST_CASE("cross_check agrees on the worked examples") {
    for (const Field& f : {Field::Q(), Field::Fp(2), Field::Fp(3), Field::Fp(5)}) {
        CAPTURE(render(f));
        auto cc = cross_check(s2xs3_conn_w(), f, 32);
        CHECK(cc.equal);
        CHECK_FALSE(cc.first_disagreement.has_value());
        CHECK(cc.via_decomposition == cc.via_one_relator);
    }
    auto g = make_pd("G2_0(S2xS3)", 6, 2, ranks({{2, 1}, {3, 2}, {4, 1}}), class_a, {});
    auto cc = cross_check(g, Field::Q(), 32);
    CHECK(cc.equal);
}

TEST_CASE("cross_check under forced localization uses one prime set for both") {
    GradedGroup h = ranks({{3, 2}, {4, 2}});
    h.add_torsion(3, 7, 1, 1);
    PDComplex m = make_pd("planner", 7, 3, h, {}, {});
    auto cc = cross_check(m, Field::Q(), 24);
    CHECK(cc.equal);
    auto cc7 = cross_check(m, Field::Fp(7), 24);
    CHECK(cc7.equal);
    CHECK_THROWS_AS(cross_check(m, Field::Fp(2), 24), hypothesis_error);
}

TEST_CASE("series sanity: coefficient 0 is 1 and all are non-negative") {
    std::vector<PDComplex> cases = {
        s2xs3(), s2xs3_conn_w(),
        make_pd("t1", 9, 3, ranks({{3, 2}, {4, 1}, {5, 1}, {6, 2}}), class_a, {})};
    for (const auto& m : cases) {
        auto cc = cross_check(m, Field::Fp(2), 24);
        REQUIRE(cc.equal);
        CHECK(cc.via_decomposition.at(0) == 1);
        for (int i = 0; i <= 24; ++i)
            CHECK(cc.via_decomposition.at(i) >= 0);
    }
}
