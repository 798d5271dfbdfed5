#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopdec/algebra.hpp"
#include "loopdec/errors.hpp"

#include <numeric>
#include <random>

using namespace loopdec;

namespace {

IntPoly poly(std::initializer_list<long long> cs) {
    IntPoly p;
    for (long long c : cs)
        p.c.emplace_back(c);
    p.trim();
    return p;
}

std::vector<long long> coeffs(const TruncatedSeries& s) {
    std::vector<long long> out;
    for (const Int& x : s.c)
        out.push_back(static_cast<long long>(x));
    return out;
}

// Reference Smith oracle: the k-th invariant factor equals
// gcd(k-minors) / gcd((k-1)-minors).  Exponential, so only for tiny matrices.
std::vector<Int> snf_via_minors(const Matrix& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int r = std::min(rows, cols);
    auto gcd_minors = [&](int k) {
        std::vector<int> ri(k), ci(k);
        Int g = 0;
        std::vector<int> rsel, csel;
        // enumerate k-subsets of rows and columns
        std::vector<int> rmask(rows, 0), cmask(cols, 0);
        std::fill(rmask.begin(), rmask.begin() + k, 1);
        do {
            std::fill(cmask.begin(), cmask.end(), 0);
            std::fill(cmask.begin(), cmask.begin() + k, 1);
            do {
                std::vector<int> rs, cs;
                for (int i = 0; i < rows; ++i)
                    if (rmask[i])
                        rs.push_back(i);
                for (int j = 0; j < cols; ++j)
                    if (cmask[j])
                        cs.push_back(j);
                // determinant by Laplace on a k x k submatrix (k <= 3 here)
                Matrix m(k, std::vector<Int>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        m[i][j] = a[rs[i]][cs[j]];
                Int det;
                if (k == 1)
                    det = m[0][0];
                else if (k == 2)
                    det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                else
                    det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                g = boost::multiprecision::gcd(g, det < 0 ? Int(-det) : det);
            } while (std::prev_permutation(cmask.begin(), cmask.end()));
        } while (std::prev_permutation(rmask.begin(), rmask.end()));
        return g;
    };
    std::vector<Int> factors;
    Int prev = 1;
    for (int k = 1; k <= std::min(r, 3); ++k) {
        Int g = gcd_minors(k);
        if (g == 0)
            break;
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

} // namespace

TEST_CASE("graded group canonical form") {
    GradedGroup g;
    g.add_torsion(2, 3, 1, 1);
    g.add_torsion(2, 2, 1, 2);
    g.add_torsion(2, 3, 1, 1);
    g.add_rank(2, 1);
    g.add_rank(4, 0);
    g.canonicalize();

    CHECK(g.rank_at(2) == 1);
    CHECK(g.trivial_at(4));
    CHECK(g.support() == std::vector<int>{2});
    REQUIRE(g.torsion_at(2).size() == 2);
    CHECK(g.torsion_at(2)[0] == TorsionSummand{2, 1, 2});
    CHECK(g.torsion_at(2)[1] == TorsionSummand{3, 1, 2});
    CHECK(render(g.groups.at(2)) == "Z + Z/2^2 + Z/3^2");
}

TEST_CASE("graded group sum and shift") {
    GradedGroup a, b;
    a.add_rank(3, 2);
    a.add_torsion(4, 5, 2, 1);
    b.add_rank(3, 1);
    b.add_torsion(4, 5, 2, 2);

    GradedGroup s = sum(a, b);
    CHECK(s.rank_at(3) == 3);
    CHECK(s.torsion_at(4) == std::vector<TorsionSummand>{{5, 2, 3}});

    GradedGroup up = shift(a, 2);
    CHECK(up.rank_at(5) == 2);
    CHECK(up.torsion_at(6) == std::vector<TorsionSummand>{{5, 2, 1}});
    CHECK(shift(up, -2) == a);
    CHECK_THROWS_AS(shift(a, -4), input_error);
}

TEST_CASE("torsion primes in a degree window") {
    GradedGroup g;
    g.add_torsion(2, 2, 1, 1);
    g.add_torsion(3, 3, 2, 1);
    g.add_torsion(7, 5, 1, 1);
    CHECK(torsion_primes(g, 0, 10) == std::set<long long>{2, 3, 5});
    CHECK(torsion_primes(g, 3, 3) == std::set<long long>{3});
    CHECK(torsion_primes(g, 4, 6) == std::set<long long>{});
}

TEST_CASE("same_group compares multisets, not layouts") {
    DegreeGroup a, b;
    a.torsion = {{2, 1, 2}};
    b.torsion = {{2, 1, 1}, {2, 1, 1}};
    CHECK(same_group(a, b));
    b.torsion = {{2, 2, 1}};
    CHECK_FALSE(same_group(a, b)); // Z/2 + Z/2 vs Z/4
}

TEST_CASE("smith normal form: boundary of a triangle") {
    // d_1 of the full triangle {12, 13, 23} over vertices {1,2,3};
    // rows = vertices, columns = edges.
    Matrix d1 = {{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}};
    auto f = smith_normal_form(d1);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 1);
    CHECK(f[1] == 1);
}

TEST_CASE("smith normal form: diagonal divisibility and known factors") {
    Matrix a = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    auto f = smith_normal_form(a);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 2);
    CHECK(f[1] == 2);
    CHECK(f[2] == 156);
    for (size_t i = 1; i < f.size(); ++i)
        CHECK(f[i] % f[i - 1] == 0);
}

TEST_CASE("smith normal form matches gcd-of-minors oracle on random matrices") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> dim(1, 3), entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = dim(rng), cols = dim(rng);
        Matrix a(rows, std::vector<Int>(cols));
        for (auto& row : a)
            for (auto& x : row)
                x = entry(rng);
        auto got = smith_normal_form(a);
        auto want = snf_via_minors(a);
        REQUIRE(got == want);
    }
}

TEST_CASE("field_reduce: universal coefficients") {
    GradedGroup g;
    g.add_rank(2, 1);
    g.add_torsion(2, 2, 1, 1); // H_2 = Z + Z/2
    g.add_rank(3, 1);          // H_3 = Z
    g.add_rank(5, 1);          // H_5 = Z

    auto q = field_reduce(g, Field::Q());
    CHECK(q[2] == 1);
    CHECK(q[3] == 1);
    CHECK(q[5] == 1);

    auto f2 = field_reduce(g, Field::Fp(2));
    CHECK(f2[2] == 2); // rank 1 + Z/2
    CHECK(f2[3] == 2); // rank 1 + Tor from degree 2
    CHECK(f2[5] == 1);

    auto f3 = field_reduce(g, Field::Fp(3));
    CHECK(f3[2] == 1);
    CHECK(f3[3] == 1);
}

TEST_CASE("polynomial arithmetic and rendering") {
    IntPoly p = poly({1, 0, -2});
    IntPoly q = poly({0, 1});
    CHECK((p * q) == poly({0, 1, 0, -2}));
    CHECK((p + q) == poly({1, 1, -2}));
    CHECK((p - p).is_zero());
    CHECK(IntPoly::monomial(3, 2) == poly({0, 0, 3}));
    CHECK(IntPoly::from_dims({{0, 1}, {2, 4}}) == poly({1, 0, 4}));
    CHECK(poly({}).degree() == -1);
}

TEST_CASE("rational functions: cross-multiplied equality") {
    // 1/(1-t) == (1+t)/(1-t^2)
    RationalFn a = make_rational(IntPoly::one(), poly({1, -1}));
    RationalFn b = make_rational(poly({1, 1}), poly({1, 0, -1}));
    CHECK(same_value(a, b));
    RationalFn c = make_rational(IntPoly::one(), poly({1, 1}));
    CHECK_FALSE(same_value(a, c));
    CHECK_THROWS_AS(make_rational(IntPoly::one(), poly({0, 1})), input_error);
}

TEST_CASE("series expansion: product of loop-space factors") {
    // 1/((1-t)(1-t^2)) = 1/(1 - t - t^2 + t^3) -> 1,1,2,2,3,3,...
    auto s = series_expand(make_rational(IntPoly::one(), poly({1, -1, -1, 1})), 9);
    CHECK(coeffs(s) == std::vector<long long>{1, 1, 2, 2, 3, 3, 4, 4, 5, 5});
}

TEST_CASE("series expansion: one-relator recurrence") {
    // #^2(S^2 x S^3): 1/(1 - 2t - 2t^2 + t^3) -> 1,2,6,15,40
    auto s = series_expand(make_rational(IntPoly::one(), poly({1, -2, -2, 1})), 4);
    CHECK(coeffs(s) == std::vector<long long>{1, 2, 6, 15, 40});
}

TEST_CASE("series expansion: geometric sanity and error") {
    auto s = series_expand(make_rational(IntPoly::one(), poly({1, -1})), 5);
    CHECK(coeffs(s) == std::vector<long long>{1, 1, 1, 1, 1, 1});
    // den(0) = -1 is allowed
    auto m = series_expand(make_rational(IntPoly::one(), poly({-1, 1})), 3);
    CHECK(coeffs(m) == std::vector<long long>{-1, -1, -1, -1});
    CHECK_THROWS_AS(series_expand(make_rational(IntPoly::one(), poly({2, 1})), 3),
                    input_error);
}

TEST_CASE("series multiplication agrees with rational-function product") {
    RationalFn a = make_rational(IntPoly::one(), poly({1, -1, -1}));
    RationalFn b = make_rational(poly({1, 1}), poly({1, 0, 0, -1}));
    int cap = 24;
    auto lhs = series_expand(a, cap) * series_expand(b, cap);
    auto rhs = series_expand(a * b, cap);
    CHECK(lhs == rhs);
    auto sum_lhs = series_expand(a, cap) + series_expand(b, cap);
    auto sum_rhs = series_expand(a + b, cap);
    CHECK(sum_lhs == sum_rhs);
}

TEST_CASE("series coefficients stay exact far beyond 64 bits") {
    // 1/(1 - 3t): coefficient at 60 is 3^60 > 2^64
    auto s = series_expand(make_rational(IntPoly::one(), poly({1, -3})), 60);
    Int want = 1;
    for (int i = 0; i < 60; ++i)
        want *= 3;
    CHECK(s.at(60) == want);
}

TEST_CASE("field render labels") {
    CHECK(render(Field::Q()) == "Q");
    CHECK(render(Field::Fp(7)) == "F7");
}
