#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopdec/errors.hpp"
#include "loopdec/momentangle.hpp"
#include "loopdec/spacexpr.hpp"

#include <algorithm>
#include <map>

using namespace loopdec;

namespace {

std::uint32_t mask_of(std::initializer_list<int> vs) {
    std::uint32_t m = 0;
    for (int v : vs)
        m |= std::uint32_t(1) << (v - 1);
    return m;
}

GradedGroup free_at(std::initializer_list<std::pair<int, long long>> ranks) {
    GradedGroup g;
    for (auto [d, r] : ranks)
        g.add_rank(d, r);
    g.canonicalize();
    return g;
}

SimplicialComplex rp2_six() {
    return make_complex("RP2_6", 6,
                        {{1, 2, 5},
                         {1, 2, 6},
                         {1, 3, 4},
                         {1, 3, 6},
                         {1, 4, 5},
                         {2, 3, 4},
                         {2, 3, 5},
                         {2, 4, 6},
                         {3, 5, 6},
                         {4, 5, 6}});
}

/// Closed moment-angle manifold homology: punctured wedge plus the top class.
GradedGroup closed_zk(const SimplicialComplex& k, int sphere_dim) {
    GradedGroup h = zk_skeleton(k).homology;
    h.add_rank(k.vertices + sphere_dim + 1, 1);
    h.canonicalize();
    return h;
}

/// Reduced Kunneth for torsion-free factors: a + b + a (x) b.
GradedGroup product_ranks(const GradedGroup& a, const GradedGroup& b) {
    for (const GradedGroup* g : {&a, &b})
        for (int d : g->support())
            REQUIRE(g->torsion_at(d).empty());
    GradedGroup out;
    for (int i : a.support())
        out.add_rank(i, a.rank_at(i));
    for (int j : b.support())
        out.add_rank(j, b.rank_at(j));
    for (int i : a.support())
        for (int j : b.support())
            out.add_rank(i + j, a.rank_at(i) * b.rank_at(j));
    out.canonicalize();
    return out;
}

} // namespace

TEST_CASE("make_complex enforces the facet invariants") {
    CHECK_THROWS_AS(make_complex("bad", 3, {{1, 2}, {3, 4}}), input_error);
    CHECK_THROWS_AS(make_complex("bad", 3, {{1, 2}, {1, 2, 3}}), input_error);
    CHECK_THROWS_AS(make_complex("bad", 3, {{1, 2}}), input_error); // vertex 3 uncovered
    CHECK_THROWS_AS(make_complex("bad", 3, {{1, 2}, {}, {3}}), input_error);
    CHECK_THROWS_AS(make_complex("bad", 0, {}), input_error);
    CHECK_THROWS_AS(make_complex("bad", 32, {{1}}), input_error);

    SimplicialComplex c4 = cycle_complex(4);
    CHECK(c4.vertices == 4);
    CHECK(c4.facets.size() == 4);
    CHECK(dimension(c4) == 1);
    CHECK(is_face(c4, mask_of({1, 2})));
    CHECK(is_face(c4, mask_of({3})));
    CHECK(is_face(c4, 0));
    CHECK_FALSE(is_face(c4, mask_of({1, 3})));
    CHECK(mask_vertices(mask_of({2, 4})) == std::vector<int>{2, 4});
    CHECK(full_mask(4) == 0b1111u);
}

TEST_CASE("generators: cycles, simplex boundaries, joins") {
    CHECK_THROWS_AS(cycle_complex(2), input_error);
    CHECK_THROWS_AS(simplex_boundary(0), input_error);

    SimplicialComplex dd3 = simplex_boundary(3);
    CHECK(dd3.vertices == 4);
    CHECK(dd3.facets.size() == 4);
    CHECK(dimension(dd3) == 2);

    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    CHECK(j.vertices == 6);
    CHECK(j.facets.size() == 9);
    CHECK(dimension(j) == 3);
    CHECK(is_face(j, mask_of({1, 2, 4, 5})));
    CHECK_FALSE(is_face(j, mask_of({1, 2, 3})));

    SimplicialComplex jj = join(cycle_complex(4), cycle_complex(4));
    CHECK(jj.vertices == 8);
    CHECK(jj.facets.size() == 16);
    CHECK(dimension(jj) == 3);
}

TEST_CASE("neighbourliness") {
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    CHECK(is_k_neighbourly(j, 1));
    CHECK_FALSE(is_k_neighbourly(j, 2));
    CHECK_FALSE(is_k_neighbourly(cycle_complex(4), 1));
    for (const SimplicialComplex& k :
         {cycle_complex(4), j, simplex_boundary(4), rp2_six()})
        CHECK(is_k_neighbourly(k, 0));

    CHECK(neighbourliness(cycle_complex(4)) == 0);
    CHECK(neighbourliness(j) == 1);
    CHECK(neighbourliness(simplex_boundary(4)) == 3);
    CHECK(neighbourliness(rp2_six()) == 1);
    CHECK(neighbourliness(join(cycle_complex(4), cycle_complex(4))) == 0);
}

TEST_CASE("minimal missing faces") {
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    CHECK(minimal_missing_faces(j) ==
          std::vector<std::uint32_t>{mask_of({1, 2, 3}), mask_of({4, 5, 6})});
    CHECK(minimal_missing_faces(cycle_complex(4)) ==
          std::vector<std::uint32_t>{mask_of({1, 3}), mask_of({2, 4})});
    CHECK(minimal_missing_faces(simplex_boundary(4)) ==
          std::vector<std::uint32_t>{full_mask(5)});

    // all 15 edges are present, so the 10 non-facet triples are all minimal
    auto mm = minimal_missing_faces(rp2_six());
    CHECK(mm.size() == 10);
    for (std::uint32_t f : mm)
        CHECK(mask_vertices(f).size() == 3);
    CHECK(std::is_sorted(mm.begin(), mm.end()));
}

TEST_CASE("subcomplex homology kernel") {
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    CHECK(subcomplex_homology(j, mask_of({1, 2, 3})) == free_at({{1, 1}}));
    CHECK(subcomplex_homology(cycle_complex(4), mask_of({1, 3})) == free_at({{0, 1}}));
    CHECK(subcomplex_homology(cycle_complex(4), mask_of({1, 2})) == GradedGroup{});
    CHECK(subcomplex_homology(cycle_complex(4), 0) == GradedGroup{});

    // simplex boundaries carry exactly the sphere homology
    for (int n = 1; n <= 5; ++n) {
        SimplicialComplex dd = simplex_boundary(n);
        CHECK(subcomplex_homology(dd, full_mask(dd.vertices)) == free_at({{n - 1, 1}}));
    }

    // the 6-vertex projective plane: Z/2 in degree 1 and nothing above
    GradedGroup rp2 = subcomplex_homology(rp2_six(), full_mask(6));
    GradedGroup expect;
    expect.add_torsion(1, 2, 1, 1);
    expect.canonicalize();
    CHECK(rp2 == expect);

    // deleting one vertex leaves a Moebius band, homotopy equivalent to S^1
    CHECK(subcomplex_homology(rp2_six(), full_mask(6) & ~mask_of({1})) ==
          free_at({{1, 1}}));
}

TEST_CASE("sphere check: necessary conditions") {
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    SphereCheck ok3 = sphere_check(j, 3);
    CHECK(ok3.ok);
    CHECK(ok3.dim == 3);
    CHECK(ok3.failures.empty());

    CHECK(sphere_check(cycle_complex(4), 1).ok);
    CHECK_FALSE(sphere_check(j, 2).ok);

    SimplicialComplex two = make_complex(
        "2triangles", 6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    SphereCheck bad = sphere_check(two, 1);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.failures.empty());

    // right f-vector and pseudomanifold conditions, wrong homology
    SphereCheck rp2 = sphere_check(rp2_six(), 2);
    CHECK_FALSE(rp2.ok);
    CHECK_FALSE(rp2.failures.empty());
}

TEST_CASE("full-set subcomplex homology agrees with the sphere check") {
    CHECK(subcomplex_homology(cycle_complex(4), full_mask(4)) == free_at({{1, 1}}));
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    CHECK(sphere_check(j, 3).ok);
    CHECK(subcomplex_homology(j, full_mask(6)) == free_at({{3, 1}}));
}

TEST_CASE("zk skeleton: frozen small cases") {
    ZkSkeleton c4 = zk_skeleton(cycle_complex(4));
    CHECK(c4.homology == free_at({{3, 2}}));
    REQUIRE(c4.ledger.size() == 2);
    CHECK(c4.ledger[0].subset == mask_of({1, 3}));
    CHECK(c4.ledger[1].subset == mask_of({2, 4}));
    for (const auto& c : c4.ledger)
        CHECK(c.shifted == free_at({{3, 1}}));

    ZkSkeleton j = zk_skeleton(join(simplex_boundary(2), simplex_boundary(2)));
    CHECK(j.homology == free_at({{5, 2}}));
    REQUIRE(j.ledger.size() == 2);
    CHECK(j.ledger[0].subset == mask_of({1, 2, 3}));
    CHECK(j.ledger[1].subset == mask_of({4, 5, 6}));

    ZkSkeleton dd = zk_skeleton(simplex_boundary(4));
    CHECK(dd.homology == GradedGroup{});
    CHECK(dd.ledger.empty());
}

TEST_CASE("zk skeleton: double join ledger") {
    ZkSkeleton z = zk_skeleton(join(cycle_complex(4), cycle_complex(4)));
    CHECK(z.homology == free_at({{3, 4}, {6, 6}, {9, 4}}));
    CHECK(z.ledger.size() == 14);
    std::map<size_t, int> by_size;
    for (const auto& c : z.ledger)
        by_size[mask_vertices(c.subset).size()]++;
    CHECK(by_size == std::map<size_t, int>{{2, 4}, {4, 6}, {6, 4}});
}

TEST_CASE("zk skeleton matches the product-minus-top oracle on joins") {
    struct Case {
        SimplicialComplex a, b;
        int na, nb;
    };
    std::vector<Case> cases;
    cases.push_back({simplex_boundary(1), simplex_boundary(1), 0, 0}); // C4
    cases.push_back({simplex_boundary(2), simplex_boundary(2), 1, 1});
    cases.push_back({cycle_complex(4), cycle_complex(4), 1, 1});
    cases.push_back({cycle_complex(4), simplex_boundary(2), 1, 1});
    cases.push_back({cycle_complex(5), cycle_complex(4), 1, 1});

    for (const auto& c : cases) {
        CAPTURE(c.a.name);
        CAPTURE(c.b.name);
        GradedGroup prod = product_ranks(closed_zk(c.a, c.na), closed_zk(c.b, c.nb));
        int top = (c.a.vertices + c.na + 1) + (c.b.vertices + c.nb + 1);
        REQUIRE(prod.rank_at(top) == 1);
        prod.add_rank(top, -1);
        prod.canonicalize();
        CHECK(zk_skeleton(join(c.a, c.b)).homology == prod);
    }
}

TEST_CASE("zk skeleton: serial equals parallel, runs are deterministic") {
    for (const SimplicialComplex& k :
         {join(cycle_complex(4), cycle_complex(4)), rp2_six(), cycle_complex(6)}) {
        CAPTURE(k.name);
        ZkSkeleton p1 = zk_skeleton(k);
        ZkSkeleton p2 = zk_skeleton(k);
        ZkSkeleton s = zk_skeleton_serial(k);
        CHECK(p1.homology == s.homology);
        CHECK(p1.homology == p2.homology);
        REQUIRE(p1.ledger.size() == s.ledger.size());
        REQUIRE(p1.ledger.size() == p2.ledger.size());
        for (size_t i = 0; i < p1.ledger.size(); ++i) {
            CHECK(p1.ledger[i].subset == s.ledger[i].subset);
            CHECK(p1.ledger[i].shifted == s.ledger[i].shifted);
            CHECK(p1.ledger[i].subset == p2.ledger[i].subset);
            CHECK(p1.ledger[i].shifted == p2.ledger[i].shifted);
        }
    }
}

TEST_CASE("zk skeleton: Euler characteristic agrees with the ledger") {
    for (const SimplicialComplex& k :
         {join(cycle_complex(4), cycle_complex(4)), rp2_six(),
          join(simplex_boundary(2), simplex_boundary(2))}) {
        ZkSkeleton z = zk_skeleton(k);
        long long total = 0;
        for (int d : z.homology.support())
            total += (d % 2 == 0 ? 1 : -1) * z.homology.rank_at(d);
        long long from_ledger = 0;
        for (const auto& c : z.ledger)
            for (int d : c.shifted.support())
                from_ledger += (d % 2 == 0 ? 1 : -1) * c.shifted.rank_at(d);
        CHECK(total == from_ledger);
    }
}

TEST_CASE("zk skeleton: subset enumeration budget") {
    ZkOptions tight;
    tight.max_vertices = 6;
    CHECK_THROWS_AS(zk_skeleton(join(cycle_complex(4), cycle_complex(4)), tight),
                    input_error);
    CHECK_NOTHROW(zk_skeleton(join(simplex_boundary(2), simplex_boundary(2)), tight));
}

TEST_CASE("zk decompose: neighbourly odd spheres take the integral branch") {
    SimplicialComplex j = join(simplex_boundary(2), simplex_boundary(2));
    j.assertions = {"sphere:3"};
    ZkReport r = zk_decompose(j);
    CHECK(r.branch == "integral-neighbourly");
    CHECK(r.sphere_dim == 3);
    CHECK(r.zk_dimension == 10);
    CHECK(r.connectivity == 4);
    CHECK(r.neighbourly == 1);
    CHECK_FALSE(r.minimally_non_golod);
    CHECK(r.complex.dim == 10);
    CHECK(r.complex.conn == 5); // conn records the bottom degree m

    CHECK(r.complex.flags.bottom_cell_retract == Flag::Yes);
    REQUIRE(r.decomposition.has_value());
    CHECK(r.decomposition->bottom == 5);
    CHECK(r.decomposition->inverted.empty());
    CHECK(r.decomposition->evidence.member == Membership::Yes);
    CHECK(render(r.decomposition->fibre) == "S^5");
    CHECK(r.decomposition->statement.find("ΩS^5 × Ω(S^5)") != std::string::npos);
}

TEST_CASE("zk decompose: the 4-cycle gives the two-sphere product splitting") {
    SimplicialComplex c4 = cycle_complex(4);
    c4.assertions = {"sphere:1"};
    ZkReport r = zk_decompose(c4);
    CHECK(r.branch == "integral-neighbourly");
    CHECK(r.zk_dimension == 6);
    CHECK(r.connectivity == 2);
    CHECK(r.complex.flags.skeleton == SkeletonClass::WedgeSpheres);
    REQUIRE(r.decomposition.has_value());
    CHECK(r.decomposition->bottom == 3);
    CHECK(render(r.decomposition->fibre) == "S^3");
}

TEST_CASE("zk decompose: asserted minimally non-Golod branch localizes") {
    SimplicialComplex jj = join(cycle_complex(4), cycle_complex(4));
    jj.assertions = {"sphere:3", "minimally_non_Golod"};
    ZkReport r = zk_decompose(jj);
    CHECK(r.branch == "local-non-golod");
    CHECK(r.neighbourly == 0);
    CHECK(r.connectivity == 2);
    CHECK(r.zk_dimension == 12);
    CHECK(r.minimally_non_golod);
    CHECK(r.complex.flags.skeleton == SkeletonClass::Unknown);
    REQUIRE(r.decomposition.has_value());
    CHECK(r.decomposition->bottom == 3);
    CHECK(r.decomposition->inverted == std::set<long long>{2, 3});
    CHECK(r.decomposition->evidence.member == Membership::Conditional);
    CHECK(r.decomposition->statement.find("ΩS^3 × Ω(") != std::string::npos);
    bool rule_seen = false;
    for (const auto& rule : r.decomposition->evidence.rules)
        rule_seen = rule_seen || rule == "local-non-golod-decomposition";
    CHECK(rule_seen);
}

TEST_CASE("zk decompose: skeleton-only mode skips the splitting") {
    SimplicialComplex c4 = cycle_complex(4);
    c4.assertions = {"sphere:1"};
    ZkReport r = zk_decompose(c4, false);
    CHECK_FALSE(r.decomposition.has_value());
    CHECK(r.skeleton.homology == free_at({{3, 2}}));
}

TEST_CASE("zk decompose: hypothesis failures are named") {
    auto hyp = [](const SimplicialComplex& k) -> std::string {
        try {
            zk_decompose(k);
            return "";
        } catch (const hypothesis_error& e) {
            return e.hypothesis();
        }
    };

    SimplicialComplex dd = simplex_boundary(4);
    dd.assertions = {"sphere:3"};
    CHECK(hyp(dd) == "boundary of a simplex");

    // cycles auto-assert sphere:1, so strip the assertion to hit the guard
    SimplicialComplex bare = cycle_complex(4);
    bare.assertions.clear();
    CHECK(hyp(bare) == "sphere assertion");

    SimplicialComplex two = make_complex(
        "2triangles", 6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}},
        {"sphere:1"});
    CHECK(hyp(two) == "sphere necessary conditions");

    SimplicialComplex rp2 = rp2_six();
    rp2.assertions = {"sphere:2"};
    CHECK(hyp(rp2) == "sphere necessary conditions");

    SimplicialComplex jj = join(cycle_complex(4), cycle_complex(4));
    jj.assertions = {"sphere:3"};
    CHECK(hyp(jj) == "moment-angle decomposition hypotheses");
}
