#include "loopdec/momentangle.hpp"

#include "loopdec/errors.hpp"
#include "loopdec/localize.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <sstream>

namespace loopdec {

namespace {

int bits(std::uint32_t x) { return std::popcount(x); }

std::string mask_to_string(std::uint32_t mask) {
    std::string out = "{";
    bool first = true;
    for (int v : mask_vertices(mask)) {
        if (!first)
            out += ",";
        out += std::to_string(v);
        first = false;
    }
    return out + "}";
}

/// O(1) face queries via a full subset table when the vertex count allows,
/// falling back to a facet scan otherwise.
class FaceOracle {
public:
    explicit FaceOracle(const SimplicialComplex& k) : k_(k) {
        if (k.vertices <= 22) {
            table_.assign(std::size_t(1) << k.vertices, false);
            for (std::uint32_t f : k.facets) {
                std::uint32_t s = f;
                while (true) {
                    table_[s] = true;
                    if (s == 0)
                        break;
                    s = (s - 1) & f;
                }
            }
        }
    }

    bool operator()(std::uint32_t mask) const {
        if (!table_.empty())
            return table_[mask];
        for (std::uint32_t f : k_.facets)
            if ((mask & f) == mask)
                return true;
        return false;
    }

private:
    const SimplicialComplex& k_;
    std::vector<bool> table_;
};

} // namespace

std::vector<int> mask_vertices(std::uint32_t mask) {
    std::vector<int> out;
    for (int v = 1; mask; ++v, mask >>= 1)
        if (mask & 1u)
            out.push_back(v);
    return out;
}

std::uint32_t full_mask(int vertices) {
    return vertices >= 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << vertices) - 1;
}

SimplicialComplex make_complex(std::string name, int vertices,
                               const std::vector<std::vector<int>>& facets,
                               std::vector<std::string> assertions) {
    if (vertices < 1 || vertices > 31)
        throw input_error("vertex count must be in 1..31, got " + std::to_string(vertices));
    SimplicialComplex k;
    k.name = std::move(name);
    k.vertices = vertices;
    k.assertions = std::move(assertions);
    for (const auto& f : facets) {
        if (f.empty())
            throw input_error("empty facet");
        std::uint32_t mask = 0;
        for (int v : f) {
            if (v < 1 || v > vertices)
                throw input_error("facet vertex " + std::to_string(v) + " outside 1.." +
                                  std::to_string(vertices));
            mask |= std::uint32_t(1) << (v - 1);
        }
        k.facets.push_back(mask);
    }
    std::sort(k.facets.begin(), k.facets.end());
    for (size_t i = 0; i < k.facets.size(); ++i)
        for (size_t j = 0; j < k.facets.size(); ++j)
            if (i != j && (k.facets[i] & k.facets[j]) == k.facets[i])
                throw input_error("facet " + mask_to_string(k.facets[i]) +
                                  " is contained in facet " + mask_to_string(k.facets[j]));
    std::uint32_t covered = 0;
    for (std::uint32_t f : k.facets)
        covered |= f;
    if (covered != full_mask(vertices))
        throw input_error("some vertex lies in no facet");
    return k;
}

int dimension(const SimplicialComplex& k) {
    int d = -1;
    for (std::uint32_t f : k.facets)
        d = std::max(d, bits(f) - 1);
    return d;
}

bool is_face(const SimplicialComplex& k, std::uint32_t mask) {
    for (std::uint32_t f : k.facets)
        if ((mask & f) == mask)
            return true;
    return false;
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    SimplicialComplex k;
    k.name = (a.name.empty() ? "K1" : a.name) + "*" + (b.name.empty() ? "K2" : b.name);
    k.vertices = a.vertices + b.vertices;
    for (std::uint32_t fa : a.facets)
        for (std::uint32_t fb : b.facets)
            k.facets.push_back(fa | (fb << a.vertices));
    std::sort(k.facets.begin(), k.facets.end());
    // sphere * sphere = sphere of summed dimension + 1
    auto sphere_dim = [](const SimplicialComplex& s) -> std::optional<int> {
        for (const auto& as : s.assertions)
            if (as.rfind("sphere:", 0) == 0)
                return std::stoi(as.substr(7));
        return std::nullopt;
    };
    auto da = sphere_dim(a), db = sphere_dim(b);
    if (da && db)
        k.assertions.push_back("sphere:" + std::to_string(*da + *db + 1));
    return k;
}

SimplicialComplex cycle_complex(int n) {
    if (n < 3)
        throw input_error("cycle needs at least 3 vertices");
    std::vector<std::vector<int>> facets;
    for (int i = 1; i <= n; ++i)
        facets.push_back({i, i % n + 1});
    return make_complex("C" + std::to_string(n), n, facets, {"sphere:1"});
}

SimplicialComplex simplex_boundary(int n) {
    if (n < 1)
        throw input_error("simplex boundary needs n >= 1");
    std::vector<std::vector<int>> facets;
    for (int omit = 1; omit <= n + 1; ++omit) {
        std::vector<int> f;
        for (int v = 1; v <= n + 1; ++v)
            if (v != omit)
                f.push_back(v);
        facets.push_back(f);
    }
    return make_complex("dDelta" + std::to_string(n), n + 1, facets,
                        {"sphere:" + std::to_string(n - 1)});
}

bool is_k_neighbourly(const SimplicialComplex& k, int deg) {
    int s = deg + 1;
    if (s <= 0 || s > k.vertices)
        return true; // vacuous
    FaceOracle face(k);
    std::uint32_t full = full_mask(k.vertices);
    std::uint32_t c = (std::uint32_t(1) << s) - 1;
    while (c <= full) {
        if (!face(c))
            return false;
        // next mask with the same popcount (Gosper)
        std::uint32_t lo = c & -c;
        std::uint32_t lz = (c + lo) & ~c;
        c = c + lo + (lz / lo) / 2 - 1;
        if (c > full)
            break;
    }
    return true;
}

int neighbourliness(const SimplicialComplex& k) {
    int best = 0;
    for (int deg = 0; deg <= k.vertices; ++deg) {
        if (is_k_neighbourly(k, deg))
            best = deg;
        else
            break;
    }
    return best;
}

std::vector<std::uint32_t> minimal_missing_faces(const SimplicialComplex& k) {
    FaceOracle face(k);
    std::uint32_t full = full_mask(k.vertices);
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 1; m <= full && m != 0; ++m) {
        if (face(m))
            continue;
        bool minimal = true;
        for (std::uint32_t rest = m; rest;) {
            std::uint32_t bit = rest & -rest;
            rest ^= bit;
            if (!face(m ^ bit)) {
                minimal = false;
                break;
            }
        }
        if (minimal)
            out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
        return bits(a) != bits(b) ? bits(a) < bits(b) : a < b;
    });
    return out;
}

namespace {

std::vector<TorsionSummand> factor_invariant(const Int& value) {
    std::vector<TorsionSummand> out;
    Int v = value;
    if (v < 0)
        v = -v;
    for (long long p = 2; p <= 1000000 && v > 1; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({p, e, 1});
    }
    if (v > 1)
        throw input_error("torsion coefficient " + value.str() +
                          " exceeds the factorization limit");
    return out;
}

} // namespace

GradedGroup subcomplex_homology(const SimplicialComplex& k, std::uint32_t I) {
    I &= full_mask(k.vertices);
    GradedGroup out;
    if (I == 0)
        return out;
    if (is_face(k, I))
        return out; // full simplex on I, contractible

    // faces of the full subcomplex K_I, grouped by dimension
    std::vector<std::uint32_t> faces;
    for (std::uint32_t f : k.facets) {
        std::uint32_t g = f & I;
        for (std::uint32_t s = g; s != 0; s = (s - 1) & g)
            faces.push_back(s);
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    if (faces.empty())
        throw std::logic_error("full subcomplex on a nonempty vertex set is empty");

    int top = 0;
    for (std::uint32_t f : faces)
        top = std::max(top, bits(f) - 1);
    std::vector<std::vector<std::uint32_t>> by_dim(top + 1);
    for (std::uint32_t f : faces)
        by_dim[bits(f) - 1].push_back(f);
    for (auto& bucket : by_dim)
        std::sort(bucket.begin(), bucket.end());

    // boundary ranks and invariant factors; index 0 is the augmentation
    std::vector<long long> rank(top + 2, 0);
    std::vector<std::vector<Int>> factors(top + 2);
    rank[0] = 1; // augmentation C_0 -> Z, nonzero since faces exist
    for (int j = 1; j <= top; ++j) {
        const auto& rows = by_dim[j - 1];
        const auto& cols = by_dim[j];
        if (cols.empty())
            continue;
        std::map<std::uint32_t, int> row_index;
        for (size_t r = 0; r < rows.size(); ++r)
            row_index[rows[r]] = static_cast<int>(r);
        Matrix mat(rows.size(), std::vector<Int>(cols.size(), 0));
        for (size_t c = 0; c < cols.size(); ++c) {
            std::uint32_t sigma = cols[c];
            int sign = 1;
            for (std::uint32_t rest = sigma; rest;) {
                std::uint32_t bit = rest & -rest;
                rest ^= bit;
                mat[row_index.at(sigma ^ bit)][c] = sign;
                sign = -sign;
            }
        }
        auto inv = smith_normal_form(mat);
        rank[j] = static_cast<long long>(inv.size());
        factors[j] = std::move(inv);
    }

    for (int j = 0; j <= top; ++j) {
        long long free_rank = static_cast<long long>(by_dim[j].size()) - rank[j] - rank[j + 1];
        out.add_rank(j, free_rank);
        for (const Int& f : factors[j + 1])
            if (f > 1)
                for (const auto& t : factor_invariant(f))
                    out.add_torsion(j, t.prime, t.exponent, t.multiplicity);
    }
    out.canonicalize();
    return out;
}

SphereCheck sphere_check(const SimplicialComplex& k, int n) {
    SphereCheck sc;
    sc.dim = n;

    bool pure = true;
    for (std::uint32_t f : k.facets) {
        if (bits(f) != n + 1) {
            sc.failures.push_back("not pure of dimension " + std::to_string(n) + ": facet " +
                                  mask_to_string(f) + " has dimension " +
                                  std::to_string(bits(f) - 1));
            pure = false;
            break;
        }
    }

    if (pure) {
        // every ridge in exactly two facets
        std::map<std::uint32_t, std::vector<int>> ridge_facets;
        for (size_t i = 0; i < k.facets.size(); ++i) {
            std::uint32_t f = k.facets[i];
            for (std::uint32_t rest = f; rest;) {
                std::uint32_t bit = rest & -rest;
                rest ^= bit;
                ridge_facets[f ^ bit].push_back(static_cast<int>(i));
            }
        }
        bool pseudo = true;
        for (const auto& [ridge, fs] : ridge_facets) {
            if (fs.size() != 2) {
                sc.failures.push_back("ridge " + mask_to_string(ridge) + " lies in " +
                                      std::to_string(fs.size()) + " facets, expected 2");
                pseudo = false;
                break;
            }
        }

        if (pseudo && !k.facets.empty()) {
            // facet adjacency graph connected
            std::vector<std::vector<int>> adj(k.facets.size());
            for (const auto& [ridge, fs] : ridge_facets) {
                adj[fs[0]].push_back(fs[1]);
                adj[fs[1]].push_back(fs[0]);
            }
            std::vector<bool> seen(k.facets.size(), false);
            std::queue<int> q;
            q.push(0);
            seen[0] = true;
            size_t reached = 1;
            while (!q.empty()) {
                int cur = q.front();
                q.pop();
                for (int nxt : adj[cur])
                    if (!seen[nxt]) {
                        seen[nxt] = true;
                        ++reached;
                        q.push(nxt);
                    }
            }
            if (reached != k.facets.size())
                sc.failures.push_back("facet adjacency graph is disconnected");
        }
    }

    GradedGroup h = subcomplex_homology(k, full_mask(k.vertices));
    GradedGroup sphere;
    sphere.add_rank(n, 1);
    if (!(h == sphere))
        sc.failures.push_back("reduced homology is " + render(h) + ", expected " +
                              render(sphere));

    sc.ok = sc.failures.empty();
    return sc;
}

namespace {

ZkSkeleton zk_impl(const SimplicialComplex& k, int max_vertices, bool parallel) {
    if (k.vertices > max_vertices)
        throw input_error("subset enumeration budget exceeded: " + std::to_string(k.vertices) +
                          " vertices > limit " + std::to_string(max_vertices));
    const std::uint32_t full = full_mask(k.vertices);
    FaceOracle face(k);

    std::vector<ZkContribution> ledger;
    std::exception_ptr error;

    auto handle = [&face, &k](std::uint32_t I,
                              std::vector<ZkContribution>& sink) {
        if (face(I))
            return;
        GradedGroup g = subcomplex_homology(k, I);
        if (g.trivial())
            return;
        sink.push_back({I, shift(g, 1 + bits(I))});
    };

    if (parallel) {
#pragma omp parallel
        {
            std::vector<ZkContribution> local;
#pragma omp for schedule(dynamic, 64) nowait
            for (long long im = 1; im < static_cast<long long>(full); ++im) {
                try {
                    handle(static_cast<std::uint32_t>(im), local);
                } catch (...) {
#pragma omp critical(zk_error)
                    if (!error)
                        error = std::current_exception();
                }
            }
#pragma omp critical(zk_merge)
            ledger.insert(ledger.end(), local.begin(), local.end());
        }
    } else {
        for (long long im = 1; im < static_cast<long long>(full); ++im)
            handle(static_cast<std::uint32_t>(im), ledger);
    }
    if (error)
        std::rethrow_exception(error);

    std::sort(ledger.begin(), ledger.end(), [](const ZkContribution& a, const ZkContribution& b) {
        int pa = bits(a.subset), pb = bits(b.subset);
        return pa != pb ? pa < pb : a.subset < b.subset;
    });
    ZkSkeleton sk;
    for (const auto& c : ledger)
        sk.homology = sum(sk.homology, c.shifted);
    sk.ledger = std::move(ledger);
    return sk;
}

std::optional<int> asserted_sphere_dim(const SimplicialComplex& k) {
    for (const auto& a : k.assertions)
        if (a.rfind("sphere:", 0) == 0)
            return std::stoi(a.substr(7));
    return std::nullopt;
}

bool asserted_non_golod(const SimplicialComplex& k) {
    return std::find(k.assertions.begin(), k.assertions.end(), "minimally_non_Golod") !=
           k.assertions.end();
}

} // namespace

ZkSkeleton zk_skeleton(const SimplicialComplex& k, const ZkOptions& opts) {
    return zk_impl(k, opts.max_vertices, opts.parallel);
}

ZkSkeleton zk_skeleton_serial(const SimplicialComplex& k, int max_vertices) {
    return zk_impl(k, max_vertices, false);
}

ZkReport zk_decompose(const SimplicialComplex& k, bool decompose, const ZkOptions& opts) {
    ZkReport r;
    r.name = "Z_" + (k.name.empty() ? "K" : k.name);

    auto dim_assert = asserted_sphere_dim(k);
    if (!dim_assert)
        throw hypothesis_error("sphere assertion",
                               "input must assert 'sphere:<n>'; the combinatorial checks are "
                               "necessary but not sufficient");
    int d = *dim_assert;
    r.sphere_dim = d;
    r.minimally_non_golod = asserted_non_golod(k);

    r.sphere = sphere_check(k, d);
    if (!r.sphere.ok) {
        std::string msg;
        for (size_t i = 0; i < r.sphere.failures.size(); ++i)
            msg += (i ? "; " : "") + r.sphere.failures[i];
        throw hypothesis_error("sphere necessary conditions", msg);
    }

    r.missing_faces = minimal_missing_faces(k);
    if (r.missing_faces.size() == 1 && r.missing_faces[0] == full_mask(k.vertices))
        throw hypothesis_error("boundary of a simplex",
                               "the moment-angle manifold of the simplex boundary is a sphere; "
                               "the splitting needs a second cell");

    r.neighbourly = neighbourliness(k);
    r.zk_dimension = k.vertices + d + 1;

    int nb; // neighbourliness degree driving the bottom sphere
    bool branch_a = (d % 2 == 1) && r.neighbourly >= (d - 1) / 2;
    if (branch_a) {
        nb = (d - 1) / 2;
        r.branch = "integral-neighbourly";
    } else if (r.minimally_non_golod) {
        nb = r.neighbourly;
        r.branch = "local-non-golod";
    } else {
        throw hypothesis_error(
            "moment-angle decomposition hypotheses",
            "K is not a neighbourly odd-dimensional sphere (dimension " + std::to_string(d) +
                ", neighbourliness " + std::to_string(r.neighbourly) +
                ") and minimally_non_Golod is not asserted");
    }
    r.connectivity = 2 * nb + 2;

    bool have_face = false;
    for (std::uint32_t f : r.missing_faces)
        have_face = have_face || bits(f) == nb + 2;
    if (!have_face)
        throw hypothesis_error("minimal missing face",
                               "no minimal missing face of dimension " + std::to_string(nb + 1) +
                                   "; the bottom-sphere retraction rule does not apply");

    r.skeleton = zk_impl(k, opts.max_vertices, opts.parallel);

    int bottom = 2 * nb + 3;
    PDFlags flags;
    flags.bottom_cell_retract = Flag::Yes;
    flags.cup_square_zero = Flag::Yes; // pulled back through the retraction
    std::vector<std::string> provenance = {"missing-face-retraction"};
    if (branch_a) {
        if (d <= 3) {
            // odd spheres up to S^3: the skeleton is a wedge of spheres
            bool torsion_free = true;
            for (int deg : r.skeleton.homology.support())
                torsion_free = torsion_free && r.skeleton.homology.torsion_at(deg).empty();
            if (!torsion_free)
                throw hypothesis_error("sphere assertion",
                                       "torsion in the skeleton contradicts the asserted "
                                       "low-dimensional sphere");
            flags.skeleton = SkeletonClass::WedgeSpheres;
            provenance.push_back("low-sphere-wedge-skeleton");
        } else {
            flags.skeleton = SkeletonClass::CoH; // the wedge formula is a suspension
            provenance.push_back("punctured-moment-angle-wedge");
        }
    } else {
        flags.skeleton = SkeletonClass::Unknown;
        provenance.push_back("minimally-non-golod-assertion");
    }
    for (const auto& a : k.assertions)
        provenance.push_back("assertion: " + a);

    r.complex = make_pd(r.name, r.zk_dimension, bottom, r.skeleton.homology, flags, provenance);
    require_valid(r.complex);

    HypothesisEvidence ev;
    ev.bottom = bottom;
    if (branch_a) {
        ev.member = Membership::Yes;
        ev.effective_class = flags.skeleton;
        ev.rules = {"neighbourly-sphere-decomposition", "missing-face-retraction"};
        ev.reasons = {"neighbourly triangulation of an asserted odd sphere"};
    } else {
        ev.member = Membership::Conditional;
        ev.effective_class = SkeletonClass::WedgeSpheres;
        ev.rules = {"local-non-golod-decomposition", "missing-face-retraction"};
        ev.reasons = {"minimally non-Golod (asserted); homology torsion and small primes inverted"};
        ev.inverted = torsion_primes(r.skeleton.homology, 0, r.zk_dimension);
        long long threshold = (k.vertices + d - 4 * nb - 2) / 2;
        for (long long p : primes_up_to(threshold))
            ev.inverted.insert(p);
    }

    if (decompose)
        r.decomposition = decompose_with_evidence(r.complex, ev);
    return r;
}

} // namespace loopdec
