#include "loopdec/pdcomplex.hpp"

#include "loopdec/errors.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

std::string render(SkeletonClass c) {
    switch (c) {
    case SkeletonClass::WedgeSpheres: return "wedge_spheres";
    case SkeletonClass::WedgeSpheresMoore: return "wedge_spheres_moore";
    case SkeletonClass::CoH: return "co_h";
    default: return "unknown";
    }
}

std::string render(Flag f) {
    switch (f) {
    case Flag::Yes: return "yes";
    case Flag::No: return "no";
    default: return "unknown";
    }
}

PDComplex make_pd(std::string name, int dim, int conn, GradedGroup homology, PDFlags flags,
                  std::vector<std::string> provenance) {
    if (dim < 3)
        throw input_error("dimension must be at least 3, got " + std::to_string(dim));
    if (conn < 2 || conn >= dim)
        throw input_error("connectivity parameter must satisfy 2 <= m < n, got m=" +
                          std::to_string(conn) + ", n=" + std::to_string(dim));
    homology.canonicalize();
    for (int d : homology.support()) {
        if (d < conn || d > dim)
            throw input_error("homology in degree " + std::to_string(d) +
                              " outside the allowed range " + std::to_string(conn) + ".." +
                              std::to_string(dim));
    }
    // top class is implied when omitted
    if (homology.rank_at(dim) == 0 && homology.torsion_at(dim).empty())
        homology.add_rank(dim, 1);
    return PDComplex{std::move(name), dim, conn, std::move(homology), flags,
                     std::move(provenance)};
}

ValidationReport validate(const PDComplex& M) {
    ValidationReport rep;
    auto fail = [&](std::string check, std::string detail) {
        rep.issues.push_back({std::move(check), std::move(detail)});
    };

    if (M.dim < 3)
        fail("dimension", "n = " + std::to_string(M.dim) + " < 3");
    if (M.conn < 2 || M.conn >= M.dim)
        fail("connectivity", "need 2 <= m < n, have m = " + std::to_string(M.conn) +
                                 ", n = " + std::to_string(M.dim));

    for (int d : M.homology.support()) {
        if (d < M.conn || d > M.dim)
            fail("degree range", "homology in degree " + std::to_string(d) +
                                     " outside " + std::to_string(M.conn) + ".." +
                                     std::to_string(M.dim));
    }

    const auto& top = M.homology.groups.count(M.dim) ? M.homology.groups.at(M.dim)
                                                     : DegreeGroup{};
    if (top.rank != 1 || !top.torsion.empty())
        fail("top class", "H_" + std::to_string(M.dim) + " = " + render(top) +
                              ", expected Z");

    for (int i = 1; i < M.dim; ++i) {
        long long a = M.homology.rank_at(i);
        long long b = M.homology.rank_at(M.dim - i);
        if (a != b)
            fail("rank duality", "rank H_" + std::to_string(i) + " = " + std::to_string(a) +
                                     " but rank H_" + std::to_string(M.dim - i) + " = " +
                                     std::to_string(b));
    }

    for (int i = 1; 2 * i <= M.dim - 1; ++i) {
        int j = M.dim - 1 - i;
        auto a = M.homology.torsion_at(i);
        auto b = M.homology.torsion_at(j);
        if (a != b) {
            std::ostringstream os;
            os << "torsion of H_" << i << " and H_" << j << " differ";
            fail("torsion duality", os.str());
        }
    }

    if (M.flags.bottom_cell_retract == Flag::Yes && M.homology.rank_at(M.conn) == 0)
        fail("retraction flag", "bottom_cell_retract = yes but H_" + std::to_string(M.conn) +
                                    " has no Z summand");

    if (M.flags.skeleton == SkeletonClass::WedgeSpheres) {
        for (int d : M.homology.support()) {
            if (d < M.dim && !M.homology.torsion_at(d).empty())
                fail("skeleton flag", "skeleton class wedge_spheres but torsion in degree " +
                                          std::to_string(d));
        }
    }

    return rep;
}

void require_valid(const PDComplex& M) {
    auto rep = validate(M);
    if (rep.ok())
        return;
    std::ostringstream os;
    for (size_t i = 0; i < rep.issues.size(); ++i) {
        if (i)
            os << "; ";
        os << rep.issues[i].check << ": " << rep.issues[i].detail;
    }
    throw hypothesis_error("duality structure", os.str());
}

SkeletonModel skeleton(const PDComplex& M) {
    SkeletonModel sk;
    sk.cls = M.flags.skeleton;
    for (const auto& [d, g] : M.homology.groups) {
        if (d >= M.dim)
            continue;
        sk.homology.add_rank(d, g.rank);
        for (const auto& t : g.torsion)
            sk.homology.add_torsion(d, t.prime, t.exponent, t.multiplicity);
    }
    sk.homology.canonicalize();
    if (sk.cls == SkeletonClass::WedgeSpheres || sk.cls == SkeletonClass::WedgeSpheresMoore)
        sk.expr = expr_from_homology(sk.homology);
    return sk;
}

int bottom_degree(const PDComplex& M) {
    for (const auto& [d, g] : M.homology.groups)
        if (d < M.dim && g.rank > 0)
            return d;
    throw hypothesis_error("bottom sphere",
                           "no Z summand below the top degree; "
                           "homotopy sphere-like input is out of scope");
}

GradedGroup localized_homology(const GradedGroup& g, const std::set<long long>& inverted) {
    GradedGroup out;
    for (const auto& [d, grp] : g.groups) {
        out.add_rank(d, grp.rank);
        for (const auto& t : grp.torsion)
            if (!inverted.count(t.prime))
                out.add_torsion(d, t.prime, t.exponent, t.multiplicity);
    }
    out.canonicalize();
    return out;
}

} // namespace loopdec
