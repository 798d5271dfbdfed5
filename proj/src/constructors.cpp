#include "loopdec/constructors.hpp"

#include "loopdec/errors.hpp"

#include <algorithm>
#include <sstream>

namespace loopdec {

namespace {

std::vector<TorsionSummand> factor_order(long long q, long long multiplicity) {
    std::vector<TorsionSummand> out;
    if (q < 2)
        throw input_error("torsion order must be at least 2, got " + std::to_string(q));
    long long v = q;
    for (long long p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({p, e, multiplicity});
    }
    if (v > 1)
        out.push_back({v, 1, multiplicity});
    return out;
}

SkeletonClass join_class(SkeletonClass a, SkeletonClass b) {
    if (a == SkeletonClass::Unknown || b == SkeletonClass::Unknown)
        return SkeletonClass::Unknown;
    if (a == SkeletonClass::CoH || b == SkeletonClass::CoH)
        return SkeletonClass::CoH;
    if (a == SkeletonClass::WedgeSpheresMoore || b == SkeletonClass::WedgeSpheresMoore)
        return SkeletonClass::WedgeSpheresMoore;
    return SkeletonClass::WedgeSpheres;
}

bool integral_class_a(const PDComplex& m) {
    return m.flags.skeleton != SkeletonClass::Unknown &&
           m.flags.bottom_cell_retract == Flag::Yes && m.homology.rank_at(m.conn) >= 1;
}

} // namespace

PDComplex sphere_bundle(int m, int n, bool twisted) {
    if (m < 2 || m >= n - 1)
        throw hypothesis_error("sphere bundle dimensions",
                               "need 2 <= m < n-1, got m = " + std::to_string(m) +
                                   ", n = " + std::to_string(n));
    GradedGroup h;
    h.add_rank(m, 1);
    h.add_rank(n - m, 1); // merges with degree m when m = n-m
    PDFlags flags;
    flags.skeleton = SkeletonClass::WedgeSpheres;
    flags.bottom_cell_retract = Flag::Yes;
    flags.cup_square_zero = Flag::Yes; // bottom class pulled back from the base sphere
    std::string name = "S" + std::to_string(m) + (twisted ? "xt" : "x") + "S" +
                       std::to_string(n - m);
    return make_pd(std::move(name), n, m, std::move(h), flags,
                   {"sphere-bundle-structure", twisted ? "twisted clutching" : "product"});
}

PDComplex sphere_product(int a, int b) {
    return sphere_bundle(std::min(a, b), a + b, false);
}

PDComplex connected_sum(const PDComplex& a, const PDComplex& b) {
    require_valid(a);
    require_valid(b);
    if (a.dim != b.dim)
        throw hypothesis_error("equal dimensions",
                               "connected sum needs equal dimensions, got " +
                                   std::to_string(a.dim) + " and " + std::to_string(b.dim));
    int n = a.dim;
    GradedGroup h;
    for (const PDComplex* m : {&a, &b}) {
        for (const auto& [deg, grp] : m->homology.groups) {
            if (deg == n)
                continue;
            h.add_rank(deg, grp.rank);
            for (const auto& t : grp.torsion)
                h.add_torsion(deg, t);
        }
    }

    PDFlags flags;
    flags.skeleton = join_class(a.flags.skeleton, b.flags.skeleton);
    // retraction: one summand in the class integrally, the other co-H, and
    // the retracting summand no more connected than the other
    auto carries = [](const PDComplex& x, const PDComplex& y) {
        return integral_class_a(x) && y.flags.skeleton != SkeletonClass::Unknown &&
               x.conn <= y.conn;
    };
    if (carries(a, b) || carries(b, a)) {
        flags.bottom_cell_retract = Flag::Yes;
        flags.cup_square_zero = Flag::Yes;
    }

    std::vector<std::string> provenance = {"connected-sum-closure"};
    for (const auto& p : a.provenance)
        provenance.push_back(a.name + ": " + p);
    for (const auto& p : b.provenance)
        provenance.push_back(b.name + ": " + p);

    return make_pd(a.name + " # " + b.name, n, std::min(a.conn, b.conn), std::move(h), flags,
                   std::move(provenance));
}

PDComplex gyration(const PDComplex& m, int k, const std::string& tau_label) {
    require_valid(m);
    if (k < 2)
        throw input_error("gyration parameter k must be at least 2, got " + std::to_string(k));
    if (m.flags.skeleton == SkeletonClass::Unknown)
        throw hypothesis_error("co-H skeleton",
                               "skeleton class unknown; cannot expand the half-smash");

    GradedGroup sk = skeleton(m).homology;
    GradedGroup h = sum(sk, shift(sk, k - 1));

    PDFlags flags;
    flags.skeleton = m.flags.skeleton;
    if (m.flags.bottom_cell_retract == Flag::Yes) {
        flags.bottom_cell_retract = Flag::Yes;
        flags.cup_square_zero = Flag::Yes;
    }

    std::vector<std::string> provenance = {"gyration-skeleton-half-smash",
                                           "gyration-coh-preserved", "tau=" + tau_label};
    if (flags.bottom_cell_retract == Flag::Yes)
        provenance.push_back("gyration-retraction-preserved");

    std::string name = "G" + std::to_string(k) + "_" + tau_label + "(" + m.name + ")";
    return make_pd(std::move(name), m.dim + k - 1, m.conn, std::move(h), flags,
                   std::move(provenance));
}

PDComplex barden(const std::string& block) {
    if (block == "S2xS3")
        return sphere_bundle(2, 5, false);
    if (block == "S2xtS3")
        return sphere_bundle(2, 5, true);
    if (block == "W") {
        GradedGroup h;
        h.add_torsion(2, 2, 1, 1);
        PDFlags flags;
        flags.skeleton = SkeletonClass::WedgeSpheresMoore;
        return make_pd("W", 5, 2, std::move(h), flags, {"barden-block"});
    }
    if (block.rfind("M_", 0) == 0 || block.rfind("X_", 0) == 0) {
        long long q;
        try {
            q = std::stoll(block.substr(2));
        } catch (const std::exception&) {
            throw input_error("bad block parameter in '" + block + "'");
        }
        if (q < 2)
            throw input_error("block parameter must be at least 2 in '" + block + "'");
        if (block[0] == 'X' && (q & (q - 1)) != 0)
            throw input_error("X blocks need a power of two, got " + std::to_string(q));
        GradedGroup h;
        for (const auto& t : factor_order(q, 2))
            h.add_torsion(2, t);
        PDFlags flags;
        flags.skeleton = SkeletonClass::WedgeSpheresMoore;
        return make_pd(block, 5, 2, std::move(h), flags, {"barden-block"});
    }
    throw input_error("unknown block '" + block +
                      "' (expected W, S2xS3, S2xtS3, M_<k> or X_<2^i>)");
}

PDComplex duan(const DuanSpec& spec) {
    if (spec.r < 0)
        throw input_error("duan: r must be non-negative");
    if (spec.w2_nonzero && !spec.h)
        throw input_error("duan: w2_nonzero requires the H block");
    if (spec.h) {
        const std::string& h = *spec.h;
        bool ok = h == "W" || h == "S2xtS3" || h.rfind("X_", 0) == 0;
        if (!ok)
            throw input_error("duan: H must be one of W, S2xtS3, X_<2^i>, got '" + h + "'");
    }

    PDComplex out = sphere_bundle(3, 6, false); // S^3 x S^3
    for (int i = 0; i < spec.r; ++i)
        out = connected_sum(out, gyration(sphere_bundle(2, 5, false), 2, "0"));
    for (long long k : spec.ks) {
        if (k < 2)
            throw input_error("duan: torsion parameter must be at least 2, got " +
                              std::to_string(k));
        out = connected_sum(out, gyration(barden("M_" + std::to_string(k)), 2, "1"));
    }
    if (spec.h)
        out = connected_sum(out, gyration(barden(*spec.h), 2, "1"));
    out.provenance.push_back("circle-action-family");
    return out;
}

namespace {

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw input_error("");
        return v;
    } catch (const std::exception&) {
        throw input_error("bad " + what + " '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

PDComplex parse_product(const std::string& body) {
    // SaxSb
    size_t x = body.find('x');
    if (body.size() < 4 || body[0] != 'S' || x == std::string::npos ||
        x + 1 >= body.size() || body[x + 1] != 'S')
        throw input_error("bad product spec '" + body + "' (expected S<a>xS<b>)");
    int a = parse_int(body.substr(1, x - 1), "sphere dimension");
    int b = parse_int(body.substr(x + 2), "sphere dimension");
    return sphere_product(a, b);
}

PDComplex parse_bundle(const std::string& body) {
    auto parts = split(body, ',');
    if (parts.size() < 2 || parts.size() > 3)
        throw input_error("bad bundle spec '" + body + "' (expected m,n[,twisted])");
    int m = parse_int(parts[0], "bundle base dimension");
    int n = parse_int(parts[1], "bundle total dimension");
    bool twisted = false;
    if (parts.size() == 3) {
        if (parts[2] == "twisted")
            twisted = true;
        else if (parts[2] != "untwisted")
            throw input_error("bad bundle flag '" + parts[2] + "'");
    }
    return sphere_bundle(m, n, twisted);
}

PDComplex parse_gyr(const std::string& body) {
    size_t of = body.find("of=");
    if (of == std::string::npos)
        throw input_error("gyr spec needs of=<target>, got '" + body + "'");
    std::string base = body.substr(of + 3);
    std::string head = body.substr(0, of);
    int k = 2;
    std::string tau = "0";
    for (const auto& field : split(head, ',')) {
        if (field.empty())
            continue;
        if (field.rfind("k=", 0) == 0)
            k = parse_int(field.substr(2), "gyration parameter");
        else if (field.rfind("tau=", 0) == 0)
            tau = field.substr(4);
        else
            throw input_error("unknown gyr field '" + field + "'");
    }
    return gyration(build_from_spec(base), k, tau);
}

PDComplex parse_duan(const std::string& body) {
    DuanSpec spec;
    for (const auto& field : split(body, ';')) {
        if (field.empty())
            continue;
        if (field.rfind("r=", 0) == 0) {
            spec.r = parse_int(field.substr(2), "duan count");
        } else if (field.rfind("ks=", 0) == 0) {
            std::string list = field.substr(3);
            if (!list.empty())
                for (const auto& item : split(list, ','))
                    spec.ks.push_back(parse_int(item, "duan torsion parameter"));
        } else if (field.rfind("H=", 0) == 0) {
            spec.h = field.substr(2);
            spec.w2_nonzero = true;
        } else {
            throw input_error("unknown duan field '" + field + "'");
        }
    }
    return duan(spec);
}

} // namespace

PDComplex build_from_spec(const std::string& spec) {
    size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw input_error("constructor spec needs '<kind>:<args>', got '" + spec + "'");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);
    if (kind == "product")
        return parse_product(body);
    if (kind == "bundle")
        return parse_bundle(body);
    if (kind == "barden")
        return barden(body);
    if (kind == "gyr")
        return parse_gyr(body);
    if (kind == "duan")
        return parse_duan(body);
    throw input_error("unknown constructor kind '" + kind + "'");
}

} // namespace loopdec
