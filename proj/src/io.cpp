#include "loopdec/io.hpp"

#include "loopdec/errors.hpp"

#include <fstream>
#include <sstream>

namespace loopdec {

namespace {

SkeletonClass skeleton_from_string(const std::string& s) {
    if (s == "wedge_spheres")
        return SkeletonClass::WedgeSpheres;
    if (s == "wedge_spheres_moore")
        return SkeletonClass::WedgeSpheresMoore;
    if (s == "co_h")
        return SkeletonClass::CoH;
    if (s == "unknown")
        return SkeletonClass::Unknown;
    throw input_error("unknown skeleton class '" + s + "'");
}

Flag flag_from_string(const std::string& s) {
    if (s == "yes")
        return Flag::Yes;
    if (s == "no")
        return Flag::No;
    if (s == "unknown")
        return Flag::Unknown;
    throw input_error("unknown flag value '" + s + "'");
}

} // namespace

nlohmann::json pd_to_json(const PDComplex& m) {
    nlohmann::json j;
    j["name"] = m.name;
    j["dim"] = m.dim;
    j["connectivity"] = m.conn - 1;
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [deg, grp] : m.homology.groups) {
        if (deg == m.dim)
            continue; // implied top class
        nlohmann::json entry;
        entry["rank"] = grp.rank;
        nlohmann::json tors = nlohmann::json::array();
        for (const auto& t : grp.torsion)
            tors.push_back({t.prime, t.exponent, t.multiplicity});
        entry["torsion"] = tors;
        h[std::to_string(deg)] = entry;
    }
    j["homology"] = h;
    j["flags"] = {{"skeleton", render(m.flags.skeleton)},
                  {"bottom_cell_retract", render(m.flags.bottom_cell_retract)},
                  {"cup_square_zero", render(m.flags.cup_square_zero)}};
    j["provenance"] = m.provenance;
    return j;
}

PDComplex pd_from_json(const nlohmann::json& j) {
    try {
        std::string name = j.value("name", "unnamed");
        int dim = j.at("dim").get<int>();
        int conn = j.at("connectivity").get<int>() + 1;
        GradedGroup h;
        for (const auto& [key, entry] : j.at("homology").items()) {
            int deg;
            try {
                size_t pos = 0;
                deg = std::stoi(key, &pos);
                if (pos != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw input_error("bad homology degree key '" + key + "'");
            }
            long long rank = entry.value("rank", 0LL);
            if (rank < 0)
                throw input_error("negative rank in degree " + key);
            h.add_rank(deg, rank);
            if (entry.contains("torsion")) {
                for (const auto& t : entry.at("torsion")) {
                    if (!t.is_array() || t.size() != 3)
                        throw input_error("torsion entries are [prime, exponent, multiplicity]");
                    long long p = t[0].get<long long>();
                    int e = t[1].get<int>();
                    long long mult = t[2].get<long long>();
                    if (p < 2 || e < 1 || mult < 1)
                        throw input_error("bad torsion summand in degree " + key);
                    h.add_torsion(deg, p, e, mult);
                }
            }
        }
        PDFlags flags;
        if (j.contains("flags")) {
            const auto& f = j.at("flags");
            flags.skeleton = skeleton_from_string(f.value("skeleton", "unknown"));
            flags.bottom_cell_retract = flag_from_string(f.value("bottom_cell_retract", "unknown"));
            flags.cup_square_zero = flag_from_string(f.value("cup_square_zero", "unknown"));
        }
        std::vector<std::string> provenance;
        if (j.contains("provenance"))
            provenance = j.at("provenance").get<std::vector<std::string>>();
        return make_pd(std::move(name), dim, conn, std::move(h), flags, std::move(provenance));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed complex document: ") + e.what());
    }
}

nlohmann::json simplicial_to_json(const SimplicialComplex& k) {
    nlohmann::json j;
    j["name"] = k.name;
    j["vertices"] = k.vertices;
    nlohmann::json facets = nlohmann::json::array();
    for (std::uint32_t f : k.facets)
        facets.push_back(mask_vertices(f));
    j["facets"] = facets;
    j["assertions"] = k.assertions;
    return j;
}

SimplicialComplex simplicial_from_json(const nlohmann::json& j) {
    try {
        std::string name = j.value("name", "K");
        int vertices = j.at("vertices").get<int>();
        std::vector<std::vector<int>> facets;
        for (const auto& f : j.at("facets"))
            facets.push_back(f.get<std::vector<int>>());
        std::vector<std::string> assertions;
        if (j.contains("assertions"))
            assertions = j.at("assertions").get<std::vector<std::string>>();
        return make_complex(std::move(name), vertices, facets, std::move(assertions));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed simplicial document: ") + e.what());
    }
}

bool looks_like_simplicial(const nlohmann::json& j) {
    return j.is_object() && j.contains("facets");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error("cannot parse '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

PDComplex load_pd(const std::string& path) {
    return pd_from_json(read_json_file(path));
}

void save_pd(const PDComplex& m, const std::string& path) {
    write_json_file(path, pd_to_json(m));
}

SimplicialComplex load_simplicial(const std::string& path) {
    return simplicial_from_json(read_json_file(path));
}

} // namespace loopdec
