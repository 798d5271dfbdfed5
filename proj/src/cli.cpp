#include "loopdec/cli.hpp"

#include "loopdec/constructors.hpp"
#include "loopdec/decompose.hpp"
#include "loopdec/errors.hpp"
#include "loopdec/io.hpp"
#include "loopdec/localize.hpp"
#include "loopdec/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace loopdec {

namespace {

bool is_prime(long long p) {
    if (p < 2)
        return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

Field parse_field(const std::string& s) {
    if (s == "Q" || s == "q")
        return Field::Q();
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
        long long p;
        try {
            p = std::stoll(s.substr(1));
        } catch (const std::exception&) {
            throw input_error("bad field '" + s + "'");
        }
        if (!is_prime(p))
            throw input_error("field characteristic must be prime, got " + std::to_string(p));
        return Field::Fp(p);
    }
    throw input_error("bad field '" + s + "' (expected Q or F<p>)");
}

std::set<long long> parse_prime_list(const std::string& s) {
    std::set<long long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        long long p;
        try {
            p = std::stoll(item);
        } catch (const std::exception&) {
            throw input_error("bad prime '" + item + "' in localization list");
        }
        if (!is_prime(p))
            throw input_error("localization list entry " + std::to_string(p) + " is not prime");
        out.insert(p);
    }
    return out;
}

std::string primes_text(const std::set<long long>& ps) {
    std::string out = "{";
    bool first = true;
    for (long long p : ps) {
        if (!first)
            out += ", ";
        out += std::to_string(p);
        first = false;
    }
    return out + "}";
}

std::string catalog_path(const std::string& dir, const std::string& name) {
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            throw input_error("catalog names use [A-Za-z0-9_.-], got '" + name + "'");
    return dir + "/" + name + ".json";
}

/// File path, constructor spec, or catalog entry, in that order.
PDComplex resolve_pd(const std::string& ref, const std::string& dir) {
    if (fs::exists(ref) && fs::is_regular_file(ref)) {
        auto doc = read_json_file(ref);
        if (looks_like_simplicial(doc))
            throw input_error("'" + ref + "' is a simplicial complex document; use the zk "
                              "subcommand");
        return pd_from_json(doc);
    }
    if (ref.find(':') != std::string::npos)
        return build_from_spec(ref);
    std::string stored = catalog_path(dir, ref);
    if (fs::exists(stored)) {
        auto doc = read_json_file(stored);
        if (looks_like_simplicial(doc))
            throw input_error("catalog entry '" + ref + "' is a simplicial complex; use zk");
        return pd_from_json(doc);
    }
    throw input_error("cannot resolve '" + ref +
                      "' as a file, constructor spec, or catalog entry");
}

void require_valid_or_report(const PDComplex& m, std::ostream& out) {
    auto rep = validate(m);
    if (rep.ok())
        return;
    for (const auto& i : rep.issues)
        out << "invalid: " << i.check << ": " << i.detail << "\n";
    require_valid(m); // throws with the combined message
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"loop-space decompositions of highly connected Poincare duality complexes"};
    app.name("loopdecomp");
    app.require_subcommand(1);

    std::string json_path;
    std::string catalog_dir = "catalog";
    std::string ref, ref_b, out_path, name_override;
    std::string field_name = "Q";
    std::string localize = "auto";
    std::string method = "both";
    std::string cat_name, cat_spec;
    std::string tau = "0";
    int cap = 32;
    int gyr_k = 2;
    int budget = 20;
    bool zk_dec = false, zk_serial = false, cat_force = false;

    auto add_json = [&](CLI::App* cmd) {
        cmd->add_option("--json", json_path, "write the machine report to this path");
    };
    auto add_catalog_dir = [&](CLI::App* cmd) {
        cmd->add_option("--catalog", catalog_dir, "catalog directory")
            ->capture_default_str();
    };

    auto* c_validate = app.add_subcommand("validate", "check duality structure");
    c_validate->add_option("complex", ref, "file, constructor spec, or catalog name")
        ->required();
    add_json(c_validate);
    add_catalog_dir(c_validate);

    auto* c_decompose = app.add_subcommand("decompose", "loop-space splitting");
    c_decompose->add_option("complex", ref)->required();
    c_decompose->add_option("--field", field_name, "Q or F<p>")->capture_default_str();
    c_decompose->add_option("--cap", cap, "series truncation degree")->capture_default_str();
    c_decompose->add_option("--localize", localize, "auto or comma-separated primes")
        ->capture_default_str();
    add_json(c_decompose);
    add_catalog_dir(c_decompose);

    auto* c_hilbert = app.add_subcommand("hilbert", "loop-homology Hilbert series");
    c_hilbert->add_option("complex", ref)->required();
    c_hilbert->add_option("--field", field_name)->capture_default_str();
    c_hilbert->add_option("--cap", cap)->capture_default_str();
    c_hilbert->add_option("--method", method, "both | decomposition | one-relator")
        ->capture_default_str();
    add_json(c_hilbert);
    add_catalog_dir(c_hilbert);

    auto* c_sum = app.add_subcommand("sum", "connected sum");
    c_sum->add_option("first", ref)->required();
    c_sum->add_option("second", ref_b)->required();
    c_sum->add_option("-o,--out", out_path, "output file")->required();
    c_sum->add_option("--name", name_override, "name for the result");
    add_json(c_sum);
    add_catalog_dir(c_sum);

    auto* c_gyrate = app.add_subcommand("gyrate", "gyration");
    c_gyrate->add_option("complex", ref)->required();
    c_gyrate->add_option("-k", gyr_k, "gyration parameter (>= 2)")->required();
    c_gyrate->add_option("--tau", tau, "twisting label")->capture_default_str();
    c_gyrate->add_option("-o,--out", out_path, "output file")->required();
    add_json(c_gyrate);
    add_catalog_dir(c_gyrate);

    auto* c_catalog = app.add_subcommand("catalog", "named-complex store");
    c_catalog->require_subcommand(1);
    auto* c_cat_add = c_catalog->add_subcommand("add", "store a complex");
    c_cat_add->add_option("name", cat_name)->required();
    c_cat_add->add_option("source", cat_spec, "file or constructor spec")->required();
    c_cat_add->add_flag("--force", cat_force, "replace an existing entry");
    auto* c_cat_get = c_catalog->add_subcommand("get", "show a stored complex");
    c_cat_get->add_option("name", cat_name)->required();
    auto* c_cat_list = c_catalog->add_subcommand("list", "list stored complexes");
    for (auto* c : {c_cat_add, c_cat_get, c_cat_list}) {
        c->add_option("--dir", catalog_dir, "catalog directory")->capture_default_str();
        add_json(c);
    }

    auto* c_zk = app.add_subcommand("zk", "moment-angle pipeline");
    c_zk->add_option("complex", ref, "simplicial complex file")->required();
    c_zk->add_flag("--decompose", zk_dec, "also run the loop-space decomposition");
    c_zk->add_flag("--serial", zk_serial, "disable the parallel kernel");
    c_zk->add_option("--budget", budget, "vertex budget for subset enumeration")
        ->capture_default_str();
    add_json(c_zk);

    auto* c_primes = app.add_subcommand("primes", "localization plans");
    c_primes->add_option("complex", ref)->required();
    add_json(c_primes);
    add_catalog_dir(c_primes);

    std::vector<const char*> argv;
    argv.push_back("loopdecomp");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "error (usage): " << e.what() << "\n";
        return 2;
    }

    std::string command;
    nlohmann::json report;

    auto emit = [&](int code) {
        if (!json_path.empty()) {
            nlohmann::json envelope = {{"tool", "loopdecomp"},
                                       {"command", command},
                                       {"ok", code == 0},
                                       {"exit_code", code},
                                       {"report", report}};
            write_json_file(json_path, envelope);
        }
        return code;
    };

    try {
        if (app.got_subcommand(c_validate)) {
            command = "validate";
            PDComplex m = resolve_pd(ref, catalog_dir);
            auto rep = validate(m);
            report = {{"complex", pd_to_json(m)}, {"validation", to_json(rep)}};
            out << render_text(m);
            if (rep.ok()) {
                out << "valid\n";
                return emit(0);
            }
            for (const auto& i : rep.issues)
                out << "invalid: " << i.check << ": " << i.detail << "\n";
            require_valid(m); // throw the combined hypothesis error
        } else if (app.got_subcommand(c_decompose)) {
            command = "decompose";
            Field field = parse_field(field_name);
            PDComplex m = resolve_pd(ref, catalog_dir);
            require_valid_or_report(m, out);
            auto ev = class_a_evidence(m);
            if (localize != "auto") {
                auto explicit_primes = parse_prime_list(localize);
                if (ev.member == Membership::No)
                    throw hypothesis_error("decomposition hypotheses",
                                           "no plan exists at any prime set for this input");
                if (!std::includes(explicit_primes.begin(), explicit_primes.end(),
                                   ev.inverted.begin(), ev.inverted.end()))
                    throw hypothesis_error("localization coverage",
                                           "explicit prime set must contain the plan's primes " +
                                               primes_text(ev.inverted));
                ev.inverted = explicit_primes;
                ev.reasons.push_back("prime set supplied on the command line");
            }
            auto d = decompose_with_evidence(m, ev);
            auto series = loop_series_decomposition(d, field, cap);
            out << render_text(m) << render_text(d.evidence) << render_text(d);
            out << "loop series over " << render(field) << ": " << render(series) << "\n";
            report = {{"complex", pd_to_json(m)},
                      {"decomposition", to_json(d)},
                      {"series", to_json(series)},
                      {"field", render(field)}};
            return emit(0);
        } else if (app.got_subcommand(c_hilbert)) {
            command = "hilbert";
            Field field = parse_field(field_name);
            PDComplex m = resolve_pd(ref, catalog_dir);
            require_valid_or_report(m, out);
            if (method == "both") {
                auto cc = cross_check(m, field, cap);
                out << render_text(cc);
                report = to_json(cc);
            } else if (method == "decomposition") {
                auto d = decompose(m);
                auto s = loop_series_decomposition(d, field, cap);
                out << "via decomposition: " << render(s) << "\n";
                report = {{"method", method}, {"series", to_json(s)},
                          {"decomposition", to_json(d)}};
            } else if (method == "one-relator") {
                auto pres = one_relator(m, field);
                auto s = loop_series_one_relator(m, field, cap);
                out << render_text(pres);
                out << "via one-relator: " << render(s) << "\n";
                report = {{"method", method}, {"series", to_json(s)},
                          {"presentation", to_json(pres)}};
            } else {
                throw input_error("bad method '" + method +
                                  "' (expected both, decomposition, or one-relator)");
            }
            return emit(0);
        } else if (app.got_subcommand(c_sum)) {
            command = "sum";
            PDComplex a = resolve_pd(ref, catalog_dir);
            PDComplex b = resolve_pd(ref_b, catalog_dir);
            PDComplex s = connected_sum(a, b);
            if (!name_override.empty())
                s.name = name_override;
            save_pd(s, out_path);
            out << render_text(s) << "written to " << out_path << "\n";
            report = {{"complex", pd_to_json(s)}, {"out", out_path}};
            return emit(0);
        } else if (app.got_subcommand(c_gyrate)) {
            command = "gyrate";
            PDComplex a = resolve_pd(ref, catalog_dir);
            PDComplex g = gyration(a, gyr_k, tau);
            save_pd(g, out_path);
            out << render_text(g) << "written to " << out_path << "\n";
            report = {{"complex", pd_to_json(g)}, {"out", out_path}};
            return emit(0);
        } else if (app.got_subcommand(c_catalog)) {
            command = "catalog";
            if (c_catalog->got_subcommand(c_cat_add)) {
                std::string path = catalog_path(catalog_dir, cat_name);
                if (fs::exists(path) && !cat_force)
                    throw input_error("catalog entry '" + cat_name +
                                      "' exists (use --force to replace)");
                nlohmann::json doc;
                if (fs::exists(cat_spec) && fs::is_regular_file(cat_spec)) {
                    auto raw = read_json_file(cat_spec);
                    // canonicalize through the typed representation
                    doc = looks_like_simplicial(raw) ? simplicial_to_json(simplicial_from_json(raw))
                                                     : pd_to_json(pd_from_json(raw));
                } else {
                    doc = pd_to_json(build_from_spec(cat_spec));
                }
                fs::create_directories(catalog_dir);
                write_json_file(path, doc);
                out << "stored " << cat_name << " -> " << path << "\n";
                report = {{"name", cat_name}, {"path", path}, {"document", doc}};
            } else if (c_catalog->got_subcommand(c_cat_get)) {
                std::string path = catalog_path(catalog_dir, cat_name);
                if (!fs::exists(path))
                    throw input_error("no catalog entry '" + cat_name + "'");
                auto doc = read_json_file(path);
                if (looks_like_simplicial(doc)) {
                    auto k = simplicial_from_json(doc);
                    out << k.name << ": simplicial complex, " << k.vertices << " vertices, "
                        << k.facets.size() << " facets, dimension " << dimension(k) << "\n";
                } else {
                    out << render_text(pd_from_json(doc));
                }
                report = {{"name", cat_name}, {"document", doc}};
            } else {
                nlohmann::json entries = nlohmann::json::array();
                std::vector<std::string> lines;
                if (fs::exists(catalog_dir)) {
                    std::vector<fs::path> files;
                    for (const auto& e : fs::directory_iterator(catalog_dir))
                        if (e.path().extension() == ".json")
                            files.push_back(e.path());
                    std::sort(files.begin(), files.end());
                    for (const auto& p : files) {
                        auto doc = read_json_file(p.string());
                        std::string entry_name = p.stem().string();
                        if (looks_like_simplicial(doc)) {
                            auto k = simplicial_from_json(doc);
                            lines.push_back(entry_name + ": simplicial, " +
                                            std::to_string(k.vertices) + " vertices");
                            entries.push_back({{"name", entry_name}, {"kind", "simplicial"}});
                        } else {
                            auto m = pd_from_json(doc);
                            lines.push_back(entry_name + ": complex, dim " +
                                            std::to_string(m.dim) + ", " + m.name);
                            entries.push_back({{"name", entry_name}, {"kind", "complex"}});
                        }
                    }
                }
                for (const auto& l : lines)
                    out << l << "\n";
                if (lines.empty())
                    out << "(catalog empty)\n";
                report = {{"entries", entries}};
            }
            return emit(0);
        } else if (app.got_subcommand(c_zk)) {
            command = "zk";
            SimplicialComplex k = load_simplicial(ref);
            ZkOptions opts;
            opts.parallel = !zk_serial;
            opts.max_vertices = budget;
            auto rep = zk_decompose(k, zk_dec, opts);
            out << render_text(rep);
            report = to_json(rep);
            return emit(0);
        } else if (app.got_subcommand(c_primes)) {
            command = "primes";
            PDComplex m = resolve_pd(ref, catalog_dir);
            require_valid_or_report(m, out);
            report = {{"complex", pd_to_json(m)}};

            std::vector<std::string> sk_why;
            auto sk = skeleton_class_plan(m, &sk_why);
            if (sk) {
                out << "skeleton plan: " << render_text(*sk);
                report["skeleton_plan"] = to_json(*sk);
            } else {
                out << "skeleton plan: none";
                for (const auto& w : sk_why)
                    out << " (" << w << ")";
                out << "\n";
                report["skeleton_plan_failures"] = sk_why;
            }

            try {
                auto rp = retraction_primes(m);
                out << "retraction plan: " << render_text(rp);
                report["retraction_plan"] = to_json(rp);
            } catch (const hypothesis_error& e) {
                out << "retraction plan: none (" << e.what() << ")\n";
                report["retraction_plan_failures"] = {e.what()};
            }

            std::vector<std::string> why;
            auto plan = full_plan(m, why);
            if (plan) {
                out << "full plan: " << render_text(*plan);
                report["full_plan"] = to_json(*plan);
                return emit(0);
            }
            report["full_plan_failures"] = why;
            std::string msg;
            for (size_t i = 0; i < why.size(); ++i)
                msg += (i ? "; " : "") + why[i];
            throw hypothesis_error("localization plan", msg);
        }
        err << "error (usage): no subcommand\n";
        return 2;
    } catch (const hypothesis_error& e) {
        err << "error (hypothesis: " << e.hypothesis() << "): " << e.what() << "\n";
        report = {{"error",
                   {{"type", "hypothesis"}, {"hypothesis", e.hypothesis()},
                    {"message", e.what()}}}};
        return emit(1);
    } catch (const input_error& e) {
        err << "error (input): " << e.what() << "\n";
        report = {{"error", {{"type", "input"}, {"message", e.what()}}}};
        return emit(2);
    } catch (const std::exception& e) {
        err << "error (input): " << e.what() << "\n";
        report = {{"error", {{"type", "input"}, {"message", e.what()}}}};
        return emit(2);
    }
}

} // namespace loopdec
