#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nilgeo/io.hpp>
#include <nilgeo/nilgeo.hpp>

using namespace nilgeo;

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 no applicable method.
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ClosedFormUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotDiagonalizable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OverflowDetected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateCenter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotFlatCase& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

Vec<Rat> parse_v0(const std::string& text, std::size_t dim) {
    Vec<Rat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty entry in --v0");
        try {
            out.push_back(Rat::parse(item.substr(first, last - first + 1)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (out.size() != dim)
        throw ParseError("--v0 needs " + std::to_string(dim) + " entries, got " +
                         std::to_string(out.size()));
    return out;
}

Json sample_json(const GeodesicSample& s) {
    return Json{{"t", s.t}, {"log", s.log_coords}, {"vel", s.velocity_frame}};
}

Json rat_vec_json(const Vec<Rat>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

int cmd_analyze(const std::string& path, bool as_json) {
    NilAlgebra A = load_algebra_file(path);
    if (as_json)
        std::cout << analyze_to_json(A).dump(2) << "\n";
    else
        std::cout << analyze_to_text(A);
    return 0;
}

int cmd_geodesic(const std::string& path, const std::string& v0_text, double t_end,
                 const std::string& method, std::size_t steps, std::size_t quad,
                 std::size_t samples) {
    NilAlgebra A = load_algebra_file(path);
    Vec<Rat> v0 = parse_v0(v0_text, A.dim());
    if (samples < 2) throw ParseError("--samples must be at least 2");

    if (method == "rk4") {
        auto path_samples = geodesic_rk4(A, cast_vec(v0), t_end, steps);
        for (std::size_t i = 0; i < samples; ++i) {
            std::size_t k = i * steps / (samples - 1);
            std::cout << sample_json(path_samples[k]).dump() << "\n";
        }
        return 0;
    }

    Decomposition D = witt_decompose(A);
    GeodesicState S = build_geodesic(A, D, v0);
    for (std::size_t i = 0; i < samples; ++i) {
        double t = t_end * double(i) / double(samples - 1);
        GeodesicSample s = method == "csgf" ? eval_geodesic_csgf(S, t) : eval_geodesic(S, t, quad);
        std::cout << sample_json(s).dump() << "\n";
    }
    return 0;
}

int cmd_periods(const std::string& algebra_path, const std::string& lattice_path, bool as_json,
                double tolerance) {
    NilAlgebra A = load_algebra_file(algebra_path);
    LatticeSpec spec = load_lattice(read_json_file(lattice_path), A.dim());
    Decomposition D = witt_decompose(A);

    Json records = Json::array();
    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
        const Vec<Rat>& phi = spec.generators[g];
        Json rec;
        rec["generator"] = rat_vec_json(phi);
        try {
            PeriodRecord r = flat_period(A, D, phi);
            rec["kind"] = to_string(r.kind);
            rec["causal"] = to_string(r.causal);
            if (r.omega_sq) rec["omega_sq"] = r.omega_sq->str();
            if (r.omega) {
                rec["omega"] = *r.omega;
                Vec<double> v0 =
                    vscale(1.0 / *r.omega, cast_vec(flat_translating_velocity(A, D, phi)));
                bool ok = translates(A, D, cast_vec(phi), v0, *r.omega, tolerance, tolerance);
                rec["verified"] = ok;
                if (!ok) rec["status"] = "translation residual above tolerance";
            } else if (r.obstructed) {
                rec["obstructed"] = true;
                rec["status"] = "ad^+_{v*} v* != 0: translates no geodesic, no period";
            } else {
                rec["status"] = "null log vector, no period";
            }
        } catch (const NotFlatCase&) {
            try {
                if (D.p == 0) {
                    PeriodRecord r = distinguished_period(A, D, phi);
                    rec["kind"] = to_string(r.kind);
                    rec["causal"] = to_string(r.causal);
                    if (r.omega_sq) rec["omega_sq"] = r.omega_sq->str();
                    if (r.omega) rec["omega"] = *r.omega;
                } else {
                    TranslatedGeodesic tg = construct_translated(A, D, phi);
                    rec["kind"] = to_string(PeriodKind::verified_numeric);
                    rec["causal"] = to_string(tg.causal);
                    rec["xi"] = rat_vec_json(tg.xi);
                    if (tg.base_null) {
                        rec["status"] = "translated geodesic is null, no period";
                    } else {
                        rec["omega"] = tg.omega_star;
                        rec["omega_sq"] = tg.omega_star_sq.str();
                        Vec<double> v0 = vscale(1.0 / tg.omega_star, cast_vec(tg.geodesic_base));
                        bool ok = translates(A, D, cast_vec(phi), v0, tg.omega_star, tolerance,
                                             tolerance);
                        rec["verified"] = ok;
                        if (!ok) rec["status"] = "translation residual above tolerance";
                    }
                }
            } catch (const Error& e) {
                rec["status"] = e.what();
            }
        } catch (const Error& e) {
            rec["status"] = e.what();
        }
        records.push_back(std::move(rec));
    }

    if (as_json) {
        std::cout << records.dump(2) << "\n";
        return 0;
    }
    for (std::size_t g = 0; g < records.size(); ++g) {
        const Json& rec = records[g];
        std::cout << "generator " << g << ": ";
        if (rec.contains("kind")) std::cout << rec["kind"].get<std::string>();
        if (rec.contains("omega_sq"))
            std::cout << "  omega^2 = " << rec["omega_sq"].get<std::string>();
        if (rec.contains("omega")) std::cout << "  omega = " << rec["omega"].get<double>();
        if (rec.contains("causal")) std::cout << "  (" << rec["causal"].get<std::string>() << ")";
        if (rec.contains("verified"))
            std::cout << "  verified = " << (rec["verified"].get<bool>() ? "true" : "false");
        if (rec.contains("status")) std::cout << "  -- " << rec["status"].get<std::string>();
        std::cout << "\n";
    }
    return 0;
}

int cmd_spectrum(const std::string& lattice_path, double bound, bool as_json) {
    Json doc = read_json_file(lattice_path);
    if (!doc.contains("gram"))
        throw ParseError("spectrum needs a \"gram\" matrix in the lattice document");
    Mat<Rat> gram = parse_rat_mat(doc["gram"]);
    LatticeSpec spec = load_lattice(doc, gram.rows());
    auto spectrum = flat_torus_spectrum(spec, gram, bound);

    Json out = Json::array();
    for (const auto& [omega_sq, mult] : spectrum)
        out.push_back({{"omega_sq", omega_sq.str()},
                       {"omega", std::sqrt(omega_sq.to_double())},
                       {"multiplicity", mult}});
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const auto& e : out)
        std::cout << "omega^2 = " << e["omega_sq"].get<std::string>() << "  omega = "
                  << e["omega"].get<double>() << "  x" << e["multiplicity"].get<int>() << "\n";
    return 0;
}

int cmd_construct_ph(const std::string& seed_path, const std::string& out_path) {
    PhSeed seed = load_seed(read_json_file(seed_path));
    NilAlgebra A = build_ph_algebra(seed);
    Json doc = algebra_to_json(A);
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        out << doc.dump(2) << "\n";
        std::cout << "wrote " << out_path << " (dim " << A.dim() << ")\n";
    }
    return 0;
}

int cmd_check_iso(const std::string& algebra_path, const std::string& map_path, bool as_json) {
    NilAlgebra A = load_algebra_file(algebra_path);
    CandidateMap f = load_map(read_json_file(map_path));
    IsometryReport rep = check_isometric_automorphism(A, f);
    if (as_json) {
        Json doc{{"name", f.name},
                 {"metric_preserving", rep.is_metric_preserving},
                 {"automorphism", rep.is_automorphism},
                 {"verdict", rep.verdict}};
        if (!rep.detail.empty()) doc["detail"] = rep.detail;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "map:               " << f.name << "\n"
                  << "metric preserving: " << (rep.is_metric_preserving ? "true" : "false") << "\n"
                  << "automorphism:      " << (rep.is_automorphism ? "true" : "false") << "\n"
                  << "verdict:           " << (rep.verdict ? "true" : "false");
        if (!rep.detail.empty()) std::cout << "  (" << rep.detail << ")";
        std::cout << "\n";
    }
    return rep.verdict ? 0 : 1;
}

int cmd_verify_paper(const std::string& filter, bool corrupt, bool as_json) {
    std::vector<VerifyCheck> checks = verify_paper(filter, corrupt);
    std::size_t failures = 0;
    for (const auto& c : checks)
        if (!c.pass) ++failures;
    if (as_json) {
        Json out = Json::array();
        for (const auto& c : checks) {
            Json e{{"name", c.name}, {"pass", c.pass}};
            if (!c.detail.empty()) e["detail"] = c.detail;
            out.push_back(std::move(e));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& c : checks)
            if (!c.pass)
                std::cout << "FAIL " << c.name
                          << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
        std::cout << checks.size() << " checks, " << failures << " failures\n";
    }
    if (checks.empty()) {
        std::cerr << "error: no checks match the filter\n";
        return 2;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"left-invariant geometry of 2-step nilpotent Lie groups"};
    app.require_subcommand(1);

    bool as_json = false;
    double tolerance = 1e-9;
    app.add_flag("--json", as_json, "emit JSON instead of text");
    app.add_option("--tolerance", tolerance,
                   "residual tolerance for numeric checks (exact checks ignore it)");

    std::string algebra_path, lattice_path, map_path, seed_path, out_path;
    std::string v0_text, method = "closed", filter;
    double t_end = 1.0, bound = 0.0;
    std::size_t steps = 20000, quad = 64, samples = 9;
    bool corrupt = false;

    auto* analyze = app.add_subcommand("analyze", "decomposition, curvature and pH report");
    analyze->fallthrough();
    analyze->add_option("algebra", algebra_path, "algebra document")->required();

    auto* geodesic = app.add_subcommand("geodesic", "sample the geodesic through the identity");
    geodesic->fallthrough();
    geodesic->add_option("algebra", algebra_path, "algebra document")->required();
    geodesic->add_option("--v0", v0_text, "initial velocity, comma-separated rationals")
        ->required();
    geodesic->add_option("--t", t_end, "evaluation horizon")->required();
    geodesic->add_option("--method", method, "closed | csgf | rk4")
        ->check(CLI::IsMember({"closed", "csgf", "rk4"}));
    geodesic->add_option("--steps", steps, "rk4 step count");
    geodesic->add_option("--quad", quad, "quadrature points for the closed form");
    geodesic->add_option("--samples", samples, "number of output samples");

    auto* periods = app.add_subcommand("periods", "period records for lattice generators");
    periods->fallthrough();
    periods->add_option("algebra", algebra_path, "algebra document")->required();
    periods->add_option("lattice", lattice_path, "lattice document")->required();

    auto* spectrum = app.add_subcommand("spectrum", "flat-torus period spectrum up to a bound");
    spectrum->fallthrough();
    spectrum->add_option("lattice", lattice_path, "lattice document with a \"gram\" matrix")
        ->required();
    spectrum->add_option("--bound", bound, "period upper bound")->required();

    auto* construct = app.add_subcommand("construct-ph", "build a pH-type algebra from a seed");
    construct->fallthrough();
    construct->add_option("seed", seed_path, "seed document")->required();
    construct->add_option("-o,--out", out_path, "write the algebra document here");

    auto* checkiso = app.add_subcommand("check-iso", "test a map for isometric automorphism");
    checkiso->fallthrough();
    checkiso->add_option("algebra", algebra_path, "algebra document")->required();
    checkiso->add_option("map", map_path, "map document")->required();

    auto* verify = app.add_subcommand("verify-paper", "run the built-in expectation suite");
    verify->fallthrough();
    verify->add_option("--filter", filter, "keep checks whose name contains this");
    verify->add_flag("--self-test-corrupt", corrupt,
                     "corrupt one expected value; the suite must then fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (analyze->parsed()) return guarded([&] { return cmd_analyze(algebra_path, as_json); });
    if (geodesic->parsed())
        return guarded(
            [&] { return cmd_geodesic(algebra_path, v0_text, t_end, method, steps, quad, samples); });
    if (periods->parsed())
        return guarded([&] { return cmd_periods(algebra_path, lattice_path, as_json, tolerance); });
    if (spectrum->parsed()) return guarded([&] { return cmd_spectrum(lattice_path, bound, as_json); });
    if (construct->parsed()) return guarded([&] { return cmd_construct_ph(seed_path, out_path); });
    if (checkiso->parsed())
        return guarded([&] { return cmd_check_iso(algebra_path, map_path, as_json); });
    if (verify->parsed()) return guarded([&] { return cmd_verify_paper(filter, corrupt, as_json); });
    return 2;
}
