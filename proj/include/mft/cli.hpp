#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mft/cases.hpp"
#include "mft/detector.hpp"
#include "mft/geometry.hpp"
#include "mft/mesh.hpp"
#include "mft/report.hpp"
#include "mft/surfaces.hpp"
#include "mft/sweep.hpp"

namespace mft::cli {

struct ParamMap {
    std::map<std::string, std::string> kv;

    static ParamMap parse(const std::vector<std::string>& pairs) {
        ParamMap pm;
        for (const auto& p : pairs) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--param expects key=value, got: " + p);
            pm.kv[p.substr(0, eq)] = p.substr(eq + 1);
        }
        return pm;
    }
    double num(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        return std::stod(it->second);
    }
    int integer(const std::string& key, int fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        return std::stoi(it->second);
    }
    std::string str(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
};

inline KSpec kspec_from_params(const ParamMap& pm) {
    const std::string form = pm.str("k", "quadric");
    if (form == "quadric") return KSpec::quadric(pm.num("c", 1.0), pm.integer("sign", -1));
    if (form == "cubic") return KSpec::cubic(pm.num("a", 1.0), pm.num("b", 0.0));
    if (form == "monomial") return KSpec::monomial(pm.num("coef", 1.0), pm.integer("power", 2));
    throw std::invalid_argument("unknown k form: " + form + " (quadric|cubic|monomial)");
}

inline SurfaceFamily make_family(const std::string& id, const ParamMap& pm) {
    if (id == "pseudosphere-s21") return SurfaceFamily::pseudosphere(pm.num("c", 1.0));
    if (id == "hyperbolic-h2") return SurfaceFamily::hyperbolic_plane(pm.num("c", 1.0));
    if (id == "minimal-profile-i")
        return SurfaceFamily::minimal_spacelike(pm.num("f0", 1.0),
                                                pm.num("phi0", 1.5707963267948966),
                                                pm.num("ds", 1e-3), pm.integer("n", 1500));
    if (id == "minimal-profile-ii")
        return SurfaceFamily::minimal_timelike(pm.num("f0", 1.0),
                                               pm.num("phi0", 0.8813735870195430),
                                               pm.num("ds", 1e-3), pm.integer("n", 1500));
    if (id == "rev-spacelike-axis") {
        const std::string path = pm.str("profile", "");
        if (path.empty())
            throw std::invalid_argument("rev-spacelike-axis requires --param profile=path.csv");
        return SurfaceFamily::spacelike_axis(ProfileTable::load_csv(path, AxisClass::Spacelike));
    }
    if (id == "rev-timelike-axis") {
        const std::string path = pm.str("profile", "");
        if (path.empty())
            throw std::invalid_argument("rev-timelike-axis requires --param profile=path.csv");
        return SurfaceFamily::timelike_axis(ProfileTable::load_csv(path, AxisClass::Timelike));
    }
    if (id == "rev-null-axis") return SurfaceFamily::null_axis(kspec_from_params(pm));
    if (id == "cubic-null-minimal")
        return SurfaceFamily::cubic_null_minimal(pm.num("a", 1.0), pm.num("b", 0.0));
    if (id == "perturbed-profile-i") return SurfaceFamily::perturbed_spacelike(pm.num("amp", 0.3));
    if (id == "perturbed-profile-ii") return SurfaceFamily::perturbed_timelike(pm.num("amp", 0.3));
    throw std::invalid_argument("unknown family: " + id + " (see `mft list`)");
}

inline std::string signature_text(const Signature& sig) {
    std::string s = "(";
    for (int k = 0; k < 3; ++k) {
        s += sig.eps(k) > 0 ? '+' : '-';
        if (k < 2) s += ',';
    }
    s += ')';
    return s;
}

inline std::string list_text() {
    struct Row {
        const char* id;
        const char* schema;
        const char* sig;
        const char* domain;
    };
    static const Row rows[] = {
        {"pseudosphere-s21", "(c>0)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
        {"hyperbolic-h2", "(c>0)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
        {"minimal-profile-i", "(f0>0, phi0, ds, n)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
        {"minimal-profile-ii", "(f0>0, phi0, ds, n)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
        {"rev-spacelike-axis", "(profile=csv)", "(+,+,-)", "table range, theta in [-1,1]"},
        {"rev-timelike-axis", "(profile=csv)", "(+,+,-)", "table range, theta in [-1,1]"},
        {"rev-null-axis", "(k-spec)", "(-,+,+)", "s in [0.2,2], theta in [-1,1]"},
        {"cubic-null-minimal", "(a>0, b)", "(-,+,+)", "s in [0.2,2], theta in [-1,1]"},
        {"perturbed-profile-i", "(amp)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
        {"perturbed-profile-ii", "(amp)", "(+,+,-)", "s in [0.1,1.4], theta in [-1,1]"},
    };
    std::string out;
    for (const Row& r : rows) {
        out += r.id;
        out += ' ';
        out += r.schema;
        out += ", signature ";
        out += r.sig;
        out += ", domain ";
        out += r.domain;
        out += '\n';
    }
    return out;
}

struct Tolerances {
    double fit_pass = 1e-7;
    double classify = kClassifyTol;
    double positive_residual = 1e-7;
    double negative_floor = 1e-3;
    double value = 1e-6;

    void apply(const std::vector<std::string>& pairs) {
        for (const auto& p : pairs) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--tol expects name=value, got: " + p);
            const std::string name = p.substr(0, eq);
            const double v = std::stod(p.substr(eq + 1));
            if (name == "fit_pass") fit_pass = v;
            else if (name == "classify") classify = v;
            else if (name == "positive_residual") positive_residual = v;
            else if (name == "negative_floor") negative_floor = v;
            else if (name == "value") value = v;
            else throw std::invalid_argument("unknown tolerance: " + name);
        }
    }
};

inline GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &g.s0, &g.s1, &g.ns, &g.t0, &g.t1,
                    &g.nt) != 6)
        throw std::invalid_argument("--grid expects s0:s1:ns,t0:t1:nt, got: " + text);
    if (g.ns < 1 || g.nt < 1) throw std::invalid_argument("--grid needs at least 1 node per axis");
    return g;
}

inline ChartPoint parse_point(const std::string& text) {
    ChartPoint p;
    if (std::sscanf(text.c_str(), "%lf,%lf", &p.s, &p.theta) != 2)
        throw std::invalid_argument("--point expects s,theta, got: " + text);
    return p;
}

inline void check_grid_in_domain(const SurfaceFamily& fam, const GridSpec& g, bool force) {
    if (force) return;
    const GridRange& d = fam.domain();
    if (!d.contains(g.s0, g.t0) || !d.contains(g.s1, g.t1))
        throw std::invalid_argument(
            "grid extends outside the family's declared domain (use --force-domain to override)");
}

inline FormChoice parse_form(const std::string& text) {
    if (text == "I") return FormChoice::FirstForm;
    if (text == "II") return FormChoice::SecondForm;
    if (text == "III") return FormChoice::ThirdForm;
    throw std::invalid_argument("--form expects I, II or III");
}

namespace detail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

inline int cmd_describe(const SurfaceFamily& fam, ChartPoint pt, FormChoice which,
                        const std::string& out_path, unsigned seed, std::ostream& out) {
    const SurfaceJet sj = fam.eval_chart(pt);
    const FormCoefficients fc = fundamental_forms(sj);
    std::optional<ProfileContext> ctx;
    if (fam.axis() != AxisClass::Null) ctx = ProfileContext{fam.axis(), fam.profile_state(pt.s)};
    const CurvatureData cd = curvatures(fc, ctx);
    const Vec3M lap{beltrami(fc, sj.x1, which), beltrami(fc, sj.x2, which),
                    beltrami(fc, sj.x3, which)};

    auto line = [&](const char* name, double v) {
        out << name << " = " << detail::g17(v) << "\n";
    };
    out << "family " << fam.name() << " at (s,theta) = (" << detail::g17(pt.s) << ", "
        << detail::g17(pt.theta) << "), signature " << signature_text(fam.signature()) << "\n";
    line("E", fc.E.value());
    line("F", fc.F.value());
    line("G", fc.G.value());
    line("L", fc.L.value());
    line("M", fc.M.value());
    line("N", fc.N.value());
    line("e11", fc.e11.value());
    line("e12", fc.e12.value());
    line("e22", fc.e22.value());
    line("e11_from_normal", fc.e11_n);
    line("e12_from_normal", fc.e12_n);
    line("e22_from_normal", fc.e22_n);
    line("K", cd.K);
    line("H", cd.H);
    line("r1", cd.r1);
    line("r2", cd.r2);
    line("r", cd.r);
    line("rprime", cd.rprime);
    out << "laplacian_" << to_string(which) << "(x) = (" << detail::g17(lap.x1) << ", "
        << detail::g17(lap.x2) << ", " << detail::g17(lap.x3) << ")\n";

    if (!out_path.empty()) {
        Json j{{"schema_version", kReportSchemaVersion},
               {"command", "describe"},
               {"family", fam.name()},
               {"point", Json{{"s", pt.s}, {"theta", pt.theta}}},
               {"J", to_string(which)},
               {"signature", signature_text(fam.signature())},
               {"forms",
                Json{{"E", fc.E.value()},
                     {"F", fc.F.value()},
                     {"G", fc.G.value()},
                     {"L", fc.L.value()},
                     {"M", fc.M.value()},
                     {"N", fc.N.value()},
                     {"e11", fc.e11.value()},
                     {"e12", fc.e12.value()},
                     {"e22", fc.e22.value()},
                     {"e11_from_normal", fc.e11_n},
                     {"e12_from_normal", fc.e12_n},
                     {"e22_from_normal", fc.e22_n}}},
               {"curvatures",
                Json{{"K", cd.K},
                     {"H", cd.H},
                     {"r1", cd.r1},
                     {"r2", cd.r2},
                     {"r", cd.r},
                     {"rprime", cd.rprime}}},
               {"laplacian", Json::array({lap.x1, lap.x2, lap.x3})},
               {"seed", seed}};
        write_report(j, out_path);
    }
    return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Surfaces of revolution in Lorentz-Minkowski 3-space: fundamental forms, "
                 "Beltrami operators, and eigen-relation detection"};
    app.require_subcommand(1);

    std::string family_id = "pseudosphere-s21";
    std::vector<std::string> params, tols;
    std::string grid_text, point_text = "0.4,0.2", form_text = "III", out_path;
    bool force_domain = false;
    unsigned seed = 12345;

    auto add_common = [&](CLI::App* sub, bool with_grid) {
        sub->add_option("--family", family_id, "family id (see `list`)");
        sub->add_option("--param", params, "family parameter key=value (repeatable)");
        sub->add_option("--tol", tols, "tolerance override name=value (repeatable)");
        sub->add_option("--out", out_path, "write a JSON report/mesh base path");
        sub->add_option("--seed", seed, "seed for randomized consistency checks");
        if (with_grid) {
            sub->add_option("--grid", grid_text, "grid s0:s1:ns,t0:t1:nt");
            sub->add_flag("--force-domain", force_domain, "allow grids outside the default domain");
        }
    };

    auto* list_cmd = app.add_subcommand("list", "enumerate built-in families");
    auto* describe_cmd = app.add_subcommand("describe", "forms and curvatures at a point");
    add_common(describe_cmd, false);
    describe_cmd->add_option("--point", point_text, "chart point s,theta");
    describe_cmd->add_option("--form", form_text, "fundamental form I|II|III");
    auto* fit_cmd = app.add_subcommand("fit", "least-squares fit of A in lap(x) = A x");
    add_common(fit_cmd, true);
    fit_cmd->add_option("--form", form_text, "fundamental form I|II|III");
    auto* verify_cmd = app.add_subcommand("verify", "run a classification theorem suite");
    std::string theorem_text = "T1";
    verify_cmd->add_option("id", theorem_text, "theorem id T1|T2|T3|T4");
    verify_cmd->add_option("--tol", tols, "tolerance override name=value");
    verify_cmd->add_option("--out", out_path, "write a JSON report");
    verify_cmd->add_option("--seed", seed, "seed for randomized consistency checks");
    auto* mesh_cmd = app.add_subcommand("mesh", "export OBJ mesh + per-vertex curvature CSV");
    add_common(mesh_cmd, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a case-analysis expression over a grid");
    std::string type_text = "I", case_text = "III", box_text;
    sweep_cmd->add_option("--type", type_text, "chart type I|II|III");
    sweep_cmd->add_option("--case", case_text, "case III|IV|V");
    sweep_cmd->add_option("--box,--grid", box_text, "sweep box u0:u1:nu,v0:v1:nv");
    sweep_cmd->add_option("--param", params, "k-spec for type III case V (k=, c=, sign=, ...)");
    sweep_cmd->add_option("--out", out_path, "write a JSON report");

    std::vector<const char*> argv;
    argv.push_back("mft");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Tolerances tol;
        tol.apply(tols);
        const ParamMap pm = ParamMap::parse(params);

        if (list_cmd->parsed()) {
            out << list_text();
            return 0;
        }
        if (describe_cmd->parsed()) {
            const SurfaceFamily fam = make_family(family_id, pm);
            return cmd_describe(fam, parse_point(point_text), parse_form(form_text), out_path,
                                seed, out);
        }
        if (fit_cmd->parsed()) {
            const SurfaceFamily fam = make_family(family_id, pm);
            const GridSpec grid = grid_text.empty() ? GridSpec::over(fam.domain(), 20, 20)
                                                    : parse_grid(grid_text);
            check_grid_in_domain(fam, grid, force_domain);
            const SampleSet ss = sample_grid(fam, grid, parse_form(form_text));
            const OperatorFit fit = fit_matrix(ss);
            const AStructure st = classify_matrix(fit.A, tol.classify);
            out << "family=" << fam.name() << " J=" << form_text << " accepted=" << ss.size()
                << " rejected=" << ss.rejected << "\n";
            out << "residual_rms=" << detail::g17(fit.residual_rms)
                << " residual_max=" << detail::g17(fit.residual_max) << "\n";
            out << "classification=" << to_string(st.kind) << " lambda=" << detail::g17(st.lambda)
                << " mu=" << detail::g17(st.mu) << "\n";
            out << "A = [" << detail::g17(fit.a(0, 0)) << ", " << detail::g17(fit.a(0, 1)) << ", "
                << detail::g17(fit.a(0, 2)) << "; " << detail::g17(fit.a(1, 0)) << ", "
                << detail::g17(fit.a(1, 1)) << ", " << detail::g17(fit.a(1, 2)) << "; "
                << detail::g17(fit.a(2, 0)) << ", " << detail::g17(fit.a(2, 1)) << ", "
                << detail::g17(fit.a(2, 2)) << "]\n";
            const bool pass = fit.residual_rms < tol.fit_pass;
            out << "pass=" << (pass ? "true" : "false") << " (fit_pass=" << detail::g17(tol.fit_pass)
                << ")\n";
            if (!out_path.empty()) write_report(fit_report(ss, fit, st, tol.fit_pass, seed), out_path);
            return pass ? 0 : 1;
        }
        if (verify_cmd->parsed()) {
            TheoremId id;
            if (theorem_text == "T1") id = TheoremId::T1;
            else if (theorem_text == "T2") id = TheoremId::T2;
            else if (theorem_text == "T3") id = TheoremId::T3;
            else if (theorem_text == "T4") id = TheoremId::T4;
            else throw std::invalid_argument("unknown theorem id: " + theorem_text);
            const TheoremReport rep = verify_theorem(
                id, seed, {tol.positive_residual, tol.negative_floor, tol.value});
            for (const auto& f : rep.families) {
                out << (f.pass ? "PASS " : "FAIL ") << f.family << " [" << f.role
                    << "] residual_rms=" << detail::g17(f.fit.residual_rms)
                    << " classified=" << to_string(f.classified.kind) << "\n";
            }
            out << "theorem " << theorem_text << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
            if (!out_path.empty()) write_report(to_json(rep), out_path);
            return rep.pass ? 0 : 1;
        }
        if (mesh_cmd->parsed()) {
            const SurfaceFamily fam = make_family(family_id, pm);
            const GridSpec grid = grid_text.empty() ? GridSpec::over(fam.domain(), 20, 20)
                                                    : parse_grid(grid_text);
            check_grid_in_domain(fam, grid, force_domain);
            if (out_path.empty()) throw std::invalid_argument("mesh requires --out BASE");
            const MeshStats st = write_mesh(fam, grid, out_path + ".obj", out_path + ".csv");
            out << "vertices=" << st.vertices << " triangles=" << st.triangles
                << " holes=" << st.holes << "\n";
            for (const auto& [locus, count] : st.hole_loci)
                out << "  hole locus: " << locus << " (" << count << " nodes)\n";
            if (!st.hole_nodes.empty()) {
                std::map<int, int> cols;
                for (const auto& [i, j] : st.hole_nodes) ++cols[i];
                for (const auto& [i, count] : cols)
                    out << "  hole column i=" << i << " (s=" << detail::g17(grid.s_at(i)) << ", "
                        << count << " nodes)\n";
            }
            write_report(to_json(st, grid, fam.name()), out_path + ".report.json");
            return 0;
        }
        if (sweep_cmd->parsed()) {
            AxisClass axis;
            if (type_text == "I") axis = AxisClass::Spacelike;
            else if (type_text == "II") axis = AxisClass::Timelike;
            else if (type_text == "III") axis = AxisClass::Null;
            else throw std::invalid_argument("--type expects I, II or III");
            CaseId cid;
            if (case_text == "III") cid = CaseId::CaseIII;
            else if (case_text == "IV") cid = CaseId::CaseIV;
            else if (case_text == "V") cid = CaseId::CaseV;
            else throw std::invalid_argument("--case expects III, IV or V");
            SweepSpec spec = default_sweep_spec(axis, cid);
            if (!box_text.empty()) {
                const GridSpec g = parse_grid(box_text);
                spec.u0 = g.s0;
                spec.u1 = g.s1;
                spec.nu = g.ns;
                spec.v0 = g.t0;
                spec.v1 = g.t1;
                spec.nv = g.nt;
            }
            if (axis == AxisClass::Null) spec.k = kspec_from_params(pm);
            const SweepReport rep = case_sweep(axis, cid, spec);
            out << "expression " << rep.expression_id << ": " << rep.expression << "\n";
            if (rep.errata) out << "errata: " << rep.errata_note << "\n";
            out << "min_abs=" << detail::g17(rep.min_abs) << " at (u,v)=("
                << detail::g17(rep.argmin_u) << ", " << detail::g17(rep.argmin_v) << ")\n";
            if (rep.cv_lambda)
                out << "cv_lambda=" << detail::g17(*rep.cv_lambda)
                    << " cv_mu=" << detail::g17(*rep.cv_mu) << " (" << rep.spec.k.describe()
                    << ")\n";
            if (!rep.constraint_note.empty()) out << "note: " << rep.constraint_note << "\n";
            if (!out_path.empty()) write_report(to_json(rep), out_path);
            return 0;
        }
        err << "no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace mft::cli
