#pragma once

#include <fstream>
#include <json.hpp>
#include <string>

#include "mft/detector.hpp"
#include "mft/mesh.hpp"
#include "mft/sweep.hpp"

namespace mft {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline Json to_json(const GridSpec& g) {
    return Json{{"s0", g.s0}, {"s1", g.s1}, {"ns", g.ns}, {"t0", g.t0}, {"t1", g.t1}, {"nt", g.nt}};
}

inline Json to_json(const AStructure& st) {
    return Json{{"kind", to_string(st.kind)},
                {"lambda", st.lambda},
                {"mu", st.mu},
                {"tol", st.tol},
                {"pattern_residual", st.pattern_residual}};
}

inline Json to_json(const OperatorFit& fit) {
    return Json{{"A", fit.A},
                {"residual_rms", fit.residual_rms},
                {"residual_max", fit.residual_max},
                {"condition_estimate", fit.condition_estimate}};
}

inline Json fit_report(const SampleSet& ss, const OperatorFit& fit, const AStructure& st,
                       double pass_threshold, unsigned seed) {
    Json rejected_loci = Json::object();
    for (const auto& [locus, count] : ss.rejection_loci) rejected_loci[locus] = count;
    Json j{{"schema_version", kReportSchemaVersion},
           {"command", "fit"},
           {"family", ss.family},
           {"J", to_string(ss.J)},
           {"grid", to_json(ss.grid)},
           {"samples_accepted", ss.size()},
           {"samples_rejected", ss.rejected},
           {"rejected_loci", rejected_loci},
           {"fit", to_json(fit)},
           {"classification", to_json(st)},
           {"tolerances", Json{{"fit_pass", pass_threshold}, {"classify", st.tol}}},
           {"seed", seed},
           {"pass", fit.residual_rms < pass_threshold}};
    return j;
}

inline Json to_json(const FamilyVerdict& v) {
    Json j{{"family", v.family},
           {"role", v.role},
           {"expected", to_string(v.expected)},
           {"samples", v.samples},
           {"rejected", v.rejected},
           {"fit", to_json(v.fit)},
           {"classification", to_json(v.classified)},
           {"expected_pattern_fit", to_json(v.expected_fit)},
           {"pass", v.pass}};
    if (v.expected_lambda) j["expected_lambda"] = *v.expected_lambda;
    if (v.expected_mu) j["expected_mu"] = *v.expected_mu;
    if (v.reduced_residual_max) j["reduced_system_residual_max"] = *v.reduced_residual_max;
    if (v.lambda_mu_agreement) j["lambda_mu_agreement"] = *v.lambda_mu_agreement;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline Json to_json(const TheoremReport& rep) {
    Json fams = Json::array();
    for (const auto& f : rep.families) fams.push_back(to_json(f));
    return Json{{"schema_version", kReportSchemaVersion},
                {"command", "verify"},
                {"theorem", to_string(rep.id)},
                {"seed", rep.seed},
                {"tolerances",
                 Json{{"positive_residual", rep.positive_residual_tol},
                      {"negative_residual_floor", rep.negative_residual_floor},
                      {"value", rep.value_tol}}},
                {"families", fams},
                {"pass", rep.pass}};
}

inline Json to_json(const SweepReport& rep) {
    Json j{{"schema_version", kReportSchemaVersion},
           {"command", "sweep"},
           {"type", rep.axis == AxisClass::Spacelike  ? "I"
                    : rep.axis == AxisClass::Timelike ? "II"
                                                      : "III"},
           {"case", to_string(rep.case_id)},
           {"expression_id", rep.expression_id},
           {"expression", rep.expression},
           {"errata", rep.errata},
           {"grid",
            Json{{"u0", rep.spec.u0},
                 {"u1", rep.spec.u1},
                 {"nu", rep.spec.nu},
                 {"v0", rep.spec.v0},
                 {"v1", rep.spec.v1},
                 {"nv", rep.spec.nv}}},
           {"min_abs", rep.min_abs},
           {"argmin", Json{{"u", rep.argmin_u}, {"v", rep.argmin_v}}}};
    if (rep.errata) j["errata_note"] = rep.errata_note;
    if (!rep.constraint_note.empty()) j["constraint_note"] = rep.constraint_note;
    if (rep.cv_lambda) {
        j["k"] = rep.spec.k.describe();
        j["cv_lambda"] = *rep.cv_lambda;
        j["cv_mu"] = *rep.cv_mu;
        j["lambda_mean"] = *rep.lambda_mean;
        j["mu_mean"] = *rep.mu_mean;
    }
    return j;
}

inline Json to_json(const MeshStats& st, const GridSpec& grid, const std::string& family) {
    Json loci = Json::object();
    for (const auto& [locus, count] : st.hole_loci) loci[locus] = count;
    Json holes = Json::array();
    for (const auto& [i, j] : st.hole_nodes) holes.push_back(Json::array({i, j}));
    return Json{{"schema_version", kReportSchemaVersion},
                {"command", "mesh"},
                {"family", family},
                {"grid", to_json(grid)},
                {"vertices", st.vertices},
                {"triangles", st.triangles},
                {"holes", st.holes},
                {"hole_loci", loci},
                {"hole_nodes", holes}};
}

/// Serializes with a fixed 2-space indent and trailing newline; nlohmann's
/// shortest-round-trip double formatting keeps repeated runs byte-identical.
inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

inline void write_report(const Json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << render(j);
}

} // namespace mft
