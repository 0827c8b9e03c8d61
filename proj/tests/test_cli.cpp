#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mft/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = mft::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
    int n = 0;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

fs::path tmp_path(const std::string& name) { return fs::temp_directory_path() / name; }

} // namespace

TEST_CASE("list is stable and names the chart signatures", "[cli]") {
    const CliResult a = run({"list"});
    const CliResult b = run({"list"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("pseudosphere-s21 (c>0), signature (+,+,-)") != std::string::npos);
    CHECK(a.out.find("rev-null-axis (k-spec), signature (-,+,+)") != std::string::npos);
}

TEST_CASE("describe prints the forms and laplacian at a point", "[cli]") {
    const CliResult r = run({"describe", "--family", "pseudosphere-s21", "--point", "0.4,0.2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("family pseudosphere-s21") != std::string::npos);
    CHECK(r.out.find("laplacian_III(x) = ") != std::string::npos);
    // K = 1 and r = -2 on the unit pseudosphere, up to printed roundoff.
    double K = 0, rr = 0;
    std::istringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind("K = ", 0) == 0) K = std::stod(line.substr(4));
        if (line.rfind("r = ", 0) == 0) rr = std::stod(line.substr(4));
    }
    CHECK(K == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(rr == Catch::Approx(-2.0).epsilon(1e-12));

    // A point on the excluded locus reports the locus by name.
    const CliResult bad =
        run({"describe", "--family", "minimal-profile-i", "--point", "9.0,0.0"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("profile table range") != std::string::npos);

    // On the circular profile f and sin(phi) vanish together; f is reported.
    const CliResult pole = run(
        {"describe", "--family", "pseudosphere-s21", "--point", "1.5707963267948966,0.2"});
    CHECK(pole.code == 3);
    CHECK(pole.err.find("f(s) <= 0") != std::string::npos);

    // A profile crossing phi = pi away from f = 0 reports the angle locus;
    // loaded from a CSV table to exercise that family path end to end.
    const auto csv = tmp_path("mft_cli_profile.csv");
    mft::integrate_profile(
        mft::AxisClass::Spacelike, [](double s) { return 2.0 + s; },
        [](double) { return 1.0; }, [](double) { return 0.0; }, 2.0, 0.0, 1.0, 1e-3, 300)
        .save_csv(csv.string());
    const CliResult angle = run({"describe", "--family", "rev-spacelike-axis", "--param",
                                 "profile=" + csv.string(), "--point",
                                 "1.1415926535897931,0.1"});
    CHECK(angle.code == 3);
    CHECK(angle.err.find("sin(phi) = 0") != std::string::npos);
    const CliResult angle_ok = run({"describe", "--family", "rev-spacelike-axis", "--param",
                                    "profile=" + csv.string(), "--point", "1.05,0.1"});
    CHECK(angle_ok.code == 0);
    fs::remove(csv);

    // The other fundamental forms drive the same machinery.
    CHECK(run({"describe", "--family", "pseudosphere-s21", "--form", "II"}).code == 0);
    CHECK(run({"fit", "--family", "pseudosphere-s21", "--form", "I", "--tol",
               "fit_pass=1e-6"})
              .code == 0);

    // A minimal profile prints a vanishing mean curvature.
    const CliResult min = run({"describe", "--family", "minimal-profile-i", "--point", "0.7,0.3"});
    CHECK(min.code == 0);
    std::istringstream ms(min.out);
    double H = 1;
    while (std::getline(ms, line))
        if (line.rfind("H = ", 0) == 0) H = std::stod(line.substr(4));
    CHECK(std::abs(H) < 1e-7);
}

TEST_CASE("fit exit status encodes pass/fail", "[cli]") {
    const auto report = tmp_path("mft_fit_report.json");
    const CliResult good = run({"fit", "--family", "pseudosphere-s21", "--out", report.string()});
    CHECK(good.code == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["schema_version"] == 1);
    CHECK(j["classification"]["kind"] == "DiagI");
    CHECK(std::abs(double(j["classification"]["lambda"]) - 2.0) < 1e-6);
    CHECK(j["pass"] == true);
    fs::remove(report);

    const CliResult bad = run({"fit", "--family", "perturbed-profile-i"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("pass=false") != std::string::npos);
}

TEST_CASE("fit reports are byte-identical across runs", "[cli]") {
    const auto r1 = tmp_path("mft_det_a.json"), r2 = tmp_path("mft_det_b.json");
    run({"fit", "--family", "hyperbolic-h2", "--seed", "7", "--out", r1.string()});
    run({"fit", "--family", "hyperbolic-h2", "--seed", "7", "--out", r2.string()});
    CHECK(slurp(r1) == slurp(r2));
    fs::remove(r1);
    fs::remove(r2);
}

TEST_CASE("grid outside the domain needs --force-domain", "[cli]") {
    const CliResult refused =
        run({"fit", "--family", "pseudosphere-s21", "--grid", "0.1:2.9:10,-1:1:10"});
    CHECK(refused.code == 2);
    CHECK(refused.err.find("force-domain") != std::string::npos);
    const CliResult forced = run({"fit", "--family", "pseudosphere-s21", "--grid",
                                  "0.1:1.2:10,-1:1:10", "--force-domain"});
    CHECK(forced.code == 0);
}

TEST_CASE("verify runs a theorem suite end to end", "[cli]") {
    const auto report = tmp_path("mft_verify_t1.json");
    const CliResult r = run({"verify", "T1", "--out", report.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("theorem T1: PASS") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["pass"] == true);
    CHECK(j["families"].size() == 3);
    fs::remove(report);
}

TEST_CASE("mesh writes OBJ + CSV with the expected counts", "[cli]") {
    const auto base = tmp_path("mft_mesh_ps");
    const CliResult r = run({"mesh", "--family", "pseudosphere-s21", "--grid",
                             "0.1:1.4:10,-1:1:10", "--out", base.string()});
    CHECK(r.code == 0);
    const std::string obj = slurp(base.string() + ".obj");
    CHECK(count_lines_starting(obj, "v ") == 100);
    CHECK(count_lines_starting(obj, "f ") == 162);
    const std::string csv = slurp(base.string() + ".csv");
    CHECK(csv.rfind("s,theta,x1,x2,x3,K,H\n", 0) == 0);
    CHECK(count_lines_starting(csv, "") == 101); // header + 100 vertices

    // Determinism: re-running produces identical bytes.
    const auto base2 = tmp_path("mft_mesh_ps2");
    run({"mesh", "--family", "pseudosphere-s21", "--grid", "0.1:1.4:10,-1:1:10", "--out",
         base2.string()});
    CHECK(slurp(base.string() + ".obj") == slurp(base2.string() + ".obj"));
    CHECK(slurp(base.string() + ".csv") == slurp(base2.string() + ".csv"));
    for (const auto& b : {base, base2})
        for (const char* ext : {".obj", ".csv", ".report.json"}) fs::remove(b.string() + ext);
}

TEST_CASE("mesh across an excluded locus reports the hole column", "[cli]") {
    const auto base = tmp_path("mft_mesh_hole");
    const CliResult r = run({"mesh", "--family", "rev-null-axis", "--param", "k=quadric",
                             "--grid", "-0.5:0.5:5,-1:1:4", "--force-domain", "--out",
                             base.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("holes=4") != std::string::npos);
    CHECK(r.out.find("s = 0") != std::string::npos);
    CHECK(r.out.find("hole column i=2") != std::string::npos);
    for (const char* ext : {".obj", ".csv", ".report.json"}) fs::remove(base.string() + ext);
}

TEST_CASE("sweep prints the expression report", "[cli]") {
    const CliResult r = run({"sweep", "--type", "II", "--case", "IV"});
    CHECK(r.code == 0);
    CHECK(r.out.find("timelike.case4") != std::string::npos);
    const CliResult v = run({"sweep", "--type", "III", "--case", "V", "--param", "k=monomial"});
    CHECK(v.code == 0);
    CHECK(v.out.find("cv_lambda=") != std::string::npos);
}

TEST_CASE("unknown family and malformed flags are usage errors", "[cli]") {
    CHECK(run({"fit", "--family", "nonsense"}).code == 2);
    CHECK(run({"fit", "--family", "pseudosphere-s21", "--grid", "oops"}).code == 2);
    CHECK(run({"describe", "--family", "pseudosphere-s21", "--point", "xyz"}).code == 2);
    CHECK(run({"fit", "--family", "pseudosphere-s21", "--tol", "nope=1"}).code == 2);
}

TEST_CASE("installed binary behaves like the in-process driver", "[cli]") {
    const char* bin = std::getenv("MFT_BIN");
    if (!bin) {
        SUCCEED("MFT_BIN not set; binary smoke check skipped");
        return;
    }
    const std::string cmd = std::string(bin) + " list";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string captured;
    char buf[256];
    while (std::fgets(buf, sizeof(buf), pipe)) captured += buf;
    const int status = pclose(pipe);
    CHECK(status == 0);
    CHECK(captured == run({"list"}).out);
}
