#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "ypfa/finite_disk.hpp"
#include "ypfa/layered_forces.hpp"
#include "ypfa/limits.hpp"
#include "ypfa/yukawa_forces.hpp"

namespace fs = std::filesystem;
using namespace ypfa;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run ypfa_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("ypfa_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write(const std::string& name, const std::string& body) {
    const auto p = scratch() / name;
    std::ofstream(p) << body;
    return p;
}

std::vector<std::vector<std::string>> rows(const fs::path& csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream s(line);
        std::string cell;
        while (std::getline(s, cell, ',')) cells.push_back(cell);
        out.push_back(cells);
    }
    return out;
}

std::string header(const fs::path& csv) {
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    return line;
}

double d(const std::string& s) { return std::stod(s); }

nlohmann::json manifest(const fs::path& csv) {
    return nlohmann::json::parse(slurp(fs::path(csv.string() + ".manifest.json")));
}

const std::string kResiduals = std::string(YPFA_DATA_DIR) + "/synthetic_residuals.csv";

}  // namespace

TEST_CASE("eta sweep output does not depend on the worker count") {
    std::vector<std::string> bodies;
    std::vector<nlohmann::json> manifests;
    for (const char* w : {"1", "4", "8"}) {
        const auto out = scratch() / (std::string("fig2_") + w + ".csv");
        const auto r = ypfa_run({"eta-sweep", "--preset", "fig2-left", "--workers", w, "--output", out.string()});
        REQUIRE(r.code == 0);
        bodies.push_back(slurp(out));
        auto m = manifest(out);
        CHECK(m.contains("timestamp"));
        m.erase("timestamp");
        manifests.push_back(m);
    }
    CHECK(bodies[0] == bodies[1]);
    CHECK(bodies[0] == bodies[2]);
    CHECK(manifests[0] == manifests[1]);
    CHECK(manifests[0] == manifests[2]);

    const auto m = manifests[0];
    CHECK(m["subcommand"] == "eta-sweep");
    CHECK(m["preset"] == "fig2-left");
    CHECK(m["rows"] == 600);
    CHECK(m["config_entries"]["sweep.radii"]["origin"] == "preset fig2-left");
}

TEST_CASE("eta sweep rows reproduce the library") {
    const auto out = scratch() / "fig2_right.csv";
    REQUIRE(ypfa_run({"eta-sweep", "--preset", "fig2-right", "--output", out.string()}).code == 0);
    CHECK(header(out) == "lambda_m,R_m,D2_m,eta,regime");
    const auto rs = rows(out);
    CHECK(rs.size() == 800);
    for (const auto& r : rs) {
        const auto e = eta(d(r[1]), MetaphysicalThickness::finite(d(r[2])), d(r[0]));
        CHECK(relative_error(d(r[3]), e.eta) <= 1e-10);
        CHECK(r[4] == to_string(e.regime));
    }
}

TEST_CASE("single lambda point") {
    const auto out = scratch() / "single.csv";
    const auto r = ypfa_run({"eta-sweep", "--preset", "fig2-left", "--lambda-min", "150um", "--lambda-max", "150um",
                             "--lambda-points", "1", "--output", out.string()});
    REQUIRE(r.code == 0);
    const auto rs = rows(out);
    REQUIRE(rs.size() == 3);
    CHECK(rs[2][1] == "1.50000000000e-04");
    CHECK(relative_error(d(rs[2][3]), 2.0 * std::exp(-2.0)) <= 1e-11);
    CHECK(manifest(out)["config_entries"]["grid.min"]["origin"] == "--lambda-min");
}

TEST_CASE("config file and flags override the preset") {
    const auto cfg = write("eta.cfg", "sweep.radii = 20 um\nsweep.d2 = 5 um\n");
    const auto out = scratch() / "eta_cfg.csv";
    REQUIRE(ypfa_run({"eta-sweep", "--preset", "fig2-left", "--config", cfg.string(), "--d2", "inf",
                      "--lambda-points", "5", "--output", out.string()})
                .code == 0);
    const auto rs = rows(out);
    REQUIRE(rs.size() == 5);
    CHECK(rs[0][2] == "inf");
    CHECK(d(rs[0][1]) == 20e-6);
    const auto m = manifest(out);
    CHECK(m["config_entries"]["sweep.radii"]["origin"] == cfg.string() + ":1");
    CHECK(m["config_entries"]["sweep.d2"]["origin"] == "--d2");
}

TEST_CASE("input errors exit with 1") {
    const auto out = (scratch() / "bad.csv").string();
    const auto expect_input = [](const Run& r) {
        CHECK(r.code == cli::kExitInput);
        CHECK_FALSE(r.err.empty());
    };
    expect_input(ypfa_run({}));
    expect_input(ypfa_run({"no-such-command"}));
    expect_input(ypfa_run({"eta-sweep", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig5", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "nope", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig2-left"}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig2-left", "--lambda-min", "1 furlong", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig2-left", "--lambda-min", "-1nm", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig2-left", "--workers", "0", "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--preset", "fig2-left", "--output", "/nonexistent/dir/out.csv"}));
    expect_input(ypfa_run({"eta-sweep", "--config", write("empty_r.cfg", "sweep.radii =\n").string(),
                           "--output", out}));
    expect_input(ypfa_run({"eta-sweep", "--config", write("typo.cfg", "sweep.radius = 1 um\n").string(),
                           "--output", out}));
    expect_input(ypfa_run({"xi-power-sweep", "--preset", "fig4-left", "--config",
                           write("neg_n.cfg", "xi.exponents = -1\n").string(), "--output", out}));
    expect_input(ypfa_run({"xi-yukawa-sweep", "--preset", "fig5", "--config",
                           write("no_l.cfg", "yukawa.lambdas =\n").string(), "--output", out}));
    expect_input(ypfa_run({"xi-power-sweep", "--preset", "fig4-left", "--lambda-min", "1nm", "--output", out}));
    expect_input(ypfa_run({"limits", "--output", out, "--residuals", "/nonexistent.csv", "--config",
                           write("lim.cfg", "sphere.core_radius = 150 um\nsphere.core_density = 19.28 g/cm3\n"
                                            "slab.base.thickness = 3.5 um\nslab.base.density = 2.33 g/cm3\n")
                               .string()}));
    expect_input(ypfa_run({"oracle-verify", "--config", write("tight.cfg", "verify.tolerance = 1e-14\n").string()}));

    const auto broken = ypfa_run({"eta-sweep", "--config", write("broken.cfg", "sweep.radii = 1 um\nnonsense\n").string(),
                                  "--output", out});
    CHECK(broken.code == cli::kExitInput);
    CHECK(broken.err.find(":2") != std::string::npos);
}

TEST_CASE("layered sweep") {
    const auto out = scratch() / "fig3.csv";
    REQUIRE(ypfa_run({"eta-layered-sweep", "--preset", "fig3-left", "--lambda-points", "20", "--output",
                      out.string()})
                .code == 0);
    CHECK(header(out) == "lambda_m,R_m,D2_m,eta_delta,eta,ratio");
    const auto rs = rows(out);
    REQUIRE(rs.size() == 60);
    LayeredConfig cfg;
    cfg.separation = 100e-9;
    cfg.sphere = {0.0, 4100.0, {10e-9, 7140.0}, {180e-9, 19280.0}};
    cfg.slab = {{3.5e-6, 2330.0}, {10e-9, 7140.0}, {210e-9, 19280.0}};
    for (const auto& r : rs) {
        cfg.sphere.core_radius = d(r[1]);
        cfg.d2 = MetaphysicalThickness::finite(d(r[2]));
        const auto e = eta_delta(cfg, {1.0, d(r[0])});
        CHECK(relative_error(d(r[3]), e.eta_delta) <= 1e-10);
        CHECK(relative_error(d(r[5]), e.ratio) <= 1e-10);
    }

    // with both coatings removed the layered ratio is the homogeneous one
    const auto bare = write("bare.cfg",
                            "sphere.inner_coat.thickness = 0 nm\nsphere.outer_coat.thickness = 0 nm\n"
                            "slab.middle.thickness = 0 nm\nslab.top.thickness = 0 nm\n"
                            "slab.base.density = 19.28 g/cm3\nsphere.core_density = 19.28 g/cm3\n");
    const auto bare_out = scratch() / "bare.csv";
    REQUIRE(ypfa_run({"eta-layered-sweep", "--preset", "fig3-left", "--config", bare.string(), "--d2", "inf",
                      "--lambda-points", "15", "--output", bare_out.string()})
                .code == 0);
    for (const auto& r : rows(bare_out)) CHECK(std::abs(d(r[5]) - 1.0) <= 1e-10);
}

TEST_CASE("xi sweeps") {
    const auto out = scratch() / "fig4.csv";
    REQUIRE(ypfa_run({"xi-power-sweep", "--preset", "fig4-right", "--output", out.string()}).code == 0);
    CHECK(header(out) == "N,Rd_m,xi");
    const auto rs = rows(out);
    REQUIRE(rs.size() == 800);
    for (std::size_t i = 0; i < rs.size(); i += 37) {
        const XiInputs x{100e-9, 150e-6, {d(rs[i][1]), 3.5e-6, 1.0}};
        CHECK(relative_error(d(rs[i][2]), xi_power(x, d(rs[i][0]))) <= 1e-10);
    }

    const auto pole = write("pole.cfg", "xi.exponents = 2, 3.0000001\ngrid.points = 4\n");
    const auto pole_out = scratch() / "pole.csv";
    REQUIRE(ypfa_run({"xi-power-sweep", "--preset", "fig4-left", "--config", pole.string(), "--output",
                      pole_out.string()})
                .code == 0);
    const auto prs = rows(pole_out);
    REQUIRE(prs.size() == 8);
    CHECK(prs[5][2] == "nan");
    CHECK(prs[1][2] != "nan");
    const auto flagged = manifest(pole_out)["flagged_rows"];
    CHECK(flagged.size() == 4);
    CHECK(flagged[0]["row"] == 5);

    const auto near = write("near.cfg", "yukawa.lambdas = 0.1 um\ngrid.points = 5\n");
    const auto y_out = scratch() / "fig5.csv";
    REQUIRE(ypfa_run({"xi-yukawa-sweep", "--preset", "fig5", "--config", near.string(), "--output",
                      y_out.string()})
                .code == 0);
    CHECK(header(y_out) == "Rd_m,lambda_m,ln_xi");
    for (const auto& r : rows(y_out)) CHECK(relative_error(d(r[2]), 3000.0) <= 1e-9);
}

TEST_CASE("limits") {
    const auto geometry = write("geom.cfg",
                                "sphere.core_radius = 150 um\nsphere.core_density = 19.28 g/cm3\n"
                                "slab.base.thickness = 3.5 um\nslab.base.density = 2.33 g/cm3\n");
    const auto pfa = scratch() / "pfa.csv";
    const auto epfa = scratch() / "epfa.csv";
    REQUIRE(ypfa_run({"limits", "--config", geometry.string(), "--residuals", kResiduals, "--lambda-points", "40",
                      "--output", pfa.string()})
                .code == 0);
    REQUIRE(ypfa_run({"limits", "--config", geometry.string(), "--residuals", kResiduals, "--method", "epfa",
                      "--lambda-points", "40", "--output", epfa.string()})
                .code == 0);
    CHECK(header(pfa) == "lambda_m,alpha_bound,best_separation_m,method");
    CHECK(header(epfa) == "lambda_m,alpha_bound,best_separation_m,method,shift_vs_pfa");
    const auto p = rows(pfa), e = rows(epfa);
    REQUIRE(p.size() == 40);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double shift = 1.0 / eta(150e-6, MetaphysicalThickness::infinite(), d(p[i][0])).eta;
        CHECK(relative_error(d(e[i][4]), shift) <= 1e-10);
        CHECK(e[i][3] == "epfa");
    }
    const auto bounds = load_residuals(kResiduals);
    const HomogeneousGeometry g{{0.0, 150e-6, 19280.0, 3.5e-6, 2330.0}, MetaphysicalThickness::infinite()};
    for (std::size_t i = 0; i < p.size(); i += 5) {
        const auto ref = alpha_limit(d(p[i][0]), bounds, g, LimitMethod::pfa);
        CHECK(relative_error(d(p[i][1]), ref.alpha_bound) <= 1e-10);
        CHECK(relative_error(d(p[i][2]), ref.best_separation) <= 1e-10);
    }
    CHECK(manifest(epfa)["pfa_unreliable"]["rows"].get<int>() > 0);

    const auto bad = write("bad_res.csv", "separation_m,residual_N\n1e-7,1e-15\n2e-7,x\n");
    const auto r = ypfa_run({"limits", "--config", geometry.string(), "--residuals", bad.string(), "--output",
                             (scratch() / "bad_lim.csv").string()});
    CHECK(r.code == cli::kExitInput);
    CHECK(r.err.find("bad_res.csv:3") != std::string::npos);
}

TEST_CASE("oracle verification") {
    const auto ok = ypfa_run({"oracle-verify"});
    CHECK(ok.code == cli::kExitOk);
    CHECK(ok.out.find("0 failed") != std::string::npos);

    const auto bad = ypfa_run({"oracle-verify", "--config",
                               write("perturb.cfg", "verify.perturb = sphere_slab:1.001\n").string()});
    CHECK(bad.code == cli::kExitNumerical);
    CHECK(bad.err.find("verification failed: sphere_slab") != std::string::npos);
}
