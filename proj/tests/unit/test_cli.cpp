#include "cli.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "twolayer");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = twolayer::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "twolayer_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::stringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("cutoffs row", "[cli]") {
    const auto out = scratch("cutoffs");
    const auto r = run({"cutoffs", "--beta", "0.5", "--b", "1", "--k", "1", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto csv = lines(slurp(out.string() + ".csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[0].rfind("beta,b,k,Lambda1,Lambda2,tau1,", 0) == 0);
    CHECK_THAT(csv[1], ContainsSubstring("0.275780622693,1,3.00974728636,"));

    const auto m = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(m["command"] == "cutoffs");
    CHECK(m["spectral_context"]["q2"].get<double>() == std::sqrt(2.0));
    CHECK(m["inputs"]["beta"].get<double>() == 0.5);
}

TEST_CASE("dipoles row and BEM diagnostics", "[cli]") {
    const auto out = scratch("dipoles");
    const auto r = run({"dipoles", "--shape", "circle", "--r", "1", "--N", "256", "--out",
                        out.string()});
    REQUIRE(r.code == 0);
    const auto csv = lines(slurp(out.string() + ".csv"));
    CHECK(csv[1].rfind("circle,256,1,", 0) == 0);
    const auto m = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(m["bem"]["N"] == 256);
    CHECK(m["bem"]["gauss_residual"].get<double>() < 1e-10);
}

TEST_CASE("embedded reproduces the alpha = 0.5 root", "[cli]") {
    const auto out = scratch("embedded");
    REQUIRE(run({"embedded", "--beta", "0.5", "--out", out.string()}).code == 0);
    const auto csv = lines(slurp(out.string() + ".csv"));
    CHECK_THAT(csv[1], ContainsSubstring(",true,0.170459694155,"));
}

TEST_CASE("trapped, resonance and sweeps", "[cli]") {
    const auto out = scratch("trapped");
    REQUIRE(run({"trapped", "--side", "L", "--out", out.string()}).code == 0);
    CHECK_THAT(slurp(out.string() + ".csv"), ContainsSubstring("0.000100685250137"));

    const auto res = scratch("resonance");
    REQUIRE(run({"resonance", "--g", "9.81", "--sweep", "epsilon:0.01:0.02:2", "--out",
                 res.string()})
                .code == 0);
    const auto csv = lines(slurp(res.string() + ".csv"));
    REQUIRE(csv.size() == 3);
    CHECK_THAT(csv[1], ContainsSubstring("7.27205773632e-09"));

    const auto sw = scratch("sweep_alpha");
    REQUIRE(run({"embedded", "--sweep", "alpha:0.5:0.97:3", "--out", sw.string()}).code == 0);
    const auto rows = lines(slurp(sw.string() + ".csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("beta,alpha,", 0) == 0);
    CHECK_THAT(rows[3], ContainsSubstring(",false,"));

    const auto fig = scratch("fig");
    REQUIRE(run({"sweep", "--alphas", "0.5,0.91,0.97", "--sweep", "a:0:1:11", "--out",
                 fig.string()})
                .code == 0);
    CHECK(lines(slurp(fig.string() + ".csv")).size() == 34);
}

TEST_CASE("determinism and manifest replay", "[cli]") {
    const auto a = scratch("replay_a");
    const auto b = scratch("replay_b");
    REQUIRE(run({"resonance", "--beta", "0.3", "--a", "0.4", "--shape", "ellipse", "--a0", "1.5",
                 "--b0", "1", "--theta0", "0.2", "--out", a.string()})
                .code == 0);
    const std::string first = slurp(a.string() + ".csv");
    REQUIRE(run({"resonance", "--beta", "0.3", "--a", "0.4", "--shape", "ellipse", "--a0", "1.5",
                 "--b0", "1", "--theta0", "0.2", "--out", a.string()})
                .code == 0);
    CHECK(slurp(a.string() + ".csv") == first);

    REQUIRE(run({"resonance", "--config", a.string() + ".manifest.json", "--out", b.string()})
                .code == 0);
    CHECK(slurp(b.string() + ".csv") == first);
}

TEST_CASE("key = value config file with flag override", "[cli]") {
    const auto cfg = scratch("run.cfg");
    {
        std::ofstream f(cfg);
        f << "# alpha = 0.91\nbeta = 0.09\nb = 1\nk=1\nout = " << scratch("from_file").string() << "\n";
    }
    REQUIRE(run({"embedded", "--config", cfg.string()}).code == 0);
    CHECK_THAT(slurp(scratch("from_file").string() + ".csv"), ContainsSubstring("0.984772620887"));

    REQUIRE(run({"embedded", "--config", cfg.string(), "--beta", "0.5"}).code == 0);
    CHECK_THAT(slurp(scratch("from_file").string() + ".csv"), ContainsSubstring("0.170459694155"));
}

TEST_CASE("fourier shapes go through the BEM", "[cli]") {
    const auto shape = scratch("blob.txt");
    {
        std::ofstream f(shape);
        f << "1 0 0 0.8\n0.15 0.05 0.1 0\n";
    }
    const auto out = scratch("fourier");
    REQUIRE(run({"resonance", "--shape", "fourier", "--fourier-file", shape.string(), "--N", "128",
                 "--out", out.string()})
                .code == 0);
    const auto m = nlohmann::json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(m["dipoles"]["source"] == "bem");
    CHECK(m["bem"]["N"] == 128);
}

TEST_CASE("exit codes", "[cli]") {
    const auto out = scratch("bad").string();
    auto bad = run({"cutoffs", "--beta", "1.5", "--out", out});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("beta"));

    CHECK(run({"dipoles", "--shape", "square", "--out", out}).code == 2);
    CHECK(run({"dipoles", "--N", "100", "--out", out}).code == 2);
    CHECK(run({"trapped", "--a", "2", "--out", out}).code == 2);
    CHECK(run({"trapped", "--side", "X", "--out", out}).code == 2);
    CHECK(run({"dipoles", "--shape", "fourier", "--fourier-file", "/nonexistent", "--out", out})
              .code == 2);
    CHECK(run({"cutoffs", "--sweep", "beta:0.9:0.1:3", "--out", out}).code == 2);
    CHECK(run({"cutoffs", "--sweep", "beta:0.1:0.9:1", "--out", out}).code == 2);
    CHECK(run({"cutoffs", "--sweep", "N:32:64:2", "--out", out}).code == 2);
    CHECK(run({"cutoffs", "--config", "/nonexistent.cfg", "--out", out}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"cutoffs", "--help"}).code == 0);
}
