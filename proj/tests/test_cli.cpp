// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "lpm/lpm.hpp"

#ifndef LPM_CLI_PATH
#error "LPM_CLI_PATH must name the lpm_cli executable"
#endif

namespace fs = std::filesystem;
using namespace lpm;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

class Sandbox {
public:
    Sandbox() : dir_(fs::temp_directory_path() / ("lpm_cli_test_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    [[nodiscard]] fs::path path(const std::string& name) const { return dir_ / name; }

    Run run(const std::string& args) const {
        const auto out = path("stdout.txt"), err = path("stderr.txt");
        const std::string cmd = "cd '" + dir_.string() + "' && '" + std::string(LPM_CLI_PATH) + "' " + args + " >'" +
                                out.string() + "' 2>'" + err.string() + "'";
        const int raw = std::system(cmd.c_str());
        Run r;
        r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

private:
    fs::path dir_;
};

bool bit_equal(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("gen writes LPBM with a sidecar, deterministically", "[cli]") {
    Sandbox box;
    const std::string cmd = "gen --kind weierstrass --alpha 0.8 --depth 8 --n 1 --N 4096 --out w.lpbm";
    REQUIRE(box.run(cmd).status == 0);
    const auto bytes = Sandbox::slurp(box.path("w.lpbm"));
    REQUIRE(bytes.size() == 20 + 16 * 4096);
    CHECK(bytes.substr(0, 4) == "LPBM");
    const auto file = io::read_lpbm(box.path("w.lpbm"));
    CHECK(file.function.grid().dim() == 1);
    CHECK(file.function.grid().points() == 4096);
    CHECK(bit_equal(file.function, gen_weierstrass(0.8, 8, TorusGrid(1, 4096))));

    const auto spec = json::parse(Sandbox::slurp(box.path("w.lpbm.json")));
    CHECK(spec["kind"] == "weierstrass");
    CHECK(spec["params"]["alpha"] == 0.8);
    CHECK(spec["grid"]["N"] == 4096);

    REQUIRE(box.run("gen --kind weierstrass --alpha 0.8 --depth 8 --n 1 --N 4096 --out w2.lpbm").status == 0);
    CHECK(Sandbox::slurp(box.path("w2.lpbm")) == bytes);

    REQUIRE(box.run("gen --kind band-random --scale 3 --seed 5 --N 256 --out b1.lpbm").status == 0);
    REQUIRE(box.run("gen --kind band-random --scale 3 --seed 5 --N 256 --out b2.lpbm").status == 0);
    REQUIRE(box.run("gen --kind band-random --scale 3 --seed 6 --N 256 --out b3.lpbm").status == 0);
    CHECK(Sandbox::slurp(box.path("b1.lpbm")) == Sandbox::slurp(box.path("b2.lpbm")));
    CHECK(Sandbox::slurp(box.path("b1.lpbm")) != Sandbox::slurp(box.path("b3.lpbm")));

    REQUIRE(box.run("gen --kind annulus-collection --mode ball --s 0.5 --depth 3 --N 256 --seed 2 --out a.lpbm").status == 0);
    for (int j = 0; j <= 3; ++j) CHECK(fs::exists(box.path("a_" + std::to_string(j) + ".lpbm")));
}

TEST_CASE("gen rejects invalid parameters with usage status", "[cli]") {
    Sandbox box;
    const auto bad = box.run("gen --kind weierstrass --alpha 1.5 --depth 8 --n 1 --N 4096 --out w.lpbm");
    CHECK(bad.status == 2);
    CHECK(bad.err.find("alpha") != std::string::npos);
    CHECK_FALSE(fs::exists(box.path("w.lpbm")));
    CHECK(box.run("gen --kind weierstrass --depth 20 --N 64 --out w.lpbm").status == 2);
    CHECK(box.run("gen --kind spline --out w.lpbm").status == 2);
    CHECK(box.run("gen --kind constant").status == 2);
    CHECK(box.run("gen --kind constant --N 100 --out c.lpbm").status == 2);
    CHECK(box.run("").status == 2);
    CHECK(box.run("--help").status == 0);
}

TEST_CASE("norm prints a JSON record matching the library", "[cli]") {
    Sandbox box;
    REQUIRE(box.run("gen --kind constant --N 256 --out c.lpbm").status == 0);
    const auto r = box.run("norm c.lpbm --kind morrey --p 2 --q 1");
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(j["norm_kind"] == "morrey");
    CHECK(j["params"]["p"] == 2.0);
    CHECK_THAT(j["value"].get<double>(), Catch::Matchers::WithinRel(std::sqrt(kTwoPi), 1e-12));

    REQUIRE(box.run("gen --kind lacunary --s 0.7 --depth 6 --N 512 --seed 3 --out l.lpbm").status == 0);
    const auto lac = io::read_lpbm(box.path("l.lpbm")).function;
    const auto b = box.run("norm l.lpbm --kind besov-morrey --p 2 --q 1 --r inf --s 0.7");
    REQUIRE(b.status == 0);
    const double expected = besov_morrey_norm(lac, {2, 1, kInfinity, 0.7}, DyadicSymbolBank(lac.grid()));
    CHECK(json::parse(b.out)["value"].get<double>() == expected);
    CHECK(json::parse(b.out)["params"]["r"] == "INF");

    const auto hz = box.run("norm l.lpbm --kind holder-zygmund --beta 0.7");
    REQUIRE(hz.status == 0);
    CHECK(json::parse(hz.out)["value"].get<double>() == holder_zygmund_norm(lac, 0.7, DyadicSymbolBank(lac.grid())));

    const auto q = box.run("norm c.lpbm --kind morrey --p 1 --q 2");
    CHECK(q.status == 2);
    CHECK(q.err.find("1 <= q <= p") != std::string::npos);
    CHECK(box.run("norm missing.lpbm").status == 1);
    std::ofstream(box.path("junk.lpbm")) << "not a function";
    CHECK(box.run("norm junk.lpbm").status == 1);
}

TEST_CASE("para operators", "[cli]") {
    Sandbox box;
    REQUIRE(box.run("gen --kind band-random --scale 2 --seed 1 --N 256 --out f.lpbm").status == 0);
    REQUIRE(box.run("gen --kind band-random --scale 5 --seed 2 --N 256 --out g.lpbm").status == 0);
    REQUIRE(box.run("gen --kind weierstrass --alpha 0.5 --depth 6 --N 256 --out h.lpbm").status == 0);
    const auto f = io::read_lpbm(box.path("f.lpbm")).function;
    const auto g = io::read_lpbm(box.path("g.lpbm")).function;
    const auto h = io::read_lpbm(box.path("h.lpbm")).function;
    const DyadicSymbolBank bank(f.grid());

    const auto split = box.run("para --op bony-split f.lpbm g.lpbm --out fg.lpbm");
    REQUIRE(split.status == 0);
    CHECK(json::parse(split.out)["residual"].get<double>() <= 1e-10);
    const auto lib = bony_decompose(f, g, bank);
    CHECK(bit_equal(io::read_lpbm(box.path("fg_low_high.lpbm")).function, lib.low_high));
    CHECK(bit_equal(io::read_lpbm(box.path("fg_high_low.lpbm")).function, lib.high_low));
    CHECK(bit_equal(io::read_lpbm(box.path("fg_resonant.lpbm")).function, lib.resonant));
    CHECK(box.run("para --split f.lpbm g.lpbm --out s.lpbm").status == 0);
    CHECK(fs::exists(box.path("s_resonant.lpbm")));

    REQUIRE(box.run("para --op commutator-thm2 f.lpbm g.lpbm h.lpbm --out t.lpbm").status == 0);
    CHECK(bit_equal(io::read_lpbm(box.path("t.lpbm")).function, commutator_thm2(f, g, h, bank)));
    REQUIRE(box.run("para --op low-high f.lpbm g.lpbm --out lh.lpbm").status == 0);
    CHECK(bit_equal(io::read_lpbm(box.path("lh.lpbm")).function, para_low_high(f, g, bank)));
    REQUIRE(box.run("para --op block-commutator h.lpbm g.lpbm --j 4 --out bc.lpbm").status == 0);
    CHECK(bit_equal(io::read_lpbm(box.path("bc.lpbm")).function, block_commutator(h, g, 4, bank)));

    REQUIRE(box.run("gen --kind constant --N 128 --out c128.lpbm").status == 0);
    CHECK(box.run("para --op resonant f.lpbm c128.lpbm").status == 2);
    CHECK(box.run("para --op commutator-thm2 f.lpbm g.lpbm").status == 2);
    CHECK(box.run("para --op block-commutator f.lpbm g.lpbm --j 99").status == 2);
    CHECK(box.run("para --op low-high f.lpbm nowhere.lpbm").status == 1);
}

TEST_CASE("verify suites and report files", "[cli]") {
    Sandbox box;
    const auto exact = box.run("verify --suite exact --n 1 --N 1024 --seed 7 --out exact.json");
    CHECK(exact.status == 0);
    const auto report = json::parse(Sandbox::slurp(box.path("exact.json")));
    CHECK(verify::report_schema_errors(report).empty());
    CHECK(report["grid"]["N"] == 1024);
    for (const auto& c : report["checks"]) CHECK(c["pass"].get<bool>());

    const auto decay = box.run("verify --suite decay --N 2048 --out decay.json");
    CHECK(decay.status == 0);
    const auto csv = Sandbox::slurp(box.path("decay_decay.csv"));
    CHECK(csv.rfind("check_name,j,value,log2_value", 0) == 0);
    CHECK(decay.out.find("slope decay_block_commutator_alpha_0.5") != std::string::npos);

    const auto t2 = box.run("verify --suite constants --theorem2 --alpha 0.8 --beta -0.5 --s -0.2 --N 512 --triples 4 --out t2.json");
    CHECK(t2.status == 0);
    const auto t2r = json::parse(Sandbox::slurp(box.path("t2.json")));
    REQUIRE(t2r["checks"].size() == 2);
    CHECK(t2r["checks"][0]["check_name"] == "commutator_estimate_constant");
    CHECK(t2r["checks"][0]["params"]["alpha"] == 0.8);
    CHECK(t2r["checks"][0]["params"]["s"] == -0.2);

    CHECK(box.run("verify --suite constants --theorem2 --alpha 0.5 --beta -0.1 --s 0.1 --N 512").status == 2);
    CHECK(box.run("verify --suite constants --theorem1 --s 0 --N 512").status == 2);
    CHECK(box.run("verify --suite fast").status == 2);
}

TEST_CASE("JSON config with flag precedence", "[cli]") {
    Sandbox box;
    std::ofstream(box.path("run.json")) << R"({"threads": 1, "gen": {"kind": "weierstrass", "alpha": 0.3, "depth": 5, "N": 128, "out": "cfg.lpbm"}})";
    REQUIRE(box.run("gen --config run.json").status == 0);
    CHECK(bit_equal(io::read_lpbm(box.path("cfg.lpbm")).function, gen_weierstrass(0.3, 5, TorusGrid(1, 128))));
    REQUIRE(box.run("gen --config run.json --alpha 0.9").status == 0);
    CHECK(bit_equal(io::read_lpbm(box.path("cfg.lpbm")).function, gen_weierstrass(0.9, 5, TorusGrid(1, 128))));
    CHECK(json::parse(Sandbox::slurp(box.path("cfg.lpbm.json")))["params"]["alpha"] == 0.9);

    std::ofstream(box.path("bad.json")) << "{ not json";
    CHECK(box.run("gen --config bad.json").status == 2);
    CHECK(box.run("gen --config absent.json --kind constant --out c.lpbm").status == 2);
}
