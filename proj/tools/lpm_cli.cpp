// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0

// lpm_cli: generate test functions, evaluate norms, apply paraproduct
// operators and run the verification suites.
//
// Exit status: 0 success, 1 runtime or check failure, 2 usage or parameter error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpm/lpm.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// JSON config files for CLI11: nested objects name subcommands, leaves name options.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        json j;
        for (const CLI::Option* opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                const auto& res = opt->results();
                j[name] = res.size() == 1 ? json(res[0]) : json(res);
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            input >> j;
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
        std::vector<CLI::ConfigItem> out;
        collect(j, {}, out);
        return out;
    }

private:
    static std::string scalar(const json& v, const std::string& name) {
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
        if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
        if (v.is_number()) {
            std::ostringstream s;
            s.precision(17);
            s << v.get<double>();
            return s.str();
        }
        if (v.is_string()) return v.get<std::string>();
        throw CLI::ConversionError("config value for '" + name + "' must be a scalar or array of scalars");
    }

    static void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto sub = parents;
                sub.push_back(key);
                collect(value, sub, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v, key));
            } else {
                item.inputs.push_back(scalar(value, key));
            }
            out.push_back(std::move(item));
        }
    }
};

double parse_exponent(const std::string& text, const char* what) {
    if (text == "inf" || text == "INF" || text == "Inf") return lpm::kInfinity;
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw lpm::ParameterError(std::string("cannot parse ") + what + " '" + text + "'");
    }
}

json exponent_json(double r) { return std::isinf(r) ? json("INF") : json(r); }

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
    fs::path out = base;
    const auto ext = base.has_extension() ? base.extension().string() : std::string(".lpbm");
    out.replace_filename(base.stem().string() + suffix + ext);
    return out;
}

fs::path sidecar_path(const fs::path& out) { return fs::path(out.string() + ".json"); }

void write_json(const fs::path& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw lpm::Error("cannot write " + path.string());
    f << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    int n = 1;
    int N = 1024;
    double alpha = 0.5;
    double s = 0.5;
    double p = 2.0;
    double q = 1.0;
    int depth = 4;
    int scale = 2;
    std::string mode = "annulus";
    double value = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

json gen_spec(const GenOptions& o) {
    json params;
    if (o.kind == "weierstrass" || o.kind == "weierstrass-phased") {
        params = json{{"alpha", o.alpha}, {"depth", o.depth}};
    } else if (o.kind == "lacunary") {
        params = json{{"s", o.s}, {"p", o.p}, {"q", o.q}, {"depth", o.depth}};
    } else if (o.kind == "band-random") {
        params = json{{"scale", o.scale}};
    } else if (o.kind == "morrey-exemplar") {
        params = json{{"p", o.p}};
    } else if (o.kind == "annulus-collection") {
        params = json{{"s", o.s}, {"p", o.p}, {"q", o.q}, {"depth", o.depth}, {"mode", o.mode}};
    } else if (o.kind == "constant") {
        params = json{{"value", o.value}};
    }
    return json{{"kind", o.kind}, {"grid", {{"n", o.n}, {"N", o.N}}}, {"params", params}, {"seed", o.seed}};
}

int cmd_gen(const GenOptions& o) {
    const lpm::TorusGrid grid(o.n, o.N);
    json spec = gen_spec(o);
    const fs::path out(o.out);
    if (o.kind == "annulus-collection") {
        const auto c = lpm::gen_annulus_collection(o.s, o.p, o.q, o.depth, o.seed, grid,
                                                   lpm::collection_mode_from_string(o.mode));
        json pieces = json::array();
        for (std::size_t i = 0; i < c.pieces.size(); ++i) {
            const auto path = with_suffix(out, "_" + std::to_string(c.index(i)));
            lpm::io::write_lpbm(path, c.pieces[i], lpm::io::ValueKind::real);
            pieces.push_back(json{{"index", c.index(i)}, {"file", path.filename().string()}});
        }
        lpm::io::write_lpbm(out, lpm::lp_synthesize(c.pieces), lpm::io::ValueKind::real);
        spec["pieces"] = std::move(pieces);
        write_json(sidecar_path(out), spec);
        return kExitOk;
    }
    lpm::GridFunction f;
    auto kind = lpm::io::ValueKind::real;
    if (o.kind == "weierstrass") {
        f = lpm::gen_weierstrass(o.alpha, o.depth, grid);
    } else if (o.kind == "weierstrass-phased") {
        f = lpm::gen_weierstrass_phased(o.alpha, o.depth, o.seed, grid);
    } else if (o.kind == "lacunary") {
        f = lpm::gen_lacunary(o.s, o.p, o.q, o.depth, o.seed, grid);
        kind = lpm::io::ValueKind::complex;
    } else if (o.kind == "band-random") {
        f = lpm::gen_band_random(o.scale, o.seed, grid);
    } else if (o.kind == "morrey-exemplar") {
        f = lpm::gen_morrey_exemplar(o.p, grid);
    } else if (o.kind == "constant") {
        const double v = o.value;
        f = lpm::GridFunction::sample(grid, [v](const std::array<double, 3>&) { return v; });
    } else {
        throw lpm::ParameterError("unknown generator kind '" + o.kind + "'");
    }
    lpm::io::write_lpbm(out, f, kind);
    write_json(sidecar_path(out), spec);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct NormOptions {
    std::string file;
    std::string kind = "morrey";
    double p = 2.0;
    double q = 1.0;
    std::string r = "inf";
    double s = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
};

int cmd_norm(const NormOptions& o) {
    const auto f = lpm::io::read_lpbm(o.file).function;
    json params;
    double value = 0.0;
    if (o.kind == "morrey") {
        value = lpm::morrey_norm(f, o.p, o.q);
        params = json{{"p", o.p}, {"q", o.q}};
    } else if (o.kind == "lebesgue") {
        value = lpm::lebesgue_norm(f, o.p);
        params = json{{"p", o.p}};
    } else if (o.kind == "besov-morrey") {
        const lpm::NormParams np{o.p, o.q, parse_exponent(o.r, "r"), o.s};
        value = lpm::besov_morrey_norm(f, np, lpm::DyadicSymbolBank(f.grid()));
        params = json{{"p", o.p}, {"q", o.q}, {"r", exponent_json(np.r)}, {"s", o.s}};
    } else if (o.kind == "holder-zygmund") {
        value = lpm::holder_zygmund_norm(f, o.beta, lpm::DyadicSymbolBank(f.grid()));
        params = json{{"beta", o.beta}};
    } else if (o.kind == "lipschitz") {
        const auto res = lpm::lipschitz_profile(f, o.alpha);
        value = res.value;
        params = json{{"alpha", o.alpha}, {"exact", res.exact}};
    } else if (o.kind == "sup") {
        value = f.sup_norm();
        params = json::object();
    } else {
        throw lpm::ParameterError("unknown norm kind '" + o.kind + "'");
    }
    std::cout << json{{"norm_kind", o.kind}, {"params", params}, {"value", value}}.dump() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ParaOptions {
    std::string op;
    std::vector<std::string> inputs;
    std::string out = "para.lpbm";
    int scale = 1;
    bool split = false;
};

int cmd_para(ParaOptions o) {
    if (o.split) o.op = "bony-split";
    const bool trilinear = o.op == "commutator-thm2";
    const std::size_t want = trilinear ? 3 : 2;
    if (o.inputs.size() != want) {
        throw lpm::ParameterError("operator '" + o.op + "' takes " + std::to_string(want) + " input files, got " +
                                  std::to_string(o.inputs.size()));
    }
    std::vector<lpm::GridFunction> in;
    for (const auto& path : o.inputs) in.push_back(lpm::io::read_lpbm(path).function);
    for (std::size_t i = 1; i < in.size(); ++i) lpm::require_same_grid(in[0].grid(), in[i].grid(), o.op.c_str());
    const lpm::DyadicSymbolBank bank(in[0].grid());
    const fs::path out(o.out);

    if (o.op == "bony-split") {
        const auto split = lpm::bony_decompose(in[0], in[1], bank);
        lpm::io::write_lpbm(with_suffix(out, "_low_high"), split.low_high);
        lpm::io::write_lpbm(with_suffix(out, "_high_low"), split.high_low);
        lpm::io::write_lpbm(with_suffix(out, "_resonant"), split.resonant);
        const auto product = lpm::dealiased_product(in[0], in[1]);
        const double scale = product.sup_norm();
        const double residual = (split.total() - product).sup_norm() / (scale > 0.0 ? scale : 1.0);
        std::cout << json{{"op", o.op},
                          {"files",
                           {with_suffix(out, "_low_high").string(), with_suffix(out, "_high_low").string(),
                            with_suffix(out, "_resonant").string()}},
                          {"residual", residual}}
                         .dump()
                  << '\n';
        return kExitOk;
    }
    lpm::GridFunction result;
    if (o.op == "low-high") {
        result = lpm::para_low_high(in[0], in[1], bank);
    } else if (o.op == "high-low") {
        result = lpm::para_high_low(in[0], in[1], bank);
    } else if (o.op == "resonant") {
        result = lpm::resonant(in[0], in[1], bank);
    } else if (o.op == "commutator-thm2") {
        result = lpm::commutator_thm2(in[0], in[1], in[2], bank);
    } else if (o.op == "block-commutator") {
        result = lpm::block_commutator(in[0], in[1], o.scale, bank);
    } else if (o.op == "para-commutator") {
        result = lpm::para_commutator(in[0], in[1], o.scale, bank);
    } else {
        throw lpm::ParameterError("unknown operator '" + o.op + "'");
    }
    lpm::io::write_lpbm(out, result);
    std::cout << json{{"op", o.op}, {"files", {out.string()}}, {"sup_norm", result.sup_norm()}}.dump() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string suite = "all";
    int n = 1;
    int N = 1024;
    std::uint64_t seed = 7;
    std::string out = "report.json";
    std::string csv;
    bool theorem1 = false;
    bool theorem2 = false;
    double alpha = 0.8;
    double beta = -0.5;
    double s = std::numeric_limits<double>::quiet_NaN();
    double p = 2.0;
    double q = 1.0;
    std::string r = "2";
    int pairs = 50;
    int triples = 30;
};

int cmd_verify(const VerifyOptions& o) {
    const auto suite = lpm::verify::suite_from_string(o.suite);
    const lpm::TorusGrid grid(o.n, o.N);
    lpm::verify::SuiteOptions opt;
    opt.seed = o.seed;
    opt.only_theorem1 = o.theorem1;
    opt.only_theorem2 = o.theorem2;
    const double r = parse_exponent(o.r, "r");

    opt.product.params = {o.p, o.q, r, std::isnan(o.s) ? 1.0 : o.s};
    opt.product.left = {2 * o.p, 2 * o.q, r, opt.product.params.s};
    opt.product.right = opt.product.left;
    opt.product.pairs = o.pairs;
    opt.product.seed = lpm::derive_seed(o.seed, 101);

    opt.commutator.alpha = o.alpha;
    opt.commutator.beta = o.beta;
    opt.commutator.s = std::isnan(o.s) ? -0.2 : o.s;
    opt.commutator.params = {o.p, o.q, r, opt.commutator.s};
    opt.commutator.triples = o.triples;
    opt.commutator.seed = lpm::derive_seed(o.seed, 102);

    opt.embedding.seed = lpm::derive_seed(o.seed, 103);

    std::vector<lpm::verify::DecaySeries> series;
    const auto records = lpm::verify::run_suite(suite, grid, opt, series);
    const auto report = lpm::verify::make_report(records, o.n, o.N);
    if (const auto errors = lpm::verify::report_schema_errors(report); !errors.empty()) {
        throw lpm::Error("report failed schema validation: " + errors.front());
    }
    fs::path csv = o.csv;
    if (csv.empty() && !series.empty()) {
        csv = fs::path(o.out);
        csv.replace_filename(fs::path(o.out).stem().string() + "_decay.csv");
    }
    const int status = lpm::verify::emit_report(records, series, o.n, o.N, o.out, csv);
    for (const auto& rec : records) {
        std::cout << (rec.pass ? "PASS " : "FAIL ") << rec.check_name << "  lhs=" << rec.lhs << " rhs=" << rec.rhs
                  << " ratio=" << rec.ratio << '\n';
    }
    for (const auto& s : series) std::cout << "slope " << s.check_name << " " << s.slope << '\n';
    std::cout << "report: " << o.out << (series.empty() ? "" : "  decay table: " + csv.string()) << '\n';
    return status == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Littlewood-Paley, paraproduct and Besov-Morrey toolkit on the periodic grid"};
    app.require_subcommand(1);
    app.fallthrough();  // --config and --threads are accepted after the subcommand too
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config; nested objects per subcommand, command-line flags take precedence");
    unsigned threads = 0;
    app.add_option("--threads", threads, "Upper bound on worker threads (0: all cores)");

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a test function as an LPBM file plus a JSON sidecar");
    g->add_option("--kind", gen.kind, "Generator")
        ->required()
        ->check(CLI::IsMember({"weierstrass", "weierstrass-phased", "lacunary", "band-random", "morrey-exemplar",
                               "annulus-collection", "constant"}));
    g->add_option("--n", gen.n, "Dimension")->capture_default_str();
    g->add_option("--N", gen.N, "Points per axis")->capture_default_str();
    g->add_option("--alpha", gen.alpha, "Weierstrass exponent")->capture_default_str();
    g->add_option("--s", gen.s, "Smoothness weight")->capture_default_str();
    g->add_option("--p", gen.p, "Morrey exponent p")->capture_default_str();
    g->add_option("--q", gen.q, "Morrey exponent q")->capture_default_str();
    g->add_option("--depth", gen.depth, "Highest dyadic scale")->capture_default_str();
    g->add_option("--scale", gen.scale, "Annulus scale for band-random")->capture_default_str();
    g->add_option("--mode", gen.mode, "Collection mode")->capture_default_str();
    g->add_option("--value", gen.value, "Value of the constant function")->capture_default_str();
    g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    g->add_option("--out", gen.out, "Output LPBM path")->required();

    NormOptions norm;
    auto* nm = app.add_subcommand("norm", "Evaluate a norm of an LPBM function and print it as JSON");
    nm->add_option("file", norm.file, "Input LPBM file")->required();
    nm->add_option("--kind", norm.kind, "Norm")
        ->check(CLI::IsMember({"morrey", "lebesgue", "besov-morrey", "holder-zygmund", "lipschitz", "sup"}))
        ->capture_default_str();
    nm->add_option("--p", norm.p)->capture_default_str();
    nm->add_option("--q", norm.q)->capture_default_str();
    nm->add_option("--r", norm.r, "Summation exponent, or inf")->capture_default_str();
    nm->add_option("--s", norm.s)->capture_default_str();
    nm->add_option("--alpha", norm.alpha)->capture_default_str();
    nm->add_option("--beta", norm.beta)->capture_default_str();

    ParaOptions para;
    auto* pa = app.add_subcommand("para", "Apply a paraproduct operator to LPBM inputs");
    pa->add_option("--op", para.op, "Operator")
        ->check(CLI::IsMember({"low-high", "high-low", "resonant", "bony-split", "commutator-thm2", "block-commutator",
                               "para-commutator"}));
    pa->add_option("inputs", para.inputs, "Input LPBM files (f g, or f g h)")->required();
    pa->add_option("--out", para.out, "Output path; bony-split appends _low_high, _high_low, _resonant")
        ->capture_default_str();
    pa->add_option("--j", para.scale, "Block index for the commutators")->capture_default_str();
    pa->add_flag("--split", para.split, "Same as --op bony-split");

    VerifyOptions ver;
    auto* v = app.add_subcommand("verify", "Run a verification suite and write JSON and CSV reports");
    v->add_option("--suite", ver.suite, "exact, constants, decay or all")->capture_default_str();
    v->add_option("--n", ver.n)->capture_default_str();
    v->add_option("--N", ver.N)->capture_default_str();
    v->add_option("--seed", ver.seed)->capture_default_str();
    v->add_option("--out", ver.out, "Report JSON path")->capture_default_str();
    v->add_option("--csv", ver.csv, "Decay CSV path (default: <out stem>_decay.csv)");
    v->add_flag("--theorem1", ver.theorem1, "Constants suite: product estimate only");
    v->add_flag("--theorem2", ver.theorem2, "Constants suite: commutator estimate only");
    v->add_option("--alpha", ver.alpha, "Commutator estimate: regularity of f")->capture_default_str();
    v->add_option("--beta", ver.beta, "Commutator estimate: regularity of g")->capture_default_str();
    v->add_option("--s", ver.s, "Smoothness (product estimate default 1, commutator default -0.2)");
    v->add_option("--p", ver.p)->capture_default_str();
    v->add_option("--q", ver.q)->capture_default_str();
    v->add_option("--r", ver.r)->capture_default_str();
    v->add_option("--pairs", ver.pairs, "Product estimate corpus size")->capture_default_str();
    v->add_option("--triples", ver.triples, "Commutator estimate corpus size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    lpm::set_max_threads(threads);
    try {
        if (g->parsed()) return cmd_gen(gen);
        if (nm->parsed()) return cmd_norm(norm);
        if (pa->parsed()) {
            if (para.op.empty() && !para.split) throw lpm::ParameterError("para needs --op or --split");
            return cmd_para(para);
        }
        if (v->parsed()) return cmd_verify(ver);
    } catch (const lpm::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const lpm::GridMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
