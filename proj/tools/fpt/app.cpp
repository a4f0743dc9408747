#include "fpt/app.hpp"

#include "fpt/commands.hpp"
#include "fpt/error.hpp"
#include "fpt/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace fpt::cli {

namespace {

constexpr int kExitNumeric = 2;
constexpr int kExitInput = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// --config is read before the real parse so that its values become the
/// defaults every other flag overrides.
RunConfig initial_config(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return parse_run_config(read_file(argv[i + 1]));
        if (a.rfind("--config=", 0) == 0) return parse_run_config(read_file(a.substr(9)));
    }
    return {};
}

struct ModelFlags {
    std::string name;
    std::string json;
    std::optional<double> mu;
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<double> kappa;
    std::string tanh_form;
};

void add_model_flags(CLI::App& app, ModelFlags& m) {
    app.add_option("--model", m.name, "Built-in model: ou, dry_friction, tanh, abm");
    app.add_option("--model-json", m.json, "Model spec as a JSON file or inline JSON");
    app.add_option("--mu", m.mu, "Dry friction / ABM drift magnitude");
    app.add_option("--alpha", m.alpha, "tanh amplitude parameter");
    app.add_option("--gamma", m.gamma, "tanh steepness");
    app.add_option("--kappa", m.kappa, "Reversion rate (time scale)");
    app.add_option("--tanh-form", m.tanh_form, "alpha_tanh_gamma_y or alpha_over_gamma");
}

void apply_model_flags(const ModelFlags& m, ModelSpec& spec) {
    if (!m.json.empty()) {
        const bool inline_json = m.json.find('{') != std::string::npos;
        spec = parse_model_spec(inline_json ? m.json : read_file(m.json));
    }
    if (!m.name.empty()) {
        spec = builtin_spec(parse_builtin_kind(m.name));
    }
    const bool builtin = spec.type == "builtin";
    if ((m.mu || m.alpha || m.gamma || !m.tanh_form.empty()) && !builtin) {
        throw InputError("--mu, --alpha, --gamma and --tanh-form apply to built-in models only");
    }
    if (m.mu) spec.builtin.mu = *m.mu;
    if (m.alpha) spec.builtin.alpha = *m.alpha;
    if (m.gamma) spec.builtin.gamma = *m.gamma;
    if (!m.tanh_form.empty()) {
        // reuse the JSON parser so the names stay in one place
        nlohmann::json j = nlohmann::json::parse(to_json(spec));
        j["form"] = m.tanh_form;
        spec = parse_model_spec(j.dump());
    }
    if (m.kappa) spec.kappa = *m.kappa;
}

void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = initial_config(argc, argv);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    CLI::App app{"First-passage times of one-dimensional mean-reverting diffusions", "fpt"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration; flags override it");
    app.add_option("--out", cfg.out, "CSV output path (default stdout)");
    app.add_option("--seed", cfg.seed, "Random seed");
    ModelFlags model;
    add_model_flags(app, model);

    auto barrier = [&](CLI::App* s) {
        s->add_option("--barrier", cfg.barrier, "Absorbing barrier y+");
    };
    auto start = [&](CLI::App* s) { s->add_option("--start", cfg.start, "Start y0 < y+"); };
    auto table = [&](CLI::App* s) {
        s->add_option("--rmax", cfg.rmax, "Number of Taylor coefficients h_r");
        s->add_option("--Z", cfg.Z, "Left end of the h-series grid");
        s->add_option("--step", cfg.step, "h-series grid spacing");
    };
    auto pde = [&](CLI::App* s) {
        s->add_option("--dy", cfg.dy, "PDE space step");
        s->add_option("--dtau", cfg.dtau, "PDE / tree time step");
    };
    auto tau = [&](CLI::App* s) {
        s->add_option("--tmax", cfg.tmax, "Largest tau");
        s->add_option("--n", cfg.n, "Number of output rows");
    };
    auto density_params = [&](CLI::App* s) {
        s->add_option("--theta", cfg.theta, "Override theta (default Fisher information)");
        s->add_option("--lambda", cfg.lambda, "Override the decay rate");
    };

    std::map<std::string, CLI::App*> subs;
    auto sub = [&](const char* name, const char* help) {
        return subs[name] = app.add_subcommand(name, help);
    };

    auto* s_lambda = sub("lambda", "Decay rate by Algorithm 1 at a barrier or over a sweep");
    barrier(s_lambda);
    table(s_lambda);
    s_lambda->add_option("--sweep", cfg.sweep, "Barrier sweep lo:hi:n");
    s_lambda->add_flag("--exact", cfg.exact, "Add the exact rate for built-in models");

    auto* s_h = sub("hseries", "Table of h_r on the grid up to the barrier");
    barrier(s_h);
    table(s_h);

    auto* s_c = sub("cumulants", "First-passage cumulants from y0 to y+");
    barrier(s_c);
    start(s_c);
    table(s_c);
    s_c->add_option("--regime", cfg.regime,
                    "OU mean asymptotics: low_reversion, sub_threshold, supra_threshold, medial");
    s_c->add_option("--terms", cfg.terms, "Terms of the asymptotic series");

    auto* s_d = sub("density", "Global first-passage density approximation");
    barrier(s_d);
    start(s_d);
    tau(s_d);
    density_params(s_d);
    pde(s_d);
    s_d->add_flag("--validate", cfg.validate, "Compare against the PDE oracle");

    auto* s_o = sub("oracle", "Numerical oracles: pde, tree, mc");
    s_o->add_option("kind", cfg.oracle, "pde, tree or mc");
    barrier(s_o);
    start(s_o);
    tau(s_o);
    pde(s_o);
    s_o->add_option("--paths", cfg.paths, "Monte Carlo path count");
    s_o->add_option("--dt", cfg.dt, "Monte Carlo time step");
    s_o->add_option("--bridge", cfg.bridge, "Brownian bridge crossing test (true/false)");

    auto* s_t1 = sub("table1", "OU decay rate against barrier, exact and Algorithm 1");
    table(s_t1);

    auto* s_f1 = sub("fig1", "Algorithm 1 against exact rates and asymptotes over a sweep");
    table(s_f1);
    s_f1->add_option("--sweep", cfg.sweep, "Barrier sweep lo:hi:n (default -3:3:61)");

    auto* s_v = sub("validate", "Formula density against the PDE oracle on a grid of cases");
    s_v->add_option("--barriers", cfg.barriers, "Barriers")->delimiter(',');
    s_v->add_option("--offsets", cfg.offsets, "Start offsets below each barrier")->delimiter(',');
    s_v->add_option("--report", cfg.report, "JSON report path (default stdout)");
    density_params(s_v);
    pde(s_v);

    auto* s_p = sub("pcf", "Parabolic cylinder function D_s(y), or the OU rate with --zero");
    s_p->add_option("--s", cfg.s, "Order s");
    s_p->add_option("--y", cfg.y, "Argument y");
    s_p->add_option("--sweep", cfg.sweep, "Argument sweep lo:hi:n");
    s_p->add_flag("--zero", cfg.zero, "Report lambda = -s at the rightmost zero instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        apply_model_flags(model, cfg.model);
        for (const auto& [name, s] : subs) {
            if (s->parsed()) cfg.command = name;
        }
        std::ostringstream csv;
        std::ostringstream report;
        if (cfg.command == "lambda") cmd_lambda(cfg, csv);
        else if (cfg.command == "hseries") cmd_hseries(cfg, csv);
        else if (cfg.command == "cumulants") cmd_cumulants(cfg, csv);
        else if (cfg.command == "density") cmd_density(cfg, csv);
        else if (cfg.command == "oracle") cmd_oracle(cfg, csv);
        else if (cfg.command == "table1") cmd_table1(cfg, csv);
        else if (cfg.command == "fig1") cmd_fig1(cfg, csv);
        else if (cfg.command == "validate") cmd_validate(cfg, csv, report);
        else if (cfg.command == "pcf") cmd_pcf(cfg, csv);
        if (cfg.command == "validate") {
            // report to stdout leaves the curves for --out only
            if (cfg.report.empty() || cfg.report == "-") {
                out << report.str();
                if (!cfg.out.empty()) write_output(cfg.out, csv.str(), out);
            } else {
                write_output(cfg.report, report.str(), out);
                write_output(cfg.out, csv.str(), out);
            }
        } else {
            write_output(cfg.out, csv.str(), out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}

}  // namespace fpt::cli
