#include "fpt/commands.hpp"

#include "fpt/csv.hpp"
#include "fpt/cumulants.hpp"
#include "fpt/decay.hpp"
#include "fpt/density.hpp"
#include "fpt/error.hpp"
#include "fpt/hseries.hpp"
#include "fpt/oracle.hpp"
#include "fpt/oupcf.hpp"
#include "fpt/parallel.hpp"
#include "fpt/table1.hpp"
#include "fpt/validation.hpp"
#include "fpt/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fpt::cli {

namespace {

void header(CsvWriter& csv, const RunConfig& c) {
    csv.comment(std::string("fpt ") + kVersion + " " + c.command);
    csv.comment("config: " + to_json(c));
}

std::vector<double> sweep_or(const RunConfig& c, double single) {
    if (c.sweep.empty()) return {single};
    const Sweep s = parse_sweep(c.sweep);
    return linspace(s.lo, s.hi, s.n - 1);
}

EstimateOptions estimate_options(const RunConfig& c) {
    if (c.rmax < 4) throw InputError("--rmax must be at least 4 for the A1 transform");
    if (!(c.step > 0.0)) throw InputError("--step must be positive");
    return {.r_max = c.rmax, .Z = c.Z, .step = c.step};
}

std::optional<double> exact_lambda(const Model& m, double y_plus) {
    if (!m.builtin) return std::nullopt;
    return lambda_exact(*m.builtin, y_plus).value;
}

const OuMeanRegime* regime_or_null(const RunConfig& c, OuMeanRegime& storage) {
    if (c.regime.empty()) return nullptr;
    storage = parse_ou_mean_regime(c.regime);
    return &storage;
}

std::vector<double> tau_grid(const RunConfig& c) {
    if (!(c.tmax > 0.0) || c.n < 1) throw InputError("--tmax and --n must be positive");
    std::vector<double> t(c.n);
    for (unsigned i = 0; i < c.n; ++i) t[i] = c.tmax * (i + 1.0) / c.n;
    return t;
}

std::size_t stride_for(std::size_t size, unsigned n) {
    return std::max<std::size_t>(1, (size + n - 1) / std::max(1u, n));
}

}  // namespace

void cmd_lambda(const RunConfig& c, std::ostream& out) {
    const Model model = build_model(c.model);
    const auto opts = estimate_options(c);
    const auto ys = sweep_or(c, c.barrier);
    const auto est = parallel_map(ys.size(), [&](std::size_t i) {
        return estimate_lambda(model.field, model.measure, ys[i], opts);
    });
    CsvWriter csv(out);
    header(csv, c);
    std::vector<std::string> cols{"y_plus", "lambda_algorithm1", "fallback"};
    for (unsigned r = 1; r < c.rmax; ++r) cols.push_back("x_" + std::to_string(r));
    if (c.exact) cols.push_back("lambda_exact");
    csv.columns(cols);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        csv.cell(ys[i]).cell(est[i].lambda).cell(static_cast<long long>(est[i].fallback));
        for (double x : est[i].x) csv.cell(x);
        if (c.exact) csv.cell(exact_lambda(model, ys[i]));
        csv.end_row();
    }
}

void cmd_hseries(const RunConfig& c, std::ostream& out) {
    const Model model = build_model(c.model);
    estimate_options(c);
    const HGrid grid = HGrid{.Z = c.Z, .step = c.step, .z_max = c.barrier}.aligned_to(c.barrier);
    const HTable table = build_table(model.field, model.measure, grid, c.rmax);
    CsvWriter csv(out);
    header(csv, c);
    std::vector<std::string> cols{"z"};
    for (unsigned r = 1; r <= c.rmax; ++r) cols.push_back("h_" + std::to_string(r));
    csv.columns(cols);
    for (std::size_t j = 0; j < table.nodes().size(); ++j) {
        csv.cell(table.nodes()[j]);
        for (unsigned r = 1; r <= c.rmax; ++r) csv.cell(table.at_node(r, j));
        csv.end_row();
    }
}

void cmd_cumulants(const RunConfig& c, std::ostream& out) {
    CsvWriter csv(out);
    header(csv, c);
    OuMeanRegime regime{};
    if (regime_or_null(c, regime)) {
        if (c.model.type != "builtin" || c.model.builtin.kind != BuiltinKind::kOu) {
            throw InputError("--regime applies to the OU model only");
        }
        csv.columns({"y0", "y_plus", "regime", "terms", "mean_asymptotic", "mean_exact"});
        csv.cell(c.start).cell(c.barrier).cell(to_string(regime)).cell(
            static_cast<long long>(c.terms));
        csv.cell(ou_mean_regime(c.start, c.barrier, regime, c.terms))
            .cell(ou_mean_exact(c.start, c.barrier));
        csv.end_row();
        return;
    }
    const Model model = build_model(c.model);
    estimate_options(c);
    if (!(c.start < c.barrier)) throw InputError("--start must lie below --barrier");
    const HGrid grid =
        HGrid{.Z = std::min(c.Z, c.start), .step = c.step, .z_max = c.barrier}.aligned_to(c.barrier);
    const HTable table = build_table(model.field, model.measure, grid, c.rmax);
    const auto set = cumulants(table, model.measure, c.start, c.barrier, c.rmax,
                               model.field.kappa());
    csv.comment("mean by direct quadrature: " + format_number(set.mean_direct));
    csv.comment("skewness: " + format_number(set.skewness()));
    csv.columns({"r", "kappa_r", "kappa_r_physical"});
    for (unsigned r = 1; r <= c.rmax; ++r) {
        csv.cell(static_cast<long long>(r)).cell(set.kappa[r - 1]).cell(set.in_time(r));
        csv.end_row();
    }
}

void cmd_density(const RunConfig& c, std::ostream& out) {
    const Model model = build_model(c.model);
    CsvWriter csv(out);
    header(csv, c);
    if (c.validate) {
        ValidationOptions vo{.tau_max = c.tmax, .dy = c.dy, .dtau = c.dtau, .theta = c.theta,
                             .lambda = c.lambda, .max_curve_points = std::max(2u, c.n)};
        const auto v = validate_case(model, c.barrier, c.start, vo);
        if (!v.error.empty()) throw NumericError(v.error);
        csv.comment("l1: " + format_number(v.l1) + ", sup: " + format_number(v.sup) +
                    ", normalization_residual: " + format_number(v.normalization_residual));
        csv.columns({"tau", "f_formula", "f_pde"});
        for (std::size_t i = 0; i < v.tau.size(); ++i) {
            csv.cell(v.tau[i]).cell(v.f_formula[i]).cell(v.f_pde[i]);
            csv.end_row();
        }
        return;
    }
    const auto dm = make_density_model(model, c.start, c.barrier,
                                       {.theta = c.theta, .lambda = c.lambda});
    csv.comment("theta: " + format_number(dm.theta) + " (" + dm.theta_source +
                "), lambda: " + format_number(dm.lambda) + " (" + dm.lambda_source +
                "), nu: " + format_number(dm.nu) + ", rho: " + format_number(dm.rho) +
                (dm.rho_insensitive ? " (insensitive)" : ""));
    csv.columns({"tau", "f"});
    for (double t : tau_grid(c)) {
        csv.cell(t).cell(eval_density(dm, t));
        csv.end_row();
    }
}

void cmd_oracle(const RunConfig& c, std::ostream& out) {
    const Model model = build_model(c.model);
    if (!(c.start < c.barrier)) throw InputError("--start must lie below --barrier");
    CsvWriter csv(out);
    if (c.oracle == "pde") {
        PdeOptions po;
        po.dy = c.dy;
        po.dtau = c.dtau;
        po.tau_max = c.tmax;
        po.y_min_offset = std::max(12.0, 3.0 * (c.barrier - c.start));
        po.probes = {c.start};
        const auto g = solve_pde(model.field, c.barrier, po);
        header(csv, c);
        csv.columns({"tau", "F", "f"});
        const std::size_t stride = stride_for(g.tau.size() - 1, c.n);
        for (std::size_t i = stride; i < g.tau.size(); i += stride) {
            csv.cell(g.tau[i]).cell(g.F_probe[0][i]).cell(g.f_probe[0][i]);
            csv.end_row();
        }
    } else if (c.oracle == "tree") {
        const auto t = solve_tree(model.field, c.barrier, c.start, c.dtau, c.tmax);
        header(csv, c);
        csv.comment("lattice dy: " + format_number(t.dy));
        csv.columns({"tau", "F", "f"});
        const std::size_t stride = stride_for(t.tau.size(), c.n);
        for (std::size_t i = stride - 1; i < t.tau.size(); i += stride) {
            const double dt = t.tau[i] - (i ? t.tau[i - 1] : 0.0);
            csv.cell(t.tau[i]).cell(t.F[i]).cell(t.absorbed[i] / dt);
            csv.end_row();
        }
    } else if (c.oracle == "mc") {
        McOptions mo{.dt = c.dt, .n_paths = c.paths, .tau_max = c.tmax, .bridge = c.bridge,
                     .seed = c.seed};
        auto r = simulate(model.field, c.barrier, c.start, mo);
        std::sort(r.samples.begin(), r.samples.end());
        const double n = static_cast<double>(r.samples.size());
        const double mean = std::accumulate(r.samples.begin(), r.samples.end(), 0.0) / n;
        double ss = 0.0;
        for (double s : r.samples) ss += (s - mean) * (s - mean);
        header(csv, c);
        csv.comment("hit: " + std::to_string(r.samples.size()) +
                    ", censored: " + std::to_string(r.censored) + ", mean of hits: " +
                    format_number(mean) + ", standard error: " +
                    format_number(std::sqrt(ss / (n - 1.0) / n)));
        csv.columns({"tau", "F"});
        for (double t : tau_grid(c)) {
            const auto k = std::upper_bound(r.samples.begin(), r.samples.end(), t) - r.samples.begin();
            csv.cell(t).cell(static_cast<double>(k) / static_cast<double>(r.n_paths));
            csv.end_row();
        }
    } else {
        throw InputError("oracle must be pde, tree or mc, got '" + c.oracle + "'");
    }
}

void cmd_table1(const RunConfig& c, std::ostream& out) {
    const auto rows = table1_rows(estimate_options(c));
    CsvWriter csv(out);
    header(csv, c);
    csv.columns({"y_plus_printed", "y_plus", "lambda_exact", "lambda_algorithm1", "lambda_printed"});
    for (const auto& r : rows) {
        csv.cell(r.y_plus_printed).cell(r.y_plus).cell(r.lambda_exact).cell(r.lambda_algorithm1);
        csv.cell(r.lambda_printed);
        csv.end_row();
    }
}

void cmd_fig1(const RunConfig& c, std::ostream& out) {
    if (c.model.type != "builtin" || c.model.builtin.kind == BuiltinKind::kAbm) {
        throw InputError("fig1 takes the ou, dry_friction or tanh model");
    }
    const Model model = build_model(c.model);
    const auto opts = estimate_options(c);
    const std::string sweep = c.sweep.empty() ? "-3:3:61" : c.sweep;
    const Sweep s = parse_sweep(sweep);
    const auto ys = linspace(s.lo, s.hi, s.n - 1);

    struct Row {
        std::string marker;
        double y = 0.0;
        double est = 0.0;
        std::optional<double> exact;
        double left = 0.0;
        std::optional<double> right;
    };
    std::vector<std::pair<std::string, double>> points;
    for (double y : ys) points.emplace_back("", y);
    const auto& p = *model.builtin;
    if (p.kind == BuiltinKind::kOu) {
        for (unsigned n = 1; n <= 12; ++n) {
            const double z = hermite_leftmost_zero(n);
            if (z >= s.lo && z <= s.hi) points.emplace_back("zeta" + std::to_string(n), z);
        }
    } else if (p.kind == BuiltinKind::kTanh && 0.0 >= s.lo && 0.0 <= s.hi) {
        points.emplace_back("P1_zero", 0.0);
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    const auto rows = parallel_map(points.size(), [&](std::size_t i) {
        Row r;
        r.marker = points[i].first;
        r.y = points[i].second;
        r.est = estimate_lambda(model.field, model.measure, r.y, opts).lambda;
        r.exact = lambda_exact(p, r.y).value;
        r.left = lambda_asymptotic(model.field, model.measure, r.y, AsymptoticSide::kFarLeft);
        const double right =
            lambda_asymptotic(model.field, model.measure, r.y, AsymptoticSide::kFarRight);
        if (right > 0.0) r.right = right;
        return r;
    });
    CsvWriter csv(out);
    header(csv, c);
    csv.columns({"y_plus", "lambda_est", "lambda_exact", "asymptote_left", "asymptote_right",
                 "marker"});
    for (const auto& r : rows) {
        csv.cell(r.y).cell(r.est).cell(r.exact).cell(r.left).cell(r.right).cell(r.marker);
        csv.end_row();
    }
}

void cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& report) {
    const Model model = build_model(c.model);
    struct Point {
        double y_plus;
        double y0;
    };
    std::vector<Point> points;
    for (double b : c.barriers) {
        for (double off : c.offsets) {
            if (!(off > 0.0)) throw InputError("offsets must be positive");
            points.push_back({b, b - off});
        }
    }
    ValidationOptions vo;
    vo.dy = c.dy;
    vo.dtau = c.dtau;
    vo.theta = c.theta;
    vo.lambda = c.lambda;
    const auto cases = parallel_map(points.size(), [&](std::size_t i) {
        return validate_case(model, points[i].y_plus, points[i].y0, vo);
    });

    nlohmann::json j;
    j["tool"] = std::string("fpt ") + kVersion;
    j["model"] = nlohmann::json::parse(to_json(c.model));
    j["grid"] = {{"barriers", c.barriers},
                 {"offsets", c.offsets},
                 {"note", "starts are barrier minus each offset; tau_max is 12/lambda"}};
    j["pde"] = {{"dy", c.dy}, {"dtau", c.dtau}};
    auto& arr = j["cases"] = nlohmann::json::array();
    for (const auto& v : cases) {
        nlohmann::json e{{"y_plus", v.y_plus}, {"y0", v.y0}};
        if (!v.error.empty()) {
            e["error"] = v.error;
        } else {
            e.update({{"tau_max", v.tau_max},
                      {"lambda", v.lambda},
                      {"lambda_source", v.lambda_source},
                      {"theta", v.theta},
                      {"nu", v.nu},
                      {"rho", v.rho},
                      {"l1", v.l1},
                      {"sup", v.sup},
                      {"tail_slope", v.tail_slope},
                      {"tail_slope_error", v.tail_slope_error},
                      {"normalization_residual", v.normalization_residual}});
        }
        arr.push_back(std::move(e));
    }
    report << j.dump(2) << '\n';

    CsvWriter csv(out);
    header(csv, c);
    csv.columns({"case", "y_plus", "y0", "tau", "f_formula", "f_pde"});
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& v = cases[k];
        for (std::size_t i = 0; i < v.tau.size(); ++i) {
            csv.cell(static_cast<long long>(k)).cell(v.y_plus).cell(v.y0).cell(v.tau[i]);
            csv.cell(v.f_formula[i]).cell(v.f_pde[i]);
            csv.end_row();
        }
    }
}

void cmd_pcf(const RunConfig& c, std::ostream& out) {
    const auto ys = sweep_or(c, c.y);
    CsvWriter csv(out);
    header(csv, c);
    if (c.zero) {
        const auto lam = parallel_map(ys.size(), [&](std::size_t i) { return rightmost_zero(ys[i]); });
        csv.columns({"y", "lambda"});
        for (std::size_t i = 0; i < ys.size(); ++i) {
            csv.cell(ys[i]).cell(lam[i]);
            csv.end_row();
        }
        return;
    }
    csv.columns({"s", "y", "value", "method", "cancellation"});
    for (double y : ys) {
        const auto e = pcf_eval(c.s, y);
        csv.cell(e.s).cell(e.y).cell(e.value).cell(to_string(e.method)).cell(e.cancellation);
        csv.end_row();
    }
}

}  // namespace fpt::cli
