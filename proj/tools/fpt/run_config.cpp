#include "fpt/run_config.hpp"

#include "fpt/error.hpp"

#include <json.hpp>

#include <sstream>

namespace fpt::cli {

namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        j.at(key).get_to(target);
    } catch (const json::exception& e) {
        throw InputError(std::string("config field '") + key + "': " + e.what());
    }
}

void read_optional(const json& j, const char* key, std::optional<double>& target) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
        target.reset();
        return;
    }
    double v = 0.0;
    read(j, key, v);
    target = v;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return to_json(*this) == to_json(o);
}

std::string to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["oracle"] = c.oracle;
    j["model"] = json::parse(fpt::to_json(c.model));
    j["out"] = c.out;
    j["report"] = c.report;
    j["seed"] = c.seed;
    j["barrier"] = c.barrier;
    j["start"] = c.start;
    j["barriers"] = c.barriers;
    j["offsets"] = c.offsets;
    j["sweep"] = c.sweep;
    j["rmax"] = c.rmax;
    j["Z"] = c.Z;
    j["step"] = c.step;
    j["exact"] = c.exact;
    j["tmax"] = c.tmax;
    j["n"] = c.n;
    j["validate"] = c.validate;
    j["theta"] = optional_json(c.theta);
    j["lambda"] = optional_json(c.lambda);
    j["dy"] = c.dy;
    j["dtau"] = c.dtau;
    j["paths"] = c.paths;
    j["dt"] = c.dt;
    j["bridge"] = c.bridge;
    j["s"] = c.s;
    j["y"] = c.y;
    j["zero"] = c.zero;
    j["regime"] = c.regime;
    j["terms"] = c.terms;
    return j.dump();
}

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config: expected a JSON object");
    RunConfig c;
    read(j, "command", c.command);
    read(j, "oracle", c.oracle);
    if (j.contains("model")) c.model = parse_model_spec(j.at("model").dump());
    read(j, "out", c.out);
    read(j, "report", c.report);
    read(j, "seed", c.seed);
    read(j, "barrier", c.barrier);
    read(j, "start", c.start);
    read(j, "barriers", c.barriers);
    read(j, "offsets", c.offsets);
    read(j, "sweep", c.sweep);
    read(j, "rmax", c.rmax);
    read(j, "Z", c.Z);
    read(j, "step", c.step);
    read(j, "exact", c.exact);
    read(j, "tmax", c.tmax);
    read(j, "n", c.n);
    read(j, "validate", c.validate);
    read_optional(j, "theta", c.theta);
    read_optional(j, "lambda", c.lambda);
    read(j, "dy", c.dy);
    read(j, "dtau", c.dtau);
    read(j, "paths", c.paths);
    read(j, "dt", c.dt);
    read(j, "bridge", c.bridge);
    read(j, "s", c.s);
    read(j, "y", c.y);
    read(j, "zero", c.zero);
    read(j, "regime", c.regime);
    read(j, "terms", c.terms);
    return c;
}

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    if (!(is >> s.lo >> c1 >> s.hi >> c2 >> s.n) || c1 != ':' || c2 != ':' || s.n < 2 ||
        !(is >> std::ws).eof()) {
        throw InputError("sweep must look like lo:hi:n with n >= 2, got '" + text + "'");
    }
    return s;
}

}  // namespace fpt::cli
