#include "invlab/config.hpp"

namespace invlab {

using nlohmann::json;

namespace {

void ensure_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

} // namespace

json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["system"] = {{"name", c.system}, {"params", c.params}};
    j["ansatz"] = {{"qdeg", c.qdeg}, {"pin12", c.pin12}};
    j["integrator"] = {{"method", c.method}, {"h", c.h},          {"steps", c.steps},
                       {"tol", c.tol},       {"max_iters", c.max_iters},
                       {"y0", c.y0},         {"cadence", c.cadence}};
    j["output"] = {{"csv", c.out_csv}, {"json", c.out_json}};
    j["inputs"] = c.inputs;
    j["seed"] = c.seed;
    j["tolerances"] = c.tolerances;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    ensure_keys(j, {"command", "system", "ansatz", "integrator", "output", "inputs", "seed", "tolerances"},
                "config");
    if (!j.contains("command")) throw ConfigError("config missing 'command'");
    c.command = j.at("command").get<std::string>();
    if (j.contains("system")) {
        const json& s = j.at("system");
        ensure_keys(s, {"name", "params"}, "config.system");
        if (s.contains("name")) c.system = s.at("name").get<std::string>();
        if (s.contains("params")) c.params = s.at("params").get<std::map<std::string, std::string>>();
    }
    if (j.contains("ansatz")) {
        const json& a = j.at("ansatz");
        ensure_keys(a, {"qdeg", "pin12"}, "config.ansatz");
        if (a.contains("qdeg")) c.qdeg = a.at("qdeg").get<int>();
        if (a.contains("pin12")) c.pin12 = a.at("pin12").get<std::string>();
    }
    if (j.contains("integrator")) {
        const json& i = j.at("integrator");
        ensure_keys(i, {"method", "h", "steps", "tol", "max_iters", "y0", "cadence"}, "config.integrator");
        if (i.contains("method")) c.method = i.at("method").get<std::string>();
        if (i.contains("h")) c.h = i.at("h").get<double>();
        if (i.contains("steps")) c.steps = i.at("steps").get<long>();
        if (i.contains("tol")) c.tol = i.at("tol").get<double>();
        if (i.contains("max_iters")) c.max_iters = i.at("max_iters").get<int>();
        if (i.contains("y0")) c.y0 = i.at("y0").get<std::array<double, 4>>();
        if (i.contains("cadence")) c.cadence = i.at("cadence").get<long>();
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        ensure_keys(o, {"csv", "json"}, "config.output");
        if (o.contains("csv")) c.out_csv = o.at("csv").get<std::string>();
        if (o.contains("json")) c.out_json = o.at("json").get<std::string>();
    }
    if (j.contains("inputs")) c.inputs = j.at("inputs").get<std::vector<std::string>>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    return c;
}

} // namespace invlab
