#include "laminar/config.hpp"

#include <set>

#include <json.hpp>

#include "laminar/error.hpp"

namespace laminar {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidConfig, where + "." + key + ": " + e.what());
    }
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::size_t positive_count(const json& j, const char* key, const std::string& where) {
    const auto v = get<long long>(j, key, where);
    if (v <= 0) throw Error(ErrorKind::InvalidConfig, where + "." + key + " must be positive");
    return static_cast<std::size_t>(v);
}

GraphSpec graph_spec(const json& j, const std::string& where) {
    reject_unknown(j, {"layer1_size", "layer2_size", "profile", "preset", "cross_offsets"}, where);
    GraphSpec g;
    if (j.contains("preset")) {
        g.preset = get<std::string>(j, "preset", where);
        if (*g.preset != "contact" && *g.preset != "diffusion" && *g.preset != "bipartite2d")
            throw Error(ErrorKind::InvalidConfig, where + ".preset must be contact, diffusion or bipartite2d");
    } else if (!j.contains("layer1_size") || !j.contains("profile")) {
        throw Error(ErrorKind::InvalidConfig, where + " needs a preset or layer1_size + profile");
    }
    if (j.contains("layer1_size")) g.layer1_size = positive_count(j, "layer1_size", where);
    g.layer2_size = j.contains("layer2_size") ? positive_count(j, "layer2_size", where) : g.layer1_size;
    if (j.contains("profile")) {
        const auto& p = j.at("profile");
        const std::string pw = where + ".profile";
        reject_unknown(p, {"n1_L1", "n2_L1", "n1_L2", "n2_L2"}, pw);
        g.profile = DegreeProfile{get<int>(p, "n1_L1", pw), get<int>(p, "n2_L1", pw), get<int>(p, "n1_L2", pw),
                                  get<int>(p, "n2_L2", pw)};
    }
    if (j.contains("cross_offsets")) g.cross_offsets = get<std::vector<int>>(j, "cross_offsets", where);
    resolved_profile(g);
    return g;
}

json graph_spec_json(const GraphSpec& g) {
    json j;
    j["layer1_size"] = g.layer1_size;
    j["layer2_size"] = g.layer2_size;
    if (g.preset) j["preset"] = *g.preset;
    if (g.profile)
        j["profile"] = {{"n1_L1", g.profile->n1_l1}, {"n2_L1", g.profile->n2_l1}, {"n1_L2", g.profile->n1_l2},
                        {"n2_L2", g.profile->n2_l2}};
    if (g.cross_offsets) j["cross_offsets"] = *g.cross_offsets;
    return j;
}

HillParameters hill(const json& j, const std::string& where) {
    reject_unknown(j, {"alpha", "beta", "k", "h"}, where);
    HillParameters p;
    auto fill = [&](const char* key, auto& arr) {
        if (!j.contains(key)) return;
        const auto v = get<std::vector<double>>(j, key, where);
        if (v.size() != arr.size())
            throw Error(ErrorKind::InvalidConfig, where + "." + key + " needs " + std::to_string(arr.size()) + " values");
        std::copy(v.begin(), v.end(), arr.begin());
    };
    fill("alpha", p.alpha);
    fill("beta", p.beta);
    fill("k", p.k);
    fill("h", p.h);
    p.validate();
    return p;
}

AxisSpec axis(const json& j, const std::string& where, AxisSpec a) {
    reject_unknown(j, {"name", "values", "min", "max", "count", "scale"}, where);
    if (j.contains("name")) a.name = get<std::string>(j, "name", where);
    if (j.contains("values")) {
        if (j.contains("min") || j.contains("max") || j.contains("count") || j.contains("scale"))
            throw Error(ErrorKind::InvalidConfig, where + " takes either values or min/max/count/scale");
        a.values = get<std::vector<double>>(j, "values", where);
        if (a.values->empty()) throw Error(ErrorKind::InvalidConfig, where + ".values must be non-empty");
    }
    if (j.contains("min")) a.min = get<double>(j, "min", where);
    if (j.contains("max")) a.max = get<double>(j, "max", where);
    if (j.contains("count")) a.count = positive_count(j, "count", where);
    if (j.contains("scale")) {
        const auto s = get<std::string>(j, "scale", where);
        if (s != "log" && s != "linear") throw Error(ErrorKind::InvalidConfig, where + ".scale must be log or linear");
        a.log_scale = s == "log";
    }
    a.resolve();
    return a;
}

}  // namespace

DegreeProfile resolved_profile(const GraphSpec& spec) {
    std::optional<DegreeProfile> preset;
    if (spec.preset) {
        if (*spec.preset == "contact") preset = contact_profile();
        else if (*spec.preset == "diffusion") preset = diffusion_profile();
        else if (*spec.preset == "bipartite2d") preset = bipartite2d_profile();
        else throw Error(ErrorKind::InvalidConfig, "unknown preset '" + *spec.preset + "'");
    }
    if (preset && spec.profile && !(*preset == *spec.profile))
        throw Error(ErrorKind::InvalidConfig, "profile disagrees with preset " + *spec.preset);
    if (preset) return *preset;
    if (spec.profile) return *spec.profile;
    throw Error(ErrorKind::InvalidConfig, "graph needs a preset or a profile");
}

GraphSpec graph_spec_from_json(const std::string& json_text) { return graph_spec(parse(json_text), "graph"); }

std::string graph_spec_to_json(const GraphSpec& spec) { return graph_spec_json(spec).dump(); }

BilayerGraph build_graph(const GraphSpec& spec) {
    const auto profile = resolved_profile(spec);
    if (spec.layer1_size != spec.layer2_size)
        throw Error(ErrorKind::ProfileInfeasible, "ring construction needs equal layer sizes");
    if (spec.preset && *spec.preset == "bipartite2d") {
        if (spec.cross_offsets) throw Error(ErrorKind::InvalidConfig, "bipartite2d fixes its cross offsets");
        return build_bipartite_2d(spec.layer1_size);
    }
    return build_semi_regular_ring(spec.layer1_size, profile, spec.cross_offsets);
}

HillParameters hill_parameters_from_json(const std::string& json_text) { return hill(parse(json_text), "kinetics"); }

std::vector<double> AxisSpec::resolve() const {
    if (values) {
        for (double v : *values)
            if (!(v > 0.0)) throw Error(ErrorKind::InvalidConfig, "axis values must be positive");
        return *values;
    }
    if (!(min > 0.0) || !(max >= min)) throw Error(ErrorKind::InvalidConfig, "axis needs 0 < min <= max");
    return log_scale ? log_spaced(min, max, count) : lin_spaced(min, max, count);
}

RunConfig default_run_config() {
    RunConfig cfg;
    GraphSpec diffusion, contact;
    diffusion.preset = "diffusion";
    contact.preset = "contact";
    cfg.graphs = {diffusion, contact};
    cfg.weights = {PolarityWeights(0.6, 1.0), PolarityWeights(0.02, 1.0)};
    return cfg;
}

RunConfig parse_run_config(const std::string& json_text) {
    const json j = parse(json_text);
    reject_unknown(j, {"graphs", "weights", "kinetics", "simulation", "sweep"}, "config");
    RunConfig cfg = default_run_config();
    if (j.contains("graphs")) {
        const auto& g = j.at("graphs");
        if (!g.is_array() || g.empty()) throw Error(ErrorKind::InvalidConfig, "graphs must be a non-empty array");
        cfg.graphs.clear();
        for (std::size_t k = 0; k < g.size(); ++k) cfg.graphs.push_back(graph_spec(g[k], "graphs[" + std::to_string(k) + "]"));
    }
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array()) throw Error(ErrorKind::InvalidConfig, "weights must be an array");
        cfg.weights.clear();
        for (std::size_t k = 0; k < w.size(); ++k) {
            const std::string where = "weights[" + std::to_string(k) + "]";
            reject_unknown(w[k], {"w1", "w2"}, where);
            cfg.weights.emplace_back(get<double>(w[k], "w1", where), get<double>(w[k], "w2", where));
        }
    }
    if (cfg.weights.size() != cfg.graphs.size())
        throw Error(ErrorKind::InvalidConfig, "weights and graphs must have one entry per signal");
    if (j.contains("kinetics")) cfg.kinetics = hill(j.at("kinetics"), "kinetics");
    if (j.contains("simulation")) {
        const auto& s = j.at("simulation");
        const std::string where = "simulation";
        reject_unknown(s, {"t_max", "perturbation", "seed", "mode", "rtol", "atol", "component"}, where);
        auto& sim = cfg.simulation;
        if (s.contains("t_max")) sim.t_max = get<double>(s, "t_max", where);
        if (s.contains("perturbation")) sim.perturbation = get<double>(s, "perturbation", where);
        if (s.contains("seed")) sim.seed = get<std::uint64_t>(s, "seed", where);
        if (s.contains("rtol")) sim.rtol = get<double>(s, "rtol", where);
        if (s.contains("atol")) sim.atol = get<double>(s, "atol", where);
        if (s.contains("component")) {
            const auto c = get<long long>(s, "component", where);
            if (c < 1 || c > 3) throw Error(ErrorKind::InvalidConfig, "simulation.component must be 1..3");
            sim.component = static_cast<std::size_t>(c - 1);
        }
        if (s.contains("mode")) {
            const auto m = get<std::string>(s, "mode", where);
            if (m != "large" && m != "quotient") throw Error(ErrorKind::InvalidConfig, "simulation.mode must be large or quotient");
            sim.quotient = m == "quotient";
        }
        if (!(sim.t_max > 0) || !(sim.rtol > 0) || !(sim.atol > 0))
            throw Error(ErrorKind::InvalidConfig, "simulation tolerances and t_max must be positive");
        if (!(sim.perturbation > 0 && sim.perturbation <= 0.1))
            throw Error(ErrorKind::InvalidConfig, "simulation.perturbation must lie in (0, 0.1]");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        reject_unknown(s, {"axis1", "axis2", "simulate"}, "sweep");
        if (s.contains("axis1")) cfg.sweep.axis1 = axis(s.at("axis1"), "sweep.axis1", cfg.sweep.axis1);
        if (s.contains("axis2")) cfg.sweep.axis2 = axis(s.at("axis2"), "sweep.axis2", cfg.sweep.axis2);
        if (s.contains("simulate")) cfg.sweep.simulate = get<bool>(s, "simulate", "sweep");
    }
    for (const auto& g : cfg.graphs) build_graph(g);
    return cfg;
}

std::vector<SignalGraph> build_signals(const RunConfig& cfg) {
    std::vector<SignalGraph> out;
    for (std::size_t k = 0; k < cfg.graphs.size(); ++k)
        out.push_back({std::make_shared<const BilayerGraph>(build_graph(cfg.graphs[k])), cfg.weights.at(k)});
    return out;
}

IntegrateOptions integrate_options(const SimulationSettings& s) {
    IntegrateOptions o;
    o.t_max = s.t_max;
    o.rtol = s.rtol;
    o.atol = s.atol;
    return o;
}

}  // namespace laminar
