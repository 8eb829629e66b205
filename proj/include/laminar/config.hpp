#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "laminar/bilayer_graph.hpp"
#include "laminar/kinetics.hpp"
#include "laminar/stability.hpp"
#include "laminar/sweep.hpp"

namespace laminar {

struct GraphSpec {
    std::size_t layer1_size = 30;
    std::size_t layer2_size = 30;
    std::optional<DegreeProfile> profile;
    std::optional<std::string> preset;  // contact | diffusion | bipartite2d
    std::optional<std::vector<int>> cross_offsets;
};

GraphSpec graph_spec_from_json(const std::string& json_text);
std::string graph_spec_to_json(const GraphSpec& spec);
DegreeProfile resolved_profile(const GraphSpec& spec);
BilayerGraph build_graph(const GraphSpec& spec);

HillParameters hill_parameters_from_json(const std::string& json_text);

struct AxisSpec {
    std::string name;
    std::optional<std::vector<double>> values;
    double min = 1e-2, max = 2.0;
    std::size_t count = 60;
    bool log_scale = true;

    std::vector<double> resolve() const;
    static AxisSpec named(std::string axis_name) {
        AxisSpec a;
        a.name = std::move(axis_name);
        return a;
    }
};

struct SimulationSettings {
    double t_max = 1000.0;
    double perturbation = 0.01;
    std::uint64_t seed = 1;
    bool quotient = false;
    double rtol = 1e-6, atol = 1e-9;
    std::size_t component = 0;  // 0-based
};

struct SweepSettings {
    AxisSpec axis1 = AxisSpec::named("w1_sig1");
    AxisSpec axis2 = AxisSpec::named("w1_sig2");
    bool simulate = false;
};

struct RunConfig {
    std::vector<GraphSpec> graphs;
    std::vector<PolarityWeights> weights;
    HillParameters kinetics;
    SimulationSettings simulation;
    SweepSettings sweep;
};

// Diffusion and contact graphs, 30 cells per layer, weights (0.6, 1) and (0.02, 1), Hill defaults.
RunConfig default_run_config();
// Unknown keys are rejected; missing keys keep the defaults.
RunConfig parse_run_config(const std::string& json_text);

std::vector<SignalGraph> build_signals(const RunConfig& cfg);
IntegrateOptions integrate_options(const SimulationSettings& s);

}  // namespace laminar
