#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laminar/kinetics.hpp"
#include "laminar/simulate.hpp"
#include "laminar/stability.hpp"

namespace laminar {

// Axis names: w1_sig1, w1_sig2, w2_sig1, w2_sig2 (signal index is 1-based).
struct SweepAxis {
    std::string name = "w1_sig1";
    std::vector<double> values;
};

std::vector<double> log_spaced(double lo, double hi, std::size_t count);
std::vector<double> lin_spaced(double lo, double hi, std::size_t count);

struct SweepCell {
    std::size_t i = 0, j = 0;             // axis1 index, axis2 index
    std::vector<PolarityWeights> weights;  // effective weights per signal
    std::optional<StabilityVerdict> verdict;
    std::optional<PatternKind> sim_class;
    std::string failure;
};

struct SweepGrid {
    SweepAxis axis1, axis2;
    std::vector<SweepCell> cells;  // row-major, axis1 outer

    const SweepCell& at(std::size_t i, std::size_t j) const { return cells.at(i * axis2.values.size() + j); }
};

struct SweepConfig {
    SweepAxis axis1{"w1_sig1", log_spaced(1e-2, 2.0, 60)};
    SweepAxis axis2{"w1_sig2", log_spaced(1e-2, 2.0, 60)};
    std::vector<SignalGraph> signals;  // base graphs and weights
    bool simulate = false;
    SimulationRequest simulation;      // signals field is overwritten per cell
    unsigned threads = 1;
};

SweepGrid sweep_regions(const Kinetics& spec, const SweepConfig& config);

}  // namespace laminar
