#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "laminar/interwoven.hpp"
#include "laminar/kinetics.hpp"
#include "laminar/stability.hpp"

namespace laminar {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform01();        // [0, 1)
    double uniform_signed();   // [-1, 1)

private:
    std::uint64_t state_;
};

std::vector<double> perturb_hss(std::span<const double> x0, std::size_t n_cells, double magnitude,
                                std::uint64_t seed);

struct IntegrateOptions {
    double t_max = 1000.0;
    double rtol = 1e-6;
    double atol = 1e-9;
    double h0 = 1e-3;
    double h_max = 0.5;
    double h_min = 1e-10;
    double checkpoint = 1.0;
    double convergence_tol = 1e-4;
    int convergence_window = 4;
    bool stop_on_convergence = true;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool converged = false;
    std::optional<double> converged_at;
    std::uint64_t seed = 0;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;

    const std::vector<double>& final_state() const { return states.back(); }
};

// x_i' = f(x_i, u_i), u = P h(x), with cell-major state layout.
Trajectory integrate(const Kinetics& spec, const InterwovenMatrix& p, std::vector<double> x_init,
                     const IntegrateOptions& opts = {}, std::uint64_t seed = 0);

enum class PatternKind { Homogeneous, Laminar, Other };
std::string to_string(PatternKind k);
PatternKind pattern_kind_from_string(const std::string& s);

struct PatternClass {
    PatternKind kind = PatternKind::Other;
    std::array<double, 2> layer_means{0.0, 0.0};
    double separation = 0.0;
};

PatternClass classify_pattern(std::span<const double> final_state, std::pair<std::size_t, std::size_t> layer_split,
                              std::span<const double> x0, std::size_t component = 0);

// Per-layer mean of each state component: 2n values.
std::vector<double> layer_mean_state(std::span<const double> state, std::pair<std::size_t, std::size_t> layer_split,
                                     std::size_t n);

struct SimulationRequest {
    std::vector<SignalGraph> signals;
    double magnitude = 0.01;
    std::uint64_t seed = 1;
    IntegrateOptions options;
    std::size_t component = 0;
};

struct SimulationResult {
    SteadyState hss;
    Trajectory large;
    PatternClass pattern;
    std::pair<std::size_t, std::size_t> layer_split;
};

struct QuotientSimulationResult {
    Trajectory quotient;
    PatternClass pattern;
};

InterwovenMatrix large_scale_interwoven(const std::vector<SignalGraph>& signals);
InterwovenMatrix reduced_interwoven(const std::vector<SignalGraph>& signals);

SimulationResult simulate_large_scale(const Kinetics& spec, const SimulationRequest& req);
SimulationResult simulate_large_scale(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss);
// Starts from the per-layer means of the large-scale initial condition for the same seed.
QuotientSimulationResult simulate_quotient(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss);

struct PairedSimulation {
    SimulationResult large;
    QuotientSimulationResult quotient;
    double max_layer_difference = 0.0;  // over all state components of the two layer means
};

// Quotient run integrated over the same horizon as the large-scale run, without the early stop.
PairedSimulation simulate_paired(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss);

}  // namespace laminar
