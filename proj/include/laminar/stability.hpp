#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "laminar/bilayer_graph.hpp"
#include "laminar/interwoven.hpp"
#include "laminar/kinetics.hpp"
#include "laminar/numerics.hpp"

namespace laminar {

// One connectivity graph and weight pair per signal mechanism.
struct SignalGraph {
    std::shared_ptr<const BilayerGraph> graph;
    PolarityWeights weights;
};

struct InstabilityResult {
    double product = 1.0;  // prod(1 - mu_i)
    bool unstable = false;
    std::vector<std::complex<double>> mu;
};

InstabilityResult instability_condition(const DenseMatrix& dt, std::span<const double> lambdas);
double siso_product(double lambda, double tprime);                    // 1 - lambda T'
double dido_product(const DenseMatrix& dt, double l1, double l2);      // 1 - Tr(L DT) + det(L DT)

struct ExampleInstability {
    bool unstable = false;
    double margin = 0.0;  // bracketed right-hand side minus 1
};

// Closed-form inequality of the worked example (diffusion n1=2, n2=4; contact n1=n2=2).
ExampleInstability quotient_instability_example(double w11, double w12, std::pair<double, double> w2,
                                                const Linearization& lin);

struct ProfileWeights {
    DegreeProfile profile;
    PolarityWeights weights;
};

bool monotone_polarity_check(const std::vector<ProfileWeights>& graphs);

struct TypeKResult {
    bool ok = false;
    double worst_row_sum = 0.0;
};

TypeKResult typeK_rowsum_check(const InterwovenMatrix& p, const std::vector<DenseMatrix>& dt_samples,
                               std::pair<std::size_t, std::size_t> layer_split);

// Mode pairs (lambda_1j, ..., lambda_rj) sharing an eigenvector, for ring graphs of equal layer size.
std::optional<std::vector<std::vector<double>>> commuting_mode_tuples(const std::vector<WeightedAdjacency>& w);

struct LargeScaleResult {
    double max_growth = 0.0;    // largest real part over the Jacobian spectrum
    double min_product = 1.0;   // smallest prod(1 - mu) over mode tuples (commuting path only)
    bool unstable = false;
    bool commuting_path = false;
};

LargeScaleResult large_scale_instability(const std::vector<WeightedAdjacency>& w, const Linearization& lin);

struct StabilityVerdict {
    double instability_margin = 0.0;
    bool unstable = false;
    bool monotone_polarity_ok = false;
    std::vector<bool> lambda2_is_min;
    std::vector<std::size_t> lambda2_index;
    bool typeK_ok = false;
    double typeK_worst = 0.0;
    std::vector<double> a, b, lambda2;
    std::vector<std::vector<std::complex<double>>> mode_eigs;  // per quotient mode (Perron, laminar)

    bool exists() const { return unstable && monotone_polarity_ok; }
    bool converges() const;
};

// spectra, when given, hold the ascending large-scale spectrum of each signal's adjacency.
StabilityVerdict evaluate_point(const std::vector<SignalGraph>& signals, const Linearization& lin,
                                const std::vector<std::vector<double>>* spectra = nullptr);

}  // namespace laminar
