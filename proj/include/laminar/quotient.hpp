#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "laminar/bilayer_graph.hpp"
#include "laminar/interwoven.hpp"
#include "laminar/numerics.hpp"

namespace laminar {

struct LaminarPartition {
    std::vector<std::size_t> layer1;
    std::vector<std::size_t> layer2;
};

LaminarPartition laminar_partition(const BilayerGraph& g);

// Row sums w_ij of layer-i rows over layer-j columns.
struct QuotientConstants {
    double w11 = 0, w12 = 0, w21 = 0, w22 = 0;
};

class QuotientAdjacency {
public:
    QuotientAdjacency(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double lambda2() const noexcept { return a_ + b_ - 1.0; }
    DenseMatrix matrix() const;

private:
    double a_, b_;
};

// Closed form from the degree profile, without building the graph.
QuotientAdjacency quotient_from_profile(const DegreeProfile& profile, const PolarityWeights& w);

QuotientConstants verify_equitable(const WeightedAdjacency& w, const LaminarPartition& p);
QuotientAdjacency reduce_adjacency(const WeightedAdjacency& w, const LaminarPartition& p);

DenseMatrix lifting_matrix(const BilayerGraph& g);
std::vector<double> quotient_eigenvector(const QuotientAdjacency& q);
std::vector<double> lift_eigenvector(const QuotientAdjacency& q, const DenseMatrix& lifting);

struct SpectralPosition {
    std::size_t index = 0;  // 1-based ascending
    bool is_min = false;
    bool is_max = false;
};

SpectralPosition spectral_position(const std::vector<double>& ascending_spectrum, double lam);
SpectralPosition spectral_position(const WeightedAdjacency& w, double lam);

// Largest w1 in [lo, hi] at which lambda2 is the spectral minimum, for fixed w2, located by a
// log-spaced scan from hi downwards and bisection on the first bracket. Empty when never minimal.
std::optional<double> lambda2_min_crossover(std::shared_ptr<const BilayerGraph> g, double w2, double lo = 1e-3,
                                            double hi = 10.0, std::size_t scan = 60);

// Interwoven quotient matrix built from one reduced adjacency per signal.
InterwovenMatrix quotient_interwoven(const std::vector<QuotientAdjacency>& q);

}  // namespace laminar
