#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "laminar/numerics.hpp"

namespace laminar {

struct DegreeProfile {
    int n1_l1 = 0;  // same-layer neighbours of a layer-1 vertex
    int n2_l1 = 0;  // cross-layer neighbours of a layer-1 vertex
    int n1_l2 = 0;
    int n2_l2 = 0;

    friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

// Ring layout metadata recorded by the ring builders.
struct RingLayout {
    std::size_t layer_size = 0;
    int ring_reach = 0;               // n1 / 2
    std::vector<int> cross_offsets;   // layer-1 vertex i links to layer-2 vertex i + d
};

using Edge = std::pair<std::size_t, std::size_t>;

// Vertices [0, layer1_size) form layer 1, the rest layer 2. Edges are stored with u < v.
class BilayerGraph {
public:
    BilayerGraph(std::size_t layer1_size, std::size_t layer2_size, std::vector<Edge> edges,
                 std::optional<RingLayout> ring = std::nullopt);

    std::size_t layer1_size() const noexcept { return l1_; }
    std::size_t layer2_size() const noexcept { return l2_; }
    std::size_t vertex_count() const noexcept { return l1_ + l2_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::vector<std::size_t>>& neighbours() const noexcept { return adj_; }
    const std::optional<RingLayout>& ring_layout() const noexcept { return ring_; }

    int layer_of(std::size_t v) const noexcept { return v < l1_ ? 1 : 2; }
    int same_layer_count(std::size_t v) const;
    int cross_layer_count(std::size_t v) const;

    // Present only when every vertex of a layer has the same counts.
    std::optional<DegreeProfile> degree_profile() const;

private:
    std::size_t l1_, l2_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::optional<RingLayout> ring_;
};

struct PolarityWeights {
    double w1 = 1.0;
    double w2 = 1.0;

    PolarityWeights() = default;
    PolarityWeights(double intra, double inter);
};

class WeightedAdjacency {
public:
    WeightedAdjacency(std::shared_ptr<const BilayerGraph> graph, PolarityWeights weights, DenseMatrix matrix);

    const DenseMatrix& matrix() const noexcept { return m_; }
    const BilayerGraph& graph() const noexcept { return *g_; }
    std::shared_ptr<const BilayerGraph> graph_ptr() const noexcept { return g_; }
    const PolarityWeights& weights() const noexcept { return w_; }

private:
    std::shared_ptr<const BilayerGraph> g_;
    PolarityWeights w_;
    DenseMatrix m_;
};

struct StructureReport {
    bool connected = false;
    bool bipartite = false;
    std::vector<int> coloring;  // 0/1 per vertex, filled when bipartite
    std::optional<DegreeProfile> degree_profile;
    bool semi_regular = false;
};

std::vector<int> default_cross_offsets(int n2);

BilayerGraph build_semi_regular_ring(std::size_t layer_size, const DegreeProfile& profile,
                                     std::optional<std::vector<int>> cross_offsets = std::nullopt);
// Ladder C_m x K2 with m even.
BilayerGraph build_bipartite_2d(std::size_t layer_size);

DegreeProfile contact_profile();
DegreeProfile diffusion_profile();
DegreeProfile bipartite2d_profile();

WeightedAdjacency weighted_adjacency(std::shared_ptr<const BilayerGraph> g, PolarityWeights w);
WeightedAdjacency weighted_adjacency(const BilayerGraph& g, PolarityWeights w);

StructureReport analyze_structure(const BilayerGraph& g);

// Biadjacency block of a bipartite2d adjacency after reindexing the two colour classes.
DenseMatrix bipartite_biadjacency(const WeightedAdjacency& w);

}  // namespace laminar
