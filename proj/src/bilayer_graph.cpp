#include "laminar/bilayer_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "laminar/error.hpp"

namespace laminar {

BilayerGraph::BilayerGraph(std::size_t layer1_size, std::size_t layer2_size, std::vector<Edge> edges,
                           std::optional<RingLayout> ring)
    : l1_(layer1_size), l2_(layer2_size), ring_(std::move(ring)) {
    const std::size_t n = l1_ + l2_;
    if (l1_ == 0 || l2_ == 0) throw Error(ErrorKind::InvalidConfig, "both layers must be non-empty");
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw Error(ErrorKind::InvalidConfig, "edge endpoint out of range");
        if (u == v) throw Error(ErrorKind::InvalidConfig, "self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw Error(ErrorKind::InvalidConfig,
                        "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    edges_.assign(seen.begin(), seen.end());
    adj_.assign(n, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int BilayerGraph::same_layer_count(std::size_t v) const {
    return static_cast<int>(std::count_if(adj_[v].begin(), adj_[v].end(),
                                          [&](std::size_t u) { return layer_of(u) == layer_of(v); }));
}

int BilayerGraph::cross_layer_count(std::size_t v) const {
    return static_cast<int>(adj_[v].size()) - same_layer_count(v);
}

std::optional<DegreeProfile> BilayerGraph::degree_profile() const {
    DegreeProfile p{same_layer_count(0), cross_layer_count(0), same_layer_count(l1_), cross_layer_count(l1_)};
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        const bool first = layer_of(v) == 1;
        if (same_layer_count(v) != (first ? p.n1_l1 : p.n1_l2)) return std::nullopt;
        if (cross_layer_count(v) != (first ? p.n2_l1 : p.n2_l2)) return std::nullopt;
    }
    return p;
}

PolarityWeights::PolarityWeights(double intra, double inter) : w1(intra), w2(inter) {
    if (!(w1 > 0.0) || !(w2 > 0.0) || !std::isfinite(w1) || !std::isfinite(w2))
        throw Error(ErrorKind::InvalidWeights, "polarity weights must be positive and finite");
}

WeightedAdjacency::WeightedAdjacency(std::shared_ptr<const BilayerGraph> graph, PolarityWeights weights,
                                     DenseMatrix matrix)
    : g_(std::move(graph)), w_(weights), m_(std::move(matrix)) {}

std::vector<int> default_cross_offsets(int n2) {
    std::vector<int> out;
    for (int k = 0; static_cast<int>(out.size()) < n2; ++k) {
        if (k == 0) {
            out.push_back(0);
            continue;
        }
        out.push_back(k);
        if (static_cast<int>(out.size()) < n2) out.push_back(-k);
    }
    return out;
}

namespace {

std::size_t wrap(long long i, std::size_t m) {
    const long long mm = static_cast<long long>(m);
    return static_cast<std::size_t>(((i % mm) + mm) % mm);
}

}  // namespace

BilayerGraph build_semi_regular_ring(std::size_t layer_size, const DegreeProfile& profile,
                                     std::optional<std::vector<int>> cross_offsets) {
    if (layer_size < 3) throw Error(ErrorKind::ProfileInfeasible, "layer_size must be at least 3");
    if (profile.n1_l1 != profile.n1_l2 || profile.n2_l1 != profile.n2_l2)
        throw Error(ErrorKind::ProfileInfeasible, "equal-size ring layers need identical per-layer counts");
    const int n1 = profile.n1_l1, n2 = profile.n2_l1;
    if (n1 < 0 || n2 < 0) throw Error(ErrorKind::ProfileInfeasible, "negative neighbour count");
    if (n1 % 2 != 0) throw Error(ErrorKind::ProfileInfeasible, "n1 must be even");
    if (static_cast<std::size_t>(n1) >= layer_size) throw Error(ErrorKind::ProfileInfeasible, "n1 exceeds layer size");
    if (static_cast<std::size_t>(n2) > layer_size) throw Error(ErrorKind::ProfileInfeasible, "n2 exceeds layer size");

    std::vector<int> offsets = cross_offsets ? *cross_offsets : default_cross_offsets(n2);
    if (static_cast<int>(offsets.size()) != n2)
        throw Error(ErrorKind::ProfileInfeasible, "cross_offsets length must equal n2");
    std::set<std::size_t> distinct;
    for (int d : offsets) distinct.insert(wrap(d, layer_size));
    if (distinct.size() != offsets.size())
        throw Error(ErrorKind::ProfileInfeasible, "cross offsets collide modulo layer size");

    std::vector<Edge> edges;
    for (std::size_t layer = 0; layer < 2; ++layer) {
        const std::size_t base = layer * layer_size;
        for (std::size_t i = 0; i < layer_size; ++i)
            for (int s = 1; s <= n1 / 2; ++s) edges.emplace_back(base + i, base + wrap(static_cast<long long>(i) + s, layer_size));
    }
    for (std::size_t i = 0; i < layer_size; ++i)
        for (int d : offsets) edges.emplace_back(i, layer_size + wrap(static_cast<long long>(i) + d, layer_size));

    BilayerGraph g(layer_size, layer_size, std::move(edges), RingLayout{layer_size, n1 / 2, offsets});
    const auto report = analyze_structure(g);
    if (!report.connected) throw Error(ErrorKind::NotConnected, "profile yields a disconnected graph");
    if (!report.semi_regular || *report.degree_profile != profile)
        throw Error(ErrorKind::ProfileInfeasible, "profile cannot be realised without repeated edges");
    return g;
}

BilayerGraph build_bipartite_2d(std::size_t layer_size) {
    if (layer_size < 4 || layer_size % 2 != 0)
        throw Error(ErrorKind::NotBipartiteLayout, "bipartite2d needs an even layer size of at least 4");
    return build_semi_regular_ring(layer_size, bipartite2d_profile(), std::vector<int>{0});
}

DegreeProfile contact_profile() { return {2, 2, 2, 2}; }
DegreeProfile diffusion_profile() { return {2, 4, 2, 4}; }
DegreeProfile bipartite2d_profile() { return {2, 1, 2, 1}; }

WeightedAdjacency weighted_adjacency(std::shared_ptr<const BilayerGraph> g, PolarityWeights w) {
    const std::size_t n = g->vertex_count();
    DenseMatrix m(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        const double norm = g->same_layer_count(u) * w.w1 + g->cross_layer_count(u) * w.w2;
        for (std::size_t v : g->neighbours()[u]) m(u, v) = (g->layer_of(u) == g->layer_of(v) ? w.w1 : w.w2) / norm;
    }
    return WeightedAdjacency(std::move(g), w, std::move(m));
}

WeightedAdjacency weighted_adjacency(const BilayerGraph& g, PolarityWeights w) {
    return weighted_adjacency(std::make_shared<const BilayerGraph>(g), w);
}

StructureReport analyze_structure(const BilayerGraph& g) {
    StructureReport rep;
    const std::size_t n = g.vertex_count();
    std::vector<int> color(n, -1);
    bool bipartite = true;
    std::size_t reached = 0;
    std::deque<std::size_t> queue{0};
    color[0] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        ++reached;
        for (std::size_t v : g.neighbours()[u]) {
            if (color[v] < 0) {
                color[v] = 1 - color[u];
                queue.push_back(v);
            } else if (color[v] == color[u]) {
                bipartite = false;
            }
        }
    }
    rep.connected = reached == n;
    rep.bipartite = rep.connected && bipartite;
    if (rep.bipartite) rep.coloring = std::move(color);
    rep.degree_profile = g.degree_profile();
    rep.semi_regular = rep.degree_profile.has_value();
    return rep;
}

DenseMatrix bipartite_biadjacency(const WeightedAdjacency& w) {
    const auto& g = w.graph();
    const auto& ring = g.ring_layout();
    if (!ring || ring->ring_reach != 1 || ring->cross_offsets != std::vector<int>{0} || ring->layer_size % 2 != 0)
        throw Error(ErrorKind::NotBipartiteLayout, "graph is not a bipartite2d ladder");
    const std::size_t m = ring->layer_size;
    // V1 = {L1 even, L2 odd}, V2 = {L2 even, L1 odd}, interleaved by ring position
    std::vector<std::size_t> v1(m), v2(m);
    for (std::size_t k = 0; k < m; ++k) {
        v1[k] = (k % 2 == 0) ? k : m + k;
        v2[k] = (k % 2 == 0) ? m + k : k;
    }
    DenseMatrix x(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = w.matrix()(v1[i], v2[j]);
    return x;
}

}  // namespace laminar
