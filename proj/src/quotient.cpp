#include "laminar/quotient.hpp"

#include <cmath>
#include <string>

#include "laminar/error.hpp"

namespace laminar {

LaminarPartition laminar_partition(const BilayerGraph& g) {
    LaminarPartition p;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) (g.layer_of(v) == 1 ? p.layer1 : p.layer2).push_back(v);
    return p;
}

QuotientAdjacency::QuotientAdjacency(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0))
        throw Error(ErrorKind::InvalidWeights, "quotient constants must lie in (0,1)");
}

DenseMatrix QuotientAdjacency::matrix() const { return DenseMatrix{{a_, 1.0 - a_}, {1.0 - b_, b_}}; }

QuotientAdjacency quotient_from_profile(const DegreeProfile& profile, const PolarityWeights& w) {
    const double a = profile.n1_l1 * w.w1 / (profile.n1_l1 * w.w1 + profile.n2_l1 * w.w2);
    const double b = profile.n1_l2 * w.w1 / (profile.n1_l2 * w.w1 + profile.n2_l2 * w.w2);
    return QuotientAdjacency(a, b);
}

QuotientConstants verify_equitable(const WeightedAdjacency& w, const LaminarPartition& p) {
    const std::size_t n = w.matrix().rows();
    if (p.layer1.size() + p.layer2.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "partition does not cover every vertex");
    std::vector<int> cell(n, -1);
    for (auto v : p.layer1) cell.at(v) = 0;
    for (auto v : p.layer2) {
        if (cell.at(v) != -1) throw Error(ErrorKind::DimensionMismatch, "partition cells overlap");
        cell[v] = 1;
    }
    double c[2][2] = {{0, 0}, {0, 0}};
    std::size_t rep[2] = {n, n};
    for (std::size_t u = 0; u < n; ++u) {
        double s[2] = {0, 0};
        for (std::size_t v = 0; v < n; ++v) s[cell[v]] += w.matrix()(u, v);
        const int i = cell[u];
        if (rep[i] == n) {
            rep[i] = u;
            c[i][0] = s[0];
            c[i][1] = s[1];
            continue;
        }
        for (int j = 0; j < 2; ++j)
            if (std::abs(s[j] - c[i][j]) > 1e-12)
                throw Error(ErrorKind::NotEquitable, "rows " + std::to_string(rep[i] + 1) + " and " +
                                                         std::to_string(u + 1) + " differ in their layer sums");
    }
    return {c[0][0], c[0][1], c[1][0], c[1][1]};
}

QuotientAdjacency reduce_adjacency(const WeightedAdjacency& w, const LaminarPartition& p) {
    const auto c = verify_equitable(w, p);
    return QuotientAdjacency(c.w11, c.w22);
}

DenseMatrix lifting_matrix(const BilayerGraph& g) {
    DenseMatrix l(g.vertex_count(), 2);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) l(v, g.layer_of(v) - 1) = 1.0;
    return l;
}

std::vector<double> quotient_eigenvector(const QuotientAdjacency& q) {
    return {1.0, (q.b() - 1.0) / (1.0 - q.a())};
}

std::vector<double> lift_eigenvector(const QuotientAdjacency& q, const DenseMatrix& lifting) {
    if (lifting.cols() != 2) throw Error(ErrorKind::DimensionMismatch, "lifting matrix must have two columns");
    const auto v = quotient_eigenvector(q);
    return lifting * std::span<const double>(v);
}

SpectralPosition spectral_position(const std::vector<double>& ascending_spectrum, double lam) {
    for (std::size_t i = 0; i < ascending_spectrum.size(); ++i) {
        if (std::abs(ascending_spectrum[i] - lam) <= 1e-8) {
            SpectralPosition pos;
            pos.index = i + 1;
            pos.is_min = i == 0;
            pos.is_max = std::abs(ascending_spectrum.back() - lam) <= 1e-8;
            return pos;
        }
    }
    throw Error(ErrorKind::NotInSpectrum, "value is not an eigenvalue within 1e-8");
}

SpectralPosition spectral_position(const WeightedAdjacency& w, double lam) {
    return spectral_position(eig_symmetric(w.matrix()).real_values(), lam);
}

std::optional<double> lambda2_min_crossover(std::shared_ptr<const BilayerGraph> g, double w2, double lo, double hi,
                                            std::size_t scan) {
    if (!(lo > 0 && hi > lo) || scan < 2) throw Error(ErrorKind::InvalidConfig, "crossover search range");
    const auto part = laminar_partition(*g);
    auto minimal = [&](double w1) {
        const auto w = weighted_adjacency(g, PolarityWeights(w1, w2));
        return spectral_position(w, reduce_adjacency(w, part).lambda2()).is_min;
    };
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(scan - 1));
    double above = hi;
    if (minimal(hi)) return hi;
    for (std::size_t k = 1; k < scan; ++k) {
        const double w1 = hi / std::pow(ratio, static_cast<double>(k));
        if (minimal(w1)) {
            double a = w1, b = above;  // minimal at a, not at b
            for (int it = 0; it < 40 && b / a > 1 + 1e-10; ++it) {
                const double mid = std::sqrt(a * b);
                (minimal(mid) ? a : b) = mid;
            }
            return a;
        }
        above = w1;
    }
    return std::nullopt;
}

InterwovenMatrix quotient_interwoven(const std::vector<QuotientAdjacency>& q) {
    std::vector<DenseMatrix> c;
    for (const auto& x : q) c.push_back(x.matrix());
    return InterwovenMatrix(std::move(c));
}

}  // namespace laminar
