#include "laminar/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "laminar/error.hpp"
#include "laminar/quotient.hpp"

namespace laminar {

InstabilityResult instability_condition(const DenseMatrix& dt, std::span<const double> lambdas) {
    if (!dt.is_square()) throw Error(ErrorKind::NonSquare, "DT");
    if (lambdas.size() != dt.rows()) throw Error(ErrorKind::DimensionMismatch, "one lambda per signal expected");
    DenseMatrix ld = dt;
    for (std::size_t i = 0; i < ld.rows(); ++i)
        for (std::size_t j = 0; j < ld.cols(); ++j) ld(i, j) *= lambdas[i];
    InstabilityResult res;
    res.mu = eig_general(ld).values;
    std::complex<double> prod = 1.0;
    for (auto m : res.mu) prod *= 1.0 - m;
    res.product = prod.real();
    res.unstable = res.product < -1e-12;
    return res;
}

double siso_product(double lambda, double tprime) { return 1.0 - lambda * tprime; }

double dido_product(const DenseMatrix& dt, double l1, double l2) {
    if (dt.rows() != 2 || dt.cols() != 2) throw Error(ErrorKind::DimensionMismatch, "DIDO needs a 2x2 DT");
    const double tr = l1 * dt(0, 0) + l2 * dt(1, 1);
    const double det = l1 * l2 * (dt(0, 0) * dt(1, 1) - dt(0, 1) * dt(1, 0));
    return 1.0 - tr + det;
}

ExampleInstability quotient_instability_example(double w11, double w12, std::pair<double, double> w2,
                                                const Linearization& lin) {
    if (!(w11 > 0 && w12 > 0 && w2.first > 0 && w2.second > 0))
        throw Error(ErrorKind::InvalidWeights, "weights must be positive");
    if (lin.a.rows() != 3 || lin.b.cols() != 2)
        throw Error(ErrorKind::DimensionMismatch, "worked example linearization expected");
    const double f1g2g1p_f2p = lin.b(0, 0) * lin.a(1, 0);
    const double g1g2f1p_g3p = lin.b(0, 1) * lin.a(2, 0);
    const double det_a = determinant(lin.a);
    if (det_a == 0.0) throw Error(ErrorKind::Singular, "A is singular");
    const double c1 = (w11 - 2.0 * w2.first) / (w11 + 2.0 * w2.first);
    const double c2 = (w12 - w2.second) / (w12 + w2.second);
    const double rhs = -(c1 * f1g2g1p_f2p + c2 * g1g2f1p_g3p) / det_a;
    ExampleInstability out;
    out.margin = rhs - 1.0;
    out.unstable = out.margin > 1e-12;
    return out;
}

bool monotone_polarity_check(const std::vector<ProfileWeights>& graphs) {
    for (const auto& g : graphs) {
        if (g.profile.n1_l1 * g.weights.w1 > g.profile.n2_l1 * g.weights.w2) return false;
        if (g.profile.n1_l2 * g.weights.w1 > g.profile.n2_l2 * g.weights.w2) return false;
    }
    return true;
}

namespace {

bool all_nonpositive(const DenseMatrix& m) {
    return std::all_of(m.entries().begin(), m.entries().end(), [](double v) { return v <= 1e-12; });
}

DenseMatrix reflect(const DenseMatrix& m) {
    DenseMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if ((i + j) % 2 == 1) out(i, j) = -out(i, j);
    return out;
}

}  // namespace

TypeKResult typeK_rowsum_check(const InterwovenMatrix& p, const std::vector<DenseMatrix>& dt_samples,
                               std::pair<std::size_t, std::size_t> layer_split) {
    const std::size_t n = p.cell_count(), r = p.signal_count();
    if (dt_samples.size() != n) throw Error(ErrorKind::DimensionMismatch, "one DT sample per cell expected");
    if (layer_split.first + layer_split.second != n) throw Error(ErrorKind::DimensionMismatch, "layer split");
    for (const auto& d : dt_samples)
        if (d.rows() != r || d.cols() != r) throw Error(ErrorKind::DimensionMismatch, "DT sample shape");

    std::vector<DenseMatrix> samples = dt_samples;
    if (!std::all_of(samples.begin(), samples.end(), all_nonpositive)) {
        for (auto& d : samples) d = reflect(d);
        if (!std::all_of(samples.begin(), samples.end(), all_nonpositive))
            throw Error(ErrorKind::SignClassViolation, "DT samples are neither S2 nor reflected S1");
    }

    const DenseMatrix m = right_multiply_block_diagonal(p, samples);
    auto sign = [&](std::size_t idx) { return idx / r < layer_split.first ? 1.0 : -1.0; };
    TypeKResult res;
    res.worst_row_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n * r; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n * r; ++j)
            if (j != i) s += sign(i) * sign(j) * m(i, j);
        res.worst_row_sum = std::min(res.worst_row_sum, s);
    }
    res.ok = res.worst_row_sum >= -1e-12;
    return res;
}

std::optional<std::vector<std::vector<double>>> commuting_mode_tuples(const std::vector<WeightedAdjacency>& w) {
    if (w.empty()) return std::nullopt;
    struct Params {
        double w1hat, w2hat;
        int reach;
        std::vector<int> offsets;
    };
    std::vector<Params> ps;
    std::size_t m = 0;
    for (const auto& adj : w) {
        const auto& ring = adj.graph().ring_layout();
        if (!ring) return std::nullopt;
        if (m == 0) m = ring->layer_size;
        if (ring->layer_size != m) return std::nullopt;
        const double norm = 2 * ring->ring_reach * adj.weights().w1 + ring->cross_offsets.size() * adj.weights().w2;
        ps.push_back({adj.weights().w1 / norm, adj.weights().w2 / norm, ring->ring_reach, ring->cross_offsets});
    }
    std::vector<std::vector<double>> tuples;
    for (std::size_t k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        std::vector<double> alpha;
        std::vector<std::complex<double>> beta;
        for (const auto& p : ps) {
            double a = 0.0;
            for (int s = 1; s <= p.reach; ++s) a += 2.0 * std::cos(s * theta);
            alpha.push_back(p.w1hat * a);
            std::complex<double> b = 0.0;
            for (int d : p.offsets) b += std::polar(1.0, d * theta);
            beta.push_back(p.w2hat * b);
        }
        std::complex<double> phase = 1.0;
        for (auto b : beta)
            if (std::abs(b) > 1e-12) {
                phase = b / std::abs(b);
                break;
            }
        std::vector<double> plus, minus;
        for (std::size_t g = 0; g < ps.size(); ++g) {
            const auto rotated = beta[g] * std::conj(phase);
            if (std::abs(rotated.imag()) > 1e-10) return std::nullopt;
            plus.push_back(alpha[g] + rotated.real());
            minus.push_back(alpha[g] - rotated.real());
        }
        tuples.push_back(std::move(plus));
        tuples.push_back(std::move(minus));
    }
    return tuples;
}

LargeScaleResult large_scale_instability(const std::vector<WeightedAdjacency>& w, const Linearization& lin) {
    const std::size_t n = lin.a.rows(), r = lin.dt.rows();
    if (w.size() != r) throw Error(ErrorKind::DimensionMismatch, "one adjacency per signal expected");
    LargeScaleResult res;
    res.max_growth = -std::numeric_limits<double>::infinity();
    if (auto tuples = commuting_mode_tuples(w)) {
        res.commuting_path = true;
        for (const auto& lam : *tuples) {
            DenseMatrix l = DenseMatrix::diagonal(lam);
            const DenseMatrix j = lin.a + lin.b * l * lin.c;
            for (auto z : eig_general(j).values) res.max_growth = std::max(res.max_growth, z.real());
            res.min_product = std::min(res.min_product, instability_condition(lin.dt, lam).product);
        }
    } else {
        const std::size_t cells = w.front().matrix().rows();
        DenseMatrix j = kronecker(DenseMatrix::identity(cells), lin.a);
        for (std::size_t k = 0; k < r; ++k) {
            DenseMatrix bc(n, n);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) bc(p, q) = lin.b(p, k) * lin.c(k, q);
            j += kronecker(w[k].matrix(), bc);
        }
        for (auto z : eig_general(j).values) res.max_growth = std::max(res.max_growth, z.real());
    }
    res.unstable = res.max_growth > 1e-12;
    return res;
}

bool StabilityVerdict::converges() const {
    return exists() && !lambda2_is_min.empty() &&
           std::all_of(lambda2_is_min.begin(), lambda2_is_min.end(), [](bool b) { return b; });
}

StabilityVerdict evaluate_point(const std::vector<SignalGraph>& signals, const Linearization& lin,
                                const std::vector<std::vector<double>>* spectra) {
    const std::size_t r = signals.size();
    if (r != lin.dt.rows()) throw Error(ErrorKind::DimensionMismatch, "one graph per signal expected");
    if (spectra && spectra->size() != r) throw Error(ErrorKind::DimensionMismatch, "one spectrum per signal expected");
    StabilityVerdict v;
    std::vector<ProfileWeights> pw;
    std::vector<DenseMatrix> constructors;
    std::size_t l1 = 0, l2 = 0;
    for (std::size_t k = 0; k < r; ++k) {
        const auto& s = signals[k];
        const auto profile = s.graph->degree_profile();
        if (!profile) throw Error(ErrorKind::NotSemiRegular, "graph for signal " + std::to_string(k + 1));
        if (k == 0) {
            l1 = s.graph->layer1_size();
            l2 = s.graph->layer2_size();
        } else if (s.graph->layer1_size() != l1 || s.graph->layer2_size() != l2) {
            throw Error(ErrorKind::DimensionMismatch, "signal graphs must share the cell set");
        }
        const auto w = weighted_adjacency(s.graph, s.weights);
        const auto q = reduce_adjacency(w, laminar_partition(*s.graph));
        v.a.push_back(q.a());
        v.b.push_back(q.b());
        v.lambda2.push_back(q.lambda2());
        pw.push_back({*profile, s.weights});
        const auto spec = spectra ? (*spectra)[k] : eig_symmetric(w.matrix()).real_values();
        const auto pos = spectral_position(spec, q.lambda2());
        v.lambda2_is_min.push_back(pos.is_min);
        v.lambda2_index.push_back(pos.index);
        constructors.push_back(w.matrix());
    }

    const std::vector<double> perron(r, 1.0);
    v.instability_margin = -std::numeric_limits<double>::infinity();
    for (const std::vector<double>* lam : std::array<const std::vector<double>*, 2>{&perron, &v.lambda2}) {
        const auto res = instability_condition(lin.dt, *lam);
        v.mode_eigs.push_back(res.mu);
        v.instability_margin = std::max(v.instability_margin, -res.product);
        v.unstable = v.unstable || res.unstable;
    }
    v.monotone_polarity_ok = monotone_polarity_check(pw);

    const InterwovenMatrix p(std::move(constructors));
    try {
        const auto tk = typeK_rowsum_check(p, std::vector<DenseMatrix>(l1 + l2, lin.dt), {l1, l2});
        v.typeK_ok = tk.ok;
        v.typeK_worst = tk.worst_row_sum;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SignClassViolation) throw;
        v.typeK_ok = false;
        v.typeK_worst = std::numeric_limits<double>::quiet_NaN();
    }
    return v;
}

}  // namespace laminar
