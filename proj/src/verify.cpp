#include "laminar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "laminar/bilayer_graph.hpp"
#include "laminar/error.hpp"
#include "laminar/interwoven.hpp"
#include "laminar/numerics.hpp"
#include "laminar/quotient.hpp"
#include "laminar/simulate.hpp"
#include "laminar/stability.hpp"

namespace laminar {

namespace {

std::size_t pick(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.uniform01() * static_cast<double>(hi - lo + 1));
}

double uniform(SplitMix64& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

DenseMatrix random_matrix(SplitMix64& rng, std::size_t n, double lo, double hi, double diag_shift = 0.0) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, lo, hi) + (i == j ? diag_shift : 0.0);
    return m;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void record(SuiteResult& s, double err, double tol) {
    s.worst = std::max(s.worst, err);
    if (!(err <= tol)) s.passed = false;
}

std::vector<std::complex<double>> concat(const std::vector<EigenDecomposition>& parts) {
    std::vector<std::complex<double>> out;
    for (const auto& e : parts) out.insert(out.end(), e.values.begin(), e.values.end());
    return out;
}

}  // namespace

std::vector<SuiteResult> interwoven_suites(std::uint64_t seed, std::size_t instances) {
    SuiteResult roundtrip{"block_diagonalization_roundtrip"}, spectrum{"spectrum_union"}, trace{"trace_sum"},
        det{"determinant_product"}, inv{"inverse_interweave"}, power{"power_identity"},
        irreducible{"irreducibility_transfer"};
    const double tol = 1e-7;
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::size_t r = pick(rng, 1, 3), n = pick(rng, 1, 6);
        std::vector<DenseMatrix> ms;
        for (std::size_t k = 0; k < r; ++k) ms.push_back(random_matrix(rng, n, -1.0, 1.0, static_cast<double>(n)));
        const InterwovenMatrix p(ms);
        const DenseMatrix d = p.dense();

        const auto form = block_diagonalize(p);
        const DenseMatrix q = permutation_matrix(form.tau);
        const DenseMatrix bd = q.transpose() * d * q;
        double rt = 0.0;
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < r * n; ++j) {
                    const double expect = (j / n == k) ? ms[k](i, j % n) : 0.0;
                    rt = std::max(rt, std::abs(bd(k * n + i, j) - expect));
                }
        record(roundtrip, rt, 0.0);

        std::vector<EigenDecomposition> parts;
        for (const auto& m : ms) parts.push_back(eig_general(m));
        const auto dense_eigs = eig_general(d).values;
        record(spectrum, multiset_distance(dense_eigs, concat(parts)) / std::max(1.0, d.max_abs()), tol);
        record(spectrum, multiset_distance(interwoven_spectrum(p).values, dense_eigs) / std::max(1.0, d.max_abs()), tol);

        double tr = 0.0, dp = 1.0;
        for (const auto& m : ms) {
            tr += m.trace();
            dp *= determinant(m);
        }
        record(trace, relative_gap(interwoven_trace(p), d.trace()), tol);
        record(trace, relative_gap(tr, d.trace()), tol);
        const double ddet = determinant(d);
        record(det, relative_gap(interwoven_determinant(p), ddet), tol);
        record(det, relative_gap(dp, ddet), tol);

        const DenseMatrix pinv = interwoven_inverse(p).dense();
        const DenseMatrix dinv = inverse(d);
        record(inv, (pinv - dinv).max_abs() / std::max(1.0, dinv.max_abs()), tol);
        record(inv, (pinv * d - DenseMatrix::identity(r * n)).max_abs(), tol);

        const unsigned k = static_cast<unsigned>(pick(rng, 1, 5));
        DenseMatrix dk = d;
        for (unsigned s = 1; s < k; ++s) dk = dk * d;
        record(power, (interwoven_power(p, k).dense() - dk).max_abs() / std::max(1.0, dk.max_abs()), tol);
        std::vector<DenseMatrix> mk;
        for (const auto& m : ms) {
            DenseMatrix x = m;
            for (unsigned s = 1; s < k; ++s) x = x * m;
            mk.push_back(x);
        }
        record(power, (InterwovenMatrix(mk).dense() - dk).max_abs() / std::max(1.0, dk.max_abs()), tol);

        // positive constructors: P reducible for r >= 2, P diag(Q) irreducible for dense positive Q
        std::vector<DenseMatrix> pos;
        for (std::size_t k2 = 0; k2 < r; ++k2) pos.push_back(random_matrix(rng, n, 0.1, 1.0));
        const InterwovenMatrix pp(pos);
        std::vector<DenseMatrix> qs;
        for (std::size_t i = 0; i < n; ++i) qs.push_back(random_matrix(rng, r, 0.1, 1.0));
        bool ok = is_irreducible(right_multiply_block_diagonal(pp, qs));
        if (r >= 2) ok = ok && !is_irreducible(pp.dense());
        record(irreducible, ok ? 0.0 : 1.0, 0.0);

        for (auto* s : {&roundtrip, &spectrum, &trace, &det, &inv, &power, &irreducible}) ++s->instances;
    }
    return {roundtrip, spectrum, trace, det, inv, power, irreducible};
}

SuiteResult quotient_spectrum_suite(std::uint64_t seed, std::size_t instances) {
    SuiteResult s{"quotient_mode_spectrum"};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::size_t r = pick(rng, 1, 3);
        const DenseMatrix m = random_matrix(rng, r, -2.0, 2.0);
        std::vector<QuotientAdjacency> qs;
        DenseMatrix lam(r, r);
        for (std::size_t k = 0; k < r; ++k) {
            qs.emplace_back(uniform(rng, 0.01, 0.99), uniform(rng, 0.01, 0.99));
            lam(k, k) = qs.back().lambda2();
        }
        const DenseMatrix pbar = quotient_interwoven(qs).dense();
        const DenseMatrix prod = pbar * kronecker(DenseMatrix::identity(2), m);
        auto expect = eig_general(m).values;
        const auto second = eig_general(lam * m).values;
        expect.insert(expect.end(), second.begin(), second.end());
        record(s, multiset_distance(eig_general(prod).values, expect), 1e-7);
        ++s.instances;
    }
    return s;
}

SuiteResult condition_consistency_suite(std::uint64_t seed, std::size_t instances) {
    SuiteResult s{"condition_consistency"};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
        if (t % 2 == 0) {
            const double tp = uniform(rng, -3.0, 3.0), l = uniform(rng, -1.0, 1.0);
            const std::vector<double> lams{l};
            const auto res = instability_condition(DenseMatrix{{tp}}, lams);
            record(s, std::abs(res.product - siso_product(l, tp)), 1e-10);
        } else {
            const DenseMatrix dt = random_matrix(rng, 2, -3.0, 3.0);
            const std::vector<double> lams{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
            const auto res = instability_condition(dt, lams);
            record(s, std::abs(res.product - dido_product(dt, lams[0], lams[1])), 1e-10);
        }
        ++s.instances;
    }
    return s;
}

SuiteResult equitable_lifting_suite(std::uint64_t seed, std::size_t instances) {
    SuiteResult s{"equitable_lifting"};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::size_t n = pick(rng, 8, 20);
        const int n1 = 2 * static_cast<int>(pick(rng, 1, 3));
        const int n2 = static_cast<int>(pick(rng, 1, 4));
        const DegreeProfile prof{n1, n2, n1, n2};
        const PolarityWeights w(uniform(rng, 0.01, 2.0), uniform(rng, 0.01, 2.0));
        ++s.instances;
        std::shared_ptr<const BilayerGraph> g;
        try {
            g = std::make_shared<const BilayerGraph>(build_semi_regular_ring(n, prof));
        } catch (const Error&) {
            continue;
        }
        const auto wa = weighted_adjacency(g, w);
        const auto part = laminar_partition(*g);
        const auto q = reduce_adjacency(wa, part);
        const auto qc = quotient_from_profile(prof, w);
        double err = std::max(std::abs(q.a() - qc.a()), std::abs(q.b() - qc.b()));
        const DenseMatrix l = lifting_matrix(*g);
        err = std::max(err, (wa.matrix() * l - l * q.matrix()).max_abs());
        const auto v = lift_eigenvector(q, l);
        const auto wv = wa.matrix() * std::span<const double>(v);
        for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(wv[i] - q.lambda2() * v[i]));
        record(s, err, 1e-10);
    }
    return s;
}

SuiteResult bipartite_gap_suite(std::uint64_t seed, std::size_t instances) {
    SuiteResult s{"bipartite_gap"};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < instances; ++t) {
        const std::size_t m = 2 * pick(rng, 4, 15);
        const PolarityWeights w(uniform(rng, 0.01, 2.0), uniform(rng, 0.01, 2.0));
        const auto wa = weighted_adjacency(build_bipartite_2d(m), w);
        const auto q = reduce_adjacency(wa, laminar_partition(wa.graph()));
        const auto spec = eig_symmetric(wa.matrix()).real_values();
        const double l2 = q.lambda2();
        double bad = 0.0;
        if (spectral_position(spec, l2).is_min) bad = 1.0;
        if (l2 < 0)
            for (double e : spec)
                if (e > l2 + 1e-9 && e < -l2 - 1e-9) bad = 1.0;
        record(s, bad, 0.0);
        ++s.instances;
    }
    return s;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    auto out = interwoven_suites(seed);
    out.push_back(quotient_spectrum_suite(seed + 1));
    out.push_back(condition_consistency_suite(seed + 2));
    out.push_back(equitable_lifting_suite(seed + 3));
    out.push_back(bipartite_gap_suite(seed + 4));
    return out;
}

}  // namespace laminar
