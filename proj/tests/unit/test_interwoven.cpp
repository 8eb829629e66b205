#include <doctest.h>

#include <random>

#include "laminar/error.hpp"
#include "laminar/interwoven.hpp"
#include "oracle.hpp"

using namespace laminar;

namespace {

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo, double hi, double shift = 0.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng) + (i == j ? shift : 0.0);
    return m;
}

// Oracle: sum_k W_k (x) D_k with Eigen's Kronecker-free construction.
Eigen::MatrixXd dense_oracle(const std::vector<DenseMatrix>& ws) {
    const std::size_t r = ws.size(), n = ws[0].rows();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(r * n, r * n);
    for (std::size_t k = 0; k < r; ++k) {
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(r, r);
        d(k, k) = 1.0;
        const Eigen::MatrixXd w = oracle::to_eigen(ws[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p.block(i * r, j * r, r, r) += w(i, j) * d;
    }
    return p;
}

const DenseMatrix A22{{1.1, 1.2}, {2.1, 2.2}};
const DenseMatrix B22{{-3.1, 3.2}, {4.1, -4.2}};

}  // namespace

TEST_CASE("single constructor is the identity operation") {
    const DenseMatrix w{{0.2, 0.8}, {0.5, 0.5}};
    CHECK((interweave({w}).dense() - w).max_abs() == 0.0);
    const auto f = block_diagonalize(interweave({w}));
    CHECK(f.tau == std::vector<std::size_t>{0, 1});
    CHECK((f.blocks[0] - w).max_abs() == 0.0);
}

TEST_CASE("two-cell two-signal layout") {
    const DenseMatrix p = interweave({A22, B22}).dense();
    const DenseMatrix expect{{1.1, 0, 1.2, 0}, {0, -3.1, 0, 3.2}, {2.1, 0, 2.2, 0}, {0, 4.1, 0, -4.2}};
    CHECK((p - expect).max_abs() == 0.0);
    const auto f = block_diagonalize(interweave({A22, B22}));
    CHECK((f.blocks[0] - A22).max_abs() == 0.0);
    CHECK((f.blocks[1] - B22).max_abs() == 0.0);
    const auto id = interweave({DenseMatrix::identity(3), DenseMatrix::identity(3)}).dense();
    CHECK((id - DenseMatrix::identity(6)).max_abs() == 0.0);
}

TEST_CASE("dense form matches the Kronecker sum oracle") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const std::size_t r = 1 + t % 3, n = 1 + t % 5;
        std::vector<DenseMatrix> ws;
        for (std::size_t k = 0; k < r; ++k) ws.push_back(random_matrix(rng, n, -1, 1));
        const InterwovenMatrix p(ws);
        CHECK(oracle::max_diff(p.dense(), dense_oracle(ws)) == 0.0);
        std::vector<double> y(r * n);
        for (auto& v : y) v = std::uniform_real_distribution<double>(-1, 1)(rng);
        const auto u = p.apply(y);
        const Eigen::VectorXd ref = dense_oracle(ws) * Eigen::Map<Eigen::VectorXd>(y.data(), y.size());
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(u[i] - ref(i)) < 1e-14);
    }
}

TEST_CASE("block diagonalization round trip is an exact permutation") {
    std::mt19937_64 rng(4);
    std::vector<DenseMatrix> ws;
    for (int k = 0; k < 3; ++k) ws.push_back(random_matrix(rng, 4, -1, 1));
    const InterwovenMatrix p(ws);
    const auto f = block_diagonalize(p);
    const DenseMatrix q = permutation_matrix(f.tau);
    const DenseMatrix bd = q.transpose() * p.dense() * q;
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) {
            const double expect = (i / 4 == j / 4) ? ws[i / 4](i % 4, j % 4) : 0.0;
            CHECK(bd(i, j) == expect);
        }
    for (std::size_t x = 0; x < 12; ++x) CHECK(f.tau[x] == (x % 3) * 4 + x / 3);
}

TEST_CASE("spectrum is the union of constructor spectra") {
    const DenseMatrix w1{{0, 1}, {1, 0}}, w2{{0.5, 0.5}, {0.5, 0.5}};
    const auto s = interwoven_spectrum(interweave({w1, w2})).values;
    CHECK(multiset_distance(s, {{-1, 0}, {0, 0}, {1, 0}, {1, 0}}) < 1e-12);
    CHECK(multiset_distance(s, oracle::eigenvalues(interweave({w1, w2}).dense())) < 1e-12);

    const auto rep = interwoven_spectrum(interweave({w2, w2, w2})).values;
    CHECK(multiset_distance(rep, {{0, 0}, {0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 0}}) < 1e-12);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 15; ++t) {
        std::vector<DenseMatrix> ws;
        for (int k = 0; k < 3; ++k) ws.push_back(random_matrix(rng, 5, -1, 1));
        const InterwovenMatrix p(ws);
        CHECK(multiset_distance(interwoven_spectrum(p).values, oracle::eigenvalues(p.dense())) < 1e-9);
        CHECK(interwoven_trace(p) == doctest::Approx(p.dense().trace()).epsilon(1e-12));
        CHECK(interwoven_determinant(p) == doctest::Approx(oracle::to_eigen(p.dense()).determinant()).epsilon(1e-9));
    }
}

TEST_CASE("row-stochastic constructors give eigenvalue 1 at least r times") {
    std::mt19937_64 rng(9);
    std::vector<DenseMatrix> ws;
    for (int k = 0; k < 3; ++k) {
        DenseMatrix m = random_matrix(rng, 4, 0.1, 1);
        for (std::size_t i = 0; i < 4; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < 4; ++j) s += m(i, j);
            for (std::size_t j = 0; j < 4; ++j) m(i, j) /= s;
        }
        ws.push_back(m);
    }
    int ones = 0;
    for (auto z : interwoven_spectrum(interweave(ws)).values)
        if (std::abs(z - std::complex<double>(1, 0)) < 1e-10) ++ones;
    CHECK(ones >= 3);
}

TEST_CASE("inverse") {
    const auto id = interwoven_inverse(interweave({DenseMatrix::identity(3), DenseMatrix::identity(3)}));
    CHECK((id.dense() - DenseMatrix::identity(6)).max_abs() == 0.0);
    const auto d = interwoven_inverse(interweave({DenseMatrix{{2, 0}, {0, 4}}, DenseMatrix{{5, 0}, {0, 10}}}));
    CHECK((d.constructor(0) - DenseMatrix{{0.5, 0}, {0, 0.25}}).max_abs() < 1e-15);
    CHECK((d.constructor(1) - DenseMatrix{{0.2, 0}, {0, 0.1}}).max_abs() < 1e-15);

    std::mt19937_64 rng(10);
    for (int t = 0; t < 10; ++t) {
        std::vector<DenseMatrix> ws;
        for (int k = 0; k < 2; ++k) ws.push_back(random_matrix(rng, 4, -1, 1, 3.0));
        const InterwovenMatrix p(ws);
        const DenseMatrix prod = interwoven_inverse(p).dense() * p.dense();
        CHECK((prod - DenseMatrix::identity(8)).max_abs() < 1e-9);
        CHECK(oracle::max_diff(interwoven_inverse(p).dense(), oracle::to_eigen(p.dense()).inverse()) < 1e-9);
    }
    try {
        interwoven_inverse(interweave({DenseMatrix::identity(2), DenseMatrix{{1, 1}, {1, 1}}}));
        FAIL("expected Singular");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Singular);
    }
}

TEST_CASE("power") {
    const InterwovenMatrix p({A22, B22});
    CHECK((interwoven_power(p, 1).dense() - p.dense()).max_abs() == 0.0);
    const Eigen::MatrixXd sq = oracle::to_eigen(p.dense()) * oracle::to_eigen(p.dense());
    CHECK(oracle::max_diff(interwoven_power(p, 2).dense(), sq) < 1e-12);
    const Eigen::MatrixXd p5 = sq * sq * oracle::to_eigen(p.dense());
    CHECK(oracle::max_diff(interwoven_power(p, 5).dense(), p5) < 1e-9);

    // 3-cycle permutation closes after three steps
    const DenseMatrix cyc{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    const auto c3 = interwoven_power(interweave({cyc, cyc}), 3);
    CHECK((c3.dense() - DenseMatrix::identity(6)).max_abs() == 0.0);
    CHECK_THROWS_AS(interwoven_power(p, 0), Error);
}

TEST_CASE("irreducibility") {
    const DenseMatrix w{{0.2, 0.8}, {0.6, 0.4}};
    CHECK(is_irreducible(w));
    CHECK_FALSE(is_irreducible(interweave({w, w}).dense()));
    CHECK_FALSE(is_irreducible(DenseMatrix{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}));
    const DenseMatrix q{{0.3, 0.7}, {0.9, 0.1}};
    CHECK(is_irreducible(right_multiply_block_diagonal(interweave({w, w}), {q, q})));
    CHECK_THROWS_AS(is_irreducible(DenseMatrix{{0, -1}, {1, 0}}), Error);

    // right multiplication oracle
    const InterwovenMatrix p({A22, B22});
    const DenseMatrix q2{{1, 2}, {3, 4}};
    Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(4, 4);
    bd.block(0, 0, 2, 2) = oracle::to_eigen(q);
    bd.block(2, 2, 2, 2) = oracle::to_eigen(q2);
    CHECK(oracle::max_diff(right_multiply_block_diagonal(p, {q, q2}), oracle::to_eigen(p.dense()) * bd) < 1e-14);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(InterwovenMatrix({}), Error);
    CHECK_THROWS_AS(InterwovenMatrix({DenseMatrix(2, 3)}), Error);
    CHECK_THROWS_AS(InterwovenMatrix({DenseMatrix(2, 2), DenseMatrix(3, 3)}), Error);
}
