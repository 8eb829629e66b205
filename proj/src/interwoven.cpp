#include "laminar/interwoven.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "laminar/error.hpp"

namespace laminar {

InterwovenMatrix::InterwovenMatrix(std::vector<DenseMatrix> constructors) : c_(std::move(constructors)) {
    if (c_.empty()) throw Error(ErrorKind::EmptyConstructorList, "interweave needs at least one constructor");
    n_ = c_.front().rows();
    for (const auto& m : c_) {
        if (!m.is_square()) throw Error(ErrorKind::NonSquare, "constructor");
        if (m.rows() != n_) throw Error(ErrorKind::DimensionMismatch, "constructors differ in dimension");
    }
}

DenseMatrix InterwovenMatrix::dense() const {
    const std::size_t r = c_.size();
    DenseMatrix d(n_ * r, n_ * r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) d(i * r + k, j * r + k) = c_[k](i, j);
    return d;
}

std::vector<double> InterwovenMatrix::apply(const std::vector<double>& y) const {
    const std::size_t r = c_.size();
    if (y.size() != n_ * r) throw Error(ErrorKind::DimensionMismatch, "interwoven apply");
    std::vector<double> u(y.size(), 0.0);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += c_[k](i, j) * y[j * r + k];
            u[i * r + k] = s;
        }
    return u;
}

InterwovenMatrix interweave(std::vector<DenseMatrix> constructors) {
    return InterwovenMatrix(std::move(constructors));
}

std::size_t tau_index(std::size_t x, std::size_t r, std::size_t n) { return (x % r) * n + x / r; }

DenseMatrix permutation_matrix(const std::vector<std::size_t>& tau) {
    DenseMatrix q(tau.size(), tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) q(i, tau[i]) = 1.0;
    return q;
}

BlockDiagonalForm block_diagonalize(const InterwovenMatrix& p) {
    const std::size_t r = p.signal_count(), n = p.cell_count();
    BlockDiagonalForm out;
    out.tau.resize(r * n);
    for (std::size_t x = 0; x < r * n; ++x) out.tau[x] = tau_index(x, r, n);
    const DenseMatrix d = p.dense();
    // (Q^T P Q)(tau(i), tau(j)) = P(i, j)
    DenseMatrix permuted(r * n, r * n);
    for (std::size_t i = 0; i < r * n; ++i)
        for (std::size_t j = 0; j < r * n; ++j) permuted(out.tau[i], out.tau[j]) = d(i, j);
    for (std::size_t k = 0; k < r; ++k) {
        DenseMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = permuted(k * n + i, k * n + j);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

namespace {

bool is_symmetric(const DenseMatrix& m) {
    const double tol = 1e-12 * std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

}  // namespace

EigenDecomposition interwoven_spectrum(const InterwovenMatrix& p) {
    EigenDecomposition out;
    out.is_symmetric_path = true;
    for (const auto& m : p.constructors()) {
        const bool sym = is_symmetric(m);
        const auto e = sym ? eig_symmetric(m) : eig_general(m);
        out.is_symmetric_path = out.is_symmetric_path && sym;
        out.values.insert(out.values.end(), e.values.begin(), e.values.end());
    }
    std::sort(out.values.begin(), out.values.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

InterwovenMatrix interwoven_inverse(const InterwovenMatrix& p) {
    std::vector<DenseMatrix> inv;
    for (std::size_t k = 0; k < p.signal_count(); ++k) {
        try {
            inv.push_back(inverse(p.constructor(k)));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Singular)
                throw Error(ErrorKind::Singular, "constructor " + std::to_string(k + 1) + " is singular");
            throw;
        }
    }
    return InterwovenMatrix(std::move(inv));
}

InterwovenMatrix interwoven_power(const InterwovenMatrix& p, unsigned k) {
    if (k < 1) throw Error(ErrorKind::InvalidConfig, "power must be at least 1");
    std::vector<DenseMatrix> out;
    for (const auto& m : p.constructors()) {
        DenseMatrix acc = m, base = m;
        unsigned e = k - 1;
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            e >>= 1u;
            if (e > 0) base = base * base;
        }
        out.push_back(std::move(acc));
    }
    return InterwovenMatrix(std::move(out));
}

double interwoven_trace(const InterwovenMatrix& p) {
    double t = 0.0;
    for (const auto& m : p.constructors()) t += m.trace();
    return t;
}

double interwoven_determinant(const InterwovenMatrix& p) {
    double d = 1.0;
    for (const auto& m : p.constructors()) d *= determinant(m);
    return d;
}

DenseMatrix right_multiply_block_diagonal(const InterwovenMatrix& p, const std::vector<DenseMatrix>& q) {
    const std::size_t r = p.signal_count(), n = p.cell_count();
    if (q.size() != n) throw Error(ErrorKind::DimensionMismatch, "one block per cell expected");
    DenseMatrix out(r * n, r * n);
    for (std::size_t j = 0; j < n; ++j) {
        if (q[j].rows() != r || q[j].cols() != r) throw Error(ErrorKind::DimensionMismatch, "block must be r x r");
        // column block j of P diag(Q) = P(:, block j) Q_j, and P(i*r+k, j*r+k) = M_k(i, j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < r; ++k) {
                const double pk = p.constructor(k)(i, j);
                if (pk == 0.0) continue;
                for (std::size_t c = 0; c < r; ++c) out(i * r + k, j * r + c) += pk * q[j](k, c);
            }
    }
    return out;
}

bool is_irreducible(const DenseMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::NonSquare, "is_irreducible");
    for (double v : m.entries())
        if (v < 0.0) throw Error(ErrorKind::NegativeEntry, "is_irreducible expects a nonnegative matrix");
    const std::size_t n = m.rows();
    if (n == 0) return false;
    auto reaches_all = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v = 0; v < n; ++v) {
                const double e = forward ? m(u, v) : m(v, u);
                if (e != 0.0 && !seen[v]) {
                    seen[v] = true;
                    ++count;
                    queue.push_back(v);
                }
            }
        }
        return count == n;
    };
    return reaches_all(true) && reaches_all(false);
}

}  // namespace laminar
