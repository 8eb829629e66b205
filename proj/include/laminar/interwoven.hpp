#pragma once

#include <cstddef>
#include <vector>

#include "laminar/numerics.hpp"

namespace laminar {

// P = sum_k M_k (x) D_k. Dense index of (cell i, signal k) is i * r + k.
class InterwovenMatrix {
public:
    explicit InterwovenMatrix(std::vector<DenseMatrix> constructors);

    std::size_t signal_count() const noexcept { return c_.size(); }
    std::size_t cell_count() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return n_ * c_.size(); }
    const std::vector<DenseMatrix>& constructors() const noexcept { return c_; }
    const DenseMatrix& constructor(std::size_t k) const { return c_.at(k); }

    DenseMatrix dense() const;

    // u = P y without forming the dense matrix.
    std::vector<double> apply(const std::vector<double>& y) const;

private:
    std::vector<DenseMatrix> c_;
    std::size_t n_ = 0;
};

InterwovenMatrix interweave(std::vector<DenseMatrix> constructors);

struct BlockDiagonalForm {
    std::vector<std::size_t> tau;      // 0-based: dense index -> block-ordered index
    std::vector<DenseMatrix> blocks;
};

std::size_t tau_index(std::size_t x, std::size_t r, std::size_t n);
DenseMatrix permutation_matrix(const std::vector<std::size_t>& tau);

BlockDiagonalForm block_diagonalize(const InterwovenMatrix& p);
EigenDecomposition interwoven_spectrum(const InterwovenMatrix& p);
InterwovenMatrix interwoven_inverse(const InterwovenMatrix& p);
InterwovenMatrix interwoven_power(const InterwovenMatrix& p, unsigned k);
double interwoven_trace(const InterwovenMatrix& p);
double interwoven_determinant(const InterwovenMatrix& p);

// P * diag(Q_1, ..., Q_N) with r x r blocks Q_i.
DenseMatrix right_multiply_block_diagonal(const InterwovenMatrix& p, const std::vector<DenseMatrix>& q);

bool is_irreducible(const DenseMatrix& m);

}  // namespace laminar
