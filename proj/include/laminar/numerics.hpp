#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace laminar {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& entries() const noexcept { return a_; }
    std::vector<double>& entries() noexcept { return a_; }

    DenseMatrix transpose() const;
    double max_abs() const;
    double frobenius() const;
    double trace() const;
    bool all_finite() const;

    DenseMatrix& operator+=(const DenseMatrix& o);
    DenseMatrix& operator-=(const DenseMatrix& o);
    DenseMatrix& operator*=(double s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(DenseMatrix a, double s);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

struct EigenDecomposition {
    std::vector<std::complex<double>> values;
    std::optional<DenseMatrix> vectors;
    bool is_symmetric_path = false;

    std::vector<double> real_values() const;
};

// Cyclic Jacobi. Values ascending, vectors column-wise.
EigenDecomposition eig_symmetric(const DenseMatrix& m);

// Householder Hessenberg reduction followed by double-shift QR. Values only.
EigenDecomposition eig_general(const DenseMatrix& m);

class LuDecomposition {
public:
    explicit LuDecomposition(const DenseMatrix& m);

    std::vector<double> solve(std::span<const double> rhs) const;
    DenseMatrix solve(const DenseMatrix& rhs) const;
    double determinant() const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

std::vector<double> solve_linear(const DenseMatrix& m, std::span<const double> rhs);
DenseMatrix inverse(const DenseMatrix& m);
// Returns 0 for singular input instead of throwing.
double determinant(const DenseMatrix& m);

// Greedy nearest matching of two complex multisets; returns the worst pair distance,
// or +inf when sizes differ.
double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

}  // namespace laminar
