#include "laminar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "laminar/error.hpp"

namespace laminar {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
        throw Error(ErrorKind::DimensionMismatch, "entry count does not match shape");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double DenseMatrix::frobenius() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

std::vector<double> EigenDecomposition::real_values() const {
    std::vector<double> r(values.size());
    std::transform(values.begin(), values.end(), r.begin(), [](auto z) { return z.real(); });
    return r;
}

EigenDecomposition eig_symmetric(const DenseMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::NonSquare, "eig_symmetric");
    const std::size_t n = m.rows();
    const double scale = std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw Error(ErrorKind::NotSymmetric, "asymmetry above tolerance");

    DenseMatrix a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
    DenseMatrix v = DenseMatrix::identity(n);
    const double threshold = 1e-12 * std::max(m.frobenius(), std::numeric_limits<double>::min());

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < 100 && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (off_norm() > threshold) throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });

    EigenDecomposition out;
    out.is_symmetric_path = true;
    out.values.reserve(n);
    DenseMatrix vs(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.emplace_back(a(order[k], order[k]), 0.0);
        for (std::size_t i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
    }
    out.vectors = std::move(vs);
    return out;
}

namespace {

void reduce_to_hessenberg(DenseMatrix& h) {
    const std::size_t n = h.rows();
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += h(i, k) * h(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = h(k + 1, k) > 0 ? -norm : norm;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= alpha;
        double vn = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vn += v[i] * v[i];
        if (vn == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
            s *= 2.0 / vn;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0 / vn;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

double sign_of(double a, double b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix, 1-based indexing internally.
std::vector<std::complex<double>> hessenberg_qr(DenseMatrix& hm) {
    const int n = static_cast<int>(hm.rows());
    auto a = [&](int i, int j) -> double& { return hm(i - 1, j - 1); };
    std::vector<double> wr(n + 1), wi(n + 1);
    const double eps = std::numeric_limits<double>::epsilon();

    double anorm = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

    const long cap = 30L * std::max(n, 1);
    long total = 0;
    int nn = n, l = 1;
    double t = 0.0;
    double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
    while (nn >= 1) {
        int its = 0;
        do {
            for (l = nn; l >= 2; --l) {
                s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn--] = 0.0;
            } else {
                y = a(nn - 1, nn - 1);
                w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn - 1] = -(wi[nn] = z);
                    }
                    nn -= 2;
                } else {
                    if (++total > cap) throw Error(ErrorKind::NoConvergence, "QR iteration cap reached");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 1; i <= nn; ++i) a(i, i) -= x;
                        s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
                            if (k == m) {
                                if (l != m) a(k, k - 1) = -a(k, k - 1);
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a(k, j) + q * a(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * a(k + 2, j);
                                    a(k + 2, j) -= p * z;
                                }
                                a(k + 1, j) -= p * y;
                                a(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a(i, k) + y * a(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * a(i, k + 2);
                                    a(i, k + 2) -= p * r;
                                }
                                a(i, k + 1) -= p * q;
                                a(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
    return out;
}

}  // namespace

EigenDecomposition eig_general(const DenseMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::NonSquare, "eig_general");
    if (!m.all_finite()) throw Error(ErrorKind::NonFinite, "eig_general input");
    EigenDecomposition out;
    if (m.rows() == 0) return out;
    DenseMatrix h = m;
    reduce_to_hessenberg(h);
    out.values = hessenberg_qr(h);
    std::sort(out.values.begin(), out.values.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

LuDecomposition::LuDecomposition(const DenseMatrix& m) : lu_(m) {
    if (!m.is_square()) throw Error(ErrorKind::NonSquare, "LU");
    const std::size_t n = m.rows();
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);
    const double tol = 1e-13 * std::max(1.0, m.max_abs());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
        if (std::abs(lu_(piv, k)) <= tol) throw Error(ErrorKind::Singular, "pivot below threshold");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw Error(ErrorKind::DimensionMismatch, "LU solve");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

DenseMatrix LuDecomposition::solve(const DenseMatrix& rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n) throw Error(ErrorKind::DimensionMismatch, "LU solve");
    DenseMatrix x(n, rhs.cols());
    std::vector<double> col(n);
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, c);
        const auto s = solve(col);
        for (std::size_t i = 0; i < n; ++i) x(i, c) = s[i];
    }
    return x;
}

double LuDecomposition::determinant() const {
    double d = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

std::vector<double> solve_linear(const DenseMatrix& m, std::span<const double> rhs) {
    return LuDecomposition(m).solve(rhs);
}

DenseMatrix inverse(const DenseMatrix& m) {
    return LuDecomposition(m).solve(DenseMatrix::identity(m.rows()));
}

double determinant(const DenseMatrix& m) {
    try {
        return LuDecomposition(m).determinant();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Singular) return 0.0;
        throw;
    }
}

double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    auto lex = [](auto x, auto y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
    std::sort(a.begin(), a.end(), lex);
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& z : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(z - b[j]);
            if (d < bd) bd = d, best = j;
        }
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

}  // namespace laminar
