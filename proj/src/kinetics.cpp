#include "laminar/kinetics.hpp"

#include <algorithm>
#include <cmath>

#include "laminar/error.hpp"
#include "laminar/interwoven.hpp"

namespace laminar {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::optional<Jacobians> Kinetics::analytic_jacobians(std::span<const double>, std::span<const double>) const {
    return std::nullopt;
}

std::optional<std::vector<double>> Kinetics::state_for_input(std::span<const double>) const { return std::nullopt; }

std::vector<double> Kinetics::initial_guess() const { return std::vector<double>(state_dim(), 0.5); }

std::vector<double> Kinetics::evaluate_rhs(std::span<const double> x, std::span<const double> u) const {
    if (x.size() != state_dim() || u.size() != signal_count())
        throw Error(ErrorKind::DimensionMismatch, "rhs argument sizes");
    if (!all_finite(x) || !all_finite(u)) throw Error(ErrorKind::NonFinite, "rhs arguments");
    std::vector<double> dx(state_dim());
    rhs(x, u, dx);
    if (!all_finite(dx)) throw Error(ErrorKind::NonFinite, "rhs value");
    return dx;
}

std::vector<double> Kinetics::evaluate_output(std::span<const double> x) const {
    if (x.size() != state_dim()) throw Error(ErrorKind::DimensionMismatch, "output argument size");
    std::vector<double> y(signal_count());
    output(x, y);
    return y;
}

FunctionKinetics::FunctionKinetics(std::size_t n, std::size_t r, Rhs f, Out h, std::vector<double> guess)
    : n_(n), r_(r), f_(std::move(f)), h_(std::move(h)), guess_(std::move(guess)) {
    if (n == 0 || r == 0) throw Error(ErrorKind::InvalidConfig, "kinetics dimensions must be positive");
    if (!guess_.empty() && guess_.size() != n) throw Error(ErrorKind::DimensionMismatch, "initial guess size");
}

std::vector<double> FunctionKinetics::initial_guess() const {
    return guess_.empty() ? Kinetics::initial_guess() : guess_;
}

void HillParameters::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    for (double v : alpha)
        if (!positive(v)) throw Error(ErrorKind::InvalidConfig, "alpha must be positive");
    for (double v : beta)
        if (!positive(v)) throw Error(ErrorKind::InvalidConfig, "beta must be positive");
    for (double v : k)
        if (!positive(v)) throw Error(ErrorKind::BadExponent, "k exponents must be positive");
    for (double v : h)
        if (!positive(v)) throw Error(ErrorKind::BadExponent, "h exponents must be positive");
}

double hill_up(double x, double alpha, double k) {
    if (x <= 0.0) return 0.0;
    const double p = std::pow(x, k);
    return p / (alpha + p);
}

double hill_up_prime(double x, double alpha, double k) {
    if (x <= 0.0) return k == 1.0 ? 1.0 / alpha : 0.0;
    const double p = std::pow(x, k);
    return alpha * k * std::pow(x, k - 1.0) / ((alpha + p) * (alpha + p));
}

double hill_down(double x, double beta, double h) {
    if (x <= 0.0) return 1.0;
    return 1.0 / (1.0 + beta * std::pow(x, h));
}

double hill_down_prime(double x, double beta, double h) {
    if (x <= 0.0) return h == 1.0 ? -beta : 0.0;
    const double d = 1.0 + beta * std::pow(x, h);
    return -beta * h * std::pow(x, h - 1.0) / (d * d);
}

HillKinetics::HillKinetics(HillParameters p) : p_(p) { p_.validate(); }

void HillKinetics::rhs(std::span<const double> x, std::span<const double> u, std::span<double> dx) const {
    const double f1 = hill_up(u[1], p_.alpha[0], p_.k[0]);
    const double f2 = hill_up(x[0], p_.alpha[1], p_.k[1]);
    const double g1 = hill_down(u[0], p_.beta[0], p_.h[0]);
    const double g2 = hill_down(x[1], p_.beta[1], p_.h[1]);
    const double g3 = hill_down(x[0], p_.beta[2], p_.h[2]);
    dx[0] = g1 * g2 * f1 - x[0];
    dx[1] = f2 - x[1];
    dx[2] = g3 - x[2];
}

void HillKinetics::output(std::span<const double> x, std::span<double> y) const {
    y[0] = x[1];
    y[1] = x[2];
}

std::map<std::string, double> HillKinetics::parameters() const {
    return {{"alpha1", p_.alpha[0]}, {"alpha2", p_.alpha[1]}, {"beta1", p_.beta[0]}, {"beta2", p_.beta[1]},
            {"beta3", p_.beta[2]},   {"k1", p_.k[0]},         {"k2", p_.k[1]},       {"h1", p_.h[0]},
            {"h2", p_.h[1]},         {"h3", p_.h[2]}};
}

std::optional<Jacobians> HillKinetics::analytic_jacobians(std::span<const double> x, std::span<const double> u) const {
    const double f1 = hill_up(u[1], p_.alpha[0], p_.k[0]);
    const double f1p = hill_up_prime(u[1], p_.alpha[0], p_.k[0]);
    const double f2p = hill_up_prime(x[0], p_.alpha[1], p_.k[1]);
    const double g1 = hill_down(u[0], p_.beta[0], p_.h[0]);
    const double g1p = hill_down_prime(u[0], p_.beta[0], p_.h[0]);
    const double g2 = hill_down(x[1], p_.beta[1], p_.h[1]);
    const double g2p = hill_down_prime(x[1], p_.beta[1], p_.h[1]);
    const double g3p = hill_down_prime(x[0], p_.beta[2], p_.h[2]);
    Jacobians j{DenseMatrix{{-1.0, f1 * g1 * g2p, 0.0}, {f2p, -1.0, 0.0}, {g3p, 0.0, -1.0}},
                DenseMatrix{{f1 * g2 * g1p, g1 * g2 * f1p}, {0.0, 0.0}, {0.0, 0.0}},
                DenseMatrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    return j;
}

std::optional<std::vector<double>> HillKinetics::state_for_input(std::span<const double> u) const {
    const double c = hill_down(u[0], p_.beta[0], p_.h[0]) * hill_up(u[1], p_.alpha[0], p_.k[0]);
    auto phi = [&](double x1) {
        return c * hill_down(hill_up(x1, p_.alpha[1], p_.k[1]), p_.beta[1], p_.h[1]) - x1;
    };
    // phi is strictly decreasing with phi(0) >= 0 >= phi(c)
    double lo = 0.0, hi = c;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (phi(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x1 = 0.5 * (lo + hi);
    return std::vector<double>{x1, hill_up(x1, p_.alpha[1], p_.k[1]), hill_down(x1, p_.beta[2], p_.h[2])};
}

Jacobians finite_difference_jacobians(const Kinetics& spec, std::span<const double> x, std::span<const double> u) {
    const std::size_t n = spec.state_dim(), r = spec.signal_count();
    Jacobians j{DenseMatrix(n, n), DenseMatrix(n, r), DenseMatrix(r, n)};
    std::vector<double> xp(x.begin(), x.end()), up(u.begin(), u.end());
    std::vector<double> fp(n), fm(n), yp(r), ym(r);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = 1e-6 * (1.0 + std::abs(x[i]));
        xp[i] = x[i] + step;
        spec.rhs(xp, u, fp);
        spec.output(xp, yp);
        xp[i] = x[i] - step;
        spec.rhs(xp, u, fm);
        spec.output(xp, ym);
        xp[i] = x[i];
        for (std::size_t k = 0; k < n; ++k) j.a(k, i) = (fp[k] - fm[k]) / (2.0 * step);
        for (std::size_t k = 0; k < r; ++k) j.c(k, i) = (yp[k] - ym[k]) / (2.0 * step);
    }
    for (std::size_t i = 0; i < r; ++i) {
        const double step = 1e-6 * (1.0 + std::abs(u[i]));
        up[i] = u[i] + step;
        spec.rhs(x, up, fp);
        up[i] = u[i] - step;
        spec.rhs(x, up, fm);
        up[i] = u[i];
        for (std::size_t k = 0; k < n; ++k) j.b(k, i) = (fp[k] - fm[k]) / (2.0 * step);
    }
    return j;
}

namespace {

Jacobians jacobians(const Kinetics& spec, std::span<const double> x, std::span<const double> u) {
    if (auto j = spec.analytic_jacobians(x, u)) return *j;
    return finite_difference_jacobians(spec, x, u);
}

// Damped Newton with backtracking on g(x) = 0.
template <class G, class J>
std::vector<double> newton(std::vector<double> x, G&& g, J&& jac, double tol, int max_iter, const char* what) {
    std::vector<double> r = g(x);
    for (int it = 0; it < max_iter; ++it) {
        const double norm = max_abs(r);
        if (norm <= tol) return x;
        std::vector<double> step;
        try {
            step = solve_linear(jac(x), r);
        } catch (const Error&) {
            throw Error(ErrorKind::NoConvergence, std::string(what) + ": singular Newton system");
        }
        double t = 1.0;
        std::vector<double> trial(x.size());
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - t * step[i];
            auto rt = g(trial);
            if (all_finite(rt) && max_abs(rt) < norm) {
                x = trial;
                r = std::move(rt);
                break;
            }
            if (ls == 29) {
                x = trial;
                r = std::move(rt);
            }
        }
    }
    if (max_abs(r) <= tol) return x;
    throw Error(ErrorKind::NoConvergence, std::string(what) + ": Newton did not reach tolerance");
}

std::vector<double> single_cell_state(const Kinetics& spec, std::span<const double> u, std::vector<double> guess) {
    if (auto s = spec.state_for_input(u)) return *s;
    std::vector<double> uu(u.begin(), u.end());
    return newton(
        std::move(guess), [&](const std::vector<double>& x) { return spec.evaluate_rhs(x, uu); },
        [&](const std::vector<double>& x) { return jacobians(spec, x, uu).a; }, 1e-13, 100, "single-cell state");
}

}  // namespace

SteadyState solve_hss(const Kinetics& spec) {
    std::vector<double> x = spec.initial_guess();
    std::vector<double> u = spec.evaluate_output(x);
    for (int it = 0; it < 500; ++it) {
        x = single_cell_state(spec, u, x);
        const auto t = spec.evaluate_output(x);
        double change = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            change = std::max(change, std::abs(t[i] - u[i]));
            u[i] = 0.5 * u[i] + 0.5 * t[i];
        }
        if (change < 1e-14) break;
    }
    x = single_cell_state(spec, u, x);

    auto closed = [&](const std::vector<double>& s) { return spec.evaluate_rhs(s, spec.evaluate_output(s)); };
    auto closed_jac = [&](const std::vector<double>& s) {
        const auto j = jacobians(spec, s, spec.evaluate_output(s));
        return j.a + j.b * j.c;
    };
    x = newton(std::move(x), closed, closed_jac, 1e-12, 50, "homogeneous steady state");
    // one polishing step when it helps
    try {
        auto step = solve_linear(closed_jac(x), closed(x));
        std::vector<double> trial(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step[i];
        if (all_finite(closed(trial)) && max_abs(closed(trial)) < max_abs(closed(x))) x = trial;
    } catch (const Error&) {
    }

    SteadyState s;
    s.u0 = spec.evaluate_output(x);
    s.residual = max_abs(spec.evaluate_rhs(x, s.u0));
    s.x0 = std::move(x);
    if (!(s.residual <= 1e-12)) throw Error(ErrorKind::NoConvergence, "steady-state residual above 1e-12");
    return s;
}

Linearization linearize(const Kinetics& spec, std::span<const double> x0, std::span<const double> u0,
                        bool force_finite_differences) {
    if (x0.size() != spec.state_dim() || u0.size() != spec.signal_count())
        throw Error(ErrorKind::DimensionMismatch, "linearization point sizes");
    Jacobians j = force_finite_differences ? finite_difference_jacobians(spec, x0, u0) : jacobians(spec, x0, u0);
    DenseMatrix ainv_b;
    try {
        ainv_b = LuDecomposition(j.a).solve(j.b);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Singular) throw Error(ErrorKind::Singular, "A is singular at the linearization point");
        throw;
    }
    Linearization lin;
    lin.dt = -1.0 * (j.c * ainv_b);
    lin.a = std::move(j.a);
    lin.b = std::move(j.b);
    lin.c = std::move(j.c);
    lin.x0.assign(x0.begin(), x0.end());
    lin.u0.assign(u0.begin(), u0.end());
    return lin;
}

DenseMatrix transfer_derivative_at(const Kinetics& spec, std::span<const double> u) {
    const auto x = single_cell_state(spec, u, spec.initial_guess());
    return linearize(spec, x, u).dt;
}

std::string to_string(SignClass s) {
    switch (s) {
        case SignClass::S1: return "S1";
        case SignClass::S2: return "S2";
        case SignClass::Neither: return "Neither";
    }
    return "Neither";
}

SignClass classify_transfer_signs(const DenseMatrix& dt) {
    if (!dt.is_square()) throw Error(ErrorKind::NonSquare, "DT");
    const std::size_t r = dt.rows();
    DenseMatrix pattern(r, r);
    bool s1 = true, s2 = true, any = false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const double v = dt(i, j);
            if (std::abs(v) < 1e-12) continue;
            any = true;
            pattern(i, j) = 1.0;
            const bool want_negative = (i + j) % 2 == 0;
            if ((v < 0) != want_negative) s1 = false;
            if (v > 0) s2 = false;
        }
    if (!any || !is_irreducible(pattern)) return SignClass::Neither;
    if (s1) return SignClass::S1;
    if (s2) return SignClass::S2;
    return SignClass::Neither;
}

}  // namespace laminar
