#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "laminar/numerics.hpp"

namespace laminar {

struct Jacobians {
    DenseMatrix a;  // df/dx
    DenseMatrix b;  // df/du
    DenseMatrix c;  // dh/dx
};

class Kinetics {
public:
    virtual ~Kinetics() = default;

    virtual std::size_t state_dim() const = 0;
    virtual std::size_t signal_count() const = 0;
    virtual void rhs(std::span<const double> x, std::span<const double> u, std::span<double> dx) const = 0;
    virtual void output(std::span<const double> x, std::span<double> y) const = 0;
    virtual std::map<std::string, double> parameters() const { return {}; }

    // Analytic derivatives when available.
    virtual std::optional<Jacobians> analytic_jacobians(std::span<const double> x, std::span<const double> u) const;
    // Steady state of a single cell under a frozen input, when cheaper than Newton.
    virtual std::optional<std::vector<double>> state_for_input(std::span<const double> u) const;
    virtual std::vector<double> initial_guess() const;

    std::vector<double> evaluate_rhs(std::span<const double> x, std::span<const double> u) const;
    std::vector<double> evaluate_output(std::span<const double> x) const;
};

// User kinetics given as callables.
class FunctionKinetics : public Kinetics {
public:
    using Rhs = std::function<void(std::span<const double>, std::span<const double>, std::span<double>)>;
    using Out = std::function<void(std::span<const double>, std::span<double>)>;

    FunctionKinetics(std::size_t n, std::size_t r, Rhs f, Out h, std::vector<double> guess = {});

    std::size_t state_dim() const override { return n_; }
    std::size_t signal_count() const override { return r_; }
    void rhs(std::span<const double> x, std::span<const double> u, std::span<double> dx) const override { f_(x, u, dx); }
    void output(std::span<const double> x, std::span<double> y) const override { h_(x, y); }
    std::vector<double> initial_guess() const override;

private:
    std::size_t n_, r_;
    Rhs f_;
    Out h_;
    std::vector<double> guess_;
};

struct HillParameters {
    std::array<double, 2> alpha{0.01, 1.0};
    std::array<double, 3> beta{100.0, 100.0, 100.0};
    std::array<double, 2> k{2.0, 2.0};
    std::array<double, 3> h{2.0, 2.0, 1.0};

    void validate() const;
};

double hill_up(double x, double alpha, double k);
double hill_up_prime(double x, double alpha, double k);
double hill_down(double x, double beta, double h);
double hill_down_prime(double x, double beta, double h);

// x1' = g1(u1) g2(x2) f1(u2) - x1, x2' = f2(x1) - x2, x3' = g3(x1) - x3, y = (x2, x3)
class HillKinetics : public Kinetics {
public:
    explicit HillKinetics(HillParameters p = {});

    const HillParameters& hill() const noexcept { return p_; }

    std::size_t state_dim() const override { return 3; }
    std::size_t signal_count() const override { return 2; }
    void rhs(std::span<const double> x, std::span<const double> u, std::span<double> dx) const override;
    void output(std::span<const double> x, std::span<double> y) const override;
    std::map<std::string, double> parameters() const override;
    std::optional<Jacobians> analytic_jacobians(std::span<const double> x, std::span<const double> u) const override;
    std::optional<std::vector<double>> state_for_input(std::span<const double> u) const override;
    std::vector<double> initial_guess() const override { return {0.5, 0.5, 0.5}; }

private:
    HillParameters p_;
};

struct SteadyState {
    std::vector<double> x0;
    std::vector<double> u0;
    double residual = 0.0;
};

SteadyState solve_hss(const Kinetics& spec);

struct Linearization {
    DenseMatrix a, b, c, dt;
    std::vector<double> x0, u0;
};

// Central differences with step 1e-6 (1 + |x|).
Jacobians finite_difference_jacobians(const Kinetics& spec, std::span<const double> x, std::span<const double> u);

Linearization linearize(const Kinetics& spec, std::span<const double> x0, std::span<const double> u0,
                        bool force_finite_differences = false);

// DT at an arbitrary frozen input, through the single-cell steady state.
DenseMatrix transfer_derivative_at(const Kinetics& spec, std::span<const double> u);

enum class SignClass { S1, S2, Neither };
std::string to_string(SignClass s);

SignClass classify_transfer_signs(const DenseMatrix& dt);
inline SignClass classify_transfer_signs(const Linearization& lin) { return classify_transfer_signs(lin.dt); }

}  // namespace laminar
