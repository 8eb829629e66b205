#include "laminar/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "laminar/error.hpp"
#include "laminar/quotient.hpp"

namespace laminar {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform_signed() { return 2.0 * uniform01() - 1.0; }

std::vector<double> perturb_hss(std::span<const double> x0, std::size_t n_cells, double magnitude,
                                std::uint64_t seed) {
    if (!(magnitude > 0.0 && magnitude <= 0.1)) throw Error(ErrorKind::InvalidConfig, "perturbation magnitude must lie in (0, 0.1]");
    for (double v : x0)
        if (!(v > 0.0)) throw Error(ErrorKind::InvalidConfig, "steady state must be componentwise positive");
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(n_cells * x0.size());
    for (std::size_t c = 0; c < n_cells; ++c)
        for (double v : x0) out.push_back(v * (1.0 + magnitude * rng.uniform_signed()));
    return out;
}

namespace {

struct SparseRow {
    std::vector<std::size_t> col;
    std::vector<double> val;
};

class CoupledSystem {
public:
    CoupledSystem(const Kinetics& spec, const InterwovenMatrix& p)
        : spec_(spec), n_(spec.state_dim()), r_(spec.signal_count()), cells_(p.cell_count()) {
        if (p.signal_count() != r_) throw Error(ErrorKind::DimensionMismatch, "P signal count differs from kinetics");
        rows_.resize(r_);
        for (std::size_t k = 0; k < r_; ++k) {
            rows_[k].resize(cells_);
            for (std::size_t i = 0; i < cells_; ++i)
                for (std::size_t j = 0; j < cells_; ++j)
                    if (const double v = p.constructor(k)(i, j); v != 0.0) {
                        rows_[k][i].col.push_back(j);
                        rows_[k][i].val.push_back(v);
                    }
        }
        y_.resize(cells_ * r_);
        u_.resize(r_);
    }

    std::size_t dimension() const { return cells_ * n_; }

    void operator()(std::span<const double> x, std::span<double> dx) {
        for (std::size_t c = 0; c < cells_; ++c)
            spec_.output(x.subspan(c * n_, n_), std::span<double>(y_).subspan(c * r_, r_));
        for (std::size_t c = 0; c < cells_; ++c) {
            for (std::size_t k = 0; k < r_; ++k) {
                const auto& row = rows_[k][c];
                double s = 0.0;
                for (std::size_t e = 0; e < row.col.size(); ++e) s += row.val[e] * y_[row.col[e] * r_ + k];
                u_[k] = s;
            }
            spec_.rhs(x.subspan(c * n_, n_), u_, dx.subspan(c * n_, n_));
        }
    }

private:
    const Kinetics& spec_;
    std::size_t n_, r_, cells_;
    std::vector<std::vector<SparseRow>> rows_;
    std::vector<double> y_, u_;
};

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool converged_window(const std::vector<std::vector<double>>& states, int window, double tol) {
    if (static_cast<int>(states.size()) < window) return false;
    const std::size_t first = states.size() - static_cast<std::size_t>(window);
    const std::size_t dim = states.back().size();
    for (std::size_t i = 0; i < dim; ++i) {
        double lo = states[first][i], hi = lo;
        for (std::size_t s = first + 1; s < states.size(); ++s) {
            lo = std::min(lo, states[s][i]);
            hi = std::max(hi, states[s][i]);
        }
        if (hi - lo >= tol) return false;
    }
    return true;
}

}  // namespace

Trajectory integrate(const Kinetics& spec, const InterwovenMatrix& p, std::vector<double> x_init,
                     const IntegrateOptions& opts, std::uint64_t seed) {
    CoupledSystem f(spec, p);
    const std::size_t dim = f.dimension();
    if (x_init.size() != dim) throw Error(ErrorKind::DimensionMismatch, "initial state length must be N*n");
    if (!(opts.t_max > 0.0) || !(opts.checkpoint > 0.0) || !(opts.rtol > 0.0) || !(opts.atol > 0.0))
        throw Error(ErrorKind::InvalidConfig, "integration options must be positive");
    for (double v : x_init)
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "initial state");

    Trajectory traj;
    traj.seed = seed;
    std::vector<double> y = std::move(x_init);
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), tmp(dim), y5(dim);
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(y);
    std::size_t next_index = 1;
    auto checkpoint_time = [&](std::size_t i) { return std::min(opts.t_max, static_cast<double>(i) * opts.checkpoint); };
    double next_cp = checkpoint_time(next_index);

    f(y, k1);
    double h = std::min(opts.h0, opts.h_max);
    while (t < opts.t_max) {
        bool to_checkpoint = false;
        double step = std::min(h, opts.h_max);
        if (t + step >= next_cp - 1e-12 * std::max(1.0, next_cp)) {
            step = next_cp - t;
            to_checkpoint = true;
        }
        if (step < opts.h_min) throw Error(ErrorKind::StepSizeUnderflow, "step size below minimum at t=" + std::to_string(t));

        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step * a21 * k1[i];
        f(tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
        f(tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(tmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(tmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            y5[i] = y[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(y5, k7);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
            finite = finite && std::isfinite(y5[i]) && std::isfinite(e);
        }
        err = std::sqrt(err / static_cast<double>(dim));
        if (!finite) {
            if (step <= opts.h_min) throw Error(ErrorKind::NonFinite, "state became non-finite");
            h = 0.2 * step;
            ++traj.steps_rejected;
            continue;
        }

        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            ++traj.steps_accepted;
            t = to_checkpoint ? next_cp : t + step;
            y.swap(y5);
            k1.swap(k7);
            h = to_checkpoint ? std::max(h, step * factor) : step * factor;
            if (to_checkpoint) {
                traj.times.push_back(t);
                traj.states.push_back(y);
                if (converged_window(traj.states, opts.convergence_window, opts.convergence_tol)) {
                    if (!traj.converged) {
                        traj.converged = true;
                        traj.converged_at = t;
                    }
                    if (opts.stop_on_convergence) break;
                }
                next_cp = checkpoint_time(++next_index);
            }
        } else {
            ++traj.steps_rejected;
            h = step * std::min(1.0, factor);
        }
    }
    return traj;
}

std::string to_string(PatternKind k) {
    switch (k) {
        case PatternKind::Homogeneous: return "Homogeneous";
        case PatternKind::Laminar: return "Laminar";
        case PatternKind::Other: return "Other";
    }
    return "Other";
}

PatternKind pattern_kind_from_string(const std::string& s) {
    if (s == "Homogeneous") return PatternKind::Homogeneous;
    if (s == "Laminar") return PatternKind::Laminar;
    if (s == "Other") return PatternKind::Other;
    throw Error(ErrorKind::ParseError, "unknown pattern class '" + s + "'");
}

PatternClass classify_pattern(std::span<const double> final_state, std::pair<std::size_t, std::size_t> layer_split,
                              std::span<const double> x0, std::size_t component) {
    const std::size_t n = x0.size();
    const std::size_t cells = layer_split.first + layer_split.second;
    if (n == 0 || final_state.size() != cells * n || component >= n || layer_split.first == 0 || layer_split.second == 0)
        throw Error(ErrorKind::DimensionMismatch, "classify_pattern sizes");
    const double ref = x0[component];
    auto value = [&](std::size_t c) { return final_state[c * n + component]; };

    PatternClass out;
    double mean[2] = {0, 0}, var[2] = {0, 0};
    const std::size_t count[2] = {layer_split.first, layer_split.second};
    bool homogeneous = true;
    for (std::size_t c = 0; c < cells; ++c) {
        mean[c < count[0] ? 0 : 1] += value(c);
        homogeneous = homogeneous && std::abs(value(c) - ref) <= 1e-3 * (1.0 + std::abs(ref));
    }
    mean[0] /= static_cast<double>(count[0]);
    mean[1] /= static_cast<double>(count[1]);
    for (std::size_t c = 0; c < cells; ++c) {
        const int l = c < count[0] ? 0 : 1;
        var[l] += (value(c) - mean[l]) * (value(c) - mean[l]);
    }
    const double sd0 = std::sqrt(var[0] / static_cast<double>(count[0]));
    const double sd1 = std::sqrt(var[1] / static_cast<double>(count[1]));
    const double pooled = std::sqrt((var[0] + var[1]) / static_cast<double>(cells));
    const double dev0 = mean[0] - ref, dev1 = mean[1] - ref;
    const double gap = std::abs(mean[0] - mean[1]);

    out.layer_means = {mean[0], mean[1]};
    out.separation = gap / (pooled + 1e-12);
    if (homogeneous) {
        out.kind = PatternKind::Homogeneous;
    } else if (dev0 * dev1 < 0.0 && sd0 < 0.1 * std::abs(dev0) && sd1 < 0.1 * std::abs(dev1) && gap >= 10.0 * pooled) {
        out.kind = PatternKind::Laminar;
    } else {
        out.kind = PatternKind::Other;
    }
    return out;
}

std::vector<double> layer_mean_state(std::span<const double> state, std::pair<std::size_t, std::size_t> layer_split,
                                     std::size_t n) {
    const std::size_t cells = layer_split.first + layer_split.second;
    if (state.size() != cells * n) throw Error(ErrorKind::DimensionMismatch, "layer_mean_state sizes");
    std::vector<double> out(2 * n, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t l = c < layer_split.first ? 0 : 1;
        for (std::size_t k = 0; k < n; ++k) out[l * n + k] += state[c * n + k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        out[k] /= static_cast<double>(layer_split.first);
        out[n + k] /= static_cast<double>(layer_split.second);
    }
    return out;
}

InterwovenMatrix large_scale_interwoven(const std::vector<SignalGraph>& signals) {
    std::vector<DenseMatrix> c;
    for (const auto& s : signals) c.push_back(weighted_adjacency(s.graph, s.weights).matrix());
    return InterwovenMatrix(std::move(c));
}

InterwovenMatrix reduced_interwoven(const std::vector<SignalGraph>& signals) {
    std::vector<QuotientAdjacency> q;
    for (const auto& s : signals)
        q.push_back(reduce_adjacency(weighted_adjacency(s.graph, s.weights), laminar_partition(*s.graph)));
    return quotient_interwoven(q);
}

namespace {

std::pair<std::size_t, std::size_t> split_of(const std::vector<SignalGraph>& signals) {
    if (signals.empty()) throw Error(ErrorKind::EmptyConstructorList, "no signal graphs");
    const auto& g = *signals.front().graph;
    return {g.layer1_size(), g.layer2_size()};
}

}  // namespace

SimulationResult simulate_large_scale(const Kinetics& spec, const SimulationRequest& req) {
    return simulate_large_scale(spec, req, solve_hss(spec));
}

SimulationResult simulate_large_scale(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss) {
    SimulationResult res;
    res.hss = hss;
    res.layer_split = split_of(req.signals);
    const auto p = large_scale_interwoven(req.signals);
    auto x = perturb_hss(hss.x0, p.cell_count(), req.magnitude, req.seed);
    res.large = integrate(spec, p, std::move(x), req.options, req.seed);
    res.pattern = classify_pattern(res.large.final_state(), res.layer_split, hss.x0, req.component);
    return res;
}

QuotientSimulationResult simulate_quotient(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss) {
    const auto split = split_of(req.signals);
    const auto full = perturb_hss(hss.x0, split.first + split.second, req.magnitude, req.seed);
    QuotientSimulationResult res;
    res.quotient = integrate(spec, reduced_interwoven(req.signals), layer_mean_state(full, split, hss.x0.size()),
                             req.options, req.seed);
    res.pattern = classify_pattern(res.quotient.final_state(), {1, 1}, hss.x0, req.component);
    return res;
}

PairedSimulation simulate_paired(const Kinetics& spec, const SimulationRequest& req, const SteadyState& hss) {
    PairedSimulation out;
    out.large = simulate_large_scale(spec, req, hss);
    SimulationRequest qreq = req;
    qreq.options.t_max = out.large.large.times.back();
    qreq.options.stop_on_convergence = false;
    out.quotient = simulate_quotient(spec, qreq, hss);
    const auto means = layer_mean_state(out.large.large.final_state(), out.large.layer_split, hss.x0.size());
    const auto& q = out.quotient.quotient.final_state();
    for (std::size_t i = 0; i < means.size(); ++i)
        out.max_layer_difference = std::max(out.max_layer_difference, std::abs(means[i] - q[i]));
    return out;
}

}  // namespace laminar
