#include "laminar/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "laminar/error.hpp"

namespace laminar {

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw Error(ErrorKind::InvalidConfig, "log axis needs 0 < lo <= hi");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
    }
    if (count > 1) v.back() = hi;
    v.front() = lo;
    return v;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t count) {
    if (!(hi >= lo) || count == 0) throw Error(ErrorKind::InvalidConfig, "linear axis needs lo <= hi");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

namespace {

struct AxisTarget {
    std::size_t signal;
    bool intra;
};

AxisTarget parse_axis(const std::string& name, std::size_t r) {
    if (name.size() == 7 && (name.rfind("w1_sig", 0) == 0 || name.rfind("w2_sig", 0) == 0)) {
        const int k = name[6] - '0';
        if (k >= 1 && static_cast<std::size_t>(k) <= r) return {static_cast<std::size_t>(k - 1), name[1] == '1'};
    }
    throw Error(ErrorKind::InvalidConfig, "unknown sweep axis '" + name + "'");
}

void apply(std::vector<PolarityWeights>& w, AxisTarget t, double value) {
    if (t.intra)
        w[t.signal] = PolarityWeights(value, w[t.signal].w2);
    else
        w[t.signal] = PolarityWeights(w[t.signal].w1, value);
}

}  // namespace

SweepGrid sweep_regions(const Kinetics& spec, const SweepConfig& config) {
    const std::size_t r = config.signals.size();
    if (r != spec.signal_count()) throw Error(ErrorKind::DimensionMismatch, "one graph per signal expected");
    const std::size_t n1 = config.axis1.values.size(), n2 = config.axis2.values.size();
    if (n1 == 0 || n2 == 0) throw Error(ErrorKind::InvalidConfig, "sweep axes must be non-empty");
    if (n1 * n2 > 10000) throw Error(ErrorKind::InvalidConfig, "sweep grid exceeds 10^4 points");
    for (const auto* ax : {&config.axis1, &config.axis2})
        for (double v : ax->values)
            if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidConfig, "sweep axis values must be positive");
    const auto t1 = parse_axis(config.axis1.name, r);
    const auto t2 = parse_axis(config.axis2.name, r);
    if (t1.signal == t2.signal && t1.intra == t2.intra) throw Error(ErrorKind::InvalidConfig, "sweep axes must differ");

    const auto hss = solve_hss(spec);
    const auto lin = linearize(spec, hss.x0, hss.u0);

    SweepGrid grid;
    grid.axis1 = config.axis1;
    grid.axis2 = config.axis2;
    std::vector<PolarityWeights> base;
    for (const auto& s : config.signals) base.push_back(s.weights);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            SweepCell c;
            c.i = i;
            c.j = j;
            c.weights = base;
            apply(c.weights, t1, config.axis1.values[i]);
            apply(c.weights, t2, config.axis2.values[j]);
            grid.cells.push_back(std::move(c));
        }

    // large-scale spectra depend only on (signal, w1, w2)
    using Key = std::tuple<std::size_t, double, double>;
    std::map<Key, std::vector<double>> spectra;
    for (const auto& c : grid.cells)
        for (std::size_t k = 0; k < r; ++k) spectra.emplace(Key{k, c.weights[k].w1, c.weights[k].w2}, std::vector<double>{});
    std::vector<std::map<Key, std::vector<double>>::iterator> jobs;
    for (auto it = spectra.begin(); it != spectra.end(); ++it) jobs.push_back(it);

    const unsigned threads = std::max(1u, config.threads);
    auto run_parallel = [&](std::size_t count, auto&& body) {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t idx = next++; idx < count; idx = next++) body(idx);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < std::min<std::size_t>(threads, count); ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    };

    run_parallel(jobs.size(), [&](std::size_t idx) {
        const auto& [k, w1, w2] = jobs[idx]->first;
        try {
            jobs[idx]->second =
                eig_symmetric(weighted_adjacency(config.signals[k].graph, PolarityWeights(w1, w2)).matrix()).real_values();
        } catch (const Error&) {
            jobs[idx]->second.clear();
        }
    });

    run_parallel(grid.cells.size(), [&](std::size_t idx) {
        auto& c = grid.cells[idx];
        try {
            std::vector<SignalGraph> signals = config.signals;
            std::vector<std::vector<double>> spec_k;
            for (std::size_t k = 0; k < r; ++k) {
                signals[k].weights = c.weights[k];
                const auto& s = spectra.at(Key{k, c.weights[k].w1, c.weights[k].w2});
                if (s.empty()) throw Error(ErrorKind::NoConvergence, "large-scale spectrum unavailable");
                spec_k.push_back(s);
            }
            c.verdict = evaluate_point(signals, lin, &spec_k);
            if (config.simulate) {
                SimulationRequest req = config.simulation;
                req.signals = signals;
                c.sim_class = simulate_large_scale(spec, req, hss).pattern.kind;
            }
        } catch (const std::exception& e) {
            c.failure = e.what();
        }
    });
    return grid;
}

}  // namespace laminar
