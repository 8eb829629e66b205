#include "laminar/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "laminar/config.hpp"
#include "laminar/error.hpp"
#include "laminar/io.hpp"
#include "laminar/quotient.hpp"
#include "laminar/simulate.hpp"
#include "laminar/stability.hpp"
#include "laminar/sweep.hpp"
#include "laminar/verify.hpp"

namespace laminar::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    unsigned threads = 0;
    std::optional<double> t_max;
    std::string grid;
    std::vector<double> w1, w2;
    std::optional<std::string> mode;
};

// 12 significant digits in JSON output
json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(format_number(v).c_str(), nullptr);
}

json num_list(const std::vector<double>& v) {
    json j = json::array();
    for (double x : v) j.push_back(num(x));
    return j;
}

json complex_list(const std::vector<std::complex<double>>& v) {
    json j = json::array();
    for (const auto& z : v) j.push_back({num(z.real()), num(z.imag())});
    return j;
}

json matrix_json(const DenseMatrix& m) {
    json j = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(num(m(i, c)));
        j.push_back(row);
    }
    return j;
}

json profile_json(const std::optional<DegreeProfile>& p) {
    if (!p) return nullptr;
    return {{"n1_L1", p->n1_l1}, {"n2_L1", p->n2_l1}, {"n1_L2", p->n1_l2}, {"n2_L2", p->n2_l2}};
}

void configure_logging() {
    auto logger = spdlog::get("laminar");
    if (!logger) logger = spdlog::stderr_logger_st("laminar");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("LAMINAR_LOG")) level = spdlog::level::from_str(env);
    spdlog::set_level(level);
}

RunConfig load_config(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? default_run_config() : parse_run_config(read_file(o.config_path));
    if (!o.w1.empty() || !o.w2.empty()) {
        const auto apply = [&](const std::vector<double>& v, bool first) {
            if (v.empty()) return;
            if (v.size() != cfg.weights.size())
                throw Error(ErrorKind::InvalidConfig, "weight override needs one value per signal");
            for (std::size_t k = 0; k < v.size(); ++k)
                cfg.weights[k] = first ? PolarityWeights(v[k], cfg.weights[k].w2) : PolarityWeights(cfg.weights[k].w1, v[k]);
        };
        apply(o.w1, true);
        apply(o.w2, false);
    }
    if (o.seed) cfg.simulation.seed = *o.seed;
    if (o.t_max) {
        if (!(*o.t_max > 0)) throw Error(ErrorKind::InvalidConfig, "--t-max must be positive");
        cfg.simulation.t_max = *o.t_max;
    }
    if (o.mode) {
        if (*o.mode != "large" && *o.mode != "quotient") throw Error(ErrorKind::InvalidConfig, "--mode must be large or quotient");
        cfg.simulation.quotient = *o.mode == "quotient";
    }
    if (!o.grid.empty()) {
        const auto x = o.grid.find('x');
        std::size_t n = 0, m = 0;
        try {
            if (x == std::string::npos) throw std::invalid_argument("grid");
            std::size_t used = 0;
            n = std::stoul(o.grid.substr(0, x), &used);
            if (used != x) throw std::invalid_argument("grid");
            m = std::stoul(o.grid.substr(x + 1), &used);
            if (used != o.grid.size() - x - 1) throw std::invalid_argument("grid");
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidConfig, "--grid expects <n>x<m>");
        }
        if (n == 0 || m == 0) throw Error(ErrorKind::InvalidConfig, "--grid sizes must be positive");
        cfg.sweep.axis1.values.reset();
        cfg.sweep.axis2.values.reset();
        cfg.sweep.axis1.count = n;
        cfg.sweep.axis2.count = m;
    }
    spdlog::debug("config: {} signals, seed {}", cfg.graphs.size(), cfg.simulation.seed);
    return cfg;
}

std::filesystem::path output_dir(const Options& o) {
    std::filesystem::path p(o.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw Error(ErrorKind::InvalidConfig, "cannot create output directory " + o.out_dir);
    return p;
}

void emit(const std::filesystem::path& path, const std::string& content) {
    write_file(path.string(), content);
    spdlog::info("wrote {}", path.string());
}

SteadyState hss_for(const HillKinetics& kin) { return solve_hss(kin); }

int cmd_graph(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const auto dir = output_dir(o);
    json report = json::array();
    for (std::size_t k = 0; k < cfg.graphs.size(); ++k) {
        const auto g = build_graph(cfg.graphs[k]);
        const auto s = analyze_structure(g);
        emit(dir / ("graph" + std::to_string(k + 1) + "_edges.csv"), edges_to_csv(g));
        report.push_back({{"signal", k + 1},
                          {"vertices", g.vertex_count()},
                          {"edges", g.edges().size()},
                          {"connected", s.connected},
                          {"bipartite", s.bipartite},
                          {"semi_regular", s.semi_regular},
                          {"degree_profile", profile_json(s.degree_profile)}});
    }
    emit(dir / "structure.json", report.dump(2) + "\n");
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const auto dir = output_dir(o);
    json report = json::array();
    for (std::size_t k = 0; k < cfg.graphs.size(); ++k) {
        const auto g = std::make_shared<const BilayerGraph>(build_graph(cfg.graphs[k]));
        const auto wa = weighted_adjacency(g, cfg.weights[k]);
        const auto q = reduce_adjacency(wa, laminar_partition(*g));
        const auto spec = eig_symmetric(wa.matrix()).real_values();
        const auto rows = spectrum_rows(spec, q.lambda2());
        emit(dir / ("spectrum" + std::to_string(k + 1) + ".csv"), spectrum_to_csv(rows));
        const auto pos = spectral_position(spec, q.lambda2());
        const auto cross = lambda2_min_crossover(g, cfg.weights[k].w2);
        report.push_back({{"signal", k + 1},
                          {"lambda2_min_crossover_w1", cross ? num(*cross) : json(nullptr)},
                          {"w1", num(cfg.weights[k].w1)},
                          {"w2", num(cfg.weights[k].w2)},
                          {"lambda2", num(q.lambda2())},
                          {"lambda2_index", pos.index},
                          {"lambda2_is_min", pos.is_min},
                          {"dimension", spec.size()}});
    }
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_quotient(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const auto dir = output_dir(o);
    json report = json::array();
    for (std::size_t k = 0; k < cfg.graphs.size(); ++k) {
        const auto g = std::make_shared<const BilayerGraph>(build_graph(cfg.graphs[k]));
        const auto wa = weighted_adjacency(g, cfg.weights[k]);
        const auto part = laminar_partition(*g);
        const auto c = verify_equitable(wa, part);
        const auto q = reduce_adjacency(wa, part);
        report.push_back({{"signal", k + 1},
                          {"a", num(q.a())},
                          {"b", num(q.b())},
                          {"lambda2", num(q.lambda2())},
                          {"row_sums", {num(c.w11), num(c.w12), num(c.w21), num(c.w22)}},
                          {"quotient_matrix", matrix_json(q.matrix())},
                          {"quotient_eigenvector", num_list(quotient_eigenvector(q))},
                          {"lifted_eigenvector", num_list(lift_eigenvector(q, lifting_matrix(*g)))}});
    }
    emit(dir / "quotient.json", report.dump(2) + "\n");
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_hss(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const HillKinetics kin(cfg.kinetics);
    const auto hss = hss_for(kin);
    const auto lin = linearize(kin, hss.x0, hss.u0);
    const json report{{"x0", num_list(hss.x0)},
                      {"u0", num_list(hss.u0)},
                      {"residual", num(hss.residual)},
                      {"eig_A", complex_list(eig_general(lin.a).values)},
                      {"DT", matrix_json(lin.dt)},
                      {"sign_class", to_string(classify_transfer_signs(lin))}};
    emit(output_dir(o) / "hss.json", report.dump(2) + "\n");
    out << report.dump(2) << "\n";
    return 0;
}

json verdict_json(const StabilityVerdict& v) {
    json modes = json::array();
    for (const auto& m : v.mode_eigs) modes.push_back(complex_list(m));
    json idx = json::array(), mins = json::array();
    for (auto i : v.lambda2_index) idx.push_back(i);
    for (bool b : v.lambda2_is_min) mins.push_back(b);
    return {{"instability_margin", num(v.instability_margin)},
            {"unstable", v.unstable},
            {"monotone_polarity_ok", v.monotone_polarity_ok},
            {"typeK_ok", v.typeK_ok},
            {"typeK_worst_row_sum", num(v.typeK_worst)},
            {"a", num_list(v.a)},
            {"b", num_list(v.b)},
            {"lambda2", num_list(v.lambda2)},
            {"lambda2_index", idx},
            {"lambda2_is_min", mins},
            {"mode_eigenvalues", modes},
            {"exists", v.exists()},
            {"converges", v.converges()}};
}

int cmd_stability(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const HillKinetics kin(cfg.kinetics);
    const auto hss = hss_for(kin);
    const auto lin = linearize(kin, hss.x0, hss.u0);
    const auto verdict = evaluate_point(build_signals(cfg), lin);
    json report = verdict_json(verdict);
    report["w1"] = json::array();
    report["w2"] = json::array();
    for (const auto& w : cfg.weights) {
        report["w1"].push_back(num(w.w1));
        report["w2"].push_back(num(w.w2));
    }
    emit(output_dir(o) / "stability.json", report.dump(2) + "\n");
    out << report.dump(2) << "\n";
    return 0;
}

SimulationRequest request_for(const RunConfig& cfg) {
    SimulationRequest req;
    req.signals = build_signals(cfg);
    req.magnitude = cfg.simulation.perturbation;
    req.seed = cfg.simulation.seed;
    req.options = integrate_options(cfg.simulation);
    req.component = cfg.simulation.component;
    return req;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const HillKinetics kin(cfg.kinetics);
    const auto hss = hss_for(kin);
    const auto req = request_for(cfg);
    const std::size_t n = kin.state_dim();
    const Trajectory* traj = nullptr;
    PatternClass pattern;
    std::pair<std::size_t, std::size_t> split{1, 1};
    std::optional<SimulationResult> large;
    std::optional<QuotientSimulationResult> quot;
    if (cfg.simulation.quotient) {
        quot = simulate_quotient(kin, req, hss);
        traj = &quot->quotient;
        pattern = quot->pattern;
    } else {
        large = simulate_large_scale(kin, req, hss);
        traj = &large->large;
        pattern = large->pattern;
        split = large->layer_split;
    }
    const auto dir = output_dir(o);
    emit(dir / "trajectory.csv", trajectory_to_csv(trajectory_rows(*traj, n)));
    const auto snap = snapshot_rows(traj->final_state(), split, n, req.component);
    emit(dir / "snapshot.csv", snapshot_to_csv(snap));
    emit(dir / "snapshot.svg", render_tissue_svg(snap, hss.x0.at(req.component)));
    const json report{{"mode", cfg.simulation.quotient ? "quotient" : "large"},
                      {"seed", cfg.simulation.seed},
                      {"pattern", to_string(pattern.kind)},
                      {"layer_means", {num(pattern.layer_means[0]), num(pattern.layer_means[1])}},
                      {"separation", num(pattern.separation)},
                      {"converged", traj->converged},
                      {"t_final", num(traj->times.back())},
                      {"steps_accepted", traj->steps_accepted},
                      {"steps_rejected", traj->steps_rejected},
                      {"hss", num_list(hss.x0)}};
    emit(dir / "simulation.json", report.dump(2) + "\n");
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const auto cfg = load_config(o);
    const HillKinetics kin(cfg.kinetics);
    SweepConfig sc;
    sc.axis1 = {cfg.sweep.axis1.name, cfg.sweep.axis1.resolve()};
    sc.axis2 = {cfg.sweep.axis2.name, cfg.sweep.axis2.resolve()};
    sc.signals = build_signals(cfg);
    sc.simulate = cfg.sweep.simulate;
    sc.simulation = request_for(cfg);
    sc.threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    spdlog::info("sweep {}x{} on {} threads", sc.axis1.values.size(), sc.axis2.values.size(), sc.threads);
    const auto grid = sweep_regions(kin, sc);
    const auto rows = sweep_rows(grid);
    const auto dir = output_dir(o);
    emit(dir / "sweep.csv", sweep_to_csv(rows));
    emit(dir / "sweep.svg", render_region_svg(grid));
    std::size_t exists = 0, converges = 0, failed = 0;
    for (const auto& c : grid.cells) {
        if (!c.failure.empty()) ++failed;
        if (c.verdict && c.verdict->exists()) ++exists;
        if (c.verdict && c.verdict->converges()) ++converges;
    }
    const json report{{"cells", grid.cells.size()}, {"exists", exists}, {"converges", converges}, {"failed", failed}};
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const std::uint64_t seed = o.seed.value_or(1);
    bool ok = true;
    for (const auto& s : run_all_suites(seed)) {
        out << (s.passed ? "PASS " : "FAIL ") << s.name << " instances=" << s.instances
            << " worst=" << format_number(s.worst) << "\n";
        ok = ok && s.passed;
    }
    return ok ? 0 : 3;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_logging();
    CLI::App app{"Bilayer laminar pattern analysis"};
    app.require_subcommand(1);
    Options o;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--w1", o.w1, "w1 per signal")->delimiter(',');
        sub->add_option("--w2", o.w2, "w2 per signal")->delimiter(',');
    };
    struct Sub {
        const char* name;
        const char* help;
        int (*fn)(const Options&, std::ostream&);
    };
    const Sub subs[] = {{"graph", "build graphs, write edge CSVs and structure report", cmd_graph},
                        {"spectrum", "ascending adjacency spectra with lambda2 marked", cmd_spectrum},
                        {"quotient", "quotient matrices, lambda2 and lifted eigenvectors", cmd_quotient},
                        {"hss", "homogeneous steady state and linearization", cmd_hss},
                        {"stability", "evaluate all conditions at one weight point", cmd_stability},
                        {"simulate", "large-scale or quotient simulation", cmd_simulate},
                        {"sweep", "region map over two weight axes", cmd_sweep},
                        {"verify", "run the property suites", cmd_verify}};
    int (*selected)(const Options&, std::ostream&) = nullptr;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        sub->add_option("--seed", o.seed, "random seed");
        if (std::string(s.name) == "simulate" || std::string(s.name) == "sweep") {
            sub->add_option("--t-max", o.t_max, "integration horizon");
            sub->add_option("--mode", o.mode, "large or quotient");
        }
        if (std::string(s.name) == "sweep") {
            sub->add_option("--threads", o.threads, "worker threads");
            sub->add_option("--grid", o.grid, "grid size <n>x<m>");
        }
        sub->callback([&selected, fn = s.fn] { selected = fn; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        return selected(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_config_error() ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace laminar::cli
