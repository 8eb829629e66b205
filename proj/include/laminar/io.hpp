#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "laminar/bilayer_graph.hpp"
#include "laminar/simulate.hpp"
#include "laminar/sweep.hpp"

namespace laminar {

// 12 significant digits
std::string format_number(double v);

std::string edges_to_csv(const BilayerGraph& g);
std::vector<Edge> edges_from_csv(const std::string& text);

struct SpectrumRow {
    std::size_t index = 0;
    double eigenvalue = 0.0;
    bool is_quotient_lambda2 = false;
};

std::vector<SpectrumRow> spectrum_rows(const std::vector<double>& ascending, double lambda2);
std::string spectrum_to_csv(const std::vector<SpectrumRow>& rows);
std::vector<SpectrumRow> spectrum_from_csv(const std::string& text);

struct SweepRow {
    double w1_sig1 = 0.0, w1_sig2 = 0.0, margin = 0.0;
    bool exists = false, converges = false;
    std::string sim_class;  // pattern class, "none" when not simulated, "failed" on error
};

std::vector<SweepRow> sweep_rows(const SweepGrid& grid);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

struct TrajectoryRow {
    double t = 0.0;
    std::size_t cell = 0;
    std::vector<double> x;
};

std::vector<TrajectoryRow> trajectory_rows(const Trajectory& traj, std::size_t n);
std::string trajectory_to_csv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> trajectory_from_csv(const std::string& text);

struct SnapshotRow {
    std::size_t cell = 0;
    int layer = 1;
    double value = 0.0;
};

std::vector<SnapshotRow> snapshot_rows(std::span<const double> state, std::pair<std::size_t, std::size_t> layer_split,
                                       std::size_t n, std::size_t component);
std::string snapshot_to_csv(const std::vector<SnapshotRow>& rows);
std::vector<SnapshotRow> snapshot_from_csv(const std::string& text);

std::string dense_to_csv(const DenseMatrix& m);

std::string render_region_svg(const SweepGrid& grid);
std::string render_tissue_svg(const std::vector<SnapshotRow>& snapshot, double reference);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace laminar
