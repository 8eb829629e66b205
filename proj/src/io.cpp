#include "laminar/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "laminar/error.hpp"

namespace laminar {

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text, const std::string& expected_header_prefix) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(expected_header_prefix, 0) != 0)
        throw Error(ErrorKind::ParseError, "unexpected CSV header '" + line + "'");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.emplace_back();
        rows.push_back(std::move(fields));
    }
    return rows;
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
        throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
    }
}

std::size_t to_index(const std::string& s) {
    const double v = to_double(s);
    if (!(v >= 0) || v != std::floor(v)) throw Error(ErrorKind::ParseError, "not an index: '" + s + "'");
    return static_cast<std::size_t>(v);
}

bool to_flag(const std::string& s) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw Error(ErrorKind::ParseError, "not a 0/1 flag: '" + s + "'");
}

void require_width(const std::vector<std::string>& row, std::size_t n) {
    if (row.size() != n) throw Error(ErrorKind::ParseError, "CSV row has wrong field count");
}

}  // namespace

std::string edges_to_csv(const BilayerGraph& g) {
    std::string out = "u,v\n";
    for (auto [u, v] : g.edges()) out += fmt::format("{},{}\n", u + 1, v + 1);
    return out;
}

std::vector<Edge> edges_from_csv(const std::string& text) {
    std::vector<Edge> edges;
    for (const auto& row : parse_csv(text, "u,v")) {
        require_width(row, 2);
        const auto u = to_index(row[0]), v = to_index(row[1]);
        if (u == 0 || v == 0) throw Error(ErrorKind::ParseError, "vertex ids are 1-based");
        edges.emplace_back(u - 1, v - 1);
    }
    return edges;
}

std::vector<SpectrumRow> spectrum_rows(const std::vector<double>& ascending, double lambda2) {
    std::vector<SpectrumRow> rows;
    bool marked = false;
    for (std::size_t i = 0; i < ascending.size(); ++i) {
        const bool hit = !marked && std::abs(ascending[i] - lambda2) <= 1e-8;
        marked = marked || hit;
        rows.push_back({i + 1, ascending[i], hit});
    }
    return rows;
}

std::string spectrum_to_csv(const std::vector<SpectrumRow>& rows) {
    std::string out = "index,eigenvalue,is_quotient_lambda2\n";
    for (const auto& r : rows) out += fmt::format("{},{},{}\n", r.index, format_number(r.eigenvalue), r.is_quotient_lambda2 ? 1 : 0);
    return out;
}

std::vector<SpectrumRow> spectrum_from_csv(const std::string& text) {
    std::vector<SpectrumRow> rows;
    for (const auto& row : parse_csv(text, "index,eigenvalue,is_quotient_lambda2")) {
        require_width(row, 3);
        rows.push_back({to_index(row[0]), to_double(row[1]), to_flag(row[2])});
    }
    return rows;
}

std::vector<SweepRow> sweep_rows(const SweepGrid& grid) {
    std::vector<SweepRow> rows;
    for (const auto& c : grid.cells) {
        SweepRow r;
        r.w1_sig1 = c.weights.at(0).w1;
        r.w1_sig2 = c.weights.size() > 1 ? c.weights[1].w1 : std::numeric_limits<double>::quiet_NaN();
        if (c.verdict) {
            r.margin = c.verdict->instability_margin;
            r.exists = c.verdict->exists();
            r.converges = c.verdict->converges();
        } else {
            r.margin = std::numeric_limits<double>::quiet_NaN();
        }
        r.sim_class = !c.failure.empty() ? "failed" : c.sim_class ? to_string(*c.sim_class) : "none";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "w1_sig1,w1_sig2,margin,exists,converges,sim_class\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{},{},{}\n", format_number(r.w1_sig1), format_number(r.w1_sig2),
                           format_number(r.margin), r.exists ? 1 : 0, r.converges ? 1 : 0, r.sim_class);
    return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
    std::vector<SweepRow> rows;
    for (const auto& row : parse_csv(text, "w1_sig1,w1_sig2,margin,exists,converges,sim_class")) {
        require_width(row, 6);
        rows.push_back({to_double(row[0]), to_double(row[1]), to_double(row[2]), to_flag(row[3]), to_flag(row[4]), row[5]});
    }
    return rows;
}

std::vector<TrajectoryRow> trajectory_rows(const Trajectory& traj, std::size_t n) {
    std::vector<TrajectoryRow> rows;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& s = traj.states[k];
        if (n == 0 || s.size() % n != 0) throw Error(ErrorKind::DimensionMismatch, "state length not a multiple of n");
        for (std::size_t c = 0; c < s.size() / n; ++c)
            rows.push_back({traj.times[k], c + 1, std::vector<double>(s.begin() + c * n, s.begin() + (c + 1) * n)});
    }
    return rows;
}

std::string trajectory_to_csv(const std::vector<TrajectoryRow>& rows) {
    const std::size_t n = rows.empty() ? 0 : rows.front().x.size();
    std::string out = "t,cell";
    for (std::size_t k = 1; k <= n; ++k) out += fmt::format(",x{}", k);
    out += '\n';
    for (const auto& r : rows) {
        out += fmt::format("{},{}", format_number(r.t), r.cell);
        for (double v : r.x) out += "," + format_number(v);
        out += '\n';
    }
    return out;
}

std::vector<TrajectoryRow> trajectory_from_csv(const std::string& text) {
    std::vector<TrajectoryRow> rows;
    for (const auto& row : parse_csv(text, "t,cell")) {
        if (row.size() < 3) throw Error(ErrorKind::ParseError, "trajectory row too short");
        TrajectoryRow r{to_double(row[0]), to_index(row[1]), {}};
        for (std::size_t k = 2; k < row.size(); ++k) r.x.push_back(to_double(row[k]));
        if (!rows.empty() && r.x.size() != rows.front().x.size())
            throw Error(ErrorKind::ParseError, "ragged trajectory rows");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SnapshotRow> snapshot_rows(std::span<const double> state, std::pair<std::size_t, std::size_t> layer_split,
                                       std::size_t n, std::size_t component) {
    const std::size_t cells = layer_split.first + layer_split.second;
    if (state.size() != cells * n || component >= n) throw Error(ErrorKind::DimensionMismatch, "snapshot sizes");
    std::vector<SnapshotRow> rows;
    for (std::size_t c = 0; c < cells; ++c)
        rows.push_back({c + 1, c < layer_split.first ? 1 : 2, state[c * n + component]});
    return rows;
}

std::string snapshot_to_csv(const std::vector<SnapshotRow>& rows) {
    std::string out = "cell,layer,x_component\n";
    for (const auto& r : rows) out += fmt::format("{},{},{}\n", r.cell, r.layer, format_number(r.value));
    return out;
}

std::vector<SnapshotRow> snapshot_from_csv(const std::string& text) {
    std::vector<SnapshotRow> rows;
    for (const auto& row : parse_csv(text, "cell,layer,x_component")) {
        require_width(row, 3);
        const auto layer = to_index(row[1]);
        if (layer != 1 && layer != 2) throw Error(ErrorKind::ParseError, "layer must be 1 or 2");
        rows.push_back({to_index(row[0]), static_cast<int>(layer), to_double(row[2])});
    }
    return rows;
}

std::string dense_to_csv(const DenseMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? "," : "") + format_number(m(i, j));
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + path);
    out << content;
}

}  // namespace laminar
