#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "laminar/error.hpp"
#include "laminar/io.hpp"

namespace laminar {

namespace {

constexpr const char* kOutside = "#ffffff";
constexpr const char* kExistence = "#9e9e9e";
constexpr const char* kConvergence = "#4caf50";
constexpr const char* kFailed = "#d62728";

std::string rgb(double t) {
    t = std::clamp(t, -1.0, 1.0);
    const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(t))));
    return t >= 0 ? fmt::format("#ff{:02x}{:02x}", fade, fade) : fmt::format("#{:02x}{:02x}ff", fade, fade);
}

}  // namespace

std::string render_region_svg(const SweepGrid& grid) {
    const std::size_t n1 = grid.axis1.values.size(), n2 = grid.axis2.values.size();
    if (grid.cells.empty() || n1 == 0 || n2 == 0) throw Error(ErrorKind::EmptyData, "sweep grid has no cells");
    const double cell = std::max(4.0, std::min(40.0, 480.0 / static_cast<double>(std::max(n1, n2))));
    const double margin = 60.0, legend = 90.0;
    const double width = margin * 2 + cell * static_cast<double>(n1);
    const double height = margin * 2 + cell * static_cast<double>(n2) + legend;
    const double top = margin, bottom = margin + cell * static_cast<double>(n2);

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     format_number(width), format_number(height), format_number(width), format_number(height));
    s += fmt::format("<!-- color scale: outside={} existence={} convergence={} failed={} -->\n", kOutside, kExistence,
                     kConvergence, kFailed);
    s += "<!-- markers: filled black dot = simulated Laminar, hollow ring = simulated Other -->\n";
    s += fmt::format("<!-- x axis: {} ({} values), y axis: {} ({} values), cells in index space -->\n", grid.axis1.name,
                     n1, grid.axis2.name, n2);
    s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", format_number(width),
                     format_number(height));
    for (const auto& c : grid.cells) {
        const char* fill = !c.failure.empty()                            ? kFailed
                           : c.verdict && c.verdict->converges() ? kConvergence
                           : c.verdict && c.verdict->exists()    ? kExistence
                                                                 : kOutside;
        const double x = margin + cell * static_cast<double>(c.i);
        const double y = bottom - cell * static_cast<double>(c.j + 1);
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>\n",
                         format_number(x), format_number(y), format_number(cell), format_number(cell), fill);
        if (c.sim_class && *c.sim_class != PatternKind::Homogeneous) {
            const bool lam = *c.sim_class == PatternKind::Laminar;
            s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#1a1a1a\" stroke-width=\"0.8\"/>\n",
                             format_number(x + cell / 2), format_number(y + cell / 2), format_number(cell / 5),
                             lam ? "#1a1a1a" : "none");
        }
    }
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>\n",
                     format_number(margin), format_number(top), format_number(cell * static_cast<double>(n1)),
                     format_number(cell * static_cast<double>(n2)));
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{} [{} .. {}]</text>\n",
                     format_number(margin + cell * static_cast<double>(n1) / 2), format_number(bottom + 20),
                     grid.axis1.name, format_number(grid.axis1.values.front()), format_number(grid.axis1.values.back()));
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{} [{} .. {}]</text>\n",
                     format_number(margin - 20), format_number(top + cell * static_cast<double>(n2) / 2),
                     format_number(margin - 20), format_number(top + cell * static_cast<double>(n2) / 2),
                     grid.axis2.name, format_number(grid.axis2.values.front()), format_number(grid.axis2.values.back()));
    const char* labels[] = {"outside", "existence", "convergence", "failed"};
    const char* fills[] = {kOutside, kExistence, kConvergence, kFailed};
    for (int k = 0; k < 4; ++k) {
        const double lx = margin + 110.0 * k, ly = bottom + 40;
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n",
                         format_number(lx), format_number(ly), fills[k]);
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", format_number(lx + 20),
                         format_number(ly + 12), labels[k]);
    }
    s += "</svg>\n";
    return s;
}

std::string render_tissue_svg(const std::vector<SnapshotRow>& snapshot, double reference) {
    if (snapshot.empty()) throw Error(ErrorKind::EmptyData, "snapshot has no cells");
    std::size_t count[2] = {0, 0};
    double scale = 1e-3 * (1.0 + std::abs(reference));
    for (const auto& r : snapshot) {
        ++count[r.layer - 1];
        scale = std::max(scale, std::abs(r.value - reference));
    }
    const double pitch = 24.0, radius = 10.0, margin = 30.0;
    const double width = margin * 2 + pitch * static_cast<double>(std::max(count[0], count[1]));
    const double height = margin * 2 + pitch * 2 + 30;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     format_number(width), format_number(height), format_number(width), format_number(height));
    s += fmt::format("<!-- color scale: fill from (value - {}) / {}, blue #0000ff = -1, white = 0, red #ff0000 = +1 -->\n",
                     format_number(reference), format_number(scale));
    s += "<!-- row 1 = layer 1, row 2 = layer 2 -->\n";
    std::size_t pos[2] = {0, 0};
    for (const auto& r : snapshot) {
        const int l = r.layer - 1;
        const double cx = margin + pitch * (static_cast<double>(pos[l]++) + 0.5);
        const double cy = margin + pitch * (static_cast<double>(l) + 0.5);
        s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.8\"/>\n",
                         format_number(cx), format_number(cy), format_number(radius), rgb((r.value - reference) / scale));
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">x - x* scaled by {}</text>\n", format_number(margin),
                     format_number(height - 15), format_number(scale));
    s += "</svg>\n";
    return s;
}

}  // namespace laminar
