#ifndef GEOATT_PLOTS_HPP
#define GEOATT_PLOTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "geoatt/simulator.hpp"

namespace geoatt {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Horizontal dashed line, e.g. a constraint half-angle or a true parameter.
struct ReferenceLine {
    std::string label;
    double y;
};

struct Figure {
    std::string name;  // file stem
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    std::vector<ReferenceLine> references;
    bool log_y = false;
};

/// The four standard figures of a run: psi, e_R components, constraint
/// angles with half-angle references (degrees), and the disturbance
/// estimate with the true parameter as references.
std::vector<Figure> trajectory_figures(const TrajectoryLog& log, const ScenarioConfig& cfg);

/// Standalone SVG document for one figure.
std::string render_svg(const Figure& figure);

/// Writes one SVG per figure into out_dir (created if needed) and returns the paths.
std::vector<std::filesystem::path> render_plots(const TrajectoryLog& log, const ScenarioConfig& cfg,
                                                const std::filesystem::path& out_dir);

} // namespace geoatt

#endif // GEOATT_PLOTS_HPP
