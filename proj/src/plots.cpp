#include "geoatt/plots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string number(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v)
    {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finish()
    {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

std::vector<Figure> trajectory_figures(const TrajectoryLog& log, const ScenarioConfig& cfg)
{
    std::vector<double> t;
    t.reserve(log.samples.size());
    for (const auto& s : log.samples) {
        t.push_back(s.t);
    }
    const auto series = [&](const std::string& label, auto&& value) {
        PlotSeries out{label, t, {}};
        out.y.reserve(log.samples.size());
        for (const auto& s : log.samples) {
            out.y.push_back(value(s));
        }
        return out;
    };

    std::vector<Figure> figs;

    Figure psi{"psi", "Configuration error", "t [s]", "psi", {}, {}, true};
    psi.series.push_back(series("psi", [](const TrajectorySample& s) { return s.psi; }));
    figs.push_back(std::move(psi));

    Figure err{"error_vector", "Attitude error vector", "t [s]", "e_R", {}, {}, false};
    for (int i = 0; i < 3; ++i) {
        err.series.push_back(series("e_R" + std::to_string(i + 1),
                                    [i](const TrajectorySample& s) { return s.e_R(i); }));
    }
    figs.push_back(std::move(err));

    Figure ang{"constraint_angles", "Angle to constraints", "t [s]", "angle [deg]", {}, {}, false};
    for (std::size_t i = 0; i < cfg.constraints.size(); ++i) {
        ang.series.push_back(series("constraint " + std::to_string(i + 1), [i](const auto& s) {
            return s.constraint_angles[i] * (180.0 / std::numbers::pi);
        }));
        ang.references.push_back({"theta " + std::to_string(i + 1),
                                  cfg.constraints[i].theta() * (180.0 / std::numbers::pi)});
    }
    figs.push_back(std::move(ang));

    Figure est{"disturbance_estimate", "Disturbance estimate", "t [s]", "Delta_bar", {}, {}, false};
    const Eigen::VectorXd& delta = cfg.disturbance.delta();
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
        est.series.push_back(series("Delta_bar" + std::to_string(i + 1),
                                    [i](const TrajectorySample& s) { return s.estimate(i); }));
        est.references.push_back({"Delta" + std::to_string(i + 1), delta(i)});
    }
    figs.push_back(std::move(est));
    return figs;
}

std::string render_svg(const Figure& fig)
{
    const auto ty = [&](double y) {
        if (!fig.log_y) {
            return y;
        }
        return std::log10(std::max(y, 1e-300));
    };

    Range xr;
    Range yr;
    for (const auto& s : fig.series) {
        for (double x : s.x) {
            xr.add(x);
        }
        for (double y : s.y) {
            if (!fig.log_y || y > 0.0) {
                yr.add(ty(y));
            }
        }
    }
    for (const auto& ref : fig.references) {
        yr.add(ty(ref.y));
    }
    xr.finish();
    yr.finish();
    const double pad = 0.05 * (yr.hi - yr.lo);
    yr.lo -= pad;
    yr.hi += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return kTop + (yr.hi - ty(y)) / (yr.hi - yr.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(fig.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 5.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 5.0;
        const double gx = px(xv);
        const double gy = kTop + ph - ph * i / 5.0;
        os << "<line x1=\"" << gx << "\" y1=\"" << kTop + ph << "\" x2=\"" << gx << "\" y2=\""
           << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << gx << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
           << number(xv) << "</text>\n";
        os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << gy << "\" x2=\"" << kLeft << "\" y2=\""
           << gy << "\" stroke=\"black\"/>\n";
        const std::string label = fig.log_y ? "1e" + number(yv) : number(yv);
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">"
           << escape(label) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
       << "\" text-anchor=\"middle\">" << escape(fig.x_label) << "</text>\n";
    os << "<text transform=\"translate(18," << kTop + ph / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(fig.y_label) << "</text>\n";

    int legend_row = 0;
    const auto legend = [&](const std::string& label, const char* color, bool dashed) {
        const double ly = kTop + 10 + 18 * legend_row++;
        const double lx = kLeft + pw + 12;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
           << "\" stroke=\"" << color << "\" stroke-width=\"2\""
           << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << escape(label)
           << "</text>\n";
    };

    for (std::size_t k = 0; k < fig.references.size(); ++k) {
        const char* color = kPalette[k % kPalette.size()];
        const double y = py(fig.references[k].y);
        os << "<line class=\"reference\" x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\""
           << kLeft + pw << "\" y2=\"" << y << "\" stroke=\"" << color
           << "\" stroke-dasharray=\"6,4\" data-value=\"" << fig.references[k].y << "\"/>\n";
    }
    for (std::size_t k = 0; k < fig.series.size(); ++k) {
        const auto& s = fig.series[k];
        const char* color = kPalette[k % kPalette.size()];
        os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (fig.log_y && !(s.y[i] > 0.0)) {
                continue;
            }
            os << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        os << "\"/>\n";
        legend(s.label, color, false);
    }
    for (std::size_t k = 0; k < fig.references.size(); ++k) {
        legend(fig.references[k].label, kPalette[k % kPalette.size()], true);
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> render_plots(const TrajectoryLog& log, const ScenarioConfig& cfg,
                                                const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> paths;
    for (const Figure& fig : trajectory_figures(log, cfg)) {
        const auto path = out_dir / (fig.name + ".svg");
        std::ofstream out(path);
        if (!out) {
            throw Error("cannot write plot " + path.string());
        }
        out << render_svg(fig);
        if (!out) {
            throw Error("failed writing plot " + path.string());
        }
        paths.push_back(path);
    }
    return paths;
}

} // namespace geoatt
