#include "geoatt/grid.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numbers>

#include "geoatt/errors.hpp"
#include "geoatt/scenario_io.hpp"

namespace geoatt {

namespace {

double lattice(std::size_t k, std::size_t n, double half_range)
{
    const double v = -half_range + 2.0 * half_range * static_cast<double>(k) / static_cast<double>(n - 1);
    // keep the end points exactly on the admissible range
    return std::clamp(v, -half_range, half_range);
}

} // namespace

ErrorGrid evaluate_error_grid(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                              std::span<const ConstraintSpec> constraints, std::size_t rows,
                              std::size_t cols)
{
    if (rows < 2 || cols < 2) {
        throw ConfigError("grid resolution must be at least 2 in each direction");
    }
    ErrorGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.nodes.resize(rows * cols);
    constexpr double pi = std::numbers::pi;
    for (std::size_t i = 0; i < rows; ++i) {
        const double lambda = lattice(i, rows, pi);
        for (std::size_t j = 0; j < cols; ++j) {
            const double elev = lattice(j, cols, pi / 2.0);
            GridNode& node = grid.nodes[i * cols + j];
            node.lambda = lambda;
            node.elevation = elev;
            const Rotation R = rotation_from_spherical(lambda, elev);
            node.feasible = std::all_of(constraints.begin(), constraints.end(),
                                        [&](const ConstraintSpec& cs) {
                                            return constraint_cosine(R, r, cs) < cs.cos_theta();
                                        });
            if (!node.feasible) {
                continue;
            }
            try {
                const ErrorFunctionOutput out = evaluate_error(R, Rd, G, r, constraints);
                node.attraction = out.attraction;
                node.barrier = out.barrier;
                node.psi = out.psi;
            } catch (const ConstraintViolated&) {
                // the log argument underflowed to zero right at the boundary
                node.feasible = false;
            }
        }
    }
    return grid;
}

void write_error_grid(const ErrorGrid& grid, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write grid file " + path.string());
    }
    constexpr double deg = 180.0 / std::numbers::pi;
    out << "lambda_deg,beta_deg,A,B,psi\n";
    for (const GridNode& node : grid.nodes) {
        out << format_double(node.lambda * deg) << ',' << format_double(node.elevation * deg);
        if (node.feasible) {
            out << ',' << format_double(node.attraction) << ',' << format_double(node.barrier)
                << ',' << format_double(node.psi) << '\n';
        } else {
            out << ',' << kInfeasibleMarker << ',' << kInfeasibleMarker << ','
                << kInfeasibleMarker << '\n';
        }
    }
    if (!out) {
        throw Error("failed writing grid file " + path.string());
    }
}

ErrorGrid export_error_grid(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                            std::span<const ConstraintSpec> constraints, std::size_t rows,
                            std::size_t cols, const std::filesystem::path& path)
{
    ErrorGrid grid = evaluate_error_grid(Rd, G, r, constraints, rows, cols);
    write_error_grid(grid, path);
    return grid;
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text)
{
    const auto x = text.find_first_of("xX");
    const auto parse = [&](std::string_view part) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
            throw ConfigError("resolution must look like RxC, got '" + text + "'");
        }
        return value;
    };
    if (x == std::string::npos) {
        throw ConfigError("resolution must look like RxC, got '" + text + "'");
    }
    const std::string_view view(text);
    const auto rows = parse(view.substr(0, x));
    const auto cols = parse(view.substr(x + 1));
    if (rows < 2 || cols < 2) {
        throw ConfigError("grid resolution must be at least 2 in each direction");
    }
    return {rows, cols};
}

} // namespace geoatt
