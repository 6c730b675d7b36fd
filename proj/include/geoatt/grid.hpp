#ifndef GEOATT_GRID_HPP
#define GEOATT_GRID_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "geoatt/error_function.hpp"

namespace geoatt {

// Azimuth/elevation lattice R(lambda, elev) = exp(lambda e2^) exp(elev e3^)
// with lambda in [-180, 180] deg and elev in [-90, 90] deg, used to draw the
// error function as a heat map over the sensor direction.
struct GridNode {
    double lambda = 0.0;     // radians
    double elevation = 0.0;  // radians
    bool feasible = true;
    double attraction = 0.0;
    double barrier = 1.0;    // composite factor 1 + sum_i (B_i - 1)
    double psi = 0.0;
};

struct ErrorGrid {
    std::size_t rows = 0;  // lambda samples
    std::size_t cols = 0;  // elevation samples
    std::vector<GridNode> nodes;  // row-major: lambda index outer

    const GridNode& at(std::size_t i, std::size_t j) const { return nodes[i * cols + j]; }
};

/// Marker written in place of numbers at infeasible nodes.
inline constexpr const char* kInfeasibleMarker = "infeasible";

/// Throws ConfigError unless rows >= 2 and cols >= 2.
ErrorGrid evaluate_error_grid(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                              std::span<const ConstraintSpec> constraints, std::size_t rows,
                              std::size_t cols);

/// Columns lambda_deg, beta_deg, A, B, psi; infeasible nodes carry the marker
/// in the last three columns.
void write_error_grid(const ErrorGrid& grid, const std::filesystem::path& path);

ErrorGrid export_error_grid(const Matrix3& Rd, const GainMatrix& G, const SensorAxis& r,
                            std::span<const ConstraintSpec> constraints, std::size_t rows,
                            std::size_t cols, const std::filesystem::path& path);

/// Parses "RxC" (e.g. "73x37"). Throws ConfigError.
std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text);

} // namespace geoatt

#endif // GEOATT_GRID_HPP
