#ifndef GEOATT_TRAJECTORY_IO_HPP
#define GEOATT_TRAJECTORY_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "geoatt/simulator.hpp"

namespace geoatt {

/// Column names of the trajectory CSV, in file order:
/// t, R11..R33, W1..W3, eR1..eR3, psi, u1..u3, dbar1..dbarP, V, ang1..angN.
std::vector<std::string> trajectory_columns(std::size_t estimate_dim, std::size_t constraints);

/// The numbers written for one sample; constraint angles in degrees.
std::vector<double> trajectory_row(const TrajectorySample& sample);

/// Writes the log as comma-separated text with a header row. Doubles use the
/// shortest representation that parses back to the same bits.
void write_trajectory(const TrajectoryLog& log, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws ConfigError when absent.
    std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV file with one header row.
CsvTable read_csv(const std::filesystem::path& path);

} // namespace geoatt

#endif // GEOATT_TRAJECTORY_IO_HPP
