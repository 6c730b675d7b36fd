#include "geoatt/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "geoatt/errors.hpp"
#include "geoatt/scenario_io.hpp"

namespace geoatt {

std::vector<std::string> trajectory_columns(std::size_t estimate_dim, std::size_t constraints)
{
    std::vector<std::string> cols{"t"};
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            cols.push_back("R" + std::to_string(i) + std::to_string(j));
        }
    }
    for (int i = 1; i <= 3; ++i) {
        cols.push_back("W" + std::to_string(i));
    }
    for (int i = 1; i <= 3; ++i) {
        cols.push_back("eR" + std::to_string(i));
    }
    cols.emplace_back("psi");
    for (int i = 1; i <= 3; ++i) {
        cols.push_back("u" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= estimate_dim; ++i) {
        cols.push_back("dbar" + std::to_string(i));
    }
    cols.emplace_back("V");
    for (std::size_t i = 1; i <= constraints; ++i) {
        cols.push_back("ang" + std::to_string(i));
    }
    return cols;
}

std::vector<double> trajectory_row(const TrajectorySample& s)
{
    std::vector<double> row{s.t};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            row.push_back(s.R(i, j));
        }
    }
    row.insert(row.end(), s.omega.data(), s.omega.data() + 3);
    row.insert(row.end(), s.e_R.data(), s.e_R.data() + 3);
    row.push_back(s.psi);
    row.insert(row.end(), s.u.data(), s.u.data() + 3);
    row.insert(row.end(), s.estimate.data(), s.estimate.data() + s.estimate.size());
    row.push_back(s.V);
    for (double a : s.constraint_angles) {
        row.push_back(a * (180.0 / std::numbers::pi));
    }
    return row;
}

void write_trajectory(const TrajectoryLog& log, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write trajectory file " + path.string());
    }
    const std::size_t p = log.samples.empty() ? 0 : log.samples.front().estimate.size();
    const std::size_t n = log.samples.empty() ? 0 : log.samples.front().constraint_angles.size();

    const auto cols = trajectory_columns(p, n);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << "\n";
    for (const TrajectorySample& s : log.samples) {
        const auto row = trajectory_row(s);
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << "\n";
    }
    if (!out) {
        throw Error("failed writing trajectory file " + path.string());
    }
}

std::size_t CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw ConfigError("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open CSV file " + path.string());
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("CSV file " + path.string() + " is empty");
    }
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            table.header.push_back(cell);
        }
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double value = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
                throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number '" +
                                  cell + "'");
            }
            row.push_back(value);
        }
        if (row.size() != table.header.size()) {
            throw ConfigError("CSV line " + std::to_string(line_no) + " has " +
                              std::to_string(row.size()) + " fields, expected " +
                              std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace geoatt
