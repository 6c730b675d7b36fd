#ifndef GEOATT_TESTS_SUPPORT_HPP
#define GEOATT_TESTS_SUPPORT_HPP

#include <filesystem>
#include <random>

#include <Eigen/Dense>

#include "geoatt/scenario_io.hpp"

namespace geoatt::test {

inline std::filesystem::path source_dir()
{
    return GEOATT_SOURCE_DIR;
}

inline std::filesystem::path paper_scenario_path()
{
    return source_dir() / "scenarios" / "paper_sec4.cfg";
}

inline ScenarioConfig paper_scenario()
{
    return load_scenario(paper_scenario_path());
}

inline double max_abs(const Eigen::MatrixXd& M)
{
    return M.cwiseAbs().maxCoeff();
}

inline Eigen::Matrix3d gaussian_matrix(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    Eigen::Matrix3d M;
    for (int i = 0; i < 9; ++i) {
        M(i / 3, i % 3) = n(rng);
    }
    return M;
}

inline Eigen::Vector3d gaussian_vector(std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    return {n(rng), n(rng), n(rng)};
}

// Unique per-test scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("geoatt_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace geoatt::test

#endif // GEOATT_TESTS_SUPPORT_HPP
