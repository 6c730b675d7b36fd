// Command-line front end: simulate a scenario, export an error-function grid,
// or run the property checks on a scenario's parameters.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <yaml-cpp/exceptions.h>

#include "geoatt/errors.hpp"
#include "geoatt/grid.hpp"
#include "geoatt/plots.hpp"
#include "geoatt/scenario_io.hpp"
#include "geoatt/simulator.hpp"
#include "geoatt/trajectory_io.hpp"
#include "geoatt/verification.hpp"

namespace fs = std::filesystem;
using namespace geoatt;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRunFailure = 2;
constexpr int kCheckFailed = 3;

void warn_uncertified(const ScenarioConfig& cfg)
{
    if (cfg.mode != ControllerMode::Adaptive && cfg.mode != ControllerMode::AdaptiveFrozen) {
        return;
    }
    const GainCertificate cert = scenario_certificate(cfg);
    if (!cert.certified) {
        std::fprintf(stderr,
                     "warning: c = %g is not below c_max = %.6g (H = %.6g, lambda_M = %.6g); "
                     "the Lyapunov certificate does not apply\n",
                     cfg.gains.c(), cert.c_max, cert.H, cert.lambda_M);
    }
}

int simulate(const std::string& scenario, const fs::path& out_dir, bool plots,
             std::size_t decimation, const std::string& mode)
{
    ScenarioConfig cfg = load_scenario(scenario);
    if (decimation > 0) {
        cfg.log_decimation = decimation;
    }
    if (!mode.empty()) {
        cfg.mode = parse_controller_mode(mode);
    }
    warn_uncertified(cfg);

    const SimulationResult res = run(cfg);

    fs::create_directories(out_dir);
    write_trajectory(res.log, out_dir / "trajectory.csv");
    if (plots) {
        render_plots(res.log, cfg, out_dir);
    }

    nlohmann::json summary;
    summary["mode"] = std::string(to_string(cfg.mode));
    summary["converged"] = res.converged;
    summary["convergence_time"] =
        res.convergence_time ? nlohmann::json(*res.convergence_time) : nlohmann::json(nullptr);
    summary["final_time"] = res.final_time;
    summary["final_psi"] = res.final_psi;
    summary["min_margin"] =
        cfg.constraints.empty() ? nlohmann::json(nullptr) : nlohmann::json(res.min_margin);
    summary["max_orthogonality_error"] = res.max_orthogonality_error;
    summary["steps"] = res.steps;
    summary["final_estimate"] = std::vector<double>(res.final_estimate.estimate.begin(),
                                                    res.final_estimate.estimate.end());
    std::ofstream(out_dir / "summary.json") << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

int grid(const std::string& scenario, const std::string& resolution, const fs::path& out)
{
    const ScenarioConfig cfg = load_scenario(scenario);
    const auto [rows, cols] = parse_resolution(resolution);
    if (out.has_parent_path()) {
        fs::create_directories(out.parent_path());
    }
    const ErrorGrid g =
        export_error_grid(cfg.Rd, cfg.G, cfg.sensor, cfg.constraints, rows, cols, out);
    std::size_t infeasible = 0;
    for (const GridNode& node : g.nodes) {
        infeasible += node.feasible ? 0 : 1;
    }
    std::cout << "wrote " << g.nodes.size() << " nodes (" << infeasible << " infeasible) to "
              << out.string() << "\n";
    return kOk;
}

int verify(const std::string& scenario, std::uint64_t seed)
{
    const ScenarioConfig cfg = load_scenario(scenario);
    const std::vector<CheckResult> checks = verify_scenario(cfg, seed);
    bool all = true;
    for (const CheckResult& c : checks) {
        all = all && c.passed();
        std::printf("%-4s %-40s samples=%-7zu failures=%-6zu worst=%.3e limit=%.3e\n",
                    c.passed() ? "PASS" : "FAIL", c.name.c_str(), c.samples, c.failures, c.worst,
                    c.limit);
    }
    const GainCertificate cert = scenario_certificate(cfg);
    std::printf("certificate: H = %.6g, lambda_M = %.6g, c_max = %.6g, c = %g (%s)\n", cert.H,
                cert.lambda_M, cert.c_max, cfg.gains.c(),
                cert.certified ? "certified" : "not certified");
    return all ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constrained attitude stabilization on SO(3)"};
    app.require_subcommand(1);

    std::string scenario;
    fs::path out_dir = "out";
    bool plots = false;
    std::size_t decimation = 0;
    std::string mode;
    auto* sim = app.add_subcommand("simulate", "integrate the closed loop and write the trajectory");
    sim->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "output directory");
    sim->add_flag("--plots", plots, "also write SVG figures");
    sim->add_option("--decimation", decimation, "log every N-th step")->check(CLI::PositiveNumber);
    sim->add_option("--mode", mode, "override the controller mode")
        ->check(CLI::IsMember({"smooth", "adaptive", "adaptive-off", "passive"}));

    std::string resolution;
    fs::path grid_out;
    auto* grd = app.add_subcommand("grid", "export A, B and Psi over the azimuth/elevation lattice");
    grd->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    grd->add_option("--resolution", resolution, "RxC lattice size")->required();
    grd->add_option("--out", grid_out, "output CSV file")->required();

    std::uint64_t seed = 1;
    auto* ver = app.add_subcommand("verify", "run the property checks on the scenario parameters");
    ver->add_option("scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    ver->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) {
            return simulate(scenario, out_dir, plots, decimation, mode);
        }
        if (*grd) {
            return grid(scenario, resolution, grid_out);
        }
        return verify(scenario, seed);
    } catch (const FeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kRunFailure;
    } catch (const ConstraintViolated& e) {
        std::cerr << "constraint violated: " << e.what() << "\n";
        return kRunFailure;
    } catch (const NumericalDivergence& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return kRunFailure;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const YAML::Exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}
