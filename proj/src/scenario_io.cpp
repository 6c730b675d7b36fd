#include "geoatt/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "geoatt/errors.hpp"

namespace geoatt {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string where(const YAML::Node& node, const std::string& key)
{
    std::ostringstream os;
    os << "'" << key << "'";
    if (node.Mark().line >= 0) {
        os << " (line " << node.Mark().line + 1 << ")";
    }
    return os.str();
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& key, const std::string& what)
{
    throw ConfigError("scenario key " + where(node, key) + ": " + what);
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed,
                    const std::string& context)
{
    for (const auto& kv : map) {
        const auto name = kv.first.as<std::string>();
        if (!allowed.contains(name)) {
            fail(kv.first, context.empty() ? name : context + "." + name, "unknown key");
        }
    }
}

YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& context = "")
{
    const YAML::Node node = map[key];
    if (!node) {
        throw ConfigError("scenario is missing required key '" +
                          (context.empty() ? key : context + "." + key) + "'");
    }
    return node;
}

double to_double(const YAML::Node& node, const std::string& key)
{
    if (!node.IsScalar()) {
        fail(node, key, "expected a number");
    }
    double value = 0.0;
    if (!YAML::convert<double>::decode(node, value) || !std::isfinite(value)) {
        fail(node, key, "expected a finite number, got '" + node.Scalar() + "'");
    }
    return value;
}

Eigen::VectorXd to_vector(const YAML::Node& node, const std::string& key, Eigen::Index size = -1)
{
    if (!node.IsSequence()) {
        fail(node, key, "expected a list of numbers");
    }
    const auto n = static_cast<Eigen::Index>(node.size());
    if (size >= 0 && n != size) {
        fail(node, key, "expected " + std::to_string(size) + " values, got " + std::to_string(n));
    }
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i) = to_double(node[static_cast<std::size_t>(i)], key);
    }
    return out;
}

Vector3 to_vector3(const YAML::Node& node, const std::string& key)
{
    return to_vector(node, key, 3);
}

Matrix3 to_matrix3(const YAML::Node& node, const std::string& key)
{
    const Eigen::VectorXd flat = to_vector(node, key, 9);
    Matrix3 M;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            M(i, j) = flat(3 * i + j);
        }
    }
    return M;
}

template <typename F>
auto guarded(const YAML::Node& node, const std::string& key, F&& f)
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(node, key, e.what());
    }
}

Rotation to_rotation(const YAML::Node& node, const std::string& key)
{
    if (node.IsScalar()) {
        if (node.Scalar() == "identity") {
            return Rotation::identity();
        }
        fail(node, key, "expected 'identity', {axis, angle_deg} or {matrix}");
    }
    if (!node.IsMap()) {
        fail(node, key, "expected 'identity', {axis, angle_deg} or {matrix}");
    }
    if (node["matrix"]) {
        reject_unknown(node, {"matrix"}, key);
        const Matrix3 M = to_matrix3(node["matrix"], key + ".matrix");
        return guarded(node, key, [&] { return Rotation(M); });
    }
    reject_unknown(node, {"axis", "angle_deg"}, key);
    const Vector3 axis = to_vector3(require(node, "axis", key), key + ".axis");
    const double angle = to_double(require(node, "angle_deg", key), key + ".angle_deg");
    const double n = axis.norm();
    if (!(n > 0.0)) {
        fail(node, key, "rotation axis must be nonzero");
    }
    return exp_so3((angle * kDegToRad / n) * axis);
}

UnitVector3 to_unit(const YAML::Node& node, const std::string& key)
{
    const Vector3 v = to_vector3(node, key);
    return guarded(node, key, [&] { return UnitVector3::normalized(v); });
}

ConstraintSpec to_constraint(const YAML::Node& node, const std::string& key,
                             std::optional<double> default_alpha)
{
    if (!node.IsMap()) {
        fail(node, key, "expected a map with v, theta_deg and alpha");
    }
    reject_unknown(node, {"v", "theta_deg", "theta_rad", "alpha"}, key);
    const UnitVector3 v = to_unit(require(node, "v", key), key + ".v");

    double theta = 0.0;
    if (node["theta_deg"] && node["theta_rad"]) {
        fail(node, key, "give either theta_deg or theta_rad, not both");
    }
    if (node["theta_rad"]) {
        theta = to_double(node["theta_rad"], key + ".theta_rad");
    } else {
        const YAML::Node deg = require(node, "theta_deg", key);
        const double d = to_double(deg, key + ".theta_deg");
        if (!(d >= 0.0 && d <= 90.0)) {
            fail(deg, key + ".theta_deg", "half-angle must lie in [0, 90] degrees");
        }
        theta = std::min(d * kDegToRad, 0.5 * std::numbers::pi);
    }

    double alpha = 0.0;
    if (node["alpha"]) {
        alpha = to_double(node["alpha"], key + ".alpha");
    } else if (default_alpha) {
        alpha = *default_alpha;
    } else {
        fail(node, key, "missing 'alpha' and no top-level default");
    }
    return guarded(node, key, [&] { return ConstraintSpec(v, theta, alpha); });
}

DisturbanceModel to_disturbance(const YAML::Node& node)
{
    const std::string key = "disturbance";
    if (!node.IsMap()) {
        fail(node, key, "expected a map with W_kind and delta");
    }
    reject_unknown(node, {"W_kind", "delta", "W", "bound_W", "bound_delta"}, key);
    const YAML::Node kind_node = require(node, "W_kind", key);
    const DisturbanceKind kind =
        guarded(kind_node, key + ".W_kind",
                [&] { return parse_disturbance_kind(kind_node.as<std::string>()); });
    const Eigen::VectorXd delta = to_vector(require(node, "delta", key), key + ".delta");

    std::optional<double> bound_W;
    std::optional<double> bound_delta;
    if (node["bound_W"]) {
        bound_W = to_double(node["bound_W"], key + ".bound_W");
    }
    if (node["bound_delta"]) {
        bound_delta = to_double(node["bound_delta"], key + ".bound_delta");
    }

    if (kind == DisturbanceKind::Identity) {
        if (node["W"]) {
            fail(node["W"], key + ".W", "only allowed with W_kind: constant");
        }
        return guarded(node, key,
                       [&] { return DisturbanceModel::identity(delta, bound_W, bound_delta); });
    }
    const Eigen::VectorXd flat =
        to_vector(require(node, "W", key), key + ".W", 3 * delta.size());
    Eigen::MatrixXd W(3, delta.size());
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < delta.size(); ++j) {
            W(i, j) = flat(i * delta.size() + j);
        }
    }
    return guarded(node, key,
                   [&] { return DisturbanceModel::constant(W, delta, bound_W, bound_delta); });
}

ScenarioConfig from_yaml(const YAML::Node& root)
{
    if (!root.IsMap()) {
        throw ConfigError("scenario document must be a map of keys");
    }
    reject_unknown(root,
                   {"inertia", "gain_G", "k_R", "k_omega", "k_delta", "c", "alpha", "sensor_axis",
                    "constraints", "R0", "omega0", "Rd", "disturbance", "estimate0", "mode", "dt",
                    "t_final", "tolerances", "stop_on_convergence", "log_decimation"},
                   "");

    const YAML::Node inertia_node = require(root, "inertia");
    const Matrix3 J = to_matrix3(inertia_node, "inertia");
    const InertiaMatrix inertia = guarded(inertia_node, "inertia", [&] { return InertiaMatrix(J); });

    const YAML::Node g_node = require(root, "gain_G");
    const Vector3 g = to_vector3(g_node, "gain_G");
    const GainMatrix G = guarded(g_node, "gain_G", [&] { return GainMatrix(g); });

    const double k_R = to_double(require(root, "k_R"), "k_R");
    const double k_omega = to_double(require(root, "k_omega"), "k_omega");
    const double k_delta = to_double(require(root, "k_delta"), "k_delta");
    const double c = to_double(require(root, "c"), "c");
    const ControllerGains gains =
        guarded(root, "k_R", [&] { return ControllerGains(k_R, k_omega, k_delta, c); });

    std::optional<double> default_alpha;
    if (root["alpha"]) {
        default_alpha = to_double(root["alpha"], "alpha");
    }

    const SensorAxis sensor = to_unit(require(root, "sensor_axis"), "sensor_axis");

    std::vector<ConstraintSpec> constraints;
    if (root["constraints"]) {
        const YAML::Node list = root["constraints"];
        if (!list.IsSequence()) {
            fail(list, "constraints", "expected a list");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            constraints.push_back(
                to_constraint(list[i], "constraints[" + std::to_string(i) + "]", default_alpha));
        }
    }

    const Rotation R0 = to_rotation(require(root, "R0"), "R0");
    const Rotation Rd = to_rotation(require(root, "Rd"), "Rd");
    const Vector3 omega0 =
        root["omega0"] ? to_vector3(root["omega0"], "omega0") : Vector3(Vector3::Zero());

    const DisturbanceModel disturbance =
        root["disturbance"] ? to_disturbance(root["disturbance"]) : DisturbanceModel();
    Eigen::VectorXd estimate0;
    if (root["estimate0"]) {
        estimate0 = to_vector(root["estimate0"], "estimate0", disturbance.dimension());
    }

    ControllerMode mode = ControllerMode::Adaptive;
    if (root["mode"]) {
        const YAML::Node m = root["mode"];
        mode = guarded(m, "mode", [&] { return parse_controller_mode(m.as<std::string>()); });
    }

    ConvergenceCriteria conv;
    if (root["tolerances"]) {
        const YAML::Node tol = root["tolerances"];
        if (!tol.IsMap()) {
            fail(tol, "tolerances", "expected a map with attitude, rate, window");
        }
        reject_unknown(tol, {"attitude", "rate", "window"}, "tolerances");
        if (tol["attitude"]) {
            conv.attitude = to_double(tol["attitude"], "tolerances.attitude");
        }
        if (tol["rate"]) {
            conv.rate = to_double(tol["rate"], "tolerances.rate");
        }
        if (tol["window"]) {
            conv.window = to_double(tol["window"], "tolerances.window");
        }
    }

    ScenarioConfig cfg{
        .inertia = inertia,
        .G = G,
        .gains = gains,
        .sensor = sensor,
        .constraints = std::move(constraints),
        .R0 = R0,
        .omega0 = omega0,
        .Rd = Rd,
        .disturbance = disturbance,
        .estimate0 = estimate0,
        .mode = mode,
        .dt = to_double(require(root, "dt"), "dt"),
        .t_final = to_double(require(root, "t_final"), "t_final"),
        .convergence = conv,
    };
    if (root["stop_on_convergence"]) {
        const YAML::Node s = root["stop_on_convergence"];
        bool flag = true;
        if (!YAML::convert<bool>::decode(s, flag)) {
            fail(s, "stop_on_convergence", "expected true or false");
        }
        cfg.stop_on_convergence = flag;
    }
    if (root["log_decimation"]) {
        const YAML::Node d = root["log_decimation"];
        long long n = 0;
        if (!YAML::convert<long long>::decode(d, n) || n < 1) {
            fail(d, "log_decimation", "expected a positive integer");
        }
        cfg.log_decimation = static_cast<std::size_t>(n);
    }
    cfg.validate();
    return cfg;
}

std::string list(const double* data, std::size_t n)
{
    std::string out = "[";
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_double(data[i]);
    }
    return out + "]";
}

std::string list(const Eigen::VectorXd& v)
{
    return list(v.data(), static_cast<std::size_t>(v.size()));
}

std::string row_major(const Eigen::MatrixXd& M)
{
    std::vector<double> flat;
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            flat.push_back(M(i, j));
        }
    }
    return list(flat.data(), flat.size());
}

// Degrees are preferred in files, but only when the value converts back to
// exactly the stored radians; otherwise radians are written.
std::string theta_entry(double theta)
{
    double deg = theta * kRadToDeg;
    for (int i = 0; i < 8; ++i) {
        if (deg * kDegToRad == theta) {
            return "theta_deg: " + format_double(deg);
        }
        deg = std::nextafter(deg, deg * kDegToRad < theta ? INFINITY : -INFINITY);
    }
    return "theta_rad: " + format_double(theta);
}

} // namespace

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string s(buf.data(), res.ptr);
    // Keep integral values recognisable as reals.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

ScenarioConfig parse_scenario(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("scenario is not valid YAML: ") + e.what());
    }
    try {
        return from_yaml(root);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("scenario could not be read: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_scenario(const ScenarioConfig& cfg)
{
    std::ostringstream os;
    os << "inertia: " << row_major(cfg.inertia.matrix()) << "\n";
    os << "gain_G: " << list(cfg.G.diagonal()) << "\n";
    os << "k_R: " << format_double(cfg.gains.k_R()) << "\n";
    os << "k_omega: " << format_double(cfg.gains.k_Omega()) << "\n";
    os << "k_delta: " << format_double(cfg.gains.k_Delta()) << "\n";
    os << "c: " << format_double(cfg.gains.c()) << "\n";
    os << "sensor_axis: " << list(cfg.sensor.vector()) << "\n";
    if (cfg.constraints.empty()) {
        os << "constraints: []\n";
    } else {
        os << "constraints:\n";
        for (const ConstraintSpec& cs : cfg.constraints) {
            os << "  - {v: " << list(cs.direction().vector()) << ", " << theta_entry(cs.theta())
               << ", alpha: " << format_double(cs.alpha()) << "}\n";
        }
    }
    os << "R0: {matrix: " << row_major(cfg.R0.matrix()) << "}\n";
    os << "omega0: " << list(cfg.omega0) << "\n";
    os << "Rd: {matrix: " << row_major(cfg.Rd.matrix()) << "}\n";
    os << "disturbance:\n";
    os << "  W_kind: " << to_string(cfg.disturbance.kind()) << "\n";
    if (cfg.disturbance.kind() == DisturbanceKind::ConstantMatrix) {
        os << "  W: " << row_major(cfg.disturbance.constant_matrix()) << "\n";
    }
    os << "  delta: " << list(cfg.disturbance.delta()) << "\n";
    os << "  bound_W: " << format_double(cfg.disturbance.bound_W()) << "\n";
    os << "  bound_delta: " << format_double(cfg.disturbance.bound_delta()) << "\n";
    if (cfg.estimate0.size() > 0) {
        os << "estimate0: " << list(cfg.estimate0) << "\n";
    }
    os << "mode: " << to_string(cfg.mode) << "\n";
    os << "dt: " << format_double(cfg.dt) << "\n";
    os << "t_final: " << format_double(cfg.t_final) << "\n";
    os << "tolerances: {attitude: " << format_double(cfg.convergence.attitude)
       << ", rate: " << format_double(cfg.convergence.rate)
       << ", window: " << format_double(cfg.convergence.window) << "}\n";
    os << "stop_on_convergence: " << (cfg.stop_on_convergence ? "true" : "false") << "\n";
    os << "log_decimation: " << cfg.log_decimation << "\n";
    return os.str();
}

void write_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write scenario file " + path.string());
    }
    out << format_scenario(cfg);
    if (!out) {
        throw ConfigError("failed writing scenario file " + path.string());
    }
}

} // namespace geoatt
