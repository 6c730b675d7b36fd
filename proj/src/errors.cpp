#include "geoatt/errors.hpp"

#include <sstream>

namespace geoatt {

namespace {

std::string violation_message(std::size_t index, double cosine, double limit,
                              std::optional<double> time)
{
    std::ostringstream os;
    os.precision(17);
    os << "constraint " << index << " violated: r^T R^T v = " << cosine
       << " >= cos(theta) = " << limit;
    if (time) {
        os << " at t = " << *time;
    }
    return os.str();
}

std::string feasibility_message(const std::string& attitude, std::size_t index, double cosine,
                                double limit)
{
    std::ostringstream os;
    os.precision(17);
    os << attitude << " is infeasible for constraint " << index << ": r^T R^T v = " << cosine
       << " >= cos(theta) = " << limit;
    return os.str();
}

} // namespace

ConstraintViolated::ConstraintViolated(std::size_t index, double cosine, double limit,
                                       std::optional<double> time)
    : Error(violation_message(index, cosine, limit, time)),
      index_(index),
      cosine_(cosine),
      limit_(limit),
      time_(time)
{
}

FeasibilityError::FeasibilityError(std::string attitude, std::size_t index, double cosine,
                                   double limit)
    : Error(feasibility_message(attitude, index, cosine, limit)),
      attitude_(std::move(attitude)),
      index_(index)
{
}

NumericalDivergence::NumericalDivergence(double time, const std::string& what)
    : Error("numerical divergence at t = " + std::to_string(time) + ": " + what), time_(time)
{
}

} // namespace geoatt
