#ifndef GEOATT_ERRORS_HPP
#define GEOATT_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace geoatt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSkew : public Error {
public:
    using Error::Error;
};

class InvalidRotation : public Error {
public:
    using Error::Error;
};

class ProjectionFailed : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// An attitude on or beyond the boundary of an exclusion cone.
class ConstraintViolated : public Error {
public:
    ConstraintViolated(std::size_t index, double cosine, double limit,
                       std::optional<double> time = std::nullopt);

    std::size_t index() const { return index_; }
    double cosine() const { return cosine_; }
    double limit() const { return limit_; }
    std::optional<double> time() const { return time_; }

private:
    std::size_t index_;
    double cosine_;
    double limit_;
    std::optional<double> time_;
};

class FeasibilityError : public Error {
public:
    FeasibilityError(std::string attitude, std::size_t index, double cosine, double limit);

    const std::string& attitude() const { return attitude_; }
    std::size_t index() const { return index_; }

private:
    std::string attitude_;
    std::size_t index_;
};

class NumericalDivergence : public Error {
public:
    NumericalDivergence(double time, const std::string& what);

    double time() const { return time_; }

private:
    double time_;
};

} // namespace geoatt

#endif // GEOATT_ERRORS_HPP
