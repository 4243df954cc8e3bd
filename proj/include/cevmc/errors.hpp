#pragma once

#include <stdexcept>
#include <string>

namespace cevmc {

// Parameter outside its admissible interval; carries the field name.
class ParamOutOfRange : public std::invalid_argument {
public:
    ParamOutOfRange(std::string field, const std::string& admissible)
        : std::invalid_argument("parameter '" + field + "' out of range, admissible: " + admissible),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// An unclamped negative variance reached the asset-path integrator.
class NegativeVariance : public std::domain_error {
public:
    explicit NegativeVariance(std::size_t step)
        : std::domain_error("negative variance at step " + std::to_string(step)) {}
};

// A volatility path hit a non-positive value even after flooring.
class DegeneratePath : public std::domain_error {
public:
    explicit DegeneratePath(std::size_t step)
        : std::domain_error("non-positive volatility at step " + std::to_string(step)) {}
};

class ConfigParse : public std::runtime_error {
public:
    explicit ConfigParse(const std::string& what) : std::runtime_error("config: " + what) {}
};

class IoFailure : public std::runtime_error {
public:
    explicit IoFailure(const std::string& what) : std::runtime_error("io: " + what) {}
};

} // namespace cevmc
