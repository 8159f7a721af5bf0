#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdt {

/// Invalid parameters, configuration, or preconditions. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite value encountered while integrating. Maps to CLI exit code 2.
class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(std::int64_t step, std::size_t cell, int component, const std::string& what)
        : std::runtime_error(what), step_(step), cell_(cell), component_(component) {}

    std::int64_t step() const noexcept { return step_; }
    std::size_t cell() const noexcept { return cell_; }
    int component() const noexcept { return component_; }

private:
    std::int64_t step_;
    std::size_t cell_;
    int component_;
};

}  // namespace rdt
