#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toreesnn {

// Base for every failure raised by the library. `InvalidArgument` covers
// precondition violations; `DivergenceError` a numerical runaway.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Wraps a failure inside one experiment stage with the stage name and seed.
class StageError : public Error {
public:
    StageError(std::string stage, unsigned long long seed, const std::string& cause,
               bool divergence)
        : Error("stage '" + stage + "' failed for seed " + std::to_string(seed) + ": " + cause),
          stage_(std::move(stage)),
          seed_(seed),
          divergence_(divergence) {}
    const std::string& stage() const noexcept { return stage_; }
    unsigned long long seed() const noexcept { return seed_; }
    bool divergence() const noexcept { return divergence_; }

private:
    std::string stage_;
    unsigned long long seed_;
    bool divergence_;
};

}  // namespace toreesnn
