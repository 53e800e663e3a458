#pragma once

#include <stdexcept>
#include <string>

#include "sedsim/state.hpp"

namespace sedsim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Trajectory reached the Coulomb singularity guard radius.  Carries the
// offending state so callers can turn it into a collapse verdict.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const State& s, const std::string& what)
        : std::runtime_error(what), state_(s) {}
    const State& state() const { return state_; }

private:
    State state_;
};

// Adaptive step control underflowed dt_min.
class StiffnessError : public std::runtime_error {
public:
    StiffnessError(const State& s, const std::string& what)
        : std::runtime_error(what), state_(s) {}
    const State& state() const { return state_; }

private:
    State state_;
};

}  // namespace sedsim
