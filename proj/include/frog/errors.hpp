#pragma once

#include <stdexcept>
#include <string>

#include "frog/site.hpp"

namespace frog {

/// Constructor or law parameters outside their admissible range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on an input that violates its precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A trajectory left the region where it can be evaluated.
class WindowExhausted : public std::runtime_error {
public:
    explicit WindowExhausted(const Site& site)
        : std::runtime_error("trajectory left the addressable region at " + to_string(site)), site_(site) {}

    const Site& site() const noexcept { return site_; }

private:
    Site site_;
};

/// The factor chain has no invariant probability measure.
class NoInvariantMeasure : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace frog
