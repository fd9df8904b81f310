#ifndef PARASOL_ERRORS_HPP
#define PARASOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace parasol {

/// Bad grid, mismatched sizes, invalid parameter combinations.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The scaling hypothesis alpha in (1/k, d/k] of the local well-posedness
/// theory does not hold for the requested system.
struct scaling_hypothesis_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A weighted norm exceeded the representable range.
struct overflow_error : std::range_error {
    overflow_error(const std::string& what, double xi)
        : std::range_error(what), offending_xi(xi) {}
    double offending_xi;
};

/// The blow-up guard tripped during time integration.
struct blowup_error : std::runtime_error {
    blowup_error(const std::string& what, double t, double norm)
        : std::runtime_error(what), time(t), norm_value(norm) {}
    double time;
    double norm_value;
};

/// Step-size control drove dt below the representable floor.
struct stepsize_underflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Picard iteration failed to contract.
struct non_contraction_error : std::runtime_error {
    non_contraction_error(const std::string& what, double r)
        : std::runtime_error(what), measured_ratio(r) {}
    double measured_ratio;
};

/// Configuration file rejected (unknown key, bad value, missing field).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace parasol

#endif
