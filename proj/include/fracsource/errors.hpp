#ifndef FRACSOURCE_ERRORS_HPP
#define FRACSOURCE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fracsource {

struct invalid_grid_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unsupported_range_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct unsupported_domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct series_divergence_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when |(f(t,x,.), omega)| falls below the configured guard.
struct denominator_degeneracy_error : std::runtime_error {
    double t, x;
    denominator_degeneracy_error(const std::string& msg, double t_, double x_)
        : std::runtime_error(msg), t(t_), x(x_) {}
};

/// Raised when the Picard iteration expands for several consecutive steps.
struct divergence_error : std::runtime_error {
    std::vector<double> ratio_history;
    divergence_error(const std::string& msg, std::vector<double> ratios)
        : std::runtime_error(msg), ratio_history(std::move(ratios)) {}
};

struct no_convergence_error : std::runtime_error {
    double last_w;
    no_convergence_error(const std::string& msg, double w)
        : std::runtime_error(msg), last_w(w) {}
};

struct insufficient_history_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace fracsource

#endif
