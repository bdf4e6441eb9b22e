#ifndef FRACSOURCE_GRIDS_HPP
#define FRACSOURCE_GRIDS_HPP

#include <Eigen/Dense>

#include "fracsource/errors.hpp"

namespace fracsource {

/// Uniform time grid on [0, T] with n nodes, t_i = i * dt, dt = T / (n - 1).
class TimeGrid {
public:
    TimeGrid(double T, int n) : T_(T), n_(n) {
        if (!(T > 0.0)) throw invalid_grid_error("TimeGrid: final time must be positive");
        if (n < 2) throw invalid_grid_error("TimeGrid: need at least 2 nodes");
    }

    double T() const { return T_; }
    int size() const { return n_; }
    double dt() const { return T_ / (n_ - 1); }
    double node(int i) const { return i == n_ - 1 ? T_ : i * dt(); }

    Eigen::VectorXd nodes() const { return Eigen::VectorXd::LinSpaced(n_, 0.0, T_); }

    bool operator==(const TimeGrid& o) const { return T_ == o.T_ && n_ == o.n_; }

private:
    double T_;
    int n_;
};

/// Uniform grid on G = (0, 1) including the Dirichlet endpoints.
class XGrid {
public:
    explicit XGrid(int m) : m_(m) {
        if (m < 3) throw invalid_grid_error("XGrid: need at least 3 nodes");
    }

    int size() const { return m_; }
    double dx() const { return 1.0 / (m_ - 1); }
    double node(int j) const { return j == m_ - 1 ? 1.0 : j * dx(); }

    Eigen::VectorXd nodes() const { return Eigen::VectorXd::LinSpaced(m_, 0.0, 1.0); }

    /// Trapezoid weights for integrals over G.
    Eigen::VectorXd quad_weights() const {
        Eigen::VectorXd w = Eigen::VectorXd::Constant(m_, dx());
        w(0) *= 0.5;
        w(m_ - 1) *= 0.5;
        return w;
    }

    bool operator==(const XGrid& o) const { return m_ == o.m_; }

private:
    int m_;
};

/// Caputo order; alpha = 1 is admitted as the parabolic limit.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || alpha > 1.0)
            throw std::domain_error("FractionalOrder: alpha must lie in (0, 1]");
    }
    double value() const { return alpha_; }

private:
    double alpha_;
};

/// Scalar signal sampled on a TimeGrid.
struct SampledSignal {
    TimeGrid grid;
    Eigen::VectorXd values;
    /// Set when the t_0 value was copied from t_1 (Caputo output).
    bool first_node_extrapolated = false;

    SampledSignal(TimeGrid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw shape_error("SampledSignal: value count must match grid node count");
        if (!values.allFinite())
            throw std::domain_error("SampledSignal: values must be finite");
    }

    int size() const { return grid.size(); }
};

} // namespace fracsource

#endif
