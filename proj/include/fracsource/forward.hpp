#ifndef FRACSOURCE_FORWARD_HPP
#define FRACSOURCE_FORWARD_HPP

#include "fracsource/problem.hpp"

namespace fracsource {

/// One spectral mode of the coupled system:
///   D_t^alpha u_k - u_k'' + lambda_k u_k = rhs,  u_k(0,.) = phi_k,
/// Dirichlet ends, solved by fully implicit L1 stepping with central second
/// differences (each step one tridiagonal solve). With correction enabled the
/// right-hand side carries initial-layer terms that keep the scheme accurate
/// of order 2-alpha at fixed times for data with t^alpha start-up layers.
Eigen::MatrixXd solve_mode(double lambda_k, const Eigen::MatrixXd& rhs,
                           const Eigen::VectorXd& phi_k, const TimeGrid& tgrid,
                           const XGrid& xgrid, FractionalOrder alpha,
                           bool initial_layer_correction = true);

/// Forward problem for a known h: projects g + f h and phi onto the basis and
/// solves the decoupled modes. h is sampled on the (t, x) grid.
SpectralField forward_solve(const Eigen::MatrixXd& h, const ProblemData& data,
                            const EigenBasis& basis, const TimeGrid& tgrid,
                            const XGrid& xgrid, FractionalOrder alpha,
                            int workers = 1, bool initial_layer_correction = true);

/// Same, reusing precomputed projections.
SpectralField forward_solve(const Eigen::MatrixXd& h, const ProjectedData& proj,
                            const EigenBasis& basis, const TimeGrid& tgrid,
                            const XGrid& xgrid, FractionalOrder alpha,
                            int workers = 1, bool initial_layer_correction = true);

/// Parseval form of the measurement: psi_hat(t, x) = sum_k u_k(t, x) omega_k.
Eigen::MatrixXd evaluate_overdetermination(const SpectralField& field,
                                           const Eigen::Ref<const Eigen::VectorXd>& omega_coeffs);

namespace detail {

/// Runs fn(k) for k in [0, count) on the given number of workers.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

} // namespace detail

} // namespace fracsource

#endif
