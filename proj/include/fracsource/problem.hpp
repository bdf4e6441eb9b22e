#ifndef FRACSOURCE_PROBLEM_HPP
#define FRACSOURCE_PROBLEM_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fracsource/grids.hpp"
#include "fracsource/spectral.hpp"

namespace fracsource {

/// Problem data for D_t^alpha u - Lap_x u - Lap_y u = g + f h on
/// (0,T) x (0,1) x Omega with Dirichlet walls and u(0,.) = phi.
struct ProblemData {
    using SpaceTimeSampler = std::function<double(double t, double x,
                                                  const Eigen::Ref<const Eigen::VectorXd>& y)>;
    using InitialSampler = std::function<double(double x, const Eigen::Ref<const Eigen::VectorXd>& y)>;
    using YSampler = std::function<double(const Eigen::Ref<const Eigen::VectorXd>& y)>;
    using TXSampler = std::function<double(double t, double x)>;
    using YGradientSampler = std::function<Eigen::VectorXd(const Eigen::Ref<const Eigen::VectorXd>& y)>;

    SpaceTimeSampler f, g;
    InitialSampler phi;
    YSampler omega;
    TXSampler psi;

    /// Analytic D_t^alpha psi; when absent the L1 derivative of psi is used
    /// and reports carry the measurement-mode flag.
    TXSampler dpsi_caputo;
    /// Analytic gradient of omega; finite differences otherwise.
    YGradientSampler omega_grad;

    YDomain y_domain{std::vector<double>{3.14159265358979323846}};
    double T = 1.0;
};

/// Per-mode coefficient trajectories u_k(t_i, x_j), k = 1..K.
struct SpectralField {
    TimeGrid tgrid;
    XGrid xgrid;
    std::vector<Eigen::MatrixXd> modes; // K matrices of size N x M

    SpectralField(TimeGrid tg, XGrid xg, int K)
        : tgrid(tg), xgrid(xg),
          modes(K, Eigen::MatrixXd::Zero(tg.size(), xg.size())) {}

    int mode_count() const { return static_cast<int>(modes.size()); }

    /// Pointwise value u(t_i, x_j, y) of the truncated expansion.
    double value(int i, int j, const Eigen::Ref<const Eigen::VectorXd>& y,
                 const EigenBasis& basis) const {
        double s = 0.0;
        for (int k = 0; k < mode_count(); ++k)
            s += modes[k](i, j) * basis.eigenfunction(k, y);
        return s;
    }
};

/// Basis projections of the data, shared by the forward and inverse drivers.
/// f_k/g_k are Fourier coefficients per (t, x); f_omega/g_omega are the exact
/// quadrature inner products (f(t,x,.), omega) and (g(t,x,.), omega).
struct ProjectedData {
    std::vector<Eigen::MatrixXd> f_k, g_k; // K of N x M
    Eigen::MatrixXd f_omega, g_omega;      // N x M
    Eigen::MatrixXd phi_k;                 // K x M
    Eigen::VectorXd omega_k;               // K
    Eigen::VectorXd gamma_k;               // lambda_k * omega_k
    double grad_omega_sq = 0.0;
    bool omega_boundary_warning = false;
    Eigen::MatrixXd psi;                   // N x M
    Eigen::MatrixXd dpsi;                  // N x M, Caputo derivative of psi
    bool dpsi_analytic = false;
    Eigen::MatrixXd lap_psi;               // N x M
};

ProjectedData project_data(const ProblemData& data, const EigenBasis& basis,
                           const TimeGrid& tgrid, const XGrid& xgrid,
                           FractionalOrder alpha);

} // namespace fracsource

#endif
