#ifndef FRACSOURCE_INVERSE_HPP
#define FRACSOURCE_INVERSE_HPP

#include <optional>
#include <string>

#include "fracsource/forward.hpp"

namespace fracsource {

struct compatibility_error : std::runtime_error {
    double residual;
    compatibility_error(const std::string& msg, double r)
        : std::runtime_error(msg), residual(r) {}
};

struct SolverConfig {
    int K = 8;
    double epsilon = 0.5;
    int max_iters = 40;
    /// stop once W_i / W_1 drops below this
    double tol_rel = 1e-8;
    /// denominator guard, relative to max |(f, omega)|
    double delta_denominator_rel = 1e-8;
    int workers = 1;
    bool initial_layer_correction = true;

    void validate() const {
        if (K < 1) throw std::invalid_argument("SolverConfig: K must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("SolverConfig: epsilon must be positive");
        if (!(tol_rel > 0.0)) throw std::invalid_argument("SolverConfig: tol_rel must be positive");
        if (!(delta_denominator_rel > 0.0))
            throw std::invalid_argument("SolverConfig: delta guard must be positive");
        if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    }
};

/// Numerical instantiation of the Theorem-1 quantities with per-condition flags.
struct ConditionsReport {
    double f0 = 0.0;          // max |1/(f, omega)|
    double g0 = 0.0;          // max |(g, omega)|
    double psi0 = 0.0;        // max (|D^alpha psi| + |Lap_x psi|)
    CEpsilon c_eps{0.0, 0.0};
    double two_tau_value = 0.0;
    double M = 0.0;           // max(E_alpha(3 T^alpha), Gamma(alpha) E_{alpha,alpha}(3 T^alpha))
    double M_alpha = 0.0;     // M T^alpha
    double grad_omega_sq = 0.0;
    double f_tau_max = 0.0;   // max_{t,x} ||f(t,x,.)||_tau^2
    double f_star = 0.0;      // max_t ||f(t,.,.)||^2_{tau,G}
    double g_star = 0.0;
    double phi_star = 0.0;
    double kappa = 0.0;       // M_alpha C_eps f0^2 ||grad omega||^2 f_tau_max
    double A0 = 0.0;
    double A1 = 0.0;
    double f_l2d_max = 0.0;   // max_t ||f(t,.,.)||^2_{L2(D)}
    double g_l2d_max = 0.0;
    double f_l2omega_max = 0.0; // max_{t,x} ||f(t,x,.)||^2_{L2(Omega)}
    double phi_l2d_sq = 0.0;
    double grad_phi_x_sq = 0.0;
    double grad_phi_y_sq = 0.0;
    double compatibility_residual = 0.0; // ||int phi omega dy - psi(0,.)||_{L2(G)}
    double denominator_min = 0.0;
    double delta = 0.0;
    bool dpsi_analytic = false;

    // lambda^{2 tau}-energy fraction carried by the top quarter of modes;
    // large values indicate the data is not resolved in D(A^tau) at this K
    double f_tau_tail_fraction = 0.0;
    double g_tau_tail_fraction = 0.0;
    double phi_tau_tail_fraction = 0.0;

    enum class KappaBand { Guaranteed, PaperMarginal, Violated };
    KappaBand kappa_band = KappaBand::Guaranteed;

    bool cond1_denominator = false;
    bool cond2_g_finite = false;
    bool cond3_psi_finite = false;
    bool cond4_kappa = false;      // kappa <= 1 and f decay resolved
    bool cond5_g_decay = false;
    bool cond6_phi_decay = false;
    bool cond7_compatibility = false;

    bool hard_requirements_ok() const { return cond1_denominator && cond7_compatibility; }
    static const char* band_name(KappaBand b) {
        switch (b) {
            case KappaBand::Guaranteed: return "contraction-guaranteed";
            case KappaBand::PaperMarginal: return "paper-marginal";
            default: return "violated";
        }
    }
};

ConditionsReport check_conditions(const ProblemData& data, double epsilon,
                                  const EigenBasis& basis, const TimeGrid& tgrid,
                                  const XGrid& xgrid, FractionalOrder alpha,
                                  double delta_denominator_rel = 1e-8);

ConditionsReport check_conditions(const ProjectedData& proj, double epsilon,
                                  const EigenBasis& basis, const TimeGrid& tgrid,
                                  const XGrid& xgrid, FractionalOrder alpha, double T,
                                  double delta_denominator_rel = 1e-8);

/// h(t,x) = [D^alpha psi - Lap_x psi - (g, omega) + sum_j lambda_j omega_j u_j] / (f, omega).
/// Throws denominator_degeneracy_error naming the first offending node when
/// |(f, omega)| < delta anywhere.
Eigen::MatrixXd reconstruct_h(const ProjectedData& proj, const SpectralField& u,
                              const Eigen::Ref<const Eigen::VectorXd>& gamma_k,
                              double delta);

/// State of the successive-approximation iteration; u^0 = 0.
struct IterationState {
    int iter = 0;
    SpectralField current;
    SpectralField previous;
    /// W_i = max_t sum_k lambda_k^{2 tau} ||u_k^i - u_k^{i-1}||^2_{L2(G)}
    double W = 0.0;
    Eigen::MatrixXd h;

    IterationState(TimeGrid tg, XGrid xg, int K)
        : current(tg, xg, K), previous(tg, xg, K),
          h(Eigen::MatrixXd::Zero(tg.size(), xg.size())) {}
};

/// max_t sum_k lambda_k^{2 tau} ||a_k(t,.) - b_k(t,.)||^2_{L2(G)}
double weighted_max_diff(const SpectralField& a, const SpectralField& b,
                         const EigenBasis& basis, double epsilon);

/// One Picard sweep: mode-wise solves against the coupling sum of the previous
/// iterate. Precomputed projections are shared across steps.
IterationState picard_step(const IterationState& state, const ProjectedData& proj,
                           const EigenBasis& basis, const TimeGrid& tgrid,
                           const XGrid& xgrid, FractionalOrder alpha,
                           const SolverConfig& config);

struct InverseResult {
    SpectralField u;
    Eigen::MatrixXd h;
    std::vector<double> W_history;
    std::vector<double> ratios; // r_i = W_{i+1} / W_i
    ConditionsReport report;
    int iterations = 0;
    bool converged = false;
};

/// Full inverse solve: condition checks, successive approximations from u^0 = 0,
/// h-reconstruction on the final field.
InverseResult inverse_solve(const ProblemData& data, const SolverConfig& config,
                            const EigenBasis& basis, const TimeGrid& tgrid,
                            const XGrid& xgrid, FractionalOrder alpha);

} // namespace fracsource

#endif
