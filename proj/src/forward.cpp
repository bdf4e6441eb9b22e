#include "fracsource/forward.hpp"

#include <cmath>
#include <thread>

#include "fracsource/fracops.hpp"

namespace fracsource {

namespace detail {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int k = 0; k < count; ++k) fn(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int k = w; k < count; k += workers) fn(k);
        });
    for (auto& th : pool) th.join();
}

} // namespace detail

namespace {

// Thomas factorization of (diag, off) with constant coefficients.
struct Tridiag {
    Eigen::VectorXd denom; // elimination pivots
    double off;
    int n;

    Tridiag(double diag, double off_, int n_) : denom(n_), off(off_), n(n_) {
        denom(0) = diag;
        for (int i = 1; i < n; ++i) denom(i) = diag - off * off / denom(i - 1);
    }

    Eigen::VectorXd solve(Eigen::VectorXd b) const {
        for (int i = 1; i < n; ++i) b(i) -= off / denom(i - 1) * b(i - 1);
        b(n - 1) /= denom(n - 1);
        for (int i = n - 2; i >= 0; --i) b(i) = (b(i) - off * b(i + 1)) / denom(i);
        return b;
    }
};

// Interior action of A = -d^2/dx^2 + lambda on a full grid vector.
Eigen::VectorXd apply_elliptic(const Eigen::VectorXd& v, double lambda, double dx) {
    const int m = static_cast<int>(v.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
    const double idx2 = 1.0 / (dx * dx);
    for (int j = 1; j < m - 1; ++j)
        out(j) = (2.0 * v(j) - v(j - 1) - v(j + 1)) * idx2 + lambda * v(j);
    return out;
}

// L1 residual on the power function t^sigma: L1_n[t^sigma] - D^alpha t^sigma.
Eigen::VectorXd power_residuals(double alpha, double sigma, const TimeGrid& tg,
                                const Eigen::VectorXd& b) {
    const int n = tg.size();
    const double dt = tg.dt();
    const double g2 = std::tgamma(2.0 - alpha);
    const double exact_scale = std::tgamma(sigma + 1.0) / std::tgamma(sigma + 1.0 - alpha);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
    for (int i = 1; i < n; ++i) {
        double hist = 0.0;
        for (int m = 1; m < i; ++m)
            hist += (b(i - m - 1) - b(i - m)) * std::pow(double(m), sigma);
        const double l1 = std::pow(dt, sigma - alpha) / g2 * (std::pow(double(i), sigma) - hist);
        rho(i) = l1 - exact_scale * std::pow(i * dt, sigma - alpha);
    }
    return rho;
}

} // namespace

Eigen::MatrixXd solve_mode(double lambda_k, const Eigen::MatrixXd& rhs,
                           const Eigen::VectorXd& phi_k, const TimeGrid& tgrid,
                           const XGrid& xgrid, FractionalOrder alpha,
                           bool initial_layer_correction) {
    const int n = tgrid.size();
    const int m = xgrid.size();
    if (rhs.rows() != n || rhs.cols() != m)
        throw shape_error("solve_mode: rhs must be sampled on the (t, x) grid");
    if (phi_k.size() != m) throw shape_error("solve_mode: phi_k size mismatch");
    if (!rhs.allFinite() || !phi_k.allFinite())
        throw std::domain_error("solve_mode: data must be finite");
    if (!(lambda_k > 0.0)) throw std::domain_error("solve_mode: lambda_k must be positive");

    const double a = alpha.value();
    const double dt = tgrid.dt();
    const double dx = xgrid.dx();
    const double idx2 = 1.0 / (dx * dx);

    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, m);
    u.row(0) = phi_k.transpose();
    u(0, 0) = u(0, m - 1) = 0.0;

    if (a == 1.0) {
        // backward Euler limit
        const Tridiag lu(1.0 / dt + 2.0 * idx2 + lambda_k, -idx2, m - 2);
        for (int i = 1; i < n; ++i) {
            Eigen::VectorXd b =
                rhs.row(i).segment(1, m - 2).transpose() + u.row(i - 1).segment(1, m - 2).transpose() / dt;
            u.row(i).segment(1, m - 2) = lu.solve(std::move(b)).transpose();
        }
        return u;
    }

    const double beta = std::pow(dt, -a) / std::tgamma(2.0 - a);
    const Eigen::VectorXd b_w = l1_weights(a, n);
    const Tridiag lu(beta + 2.0 * idx2 + lambda_k, -idx2, m - 2);

    // Initial-layer corrections: make the stepping exact on t^{m alpha} for
    // every m with m alpha < 1. Coefficients follow from u ~ phi + J^alpha(rhs - A u).
    int ncorr = 0;
    std::vector<Eigen::VectorXd> corr_coeff; // full-grid vectors, boundary zero
    std::vector<Eigen::VectorXd> corr_rho;
    if (initial_layer_correction) {
        while (ncorr < 4 && (ncorr + 1) * a < 1.0 - 1e-12) ++ncorr;
        if (ncorr > 0) {
            Eigen::VectorXd u0 = u.row(0).transpose();
            Eigen::VectorXd c = (rhs.row(0).transpose() - apply_elliptic(u0, lambda_k, dx)) /
                                std::tgamma(1.0 + a);
            c(0) = c(m - 1) = 0.0;
            for (int q = 0; q < ncorr; ++q) {
                corr_coeff.push_back(c);
                corr_rho.push_back(power_residuals(a, (q + 1) * a, tgrid, b_w));
                c = -apply_elliptic(c, lambda_k, dx) * std::tgamma(1.0 + (q + 1) * a) /
                    std::tgamma(1.0 + (q + 2) * a);
                c(0) = c(m - 1) = 0.0;
            }
        }
    }

    for (int i = 1; i < n; ++i) {
        const Eigen::RowVectorXd hist = detail::l1_known_history(b_w, u, i);
        Eigen::VectorXd b = rhs.row(i).segment(1, m - 2).transpose() +
                            beta * hist.segment(1, m - 2).transpose();
        for (int q = 0; q < ncorr; ++q)
            b += corr_rho[q](i) * corr_coeff[q].segment(1, m - 2);
        u.row(i).segment(1, m - 2) = lu.solve(std::move(b)).transpose();
    }
    return u;
}

ProjectedData project_data(const ProblemData& data, const EigenBasis& basis,
                           const TimeGrid& tgrid, const XGrid& xgrid,
                           FractionalOrder alpha) {
    const int n = tgrid.size();
    const int m = xgrid.size();
    const int K = basis.size();
    const int nq = basis.quad_size();

    ProjectedData p;
    p.f_k.assign(K, Eigen::MatrixXd(n, m));
    p.g_k.assign(K, Eigen::MatrixXd(n, m));
    p.f_omega.resize(n, m);
    p.g_omega.resize(n, m);
    p.phi_k.resize(K, m);
    p.psi.resize(n, m);

    const Eigen::MatrixXd V = basis.quad_values();
    const Eigen::VectorXd& w = basis.quad_weights();

    Eigen::VectorXd omega_vals(nq);
    for (int q = 0; q < nq; ++q)
        omega_vals(q) = data.omega(basis.quad_points().row(q).transpose());
    const Eigen::VectorXd omega_weighted = w.cwiseProduct(omega_vals);
    p.omega_k = V * omega_weighted;

    Eigen::MatrixXd omega_grad_vals;
    if (data.omega_grad) {
        omega_grad_vals.resize(nq, basis.domain().dim());
        for (int q = 0; q < nq; ++q)
            omega_grad_vals.row(q) = data.omega_grad(basis.quad_points().row(q).transpose()).transpose();
    }
    const GradientPairing gp = gradient_pairing(
        basis, omega_vals, data.omega_grad ? &omega_grad_vals : nullptr);
    p.gamma_k = gp.gamma;
    p.grad_omega_sq = gp.grad_omega_sq;
    p.omega_boundary_warning = gp.boundary_warning;

    Eigen::VectorXd samples(nq);
    for (int j = 0; j < m; ++j) {
        const double x = xgrid.node(j);
        for (int q = 0; q < nq; ++q)
            samples(q) = data.phi(x, basis.quad_points().row(q).transpose());
        p.phi_k.col(j) = V * w.cwiseProduct(samples);
    }

    for (int i = 0; i < n; ++i) {
        const double t = tgrid.node(i);
        for (int j = 0; j < m; ++j) {
            const double x = xgrid.node(j);
            for (int q = 0; q < nq; ++q)
                samples(q) = data.f(t, x, basis.quad_points().row(q).transpose());
            Eigen::VectorXd weighted = w.cwiseProduct(samples);
            p.f_omega(i, j) = omega_vals.dot(weighted);
            Eigen::VectorXd coeffs = V * weighted;
            for (int k = 0; k < K; ++k) p.f_k[k](i, j) = coeffs(k);

            for (int q = 0; q < nq; ++q)
                samples(q) = data.g(t, x, basis.quad_points().row(q).transpose());
            weighted = w.cwiseProduct(samples);
            p.g_omega(i, j) = omega_vals.dot(weighted);
            coeffs = V * weighted;
            for (int k = 0; k < K; ++k) p.g_k[k](i, j) = coeffs(k);

            p.psi(i, j) = data.psi(t, x);
        }
    }

    // Caputo derivative of psi: analytic when supplied, L1 otherwise
    p.dpsi.resize(n, m);
    p.dpsi_analytic = static_cast<bool>(data.dpsi_caputo);
    if (p.dpsi_analytic) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) p.dpsi(i, j) = data.dpsi_caputo(tgrid.node(i), xgrid.node(j));
    } else {
        for (int j = 0; j < m; ++j) {
            SampledSignal col(tgrid, p.psi.col(j));
            p.dpsi.col(j) = caputo_l1(col, alpha).values;
        }
    }

    // Lap_x psi: central differences, one-sided second order at the ends
    p.lap_psi.resize(n, m);
    const double idx2 = 1.0 / (xgrid.dx() * xgrid.dx());
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j < m - 1; ++j)
            p.lap_psi(i, j) = (p.psi(i, j + 1) - 2.0 * p.psi(i, j) + p.psi(i, j - 1)) * idx2;
        p.lap_psi(i, 0) =
            (2.0 * p.psi(i, 0) - 5.0 * p.psi(i, 1) + 4.0 * p.psi(i, 2) - p.psi(i, 3)) * idx2;
        p.lap_psi(i, m - 1) = (2.0 * p.psi(i, m - 1) - 5.0 * p.psi(i, m - 2) +
                               4.0 * p.psi(i, m - 3) - p.psi(i, m - 4)) * idx2;
    }
    return p;
}

SpectralField forward_solve(const Eigen::MatrixXd& h, const ProjectedData& proj,
                            const EigenBasis& basis, const TimeGrid& tgrid,
                            const XGrid& xgrid, FractionalOrder alpha, int workers,
                            bool initial_layer_correction) {
    const int K = basis.size();
    if (h.rows() != tgrid.size() || h.cols() != xgrid.size())
        throw shape_error("forward_solve: h must be sampled on the (t, x) grid");
    if (!h.allFinite()) throw std::domain_error("forward_solve: h must be finite");

    SpectralField field(tgrid, xgrid, K);
    detail::parallel_for(K, workers, [&](int k) {
        const Eigen::MatrixXd rhs = proj.g_k[k] + proj.f_k[k].cwiseProduct(h);
        field.modes[k] = solve_mode(basis.eigenvalue(k), rhs, proj.phi_k.row(k).transpose(),
                                    tgrid, xgrid, alpha, initial_layer_correction);
    });
    return field;
}

SpectralField forward_solve(const Eigen::MatrixXd& h, const ProblemData& data,
                            const EigenBasis& basis, const TimeGrid& tgrid,
                            const XGrid& xgrid, FractionalOrder alpha, int workers,
                            bool initial_layer_correction) {
    const ProjectedData proj = project_data(data, basis, tgrid, xgrid, alpha);
    return forward_solve(h, proj, basis, tgrid, xgrid, alpha, workers, initial_layer_correction);
}

Eigen::MatrixXd evaluate_overdetermination(const SpectralField& field,
                                           const Eigen::Ref<const Eigen::VectorXd>& omega_coeffs) {
    if (omega_coeffs.size() < field.mode_count())
        throw shape_error("evaluate_overdetermination: omega coefficient count mismatch");
    Eigen::MatrixXd psi_hat =
        Eigen::MatrixXd::Zero(field.tgrid.size(), field.xgrid.size());
    for (int k = 0; k < field.mode_count(); ++k) psi_hat += omega_coeffs(k) * field.modes[k];
    return psi_hat;
}

} // namespace fracsource
