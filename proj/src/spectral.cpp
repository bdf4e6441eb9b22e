#include "fracsource/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fracsource {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd simpson_weights(int nodes, double length) {
    // composite Simpson on [0, L], nodes odd
    Eigen::VectorXd w(nodes);
    const double h = length / (nodes - 1);
    w(0) = w(nodes - 1) = h / 3.0;
    for (int i = 1; i < nodes - 1; ++i) w(i) = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    return w;
}

} // namespace

EigenBasis::EigenBasis(YDomain domain, int K) : domain_(std::move(domain)), K_(K) {
    if (K < 1) throw std::invalid_argument("EigenBasis: K must be >= 1");
    const int n = domain_.dim();
    const double lmax = *std::max_element(domain_.lengths.begin(), domain_.lengths.end());

    // Enumerate the full index box [1,R]^n and keep the K smallest eigenvalues;
    // any index outside the box has lambda >= ((R+1) pi / lmax)^2, so growing R
    // until that exceeds lambda_K certifies the selection.
    int R = std::max(1, static_cast<int>(std::ceil(std::pow(double(K), 1.0 / n))));
    std::vector<std::pair<double, std::vector<int>>> pairs;
    while (true) {
        pairs.clear();
        std::vector<int> idx(n, 1);
        while (true) {
            double lam = 0.0;
            for (int i = 0; i < n; ++i) {
                const double q = idx[i] * kPi / domain_.lengths[i];
                lam += q * q;
            }
            pairs.emplace_back(lam, idx);
            int d = n - 1;
            while (d >= 0 && ++idx[d] > R) idx[d--] = 1;
            if (d < 0) break;
        }
        std::sort(pairs.begin(), pairs.end());
        const double outside = std::pow((R + 1) * kPi / lmax, 2);
        if (static_cast<int>(pairs.size()) >= K && pairs[K - 1].first <= outside) break;
        ++R;
    }

    lambda_.resize(K_);
    index_.resize(K_);
    for (int k = 0; k < K_; ++k) {
        lambda_(k) = pairs[k].first;
        index_[k] = pairs[k].second;
    }

    // Simpson grid fine enough for the highest selected per-axis index.
    quad_counts_.resize(n);
    std::vector<Eigen::VectorXd> axis_nodes(n), axis_weights(n);
    int total = 1;
    for (int i = 0; i < n; ++i) {
        int max_idx = 1;
        for (const auto& mi : index_) max_idx = std::max(max_idx, mi[i]);
        int nodes = domain_.quad_nodes_per_axis > 0 ? domain_.quad_nodes_per_axis
                                                    : std::max(33, 8 * max_idx + 1);
        if (nodes % 2 == 0) ++nodes;
        quad_counts_[i] = nodes;
        axis_nodes[i] = Eigen::VectorXd::LinSpaced(nodes, 0.0, domain_.lengths[i]);
        axis_weights[i] = simpson_weights(nodes, domain_.lengths[i]);
        total *= nodes;
    }

    quad_points_.resize(total, n);
    quad_weights_.resize(total);
    for (int q = 0; q < total; ++q) {
        int rem = q;
        double w = 1.0;
        for (int i = n - 1; i >= 0; --i) {
            const int pos = rem % quad_counts_[i];
            rem /= quad_counts_[i];
            quad_points_(q, i) = axis_nodes[i](pos);
            w *= axis_weights[i](pos);
        }
        quad_weights_(q) = w;
    }
}

double EigenBasis::eigenfunction(int k, const Eigen::Ref<const Eigen::VectorXd>& y) const {
    if (k < 0 || k >= K_) throw std::out_of_range("EigenBasis: mode index");
    if (y.size() != domain_.dim()) throw shape_error("EigenBasis: point dimension mismatch");
    double v = 1.0;
    for (int i = 0; i < domain_.dim(); ++i) {
        const double L = domain_.lengths[i];
        v *= std::sqrt(2.0 / L) * std::sin(index_[k][i] * kPi * y(i) / L);
    }
    return v;
}

Eigen::MatrixXd EigenBasis::quad_values() const {
    const int nq = quad_size();
    Eigen::MatrixXd V(K_, nq);
    for (int k = 0; k < K_; ++k)
        for (int q = 0; q < nq; ++q)
            V(k, q) = eigenfunction(k, quad_points_.row(q).transpose());
    return V;
}

EigenBasis dirichlet_eigenpairs(const YDomain& domain, int K) {
    return EigenBasis(domain, K);
}

ProjectionResult project(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         const EigenBasis& basis) {
    if (samples.size() != basis.quad_size())
        throw shape_error("project: samples must live on the basis quadrature nodes");
    const Eigen::VectorXd weighted = basis.quad_weights().cwiseProduct(samples);
    const Eigen::MatrixXd V = basis.quad_values();
    ProjectionResult r;
    r.coeffs = V * weighted;
    const double energy = samples.dot(weighted);
    r.parseval_defect = energy - r.coeffs.squaredNorm();
    return r;
}

Eigen::VectorXd reconstruct(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                            const EigenBasis& basis,
                            const Eigen::Ref<const Eigen::MatrixXd>& points) {
    if (coeffs.size() > basis.size())
        throw shape_error("reconstruct: more coefficients than basis modes");
    if (points.cols() != basis.domain().dim())
        throw shape_error("reconstruct: point dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(points.rows());
    for (int p = 0; p < points.rows(); ++p)
        for (int k = 0; k < coeffs.size(); ++k)
            out(p) += coeffs(k) * basis.eigenfunction(k, points.row(p).transpose());
    return out;
}

CEpsilon c_epsilon(const EigenBasis& basis, double eps) {
    if (!(eps > 0.0))
        throw series_divergence_error("c_epsilon: the series diverges for eps <= 0");
    const int n = basis.domain().dim();
    const double a = 0.5 * n + eps;
    const int K = basis.size();

    CEpsilon r{0.0, 0.0};
    for (int k = 0; k < K; ++k) r.partial += std::pow(basis.eigenvalue(k), -a);

    const double lmax =
        *std::max_element(basis.domain().lengths.begin(), basis.domain().lengths.end());
    if (n == 1) {
        // lambda_k = (k pi / L)^2 exactly: integral comparison on the p-series
        const double L = basis.domain().lengths[0];
        r.tail_bound = std::pow(L / kPi, 1.0 + 2.0 * eps) * std::pow(double(K), -2.0 * eps) /
                       (2.0 * eps);
        return r;
    }

    // Box: every selected mode lies in the enumerated index box [1,R]^n. First
    // add the exact contribution of enumerated-but-unselected indices, then
    // bound the remainder through lambda >= n (pi/lmax)^2 (prod k_i)^{2/n}.
    int R = 1;
    for (const auto& mi : basis.multi_indices())
        for (int v : mi) R = std::max(R, v);
    const double p = 1.0 + 2.0 * eps / n;

    // exact sum over the full box minus the selected modes
    double box_sum = 0.0;
    {
        std::vector<int> idx(n, 1);
        while (true) {
            double lam = 0.0;
            for (int i = 0; i < n; ++i) {
                const double q = idx[i] * kPi / basis.domain().lengths[i];
                lam += q * q;
            }
            box_sum += std::pow(lam, -a);
            int d = n - 1;
            while (d >= 0 && ++idx[d] > R) idx[d--] = 1;
            if (d < 0) break;
        }
    }
    r.tail_bound = std::max(0.0, box_sum - r.partial);

    // outside the box: sum (prod k_i)^{-p} <= S^n - S_R^n
    double s_r = 0.0;
    for (int k = 1; k <= R; ++k) s_r += std::pow(double(k), -p);
    double s_total = s_r;
    const int extend = 100000;
    for (int k = R + 1; k <= extend; ++k) s_total += std::pow(double(k), -p);
    s_total += std::pow(double(extend), 1.0 - p) / (p - 1.0);
    const double scale = std::pow(n, -a) * std::pow(lmax / kPi, 2.0 * a);
    r.tail_bound += scale * (std::pow(s_total, n) - std::pow(s_r, n));
    return r;
}

double tau_norm_sq(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                   const EigenBasis& basis, double eps) {
    if (coeffs.size() > basis.size())
        throw shape_error("tau_norm_sq: more coefficients than basis modes");
    const double tt = two_tau(basis.domain().dim(), eps);
    double s = 0.0;
    for (int k = 0; k < coeffs.size(); ++k)
        s += std::pow(basis.eigenvalue(k), tt) * coeffs(k) * coeffs(k);
    return s;
}

GradientPairing gradient_pairing(const EigenBasis& basis,
                                 const Eigen::Ref<const Eigen::VectorXd>& omega_samples,
                                 const Eigen::MatrixXd* grad_samples) {
    const int nq = basis.quad_size();
    if (omega_samples.size() != nq)
        throw shape_error("gradient_pairing: omega must live on the quadrature nodes");

    GradientPairing r;
    const Eigen::VectorXd weighted = basis.quad_weights().cwiseProduct(omega_samples);
    r.gamma = basis.eigenvalues().cwiseProduct(basis.quad_values() * weighted);

    const int n = basis.domain().dim();
    Eigen::MatrixXd grad(nq, n);
    if (grad_samples) {
        if (grad_samples->rows() != nq || grad_samples->cols() != n)
            throw shape_error("gradient_pairing: gradient sample shape mismatch");
        grad = *grad_samples;
    } else {
        // finite differences along each axis of the tensor grid
        const auto& counts = basis.quad_nodes_per_axis();
        std::vector<int> stride(n, 1);
        for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * counts[i + 1];
        for (int axis = 0; axis < n; ++axis) {
            const double h = basis.domain().lengths[axis] / (counts[axis] - 1);
            for (int q = 0; q < nq; ++q) {
                const int pos = (q / stride[axis]) % counts[axis];
                if (pos == 0)
                    grad(q, axis) = (-3.0 * omega_samples(q) + 4.0 * omega_samples(q + stride[axis]) -
                                     omega_samples(q + 2 * stride[axis])) /
                                    (2.0 * h);
                else if (pos == counts[axis] - 1)
                    grad(q, axis) = (3.0 * omega_samples(q) - 4.0 * omega_samples(q - stride[axis]) +
                                     omega_samples(q - 2 * stride[axis])) /
                                    (2.0 * h);
                else
                    grad(q, axis) =
                        (omega_samples(q + stride[axis]) - omega_samples(q - stride[axis])) / (2.0 * h);
            }
        }
    }
    r.grad_omega_sq = (grad.array().square().rowwise().sum() * basis.quad_weights().array()).sum();

    // Dirichlet compatibility of omega, checked on the boundary nodes
    const double scale = omega_samples.cwiseAbs().maxCoeff();
    double boundary_max = 0.0;
    const auto& counts = basis.quad_nodes_per_axis();
    std::vector<int> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * counts[i + 1];
    for (int q = 0; q < nq; ++q)
        for (int axis = 0; axis < n; ++axis) {
            const int pos = (q / stride[axis]) % counts[axis];
            if (pos == 0 || pos == counts[axis] - 1)
                boundary_max = std::max(boundary_max, std::abs(omega_samples(q)));
        }
    r.boundary_warning = boundary_max > 1e-8 * (scale > 0.0 ? scale : 1.0);
    return r;
}

} // namespace fracsource
