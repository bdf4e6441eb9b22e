#ifndef FRACSOURCE_SPECTRAL_HPP
#define FRACSOURCE_SPECTRAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "fracsource/errors.hpp"

namespace fracsource {

enum class DomainKind { Interval, Box };

/// Tensor-product y-domain (0,L_1) x ... x (0,L_n) with closed-form
/// Dirichlet-Laplacian eigenpairs.
struct YDomain {
    std::vector<double> lengths;
    /// Composite-Simpson node count per axis; 0 selects 8*max_index + 1.
    int quad_nodes_per_axis = 0;

    explicit YDomain(std::vector<double> edges, int quad_nodes = 0)
        : lengths(std::move(edges)), quad_nodes_per_axis(quad_nodes) {
        if (lengths.empty()) throw unsupported_domain_error("YDomain: dimension must be >= 1");
        for (double l : lengths)
            if (!(l > 0.0)) throw unsupported_domain_error("YDomain: edge lengths must be positive");
        if (quad_nodes != 0 && (quad_nodes < 3 || quad_nodes % 2 == 0))
            throw unsupported_domain_error("YDomain: Simpson node count must be odd and >= 3");
    }

    int dim() const { return static_cast<int>(lengths.size()); }
    DomainKind kind() const { return dim() == 1 ? DomainKind::Interval : DomainKind::Box; }
    double measure() const {
        double m = 1.0;
        for (double l : lengths) m *= l;
        return m;
    }
};

/// Dirichlet-Laplacian eigenpairs, globally sorted by eigenvalue with
/// lexicographic multi-index tie-breaking, plus the tensor Simpson rule used
/// for every inner product on Omega. Immutable after construction.
class EigenBasis {
public:
    EigenBasis(YDomain domain, int K);

    const YDomain& domain() const { return domain_; }
    int size() const { return K_; }
    const Eigen::VectorXd& eigenvalues() const { return lambda_; }
    double eigenvalue(int k) const { return lambda_(k); }
    const std::vector<std::vector<int>>& multi_indices() const { return index_; }

    /// Closed-form eigenfunction value, v_k(y) = prod_i sqrt(2/L_i) sin(k_i pi y_i / L_i).
    double eigenfunction(int k, const Eigen::Ref<const Eigen::VectorXd>& y) const;

    int quad_size() const { return static_cast<int>(quad_weights_.size()); }
    const Eigen::MatrixXd& quad_points() const { return quad_points_; }   // NQ x n
    const Eigen::VectorXd& quad_weights() const { return quad_weights_; } // NQ

    /// Eigenfunction table on the quadrature nodes (K x NQ); computed on demand.
    Eigen::MatrixXd quad_values() const;

    /// Per-axis quadrature node counts (the tensor grid is uniform per axis).
    const std::vector<int>& quad_nodes_per_axis() const { return quad_counts_; }

private:
    YDomain domain_;
    int K_;
    Eigen::VectorXd lambda_;
    std::vector<std::vector<int>> index_;
    Eigen::MatrixXd quad_points_;
    Eigen::VectorXd quad_weights_;
    std::vector<int> quad_counts_;
};

EigenBasis dirichlet_eigenpairs(const YDomain& domain, int K);

struct ProjectionResult {
    Eigen::VectorXd coeffs;
    /// integral of p^2 minus the energy captured by the K coefficients
    double parseval_defect;
};

/// Fourier coefficients p_k = (p, v_k) of samples given on the quadrature nodes.
ProjectionResult project(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         const EigenBasis& basis);

/// Partial sum sum_k coeffs_k v_k(y) at the requested points (P x n).
Eigen::VectorXd reconstruct(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                            const EigenBasis& basis,
                            const Eigen::Ref<const Eigen::MatrixXd>& points);

struct CEpsilon {
    double partial;
    double tail_bound;
    double upper() const { return partial + tail_bound; }
};

/// Partial sum of sum_j lambda_j^{-n/2-eps} over the basis modes plus a
/// rigorous bound on the remaining tail. Throws series_divergence_error for
/// eps <= 0.
CEpsilon c_epsilon(const EigenBasis& basis, double eps);

/// 2*tau(eps) = n/2 + 1 + eps.
inline double two_tau(int n, double eps) { return 0.5 * n + 1.0 + eps; }

/// Squared fractional-power norm sum_k lambda_k^{2 tau} |c_k|^2.
double tau_norm_sq(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                   const EigenBasis& basis, double eps);

struct GradientPairing {
    /// gamma_k = (grad v_k, grad omega) = lambda_k (v_k, omega)
    Eigen::VectorXd gamma;
    /// independent quadrature of |grad omega|^2 (analytic or finite-difference)
    double grad_omega_sq;
    /// omega does not vanish on the boundary within tolerance
    bool boundary_warning;
};

/// omega given on the quadrature nodes; grad_samples, when provided, holds the
/// analytic gradient there (NQ x n), otherwise finite differences on the
/// tensor grid are used.
GradientPairing gradient_pairing(const EigenBasis& basis,
                                 const Eigen::Ref<const Eigen::VectorXd>& omega_samples,
                                 const Eigen::MatrixXd* grad_samples = nullptr);

} // namespace fracsource

#endif
