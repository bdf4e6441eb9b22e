#ifndef FRACSOURCE_FRACOPS_HPP
#define FRACSOURCE_FRACOPS_HPP

#include <Eigen/Dense>

#include "fracsource/grids.hpp"

namespace fracsource {

/// L1 convolution weights b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..count-1.
/// Positive and strictly decreasing for alpha in (0,1).
Eigen::VectorXd l1_weights(double alpha, int count);

/// Discrete Caputo derivative of order alpha by the L1 scheme on the signal's
/// uniform grid. Nodes t_1..t_{N-1} carry the L1 values; the t_0 slot repeats
/// the t_1 value and the result is flagged extrapolated.
SampledSignal caputo_l1(const SampledSignal& v, FractionalOrder alpha);

/// Riemann-Liouville integral J^alpha v by piecewise-linear product
/// integration of the kernel (t - s)^{alpha-1} / Gamma(alpha). Exact for
/// affine v. Requires alpha > 0.
SampledSignal rl_integral(const SampledSignal& v, double alpha);

/// Two-parameter Mittag-Leffler function E_{alpha,mu}(z) for real z.
///
/// Strategy: truncated power series where double-precision cancellation is
/// controlled (z >= 0; z < 0 with |z| <= min(5, 11.5^alpha)); for alpha in
/// (0,1) and more negative z, the real-line integral representation of the
/// function evaluated with a double-exponential rule; mu is first reduced to
/// (0,1] through E_{alpha,mu}(z) = (E_{alpha,mu-alpha}(z) - 1/Gamma(mu-alpha))/z.
/// alpha = 1 uses exp / a Kummer-transformed confluent series.
/// Relative accuracy ~1e-11 on z in [-50, 5], alpha in (0,1], mu in (0,2].
double mittag_leffler(double alpha, double mu, double z);

/// Right-hand side of the fractional Gronwall bound:
///   y0 E_alpha(c1 t^alpha) + Gamma(alpha) E_{alpha,alpha}(c1 t^alpha) J^alpha c2(t)
/// evaluated on c2's grid. Requires y0 >= 0, c1 > 0, c2 >= 0.
SampledSignal gronwall_bound(double y0, double c1, const SampledSignal& c2,
                             FractionalOrder alpha);

namespace detail {

/// Known part of the L1 combination at step n >= 1 (everything except the
/// unknown row n): sum_{m=1}^{n-1} (b_{n-m-1} - b_{n-m}) v_m + b_{n-1} v_0,
/// applied to the rows of a (time x space) array. With beta =
/// dt^{-alpha}/Gamma(2-alpha) the L1 derivative is beta * (v_n - history).
/// Shared by caputo_l1 and the time-stepping solvers.
Eigen::RowVectorXd l1_known_history(const Eigen::VectorXd& b,
                                    const Eigen::MatrixXd& rows, int n);

} // namespace detail

} // namespace fracsource

#endif
