#include "fracsource/fracops.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace fracsource {

Eigen::VectorXd l1_weights(double alpha, int count) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("l1_weights: alpha must lie in (0, 1]");
    if (count < 1) throw std::invalid_argument("l1_weights: count must be positive");
    Eigen::VectorXd b(count);
    for (int j = 0; j < count; ++j)
        b(j) = std::pow(j + 1.0, 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha);
    return b;
}

namespace detail {

Eigen::RowVectorXd l1_known_history(const Eigen::VectorXd& b,
                                    const Eigen::MatrixXd& rows, int n) {
    Eigen::RowVectorXd hist = b(n - 1) * rows.row(0);
    for (int m = 1; m < n; ++m)
        hist.noalias() += (b(n - m - 1) - b(n - m)) * rows.row(m);
    return hist;
}

} // namespace detail

SampledSignal caputo_l1(const SampledSignal& v, FractionalOrder alpha) {
    const double a = alpha.value();
    const int n = v.size();
    const double dt = v.grid.dt();
    Eigen::VectorXd out(n);

    if (a == 1.0) {
        // exact backward-difference limit of the L1 weights
        for (int i = 1; i < n; ++i) out(i) = (v.values(i) - v.values(i - 1)) / dt;
    } else {
        const double beta = std::pow(dt, -a) / std::tgamma(2.0 - a);
        const Eigen::VectorXd b = l1_weights(a, n);
        const Eigen::MatrixXd col = v.values;
        for (int i = 1; i < n; ++i) {
            const double hist = detail::l1_known_history(b, col, i)(0);
            out(i) = beta * (v.values(i) - hist);
        }
    }
    out(0) = out(1);
    SampledSignal result(v.grid, std::move(out));
    result.first_node_extrapolated = true;
    return result;
}

SampledSignal rl_integral(const SampledSignal& v, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("rl_integral: alpha must be positive");
    const int n = v.size();
    const double dt = v.grid.dt();
    const double inv_gamma = 1.0 / std::tgamma(alpha);
    Eigen::VectorXd out(n);
    out(0) = 0.0;

    // On [t_j, t_{j+1}] replace v by its linear interpolant; the kernel
    // moments integrate in closed form, so the rule is exact for affine v.
    for (int i = 1; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            const double s1 = (i - j - 1) * dt;
            const double s2 = (i - j) * dt;
            const double p1 = std::pow(s1, alpha), p2 = std::pow(s2, alpha);
            const double m0 = (p2 - p1) / alpha;
            const double m1 = (i - j) * m0 - (p2 * s2 - p1 * s1) / ((alpha + 1.0) * dt);
            acc += v.values(j) * m0 + (v.values(j + 1) - v.values(j)) * m1;
        }
        out(i) = inv_gamma * acc;
    }
    return SampledSignal(v.grid, std::move(out));
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double ml_series(double alpha, double mu, double z) {
    // plain series; callers guarantee the cancellation budget
    double sum = 0.0;
    // terms decay once Gamma(alpha k + mu) outgrows |z|^k, i.e. past the hump
    const double hump = std::pow(std::abs(z), 1.0 / alpha);
    for (int k = 0; k < 20000; ++k) {
        const double lg = std::lgamma(alpha * k + mu);
        double term;
        if (k == 0) {
            term = std::exp(-lg);
        } else {
            const double mag = k * std::log(std::abs(z)) - lg;
            if (mag > 700.0) throw unsupported_range_error("mittag_leffler: series overflow");
            term = std::exp(mag);
            if (z < 0.0 && (k & 1)) term = -term;
        }
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300) && alpha * k + mu > hump + 2.0)
            return sum;
    }
    return sum;
}

double ml_alpha1(double mu, double z) {
    if (std::abs(z) > 700.0) throw unsupported_range_error("mittag_leffler: |z| too large at alpha = 1");
    if (mu == 1.0) return std::exp(z);
    if (z >= 0.0) return ml_series(1.0, mu, z);
    // E_{1,mu}(z) = e^z M(mu-1, mu, -z) / Gamma(mu); the transformed series has
    // a single sign change, so no catastrophic cancellation for z < 0.
    const double w = -z;
    double term = 1.0;   // k = 0 term of sum_k (mu-1)/(mu-1+k) w^k/k!, times (mu-1+k)/(mu-1) folded below
    double sum = 1.0;
    for (int k = 1; k < 100000; ++k) {
        term *= w / k;
        const double contrib = (mu - 1.0) / (mu - 1.0 + k) * term;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum) && k > w) break;
    }
    // sum currently equals 1 + (mu-1) sum_{k>=1} w^k/((mu-1+k) k!) = M(mu-1, mu, w)
    return std::exp(z) * sum / std::tgamma(mu);
}

// Integral representation for 0 < alpha < 1, z < 0, 0 < mu <= 1, under the
// substitution u = r^{1/alpha} and the double-exponential map u = exp(t - e^{-t}).
double ml_integral_negative(double alpha, double mu, double z) {
    const double c = std::cos(alpha * kPi);
    const double s1 = std::sin(kPi * (1.0 - mu));
    const double s2 = std::sin(kPi * (1.0 - mu + alpha));
    const double zs = z * std::sin(alpha * kPi);
    const double h = 0.004;
    const double tlo = -6.5, thi = 4.8;
    const int steps = static_cast<int>((thi - tlo) / h) + 1;
    double total = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double t = tlo + i * h;
        const double et = std::exp(-t);
        const double w = t - et;
        const double u = std::exp(w);
        const double g = (alpha - mu + 1.0) * w - u;
        if (g < -745.0) continue;
        const double ua = std::exp(alpha * w);
        const double num = ua * s1 - z * s2;
        const double den = (ua - z * c) * (ua - z * c) + zs * zs;
        total += std::exp(g) * (1.0 + et) * num / den;
    }
    return total * h / kPi;
}

} // namespace

double mittag_leffler(double alpha, double mu, double z) {
    if (!(alpha > 0.0)) throw std::domain_error("mittag_leffler: alpha must be positive");
    if (!(mu > 0.0)) throw std::domain_error("mittag_leffler: mu must be positive");
    if (!std::isfinite(z)) throw std::domain_error("mittag_leffler: z must be finite");

    if (z == 0.0) return 1.0 / std::tgamma(mu);
    if (alpha == 1.0) return ml_alpha1(mu, z);

    if (z > 0.0) {
        if (std::log(z) / alpha > std::log(705.0))
            throw unsupported_range_error("mittag_leffler: z^{1/alpha} overflows");
        return ml_series(alpha, mu, z);
    }

    // z < 0: the alternating series loses ~|z|^{1/alpha}/ln 10 digits
    const double series_cut = std::min(5.0, std::pow(11.5, alpha));
    if (alpha > 1.0) {
        if (-z <= std::pow(11.5, alpha)) return ml_series(alpha, mu, z);
        throw unsupported_range_error("mittag_leffler: z too negative for alpha > 1");
    }
    if (-z <= series_cut) return ml_series(alpha, mu, z);

    // reduce mu into (0, 1] so the integrand stays integrable at the origin
    std::vector<double> shifts;
    double m = mu;
    while (m > 1.0) {
        shifts.push_back(m);
        m -= alpha;
    }
    double val = ml_integral_negative(alpha, m, z);
    for (auto it = shifts.rbegin(); it != shifts.rend(); ++it)
        val = (val - 1.0 / std::tgamma(*it - alpha)) / z;
    return val;
}

SampledSignal gronwall_bound(double y0, double c1, const SampledSignal& c2,
                             FractionalOrder alpha) {
    if (y0 < 0.0) throw std::domain_error("gronwall_bound: y0 must be nonnegative");
    if (!(c1 > 0.0)) throw std::domain_error("gronwall_bound: c1 must be positive");
    if ((c2.values.array() < 0.0).any())
        throw std::domain_error("gronwall_bound: c2 must be nonnegative");

    const double a = alpha.value();
    const SampledSignal j = rl_integral(c2, a);
    const double ga = std::tgamma(a);
    const int n = c2.size();
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const double ta = std::pow(c2.grid.node(i), a);
        out(i) = y0 * mittag_leffler(a, 1.0, c1 * ta) +
                 ga * mittag_leffler(a, a, c1 * ta) * j.values(i);
    }
    return SampledSignal(c2.grid, std::move(out));
}

} // namespace fracsource
