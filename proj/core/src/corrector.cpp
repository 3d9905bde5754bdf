#include "kirchsim/corrector.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace kirchsim {

namespace {

double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double whole, double tol,
                             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (!(b > a)) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integrand of int (1+t)^delta s(t) dt after the substitution u = log(1+t):
// g(u) = e^((delta+1) u) s(e^u - 1).
double log_integrand(double u, double epsilon, double p, double delta) {
    const double t = std::expm1(u);
    return std::exp((delta + 1.0) * u) * theta_profile_derivative(t, epsilon, p);
}

// Local decay rate of log g; nondecreasing in u for p <= 1, so
// g(U) / rate(U) bounds the tail rigorously.
double log_decay_rate(double u, double epsilon, double p, double delta) {
    if (p == 1.0) {
        return 1.0 / epsilon - (delta + 1.0);
    }
    return std::exp((1.0 - p) * u) / epsilon - (delta + 1.0);
}

// int_0^inf (1+t)^delta s(t) dt, truncated once the analytic tail bound drops
// below 1e-14 of the running total.
double weighted_profile_integral(double epsilon, double p, double delta) {
    auto g = [&](double u) { return log_integrand(u, epsilon, p, delta); };
    double total = 0.0;
    double u_lo = 0.0;
    double u_hi = std::max(4.0 * epsilon, 1e-2);
    for (int seg = 0; seg < 200; ++seg) {
        total += adaptive_simpson(g, u_lo, u_hi, 1e-15 * std::max(1.0, total) + 1e-18);
        const double rate = log_decay_rate(u_hi, epsilon, p, delta);
        if (rate > 0.0) {
            const double tail = g(u_hi) / rate;
            if (tail <= 1e-14 * total) {
                return total;
            }
        }
        u_lo = u_hi;
        u_hi *= 2.0;
    }
    throw std::runtime_error("check_theta_integral_bound: tail truncation did not converge");
}

}  // namespace

StateVector compute_w0(const StateVector& u0, const StateVector& u1,
                       const SpectralOperator& op, const NonlinearityParams& params) {
    check_dim(u0, op, "compute_w0");
    check_same_dim(u0, u1, "compute_w0");
    const double sigma = sobolev_norm_sq(u0, op, 0.5);
    const double stiffness = m_eval(sigma, params);
    StateVector w0(u0.size());
    for (std::size_t k = 0; k < u0.size(); ++k) {
        w0[k] = u1[k] + stiffness * op.eigenvalues[k] * u0[k];
    }
    return w0;
}

double theta_profile_derivative(double t, double epsilon, double p) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("theta_profile_derivative: t must be nonnegative");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("theta_profile_derivative: epsilon must be positive");
    }
    if (p == 1.0) {
        return std::pow(1.0 + t, -1.0 / epsilon);
    }
    return std::exp(-(std::pow(1.0 + t, 1.0 - p) - 1.0) / (epsilon * (1.0 - p)));
}

double theta_profile(double t, double epsilon, double p) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("theta_profile: t must be nonnegative");
    }
    if (t == 0.0) {
        return 0.0;
    }
    if (p == 0.0) {
        return epsilon * (1.0 - std::exp(-t / epsilon));
    }
    if (p == 1.0) {
        if (epsilon >= 1.0) {
            throw std::invalid_argument(
                "theta_profile: the p = 1 antiderivative requires epsilon < 1");
        }
        return epsilon / (1.0 - epsilon) * (1.0 - std::pow(1.0 + t, 1.0 - 1.0 / epsilon));
    }
    auto g = [&](double u) { return log_integrand(u, epsilon, p, 0.0); };
    return adaptive_simpson(g, 0.0, std::log1p(t), 1e-12);
}

StateVector theta_prime(double t, const CorrectorSpec& spec) {
    const double s = theta_profile_derivative(t, spec.epsilon, spec.p);
    StateVector out(spec.w0.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = spec.w0[k] * s;
    }
    return out;
}

StateVector theta(double t, const CorrectorSpec& spec) {
    const double q = theta_profile(t, spec.epsilon, spec.p);
    StateVector out(spec.w0.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = spec.w0[k] * q;
    }
    return out;
}

ThetaBound check_theta_integral_bound(const CorrectorSpec& spec, double delta, int j,
                                      const SpectralOperator& op) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("check_theta_integral_bound: delta must be nonnegative");
    }
    if (j != 0 && j != 1) {
        throw std::invalid_argument("check_theta_integral_bound: j must be 0 or 1");
    }
    if (!(spec.epsilon < 1.0 / (2.0 + 2.0 * delta))) {
        throw std::invalid_argument(
            "check_theta_integral_bound: hypothesis eps < 1/(2+2 delta) violated");
    }
    const double w_norm = std::sqrt(sobolev_norm_sq(spec.w0, op, 0.5 * j));
    ThetaBound out;
    if (w_norm == 0.0) {
        return out;
    }
    const double profile_integral = weighted_profile_integral(spec.epsilon, spec.p, delta);
    out.value = w_norm * profile_integral;
    out.ratio = profile_integral / spec.epsilon;
    return out;
}

}  // namespace kirchsim
