#include "kirchsim/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace kirchsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b - bhat, for the embedded 4th-order error estimate.
constexpr double kE1 = 35.0 / 384.0 - 5179.0 / 57600.0;
constexpr double kE3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
constexpr double kE4 = 125.0 / 192.0 - 393.0 / 640.0;
constexpr double kE5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
constexpr double kE6 = 11.0 / 84.0 - 187.0 / 2100.0;
constexpr double kE7 = -1.0 / 40.0;

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

}  // namespace

void integrate_dopri5(const OdeRhs& f, const std::vector<double>& y0,
                      std::span<const double> output_times, const OdeOptions& options,
                      const OdeObserver& observe) {
    if (output_times.empty()) {
        throw std::invalid_argument("integrate_dopri5: need at least one output time");
    }
    for (std::size_t i = 1; i < output_times.size(); ++i) {
        if (!(output_times[i] > output_times[i - 1])) {
            throw std::invalid_argument("integrate_dopri5: output times must increase");
        }
    }

    const std::size_t n = y0.size();
    std::vector<double> y = y0;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    double t = output_times.front();
    f(t, y, k1);
    if (!all_finite(k1)) {
        throw SolverError("integrate_dopri5: non-finite derivative at initial state", t);
    }
    observe(t, y, k1);
    if (output_times.size() == 1) {
        return;
    }

    auto cap = [&](double time) {
        return options.max_step ? options.max_step(time)
                                : std::numeric_limits<double>::infinity();
    };

    double h_prop = options.initial_step > 0.0 ? options.initial_step
                                               : 1e-6 * (1.0 + std::abs(t));
    std::size_t next_out = 1;
    const double t_end = output_times.back();

    while (t < t_end) {
        const double min_step = options.min_step_factor * (1.0 + std::abs(t));
        if (!(h_prop >= min_step)) {
            throw SolverError("integrate_dopri5: step size underflow", t);
        }
        double hs = std::min({h_prop, cap(t), t_end - t});
        bool hit_output = false;
        if (t + hs >= output_times[next_out] - 1e-14 * (1.0 + std::abs(t))) {
            hs = output_times[next_out] - t;
            hit_output = true;
        }
        const bool clamped = hs < h_prop;

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * kA21 * k1[i];
        f(t + kC2 * hs, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (kA31 * k1[i] + kA32 * k2[i]);
        f(t + kC3 * hs, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
        f(t + kC4 * hs, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
        f(t + kC5 * hs, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                                   kA64 * k4[i] + kA65 * k5[i]);
        f(t + hs, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + hs * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                                   kB6 * k6[i]);
        f(t + hs, ynew, k7);

        const bool finite = all_finite(ynew) && all_finite(k7);
        double err = 0.0;
        if (finite) {
            for (std::size_t i = 0; i < n; ++i) {
                const double e = hs * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] +
                                       kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
                const double scale =
                    options.abs_tol +
                    options.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                const double r = e / scale;
                err += r * r;
            }
            err = std::sqrt(err / static_cast<double>(n));
        }

        if (!finite) {
            h_prop = 0.5 * hs;
            continue;
        }
        if (err > 1.0) {
            h_prop = hs * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            continue;
        }

        t += hs;
        y.swap(ynew);
        k1.swap(k7);  // FSAL

        if (hit_output) {
            observe(t, y, k1);
            ++next_out;
            if (next_out >= output_times.size()) {
                break;
            }
        }

        const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        const double candidate = hs * std::clamp(grow, 0.2, 5.0);
        // A step shortened only to land on an output time must not shrink the
        // controller's proposal.
        h_prop = clamped ? std::max(h_prop, candidate) : candidate;
    }
}

}  // namespace kirchsim
