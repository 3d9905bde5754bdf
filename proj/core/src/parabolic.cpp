#include "kirchsim/parabolic.hpp"

#include "kirchsim/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kirchsim {

namespace {

struct ModeNorms {
    double sigma = 0.0;   // |A^(1/2)u|^2
    double au_sq = 0.0;   // |Au|^2
    double a32_sq = 0.0;  // |A^(3/2)u|^2
    double a2_sq = 0.0;   // |A^2 u|^2
};

ModeNorms mode_norms(std::span<const double> u, const std::vector<double>& lambdas) {
    ModeNorms n;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double l = lambdas[k];
        const double c2 = u[k] * u[k];
        n.sigma += l * c2;
        n.au_sq += l * l * c2;
        n.a32_sq += l * l * l * c2;
        n.a2_sq += l * l * l * l * c2;
    }
    return n;
}

std::vector<double> geometric_grid(double horizon, double first_step, double factor) {
    std::vector<double> ts{0.0};
    double t = 0.0;
    double h = first_step;
    while (t < horizon) {
        t = std::min(t + h, horizon);
        ts.push_back(t);
        h = std::max(first_step, factor * (1.0 + t));
    }
    return ts;
}

}  // namespace

StateVector parabolic_rhs(double t, const StateVector& u, const SpectralOperator& op,
                          const NonlinearityParams& params) {
    check_dim(u, op, "parabolic_rhs");
    if (!(t >= 0.0)) {
        throw std::invalid_argument("parabolic_rhs: t must be nonnegative");
    }
    const double sigma = sobolev_norm_sq(u, op, 0.5);
    const double coeff = -std::pow(1.0 + t, params.p) * m_eval(sigma, params);
    StateVector du(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        du[k] = coeff * op.eigenvalues[k] * u[k];
    }
    return du;
}

StateVector parabolic_second_derivative(double t, const StateVector& u,
                                        const SpectralOperator& op,
                                        const NonlinearityParams& params) {
    check_dim(u, op, "parabolic_second_derivative");
    if (!(t >= 0.0)) {
        throw std::invalid_argument("parabolic_second_derivative: t must be nonnegative");
    }
    const double gamma = params.gamma;
    const double p = params.p;
    const ModeNorms n = mode_norms(u, op.eigenvalues);
    const double w = 1.0 + t;
    const double c1 = -p * std::pow(w, p - 1.0) * std::pow(n.sigma, gamma);
    const double c2 = std::pow(w, 2.0 * p) * std::pow(n.sigma, 2.0 * gamma);
    const double c3 = std::pow(w, 2.0 * p) * 2.0 * gamma *
                      std::pow(n.sigma, 2.0 * gamma - 1.0) * n.au_sq;
    StateVector ddu(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double l = op.eigenvalues[k];
        ddu[k] = c1 * l * u[k] + c2 * l * l * u[k] + c3 * l * u[k];
    }
    return ddu;
}

ParabolicTrajectory parabolic_solve_at(const SpectralOperator& op,
                                       const NonlinearityParams& params,
                                       const StateVector& u0,
                                       std::span<const double> times, double tol) {
    check_dim(u0, op, "parabolic_solve");
    if (times.empty() || times.front() != 0.0) {
        throw std::invalid_argument("parabolic_solve: grid must start at t = 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("parabolic_solve: tol must be positive");
    }
    const std::size_t n = op.dim();
    const double gamma = params.gamma;
    const double p = params.p;
    const auto& lambdas = op.eigenvalues;

    std::vector<double> y0(n + 4, 0.0);
    std::copy(u0.begin(), u0.end(), y0.begin());

    OdeRhs rhs = [&, n](double t, const std::vector<double>& y, std::vector<double>& dy) {
        const ModeNorms nm = mode_norms(std::span<const double>(y.data(), n), lambdas);
        const double w = 1.0 + t;
        const double wp = std::pow(w, p);
        const double coeff = -wp * std::pow(nm.sigma, gamma);
        for (std::size_t k = 0; k < n; ++k) {
            dy[k] = coeff * lambdas[k] * y[k];
        }
        dy[n] = std::pow(nm.sigma, gamma + 1.0) * wp;
        dy[n + 1] = std::pow(nm.sigma, 2.0 * gamma) * nm.au_sq * std::pow(w, 3.0 * p);
        dy[n + 2] = std::pow(nm.sigma, 3.0 * gamma) * nm.a32_sq * std::pow(w, 5.0 * p);
        dy[n + 3] = (std::pow(nm.sigma, 4.0 * gamma) * std::pow(w, 7.0 * p) +
                     std::pow(nm.sigma, 3.0 * gamma) * std::pow(w, 5.0 * p)) *
                    nm.a2_sq;
    };

    ParabolicTrajectory traj;
    traj.tol = tol;
    traj.times.reserve(times.size());

    OdeOptions options;
    options.abs_tol = tol;
    options.rel_tol = tol;
    options.initial_step = std::min(1e-5, times.size() > 1 ? times[1] : 1e-5);

    integrate_dopri5(
        rhs, y0, times, options,
        [&](double t, const std::vector<double>& y, const std::vector<double>&) {
            traj.times.push_back(t);
            traj.states.emplace_back(y.begin(), y.begin() + static_cast<long>(n));
            traj.i_energy.push_back(y[n]);
            traj.i_grad.push_back(y[n + 1]);
            traj.i_grad3.push_back(y[n + 2]);
            traj.i_grad4.push_back(y[n + 3]);
        });
    return traj;
}

ParabolicTrajectory parabolic_solve(const SpectralOperator& op,
                                    const NonlinearityParams& params, const StateVector& u0,
                                    double horizon, double tol, double grid_factor) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("parabolic_solve: horizon must be positive");
    }
    const auto grid = geometric_grid(horizon, std::min(1e-3, grid_factor), grid_factor);
    return parabolic_solve_at(op, params, u0, grid, tol);
}

DvReport check_dv_properties(const ParabolicTrajectory& traj, const SpectralOperator& op,
                             const NonlinearityParams& params) {
    if (traj.times.empty()) {
        throw std::invalid_argument("check_dv_properties: empty trajectory");
    }
    const double sigma0 = sobolev_norm_sq(traj.states.front(), op, 0.5);
    if (!(sigma0 > 0.0)) {
        throw std::invalid_argument("check_dv_properties: degenerate initial datum");
    }
    const double gamma = params.gamma;
    const double p = params.p;
    const double half_u0_sq = 0.5 * norm_sq(traj.states.front());

    DvReport rep;
    rep.coercive = op.coercive();
    rep.min_sigma = std::numeric_limits<double>::infinity();
    rep.envelope_lower = std::numeric_limits<double>::infinity();

    double prev_r1 = 0.0;
    double prev_r2 = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const StateVector& u = traj.states[i];
        const ModeNorms n = mode_norms(u, op.eigenvalues);
        const double w = 1.0 + t;

        rep.min_sigma = std::min(rep.min_sigma, n.sigma);

        const double r1 = n.au_sq / n.sigma;
        const double r2 = n.a32_sq / n.au_sq;
        if (i > 0) {
            rep.ratio_increase_k1 = std::max(rep.ratio_increase_k1, r1 - prev_r1);
            rep.ratio_increase_k2 = std::max(rep.ratio_increase_k2, r2 - prev_r2);
        }
        prev_r1 = r1;
        prev_r2 = r2;

        const double residual =
            0.5 * norm_sq(u) + traj.i_energy[i] - half_u0_sq;
        rep.energy_residual_abs = std::max(rep.energy_residual_abs, std::abs(residual));

        rep.envelope_lower =
            std::min(rep.envelope_lower, n.sigma * std::pow(w, (p + 1.0) / gamma));
        rep.envelope_upper =
            std::max(rep.envelope_upper, n.sigma * std::pow(w, (p + 1.0) / (gamma + 1.0)));
        rep.product_sup = std::max(
            rep.product_sup, std::pow(n.sigma, gamma - 1.0) * n.au_sq * std::pow(w, p + 1.0));
        if (rep.coercive) {
            rep.coercive_sup = std::max(rep.coercive_sup,
                                        n.sigma * std::pow(w, (p + 1.0) / gamma));
        }
    }
    rep.energy_residual_rel = rep.energy_residual_abs / half_u0_sq;

    rep.integral_grad = traj.i_grad.back();
    rep.integral_grad3 = traj.i_grad3.back();
    rep.integral_grad4 = traj.i_grad4.back();

    const double t_cut = traj.times.back() / 10.0;
    std::size_t cut = 0;
    while (cut + 1 < traj.times.size() && traj.times[cut] < t_cut) {
        ++cut;
    }
    auto tail_fraction = [&](const std::vector<double>& integral) {
        const double total = integral.back();
        return total > 0.0 ? (total - integral[cut]) / total : 0.0;
    };
    rep.tail_fraction_grad = tail_fraction(traj.i_grad);
    rep.tail_fraction_grad3 = tail_fraction(traj.i_grad3);
    rep.tail_fraction_grad4 = tail_fraction(traj.i_grad4);
    return rep;
}

}  // namespace kirchsim
