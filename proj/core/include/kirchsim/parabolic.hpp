#pragma once

#include "kirchsim/spectral.hpp"

#include <span>
#include <vector>

namespace kirchsim {

/// Solution samples of u' + (1+t)^p |A^(1/2)u|^(2 gamma) A u = 0, u(0) = u0,
/// together with the running quadratures used by the solution-property
/// monitors. Integrals are carried as extra components of the ODE state, so
/// their accuracy follows the integrator tolerance.
struct ParabolicTrajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    /// int_0^t |A^(1/2)u|^(2(gamma+1)) (1+s)^p ds  (energy identity)
    std::vector<double> i_energy;
    /// int_0^t |A^(1/2)u|^(4 gamma) |Au|^2 (1+s)^(3p) ds
    std::vector<double> i_grad;
    /// int_0^t |A^(1/2)u|^(6 gamma) |A^(3/2)u|^2 (1+s)^(5p) ds
    std::vector<double> i_grad3;
    /// int_0^t [|A^(1/2)u|^(8 gamma)(1+s)^(7p) + |A^(1/2)u|^(6 gamma)(1+s)^(5p)] |A^2 u|^2 ds
    std::vector<double> i_grad4;
    double tol = 0.0;
};

/// -(1+t)^p |A^(1/2)u|^(2 gamma) A u.
[[nodiscard]] StateVector parabolic_rhs(double t, const StateVector& u,
                                        const SpectralOperator& op,
                                        const NonlinearityParams& params);

/// Exact second time derivative of the solution, evaluated from the state:
/// u'' = -p(1+t)^(p-1) sigma^gamma A u
///       + (1+t)^(2p) (sigma^(2 gamma) A^2 u + 2 gamma sigma^(2 gamma - 1) |Au|^2 A u)
/// with sigma = |A^(1/2)u|^2.
[[nodiscard]] StateVector parabolic_second_derivative(double t, const StateVector& u,
                                                      const SpectralOperator& op,
                                                      const NonlinearityParams& params);

/// Integrates the parabolic problem on a geometric grid with step
/// <= grid_factor * (1+t), local error per step controlled by tol.
[[nodiscard]] ParabolicTrajectory parabolic_solve(const SpectralOperator& op,
                                                  const NonlinearityParams& params,
                                                  const StateVector& u0, double horizon,
                                                  double tol, double grid_factor = 0.02);

/// Same integration with samples forced exactly at the given times
/// (times[0] must be 0). Used to evaluate the parabolic solution on a
/// hyperbolic grid without interpolation.
[[nodiscard]] ParabolicTrajectory parabolic_solve_at(const SpectralOperator& op,
                                                     const NonlinearityParams& params,
                                                     const StateVector& u0,
                                                     std::span<const double> times,
                                                     double tol);

/// Per-property summary of the solution monitors. Quantities are empirical:
/// the envelope constants are reported, never assumed.
struct DvReport {
    double ratio_increase_k1 = 0.0;  ///< max growth of |Au|^2/|A^(1/2)u|^2 between samples
    double ratio_increase_k2 = 0.0;  ///< same for |A^(3/2)u|^2/|Au|^2
    double energy_residual_abs = 0.0;
    double energy_residual_rel = 0.0;
    double envelope_lower = 0.0;  ///< min of |A^(1/2)u|^2 (1+t)^((p+1)/gamma)
    double envelope_upper = 0.0;  ///< max of |A^(1/2)u|^2 (1+t)^((p+1)/(gamma+1))
    double product_sup = 0.0;     ///< sup of |A^(1/2)u|^(2(gamma-1)) |Au|^2 (1+t)^(p+1)
    bool coercive = false;
    double coercive_sup = 0.0;  ///< sup of |A^(1/2)u|^2 (1+t)^((p+1)/gamma), coercive only
    double integral_grad = 0.0;
    double integral_grad3 = 0.0;
    double integral_grad4 = 0.0;
    double tail_fraction_grad = 0.0;  ///< last-decade share of i_grad, and so on
    double tail_fraction_grad3 = 0.0;
    double tail_fraction_grad4 = 0.0;
    double min_sigma = 0.0;  ///< min |A^(1/2)u|^2 over samples (non-stationarity)
};

/// Evaluates the monitors along a solved trajectory. Throws when the initial
/// datum is degenerate (|A^(1/2)u0| = 0).
[[nodiscard]] DvReport check_dv_properties(const ParabolicTrajectory& traj,
                                           const SpectralOperator& op,
                                           const NonlinearityParams& params);

}  // namespace kirchsim
