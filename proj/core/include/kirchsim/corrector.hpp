#pragma once

#include "kirchsim/spectral.hpp"

namespace kirchsim {

/// Data of the boundary-layer corrector: eps theta'' + (1+t)^(-p) theta' = 0,
/// theta(0) = 0, theta'(0) = w0.
struct CorrectorSpec {
    double epsilon = 1e-3;
    double p = 0.0;
    StateVector w0;
};

/// w0 = u1 + |A^(1/2)u0|^(2 gamma) A u0, the velocity lost in the parabolic
/// limit.
[[nodiscard]] StateVector compute_w0(const StateVector& u0, const StateVector& u1,
                                     const SpectralOperator& op,
                                     const NonlinearityParams& params);

/// Scalar decay profile s(t) with theta'(t) = w0 * s(t), s(0) = 1.
/// p = 1: (1+t)^(-1/eps); p < 1: exp(-((1+t)^(1-p) - 1) / (eps (1-p))).
[[nodiscard]] double theta_profile_derivative(double t, double epsilon, double p);

/// Integral of the profile over [0, t]; closed form for p = 0 and p = 1
/// (the latter requires eps < 1), adaptive quadrature to 1e-12 absolute
/// otherwise.
[[nodiscard]] double theta_profile(double t, double epsilon, double p);

[[nodiscard]] StateVector theta_prime(double t, const CorrectorSpec& spec);
[[nodiscard]] StateVector theta(double t, const CorrectorSpec& spec);

struct ThetaBound {
    double value = 0.0;  ///< integral of (1+t)^delta |A^(j/2) theta'(t)| over [0, inf)
    double ratio = 0.0;  ///< value / (|A^(j/2) w0| eps); bounded uniformly in eps
};

/// Evaluates the corrector integrability bound for weight exponent delta and
/// operator power j/2. Requires eps < 1/(2 + 2 delta).
[[nodiscard]] ThetaBound check_theta_integral_bound(const CorrectorSpec& spec, double delta,
                                                    int j, const SpectralOperator& op);

}  // namespace kirchsim
