#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kirchsim {

/// Coefficient vector in the eigenbasis of the operator A.
using StateVector = std::vector<double>;

/// Finite diagonal model of a nonnegative self-adjoint operator.
///
/// The operator acts componentwise as (A x)_k = lambda_k x_k. The field `nu`
/// is the coercivity constant of the operator being modeled; it defaults to
/// the smallest eigenvalue, but a truncated family that stands in for a
/// noncoercive operator (eigenvalues decaying toward zero) may carry nu = 0.
struct SpectralOperator {
    std::vector<double> eigenvalues;
    double nu = 0.0;

    /// Diagonal operator with nu = min eigenvalue.
    static SpectralOperator from_eigenvalues(std::vector<double> lambdas);

    /// Diagonal operator with an explicit coercivity constant.
    /// Requires 0 <= nu <= min eigenvalue.
    static SpectralOperator with_coercivity(std::vector<double> lambdas, double nu);

    [[nodiscard]] std::size_t dim() const noexcept { return eigenvalues.size(); }
    [[nodiscard]] bool coercive() const noexcept { return nu > 0.0; }
};

/// Exponents of the Kirchhoff stiffness m(sigma) = sigma^gamma and of the
/// dissipation weight (1+t)^(-p). The admissible range gamma >= 1,
/// 0 <= p <= 1 is the weakly dissipated parabolic regime.
struct NonlinearityParams {
    double gamma = 1.0;
    double p = 0.0;

    /// Returns human-readable violations; empty when admissible.
    [[nodiscard]] std::vector<std::string> validate() const;
};

/// <x, y> = sum_k x_k y_k. Throws on dimension mismatch.
[[nodiscard]] double inner(const StateVector& x, const StateVector& y);

/// |A^alpha x|^2 = sum_k lambda_k^(2 alpha) x_k^2, with lambda^0 = 1 even for
/// lambda = 0 so that alpha = 0 always yields the plain norm.
/// Throws on dimension mismatch or alpha < 0.
[[nodiscard]] double sobolev_norm_sq(const StateVector& x, const SpectralOperator& op,
                                     double alpha);

/// Componentwise A^alpha x; alpha = 0 is the identity.
[[nodiscard]] StateVector apply_power_A(const StateVector& x, const SpectralOperator& op,
                                        double alpha);

/// m(sigma) = sigma^gamma, the degenerate Kirchhoff stiffness. Throws for
/// sigma < 0.
[[nodiscard]] double m_eval(double sigma, const NonlinearityParams& params);

// Small dense-vector helpers shared by the solvers.
[[nodiscard]] double norm_sq(const StateVector& x);
void check_same_dim(const StateVector& x, const StateVector& y, const char* where);
void check_dim(const StateVector& x, const SpectralOperator& op, const char* where);

}  // namespace kirchsim
