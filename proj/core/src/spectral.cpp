#include "kirchsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kirchsim {

SpectralOperator SpectralOperator::from_eigenvalues(std::vector<double> lambdas) {
    if (lambdas.empty()) {
        throw std::invalid_argument("SpectralOperator: eigenvalue list must be nonempty");
    }
    for (double l : lambdas) {
        if (!(l >= 0.0)) {
            throw std::invalid_argument("SpectralOperator: eigenvalues must be nonnegative");
        }
    }
    SpectralOperator op;
    op.nu = *std::min_element(lambdas.begin(), lambdas.end());
    op.eigenvalues = std::move(lambdas);
    return op;
}

SpectralOperator SpectralOperator::with_coercivity(std::vector<double> lambdas, double nu) {
    SpectralOperator op = from_eigenvalues(std::move(lambdas));
    if (!(nu >= 0.0) || nu > op.nu) {
        throw std::invalid_argument(
            "SpectralOperator: coercivity constant must lie in [0, min eigenvalue]");
    }
    op.nu = nu;
    return op;
}

std::vector<std::string> NonlinearityParams::validate() const {
    std::vector<std::string> errors;
    if (!(gamma >= 1.0)) {
        errors.push_back("gamma must satisfy gamma >= 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        errors.push_back("p must lie in [0, 1]");
    }
    return errors;
}

void check_same_dim(const StateVector& x, const StateVector& y, const char* where) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

void check_dim(const StateVector& x, const SpectralOperator& op, const char* where) {
    if (x.size() != op.dim()) {
        throw std::invalid_argument(std::string(where) +
                                    ": state dimension does not match operator");
    }
}

double inner(const StateVector& x, const StateVector& y) {
    check_same_dim(x, y, "inner");
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += x[k] * y[k];
    }
    return s;
}

double norm_sq(const StateVector& x) {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

double sobolev_norm_sq(const StateVector& x, const SpectralOperator& op, double alpha) {
    check_dim(x, op, "sobolev_norm_sq");
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("sobolev_norm_sq: alpha must be nonnegative");
    }
    if (alpha == 0.0) {
        return norm_sq(x);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::pow(op.eigenvalues[k], 2.0 * alpha) * x[k] * x[k];
    }
    return s;
}

StateVector apply_power_A(const StateVector& x, const SpectralOperator& op, double alpha) {
    check_dim(x, op, "apply_power_A");
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("apply_power_A: alpha must be nonnegative");
    }
    if (alpha == 0.0) {
        return x;
    }
    StateVector y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        y[k] = std::pow(op.eigenvalues[k], alpha) * x[k];
    }
    return y;
}

double m_eval(double sigma, const NonlinearityParams& params) {
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("m_eval: sigma must be nonnegative");
    }
    return std::pow(sigma, params.gamma);
}

}  // namespace kirchsim
