#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kirchsim {

/// Thrown when an adaptive integration cannot proceed (step underflow or a
/// non-finite right-hand side that persists under step reduction).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double time)
        : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

/// dy/dt = f(t, y); `dydt` is preallocated to y.size().
using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;

/// Called exactly at every requested output time with the state and its
/// derivative there.
using OdeObserver = std::function<void(double t, const std::vector<double>& y,
                                       const std::vector<double>& dydt)>;

struct OdeOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    /// First trial step; 0 selects a conservative default.
    double initial_step = 0.0;
    /// Hard floor on the step, relative to (1 + |t|); underflow throws.
    double min_step_factor = 1e-14;
    /// Optional time-dependent cap on the step size.
    std::function<double(double)> max_step;
};

/// Dormand-Prince 5(4) with embedded error control. Integrates from
/// output_times.front() to output_times.back(), clamping internal steps so
/// the observer fires exactly at each output time. Local error per step is
/// kept below abs_tol + rel_tol * |y| componentwise (RMS norm).
void integrate_dopri5(const OdeRhs& f, const std::vector<double>& y0,
                      std::span<const double> output_times, const OdeOptions& options,
                      const OdeObserver& observe);

}  // namespace kirchsim
