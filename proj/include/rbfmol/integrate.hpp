#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rbfmol/discrete_system.hpp"
#include "rbfmol/types.hpp"

namespace rbfmol {

enum class SolveStatus { completed, stiffness_abort, nonfinite_abort };

const char* to_string(SolveStatus s);

struct SolveTrace {
    std::vector<double> times;       // accepted step times, starting at t0
    std::vector<double> step_sizes;  // one per accepted step
    std::vector<double> state_times;
    std::vector<Vector> states;  // at accepted steps (small systems) or output times
    long accepted_steps = 0;
    long rejected_steps = 0;
    SolveStatus status = SolveStatus::completed;
    std::string abort_reason;
    bool mass_regularized = false;

    /// CSV step log: step_index,t,dt.
    void write_steps_csv(const std::string& path) const;
};

struct IntegrateOptions {
    double rtol = 1e-3;  // adaptive defaults, deliberately untuned
    double atol = 1e-6;
    bool fixed_step = false;
    double dt = 0.0;                   // fixed mode step
    std::vector<double> output_times;  // states recorded here (steps clipped to land exactly)
    long max_steps = 2000000;          // attempt budget; exceeding it counts as a stiffness abort
    int dense_store_limit = 1500;      // store every accepted state up to this dimension
};

/// Adaptive Dormand-Prince 5(4) with FSAL on y' = rhs(t, y). Error control
/// err = max_i |e_i| / (atol + rtol max(|y_i|, |ynew_i|)) <= 1, step factor
/// min(5, max(0.2, 0.9 err^{-1/5})). Fixed mode takes uniform steps with no
/// rejection.
SolveTrace dormand_prince(const std::function<void(double, const Vector&, Vector&)>& rhs,
                          const Vector& y0, double t0, double t1, const IntegrateOptions& opts);

/// Integrates R lambda' = C lambda + Q^T f(X,t); each stage evaluates the
/// right-hand side and performs one upper-triangular solve with R (floored
/// when the mass matrix is degenerate; flag carried in the trace).
SolveTrace integrate(const DiscreteSystem& sys, const Vector& lambda0,
                     const IntegrateOptions& opts);

}  // namespace rbfmol
