#include "rbfmol/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "rbfmol/csv.hpp"

namespace rbfmol {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::completed: return "completed";
        case SolveStatus::stiffness_abort: return "stiffness-abort";
        case SolveStatus::nonfinite_abort: return "nonfinite-abort";
    }
    return "unknown";
}

void SolveTrace::write_steps_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.row("step_index", "t", "dt");
    for (std::size_t i = 0; i < step_sizes.size(); ++i)
        csv.row(static_cast<long>(i), times[i + 1], step_sizes[i]);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// e = b(5th) - b(4th): error estimate weights (including the FSAL stage).
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

SolveTrace dormand_prince(const std::function<void(double, const Vector&, Vector&)>& rhs,
                          const Vector& y0, double t0, double t1, const IntegrateOptions& opts) {
    SolveTrace trace;
    const auto n = y0.size();
    const double span = t1 - t0;
    const bool dense_store = n <= opts.dense_store_limit && opts.output_times.empty();

    Vector y = y0, ynew(n), ytmp(n), err_vec(n);
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    double t = t0;
    trace.times.push_back(t);
    if (dense_store) {
        trace.state_times.push_back(t);
        trace.states.push_back(y);
    }

    std::vector<double> outs = opts.output_times;
    std::sort(outs.begin(), outs.end());
    std::size_t next_out = 0;
    while (next_out < outs.size() && outs[next_out] <= t0 + 1e-14 * std::abs(span)) {
        trace.state_times.push_back(outs[next_out]);
        trace.states.push_back(y);
        ++next_out;
    }

    rhs(t, y, k1);
    if (!k1.allFinite() || !y.allFinite()) {
        trace.status = SolveStatus::nonfinite_abort;
        trace.abort_reason = "nonfinite initial state or right-hand side";
        return trace;
    }

    double dt;
    if (opts.fixed_step) {
        dt = opts.dt > 0.0 ? opts.dt : span / 100.0;
    } else {
        // Cheap first guess; the controller corrects it within a few steps.
        const double ynorm = y.cwiseAbs().maxCoeff();
        const double fnorm = k1.cwiseAbs().maxCoeff();
        dt = 0.01 * (ynorm + opts.atol) / (fnorm + 1e-30);
        dt = std::min(dt, span / 10.0);
        dt = std::max(dt, 1e-10 * span);
    }

    const double dt_min = 1e-14 * std::abs(span);
    long attempts = 0;

    while (t < t1 - 1e-14 * std::abs(span)) {
        if (++attempts > opts.max_steps) {
            trace.status = SolveStatus::stiffness_abort;
            trace.abort_reason = "step budget exhausted";
            return trace;
        }
        if (!opts.fixed_step) {
            if (dt < dt_min) {
                trace.status = SolveStatus::stiffness_abort;
                trace.abort_reason = "step size underflow";
                return trace;
            }
            // Clip to the next output time and the final time.
            if (next_out < outs.size() && t + dt >= outs[next_out]) dt = outs[next_out] - t;
            if (t + dt > t1) dt = t1 - t;
        } else {
            if (t + dt >= t1 - 1e-12 * std::abs(span)) dt = t1 - t;
        }

        ytmp = y + dt * (a21 * k1);
        rhs(t + c2 * dt, ytmp, k2);
        ytmp = y + dt * (a31 * k1 + a32 * k2);
        rhs(t + c3 * dt, ytmp, k3);
        ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * dt, ytmp, k4);
        ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * dt, ytmp, k5);
        ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + dt, ytmp, k6);
        ynew = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + dt, ynew, k7);  // FSAL

        if (opts.fixed_step) {
            if (!ynew.allFinite()) {
                trace.status = SolveStatus::nonfinite_abort;
                trace.abort_reason = "state became nonfinite";
                return trace;
            }
            t += dt;
            y.swap(ynew);
            k1.swap(k7);
            trace.times.push_back(t);
            trace.step_sizes.push_back(dt);
            ++trace.accepted_steps;
            if (dense_store) {
                trace.state_times.push_back(t);
                trace.states.push_back(y);
            } else {
                while (next_out < outs.size() &&
                       outs[next_out] <= t + 1e-12 * std::max(1.0, std::abs(t))) {
                    trace.state_times.push_back(t);
                    trace.states.push_back(y);
                    ++next_out;
                }
            }
            continue;
        }

        err_vec = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const bool finite_trial = ynew.allFinite() && err_vec.allFinite();
        double err = std::numeric_limits<double>::infinity();
        if (finite_trial) {
            err = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double sc =
                    opts.atol + opts.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
                err = std::max(err, std::abs(err_vec(i)) / sc);
            }
        }

        if (finite_trial && err <= 1.0) {
            t += dt;
            y.swap(ynew);
            k1.swap(k7);
            trace.times.push_back(t);
            trace.step_sizes.push_back(dt);
            ++trace.accepted_steps;
            if (dense_store) {
                trace.state_times.push_back(t);
                trace.states.push_back(y);
            } else {
                while (next_out < outs.size() &&
                       outs[next_out] <= t + 1e-12 * std::max(1.0, std::abs(t))) {
                    trace.state_times.push_back(t);
                    trace.states.push_back(y);
                    ++next_out;
                }
            }
        } else {
            ++trace.rejected_steps;
        }

        const double factor = finite_trial && std::isfinite(err)
                                  ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)))
                                  : 0.2;
        dt *= factor;
    }

    // Record the final state for sparse storage even when t1 was not listed.
    if (!dense_store &&
        (trace.state_times.empty() || std::abs(trace.state_times.back() - t1) > 1e-12)) {
        trace.state_times.push_back(t);
        trace.states.push_back(y);
    }
    trace.status = SolveStatus::completed;
    return trace;
}

SolveTrace integrate(const DiscreteSystem& sys, const Vector& lambda0,
                     const IntegrateOptions& opts) {
    if (lambda0.size() != sys.nz()) throw ShapeError("integrate: coefficient length != n_Z");

    Vector qtf, rhs_buf;
    const bool degenerate = sys.mass_degenerate;
    const double floor_value = sys.r_floor;
    bool floored = false;

    const auto rhs = [&](double t, const Vector& lam, Vector& out) {
        dense::gemv(sys.C, lam, rhs_buf);
        sys.reduced_forcing_at(t, qtf);
        rhs_buf += qtf;
        if (degenerate)
            out = dense::solve_upper_triangular_floored(sys.R, rhs_buf, floor_value, &floored);
        else
            out = dense::solve_upper_triangular(sys.R, rhs_buf);
    };

    SolveTrace trace =
        dormand_prince(rhs, lambda0, sys.problem->t0, sys.problem->t1, opts);
    trace.mass_regularized = floored;
    return trace;
}

}  // namespace rbfmol
