#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rbfmol/discrete_system.hpp"

namespace rbfmol {

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    double max_real_part = 0.0;
    double spectral_radius = 0.0;
    int zero_count = 0;
    bool stable = false;
    // Realized absolute thresholds actually applied, kept in every report so
    // stability labels stay auditable.
    double stability_tolerance = 0.0;
    double zero_threshold = 0.0;

    /// CSV with header re,im, one eigenvalue per row.
    void write_csv(const std::string& path) const;
    /// JSON sidecar {n_Z, n_X, m, max_real_part, spectral_radius, zero_count, stable, ...}.
    void write_json(const std::string& path, int n_z, int n_x, int m) const;
};

/// Full spectrum of ode_matrix(sys). The flags use
///   stable        <=> max Re(lambda) <= stability_rel_tol * max(1, spectral_radius)
///   zero eigen    <=> |lambda| <= zero_rel_threshold * spectral_radius.
SpectrumReport spectrum_report(const DiscreteSystem& sys, double stability_rel_tol = 1e-6,
                               double zero_rel_threshold = 1e-12);

}  // namespace rbfmol
