#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rbfmol/surface.hpp"
#include "rbfmol/types.hpp"

namespace rbfmol {

/// Ordered point set, on-surface or near-surface. Fill distance h,
/// separation q and mesh ratio rho = h/q are NaN until measured with
/// fill_and_separation.
struct PointCloud {
    std::vector<Vec3> points;
    bool on_surface = true;
    double h = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double rho = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
    std::string surface_name;

    int size() const { return static_cast<int>(points.size()); }

    /// CSV with header x,y,z, one point per row, 17 significant digits.
    void write_csv(const std::string& path) const;
    /// JSON sidecar {surface, n, seed, h, q, rho, on_surface}.
    void write_meta_json(const std::string& path) const;
};

/// Exactly n on-surface points, deterministic in (surface, n, seed):
/// ~50n box candidates retracted by closest_point, then farthest-point
/// thinning down to n.
PointCloud sample_quasi_uniform(const Surface& surface, int n, std::uint64_t seed);

/// Points of a regular axis-aligned lattice lying within distance delta of
/// the surface. The spacing is bisected so the count hits target_n exactly
/// when achievable; otherwise the closest achievable count is returned and
/// the discrepancy is visible as cloud.size() != target_n.
/// Throws SamplingError when no spacing lands within +-10% of target_n.
PointCloud sample_narrow_band(const Surface& surface, double delta, int target_n);

/// Lattice-in-band count at a fixed spacing (the narrow-band bisection probe).
int narrow_band_count(const Surface& surface, double delta, double spacing);

struct CloudMetrics {
    double h = 0.0;
    double q = 0.0;
    double rho = 0.0;
};

/// q = half the minimum pairwise distance (exact); h = max over a dense
/// on-surface evaluation set of the distance to the cloud (approximation
/// from below); rho = h/q. Also stores the results on the cloud.
CloudMetrics fill_and_separation(PointCloud& cloud, const Surface& surface, int eval_density);

/// Dense on-surface samples for fill-distance estimation and error
/// measurement (retraction of uniform box draws, no thinning).
std::vector<Vec3> dense_surface_samples(const Surface& surface, int n, std::uint64_t seed);

/// Raw denseness quantity h_X^(2m-4) h_Z^(-2m) (h_Z <= 1) or
/// h_X^(2m-4) h_Z^(-2m+4) (h_Z > 1); the accompanying constant is unknown,
/// so this is reported as a diagnostic only.
double denseness_quantity(double h_x, double h_z, int m);

}  // namespace rbfmol
