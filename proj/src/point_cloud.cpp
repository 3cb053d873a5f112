#include "rbfmol/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "rbfmol/csv.hpp"

namespace rbfmol {

void PointCloud::write_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.row("x", "y", "z");
    for (const Vec3& p : points) csv.row(p.x(), p.y(), p.z());
}

void PointCloud::write_meta_json(const std::string& path) const {
    nlohmann::json j;
    j["surface"] = surface_name;
    j["n"] = points.size();
    j["seed"] = seed;
    j["h"] = h;
    j["q"] = q;
    j["rho"] = rho;
    j["on_surface"] = on_surface;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

namespace {

// Retraction of uniform box draws. Draws are generated serially so the
// result depends only on the seed, not the thread count.
std::vector<Vec3> retracted_pool(const Surface& surface, int want, std::uint64_t seed,
                                 int max_attempts) {
    Rng rng(seed);
    const Vec3 lo = surface.box_lo(), hi = surface.box_hi();
    std::vector<Vec3> draws;
    draws.reserve(max_attempts);
    for (int i = 0; i < max_attempts; ++i)
        draws.emplace_back(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()),
                           rng.uniform(lo.z(), hi.z()));

    std::vector<Vec3> retracted(draws.size());
    std::vector<char> ok(draws.size(), 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(draws.size()); ++i) {
        try {
            const Vec3 p = surface.closest_point(draws[i]);
            if (std::abs(surface.level(p)) <= 1e-10) {
                retracted[i] = p;
                ok[i] = 1;
            }
        } catch (const RetractionFailure&) {
            // ambiguous or non-convergent draw; skip
        }
    }

    std::vector<Vec3> pool;
    pool.reserve(want);
    for (std::size_t i = 0; i < draws.size() && static_cast<int>(pool.size()) < want; ++i)
        if (ok[i]) pool.push_back(retracted[i]);
    return pool;
}

}  // namespace

std::vector<Vec3> dense_surface_samples(const Surface& surface, int n, std::uint64_t seed) {
    auto pool = retracted_pool(surface, n, seed, 4 * n + 64);
    if (static_cast<int>(pool.size()) < n)
        throw SamplingError("dense_surface_samples: retraction yield too low on '" +
                            surface.name() + "'");
    pool.resize(n);
    return pool;
}

PointCloud sample_quasi_uniform(const Surface& surface, int n, std::uint64_t seed) {
    if (n < 4) throw SamplingError("sample_quasi_uniform: need n >= 4");
    const int pool_factor = n <= 2000 ? 50 : 30;
    const int want = pool_factor * n;
    std::vector<Vec3> pool = retracted_pool(surface, want, seed, 8 * want);
    if (static_cast<int>(pool.size()) < std::max(2 * n, n + 16))
        throw SamplingError("sample_quasi_uniform: candidate pool exhausted on '" +
                            surface.name() + "'");

    const int pn = static_cast<int>(pool.size());

    // Farthest-point thinning. Seed point: farthest from the pool centroid.
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& p : pool) centroid += p;
    centroid /= pn;

    std::vector<double> dist(pn);
    int first = 0;
    double best = -1.0;
    for (int i = 0; i < pn; ++i) {
        const double d = (pool[i] - centroid).squaredNorm();
        if (d > best) {
            best = d;
            first = i;
        }
    }

    PointCloud cloud;
    cloud.on_surface = true;
    cloud.seed = seed;
    cloud.surface_name = surface.name();
    cloud.points.reserve(n);
    cloud.points.push_back(pool[first]);
    for (int i = 0; i < pn; ++i) dist[i] = (pool[i] - pool[first]).squaredNorm();

    while (cloud.size() < n) {
        int pick = 0;
        double far = -1.0;
        for (int i = 0; i < pn; ++i)
            if (dist[i] > far) {
                far = dist[i];
                pick = i;
            }
        if (far <= 0.0)
            throw SamplingError("sample_quasi_uniform: pool collapsed to duplicates");
        const Vec3& p = pool[pick];
        cloud.points.push_back(p);
        for (int i = 0; i < pn; ++i) dist[i] = std::min(dist[i], (pool[i] - p).squaredNorm());
    }
    return cloud;
}

namespace {

// Fixed asymmetric anchor; a symmetric lattice on a symmetric surface makes
// counts jump in whole symmetry orbits, which breaks exact target hits.
const Vec3 kLatticeAnchor(0.0123456789, 0.0543219876, 0.0987612345);

std::vector<Vec3> narrow_band_points(const Surface& surface, double delta, double spacing) {
    const Vec3 lo = surface.box_lo() - Vec3::Constant(delta);
    const Vec3 hi = surface.box_hi() + Vec3::Constant(delta);
    std::vector<Vec3> grid;
    const auto index_range = [&](double l, double h, double anchor) {
        return std::pair<long, long>(static_cast<long>(std::ceil((l - anchor) / spacing)),
                                     static_cast<long>(std::floor((h - anchor) / spacing)));
    };
    const auto [ix0, ix1] = index_range(lo.x(), hi.x(), kLatticeAnchor.x());
    const auto [iy0, iy1] = index_range(lo.y(), hi.y(), kLatticeAnchor.y());
    const auto [iz0, iz1] = index_range(lo.z(), hi.z(), kLatticeAnchor.z());
    for (long i = ix0; i <= ix1; ++i)
        for (long j = iy0; j <= iy1; ++j)
            for (long k = iz0; k <= iz1; ++k)
                grid.emplace_back(kLatticeAnchor.x() + i * spacing, kLatticeAnchor.y() + j * spacing,
                                  kLatticeAnchor.z() + k * spacing);

    std::vector<char> inside(grid.size(), 0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
        try {
            inside[i] = surface.distance(grid[i]) <= delta ? 1 : 0;
        } catch (const RetractionFailure&) {
            inside[i] = 0;  // ambiguous points are far from the band anyway
        }
    }
    std::vector<Vec3> kept;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (inside[i]) kept.push_back(grid[i]);
    return kept;
}

}  // namespace

int narrow_band_count(const Surface& surface, double delta, double spacing) {
    return static_cast<int>(narrow_band_points(surface, delta, spacing).size());
}

PointCloud sample_narrow_band(const Surface& surface, double delta, int target_n) {
    if (delta <= 0.0) throw SamplingError("sample_narrow_band: delta must be positive");
    if (target_n < 1) throw SamplingError("sample_narrow_band: target_n must be positive");

    // Volume estimate of the band gives the starting spacing.
    const Vec3 ext = surface.box_hi() - surface.box_lo() + Vec3::Constant(2.0 * delta);
    double s = std::cbrt(ext.prod() / (8.0 * target_n));

    // Bracket: counts decrease (essentially) as spacing grows.
    double s_lo = s, s_hi = s;
    int c_lo = narrow_band_count(surface, delta, s_lo);
    while (c_lo < target_n) {
        s_lo *= 0.7;
        c_lo = narrow_band_count(surface, delta, s_lo);
        if (s_lo < 1e-4 * s) throw SamplingError("sample_narrow_band: cannot reach target count");
    }
    int c_hi = narrow_band_count(surface, delta, s_hi);
    while (c_hi > target_n) {
        s_hi *= 1.4;
        c_hi = narrow_band_count(surface, delta, s_hi);
        if (s_hi > 1e4 * s) throw SamplingError("sample_narrow_band: band appears empty");
    }

    double best_s = c_lo >= target_n ? s_lo : s_hi;
    int best_c = c_lo >= target_n ? c_lo : c_hi;
    const auto consider = [&](double sp, int c) {
        if (std::abs(c - target_n) < std::abs(best_c - target_n)) {
            best_c = c;
            best_s = sp;
        }
    };
    consider(s_hi, c_hi);

    for (int it = 0; it < 80 && best_c != target_n; ++it) {
        const double mid = 0.5 * (s_lo + s_hi);
        const int c = narrow_band_count(surface, delta, mid);
        consider(mid, c);
        if (c >= target_n)
            s_lo = mid;
        else
            s_hi = mid;
        if ((s_hi - s_lo) < 1e-13 * s_hi) break;
    }

    if (std::abs(best_c - target_n) > 0.1 * target_n)
        throw SamplingError("sample_narrow_band: no spacing within 10% of target count");

    PointCloud cloud;
    cloud.points = narrow_band_points(surface, delta, best_s);
    cloud.on_surface = false;
    cloud.seed = 0;
    cloud.surface_name = surface.name();
    return cloud;
}

CloudMetrics fill_and_separation(PointCloud& cloud, const Surface& surface, int eval_density) {
    const int n = cloud.size();
    if (n < 2) throw SamplingError("fill_and_separation: need at least two points");

    double min_pair2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            min_pair2 = std::min(min_pair2, (cloud.points[i] - cloud.points[j]).squaredNorm());
    const double q = 0.5 * std::sqrt(min_pair2);

    const std::vector<Vec3> eval = dense_surface_samples(surface, eval_density, 0x5eed0eull);
    double h2 = 0.0;
#pragma omp parallel for schedule(static) reduction(max : h2)
    for (int e = 0; e < static_cast<int>(eval.size()); ++e) {
        double near2 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            near2 = std::min(near2, (eval[e] - cloud.points[i]).squaredNorm());
        h2 = std::max(h2, near2);
    }
    const double h = std::sqrt(h2);

    cloud.h = h;
    cloud.q = q;
    cloud.rho = h / q;
    return {h, q, h / q};
}

double denseness_quantity(double h_x, double h_z, int m) {
    if (h_z <= 1.0) return std::pow(h_x, 2.0 * m - 4.0) * std::pow(h_z, -2.0 * m);
    return std::pow(h_x, 2.0 * m - 4.0) * std::pow(h_z, -2.0 * m + 4.0);
}

}  // namespace rbfmol
