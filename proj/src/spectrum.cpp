#include "rbfmol/spectrum.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "rbfmol/csv.hpp"

namespace rbfmol {

SpectrumReport spectrum_report(const DiscreteSystem& sys, double stability_rel_tol,
                               double zero_rel_threshold) {
    SpectrumReport rep;
    rep.eigenvalues = dense::eigenvalues_general(ode_matrix(sys));

    rep.max_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& ev : rep.eigenvalues) {
        rep.max_real_part = std::max(rep.max_real_part, ev.real());
        rep.spectral_radius = std::max(rep.spectral_radius, std::abs(ev));
    }

    rep.stability_tolerance = stability_rel_tol * std::max(1.0, rep.spectral_radius);
    rep.zero_threshold = zero_rel_threshold * rep.spectral_radius;
    rep.stable = rep.max_real_part <= rep.stability_tolerance;
    rep.zero_count = static_cast<int>(
        std::count_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                      [&](const auto& ev) { return std::abs(ev) <= rep.zero_threshold; }));
    return rep;
}

void SpectrumReport::write_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.row("re", "im");
    for (const auto& ev : eigenvalues) csv.row(ev.real(), ev.imag());
}

void SpectrumReport::write_json(const std::string& path, int n_z, int n_x, int m) const {
    nlohmann::json j;
    j["n_Z"] = n_z;
    j["n_X"] = n_x;
    j["m"] = m;
    j["max_real_part"] = max_real_part;
    j["spectral_radius"] = spectral_radius;
    j["zero_count"] = zero_count;
    j["stable"] = stable;
    j["stability_tolerance"] = stability_tolerance;
    j["zero_threshold"] = zero_threshold;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

}  // namespace rbfmol
