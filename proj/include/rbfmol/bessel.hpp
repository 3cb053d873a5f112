#pragma once

namespace rbfmol {

struct BesselK {
    double value = 0.0;
    bool underflow = false;  // true when K_order(r) underflowed to exactly 0
};

/// Modified Bessel function of the second kind K_order(r) for integer
/// order >= 0 and r > 0. Relative error <= 1e-12 on r in [1e-8, 700].
/// Throws std::domain_error for r <= 0.
double bessel_k(int order, double r);

/// Same, but reports underflow instead of silently returning 0.
BesselK bessel_k_flagged(int order, double r);

/// Fills k[0..order] with K_0(r) .. K_order(r) in one recurrence sweep.
void bessel_k_sequence(int order, double r, double* k);

}  // namespace rbfmol
