#pragma once

#include <complex>
#include <vector>

#include "rbfmol/types.hpp"

namespace rbfmol {
namespace dense {

struct ReducedQR {
    Matrix Q;  // n_x x n_z, orthonormal columns
    Matrix R;  // n_z x n_z upper triangular, nonnegative diagonal
    std::vector<int> zero_diagonal;  // numerically zero R_ii (rank report)
    double diag_max = 0.0;
};

/// Thin QR of an n_x x n_z matrix, n_x >= n_z (ShapeError otherwise).
ReducedQR reduced_qr(const Matrix& m);

/// Full complex spectrum of a general real square matrix, conjugate pairs
/// for real input. Throws EigensolverError on iteration failure.
std::vector<std::complex<double>> eigenvalues_general(const Matrix& m);

/// sigma_max / sigma_min from a full SVD; +inf when sigma_min underflows.
double condition_number(const Matrix& m);

Vector singular_values(const Matrix& m);

/// Count of singular values above dim_max * eps * sigma_max.
int numerical_rank(const Matrix& m);

/// Cholesky solve; requires symmetry to 1e-10 relative. NotSpdError on
/// asymmetry or factorization failure.
Matrix solve_spd(const Matrix& m, const Matrix& rhs);
Vector solve_spd(const Matrix& m, const Vector& rhs);

/// Back-substitution. Throws SingularMassError (with the offending index)
/// on a numerically zero diagonal entry.
Vector solve_upper_triangular(const Matrix& r, const Vector& rhs);

/// Back-substitution with diagonal entries below floor_value replaced by
/// floor_value; sets *floored when that happened. This is the degenerate
/// mass-matrix fallback.
Vector solve_upper_triangular_floored(const Matrix& r, const Vector& rhs, double floor_value,
                                      bool* floored = nullptr);

/// y = M x, row-parallel for large M; bitwise deterministic in thread count.
void gemv(const Matrix& m, const Vector& x, Vector& y);

/// y = M^T x.
void gemv_t(const Matrix& m, const Vector& x, Vector& y);

}  // namespace dense
}  // namespace rbfmol
