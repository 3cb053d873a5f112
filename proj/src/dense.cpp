#include "rbfmol/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace rbfmol {
namespace dense {

ReducedQR reduced_qr(const Matrix& m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    if (rows < cols) throw ShapeError("reduced_qr: requires rows >= cols");

    Eigen::HouseholderQR<Matrix> qr(m);
    ReducedQR out;
    out.Q = qr.householderQ() * Matrix::Identity(rows, cols);
    out.R = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();

    // Sign convention: nonnegative diagonal of R.
    for (Eigen::Index i = 0; i < cols; ++i) {
        if (out.R(i, i) < 0.0) {
            out.R.row(i) = -out.R.row(i);
            out.Q.col(i) = -out.Q.col(i);
        }
        out.diag_max = std::max(out.diag_max, out.R(i, i));
    }
    const double tol = static_cast<double>(std::max(rows, cols)) *
                       std::numeric_limits<double>::epsilon() * out.diag_max;
    for (Eigen::Index i = 0; i < cols; ++i)
        if (out.R(i, i) <= tol) out.zero_diagonal.push_back(static_cast<int>(i));
    return out;
}

std::vector<std::complex<double>> eigenvalues_general(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("eigenvalues_general: matrix must be square");
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigensolverError("eigenvalues_general: QR iteration did not converge");
    std::vector<std::complex<double>> out(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
    return out;
}

Vector singular_values(const Matrix& m) {
    if (m.rows() >= 16 && m.cols() >= 16) {
        Eigen::BDCSVD<Matrix> svd(m);
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

double condition_number(const Matrix& m) {
    const Vector s = singular_values(m);
    const double smax = s(0), smin = s(s.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

int numerical_rank(const Matrix& m) {
    const Vector s = singular_values(m);
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    return rank;
}

namespace {

void check_spd_input(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("solve_spd: matrix must be square");
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * std::max(scale, 1e-300))
        throw NotSpdError("solve_spd: matrix is not symmetric");
}

}  // namespace

Matrix solve_spd(const Matrix& m, const Matrix& rhs) {
    check_spd_input(m);
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NotSpdError("solve_spd: Cholesky factorization failed (matrix not SPD)");
    return llt.solve(rhs);
}

Vector solve_spd(const Matrix& m, const Vector& rhs) {
    check_spd_input(m);
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NotSpdError("solve_spd: Cholesky factorization failed (matrix not SPD)");
    return llt.solve(rhs);
}

namespace {

Vector back_substitute(const Matrix& r, const Vector& rhs, double floor_value, bool* floored) {
    const Eigen::Index n = r.cols();
    Vector x = rhs;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double diag = r(i, i);
        if (std::abs(diag) < floor_value) {
            if (floored == nullptr)
                throw SingularMassError("solve_upper_triangular: zero diagonal entry",
                                        static_cast<int>(i));
            *floored = true;
            diag = floor_value;
        }
        x(i) /= diag;
        if (i > 0) x.head(i).noalias() -= r.block(0, i, i, 1) * x(i);
    }
    return x;
}

}  // namespace

Vector solve_upper_triangular(const Matrix& r, const Vector& rhs) {
    if (r.rows() != r.cols() || r.rows() != rhs.size())
        throw ShapeError("solve_upper_triangular: shape mismatch");
    const double tiny = std::numeric_limits<double>::min();
    return back_substitute(r, rhs, tiny, nullptr);
}

Vector solve_upper_triangular_floored(const Matrix& r, const Vector& rhs, double floor_value,
                                      bool* floored) {
    if (r.rows() != r.cols() || r.rows() != rhs.size())
        throw ShapeError("solve_upper_triangular_floored: shape mismatch");
    bool local = false;
    Vector x = back_substitute(r, rhs, floor_value, &local);
    if (floored != nullptr) *floored = *floored || local;
    return x;
}

void gemv(const Matrix& m, const Vector& x, Vector& y) {
    y.resize(m.rows());
    const Eigen::Index rows = m.rows();
    if (rows * m.cols() < (1 << 20)) {
        y.noalias() = m * x;
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>((rows + 255) / 256); ++i) {
        const Eigen::Index lo = static_cast<Eigen::Index>(i) * 256;
        const Eigen::Index len = std::min<Eigen::Index>(256, rows - lo);
        y.segment(lo, len).noalias() = m.middleRows(lo, len) * x;
    }
}

void gemv_t(const Matrix& m, const Vector& x, Vector& y) {
    y.resize(m.cols());
    const Eigen::Index cols = m.cols();
    if (cols * m.rows() < (1 << 20)) {
        y.noalias() = m.transpose() * x;
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < static_cast<int>((cols + 255) / 256); ++i) {
        const Eigen::Index lo = static_cast<Eigen::Index>(i) * 256;
        const Eigen::Index len = std::min<Eigen::Index>(256, cols - lo);
        y.segment(lo, len).noalias() = m.middleCols(lo, len).transpose() * x;
    }
}

}  // namespace dense
}  // namespace rbfmol
