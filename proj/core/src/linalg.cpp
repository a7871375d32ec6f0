// SPDX-License-Identifier: Apache-2.0
#include "tripc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace tripc {

namespace {

Eigen::VectorXcd vec(const CMatrix& a) {
    Eigen::VectorXcd v(a.size());
    // column-major flattening; any fixed convention works for span algebra
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) v(k++) = a(i, j);
    return v;
}

CMatrix unvec(const Eigen::VectorXcd& v, int rows, int cols) {
    CMatrix a(rows, cols);
    Eigen::Index k = 0;
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a(i, j) = v(k++);
    return a;
}

void require_same_shape(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("ShapeMismatch",
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

} // namespace

void TolerancePolicy::validate(int max_dim) const {
    const double eps = std::numeric_limits<double>::epsilon();
    if (eq_tol <= 0 || rank_tol <= 0 || one_tol <= 0 || psd_tol <= 0)
        throw InputError("BadTolerance", "all thresholds must be strictly positive");
    if (eq_tol < eps * std::max(1, max_dim))
        throw InputError("BadTolerance",
                         "eq_tol below machine epsilon times max dimension");
}

double fro_norm(const CMatrix& a) { return a.norm(); }

double spectral_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Complex trace_inner(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b);
    return (b.adjoint() * a).trace();
}

double eq_residual(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b);
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

bool approx_eq(const CMatrix& a, const CMatrix& b, const TolerancePolicy& tol) {
    return eq_residual(a, b) <= tol.eq_tol;
}

bool is_hermitian(const CMatrix& a, const TolerancePolicy& tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol.eq_tol * std::max(1.0, a.norm());
}

HermitianEigen hermitian_eigen(const CMatrix& a, const TolerancePolicy& tol) {
    if (a.rows() != a.cols())
        throw InputError("NotHermitian", "matrix is not square");
    if ((a - a.adjoint()).norm() > tol.eq_tol * std::max(1.0, a.norm()))
        throw InputError("NotHermitian", "||a - a*|| exceeds eq_tol * ||a||");
    const CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::Index n = a.rows();
    HermitianEigen out;
    out.values = RVector(n);
    out.vectors = CMatrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) { // Eigen sorts ascending; flip
        out.values(i) = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return out;
}

double min_eigenvalue(const CMatrix& a_hermitian) {
    if (a_hermitian.size() == 0) return 0.0;
    const CMatrix h = (a_hermitian + a_hermitian.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return es.eigenvalues().minCoeff();
}

bool is_psd(const CMatrix& a, const TolerancePolicy& tol) {
    if (a.rows() != a.cols() || !is_hermitian(a, tol))
        throw InputError("NotHermitian", "is_psd needs a Hermitian input");
    if (a.size() == 0) return true;
    const CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
    return lo >= -tol.psd_tol * std::max(1.0, hi);
}

CMatrix psd_sqrt(const CMatrix& a, const TolerancePolicy& tol) {
    if (!is_psd(a, tol)) throw InputError("NotPSD", "psd_sqrt of a non-PSD matrix");
    const CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    RVector d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::sqrt(std::max(0.0, d(i)));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix psd_clamp(const CMatrix& a) {
    const CMatrix h = (a + a.adjoint()) / 2.0;
    if (h.size() == 0) return h;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    RVector d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::max(0.0, d(i));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

PolarParts polar_decompose(const CMatrix& x, const TolerancePolicy& tol) {
    PolarParts out;
    if (x.size() == 0 || x.norm() == 0.0) {
        out.isometry = CMatrix::Zero(x.rows(), x.cols());
        out.positive = CMatrix::Zero(x.cols(), x.cols());
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    const double smax = s(0);
    int k = 0;
    while (k < s.size() && s(k) > tol.rank_tol * smax) ++k;
    const CMatrix u = svd.matrixU().leftCols(k);
    const CMatrix v = svd.matrixV().leftCols(k);
    out.isometry = u * v.adjoint();
    out.positive = v * s.head(k).asDiagonal() * v.adjoint();
    return out;
}

CMatrix range_projection(const CMatrix& a, const TolerancePolicy& tol) {
    if (a.size() == 0) return CMatrix::Zero(a.rows(), a.rows());
    if (a.norm() == 0.0) return CMatrix::Zero(a.rows(), a.rows());
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    const double smax = s(0);
    int k = 0;
    while (k < s.size() && s(k) > tol.rank_tol * smax) ++k;
    const CMatrix u = svd.matrixU().leftCols(k);
    return u * u.adjoint();
}

int numerical_rank(const CMatrix& a, const TolerancePolicy& tol) {
    if (a.size() == 0 || a.norm() == 0.0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    const RVector& s = svd.singularValues();
    const double smax = s(0);
    int k = 0;
    while (k < s.size() && s(k) > tol.rank_tol * smax) ++k;
    return k;
}

std::vector<CMatrix> orthonormal_span(const std::vector<CMatrix>& gens,
                                      const TolerancePolicy& tol) {
    std::vector<CMatrix> nonzero;
    for (const auto& g : gens)
        if (g.size() > 0 && g.norm() > 0.0) nonzero.push_back(g);
    if (nonzero.empty()) return {};
    const int rows = static_cast<int>(nonzero[0].rows());
    const int cols = static_cast<int>(nonzero[0].cols());
    CMatrix stacked(static_cast<Eigen::Index>(rows) * cols, nonzero.size());
    for (std::size_t j = 0; j < nonzero.size(); ++j) {
        require_same_shape(nonzero[j], nonzero[0]);
        stacked.col(static_cast<Eigen::Index>(j)) = vec(nonzero[j]);
    }
    Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    std::vector<CMatrix> basis;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (smax == 0.0 || s(i) <= tol.rank_tol * smax) break;
        basis.push_back(unvec(svd.matrixU().col(i), rows, cols));
    }
    return basis;
}

CMatrix project_onto_span(const std::vector<CMatrix>& basis, const CMatrix& x) {
    CMatrix out = CMatrix::Zero(x.rows(), x.cols());
    for (const auto& b : basis) out += trace_inner(x, b) * b;
    return out;
}

double span_distance(const std::vector<CMatrix>& basis, const CMatrix& x) {
    return (x - project_onto_span(basis, x)).norm();
}

bool span_contains(const std::vector<CMatrix>& basis, const CMatrix& x,
                   const TolerancePolicy& tol) {
    return span_distance(basis, x) <= tol.eq_tol * std::max(1.0, x.norm());
}

bool span_subset(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                 const TolerancePolicy& tol) {
    for (const auto& m : a)
        if (!span_contains(b, m, tol)) return false;
    return true;
}

std::vector<CMatrix> span_intersection(
    const std::vector<std::vector<CMatrix>>& spans, int rows, int cols,
    const TolerancePolicy& tol) {
    if (spans.empty()) return {};
    for (const auto& sp : spans)
        if (sp.empty()) return {};
    const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
    CMatrix avg = CMatrix::Zero(n, n);
    for (const auto& sp : spans) {
        CMatrix b(n, sp.size());
        for (std::size_t j = 0; j < sp.size(); ++j)
            b.col(static_cast<Eigen::Index>(j)) = vec(sp[j]);
        avg += b * b.adjoint();
    }
    avg /= static_cast<double>(spans.size());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(avg);
    std::vector<CMatrix> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (es.eigenvalues()(i) >= 1.0 - tol.rank_tol)
            out.push_back(unvec(es.eigenvectors().col(i), rows, cols));
    }
    return out;
}

std::vector<CMatrix> real_linear_nullspace(
    const std::vector<CMatrix>& basis,
    const std::vector<std::function<CMatrix(const CMatrix&)>>& constraints,
    const TolerancePolicy& tol) {
    if (basis.empty()) return {};
    const int d = static_cast<int>(basis.size());
    const Complex imag(0.0, 1.0);

    // Columns of A: constraint values on the 2d real directions b_j, i b_j.
    std::vector<Eigen::VectorXd> cols(2 * d);
    Eigen::Index out_len = 0;
    for (int j = 0; j < 2 * d; ++j) {
        const CMatrix z = (j < d) ? basis[j] : CMatrix(imag * basis[j - d]);
        std::vector<double> entries;
        for (const auto& c : constraints) {
            const CMatrix y = c(z);
            for (Eigen::Index col = 0; col < y.cols(); ++col)
                for (Eigen::Index row = 0; row < y.rows(); ++row) {
                    entries.push_back(y(row, col).real());
                    entries.push_back(y(row, col).imag());
                }
        }
        cols[j] = Eigen::Map<Eigen::VectorXd>(entries.data(),
                                              static_cast<Eigen::Index>(entries.size()));
        out_len = cols[j].size();
    }
    RMatrix a(std::max<Eigen::Index>(out_len, 1), 2 * d);
    a.setZero();
    for (int j = 0; j < 2 * d; ++j)
        if (out_len > 0) a.col(j) = cols[j];

    Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    std::vector<CMatrix> out;
    for (int j = 0; j < 2 * d; ++j) {
        const double sv = (j < s.size()) ? s(j) : 0.0;
        // directions with (near-)zero singular value span the solution set
        if (smax > tol.eq_tol && sv > tol.rank_tol * smax) continue;
        const RVector v = svd.matrixV().col(j);
        CMatrix z = CMatrix::Zero(basis[0].rows(), basis[0].cols());
        for (int k = 0; k < d; ++k) z += (v(k) + imag * v(d + k)) * basis[k];
        out.push_back(z);
    }
    return out;
}

} // namespace tripc
