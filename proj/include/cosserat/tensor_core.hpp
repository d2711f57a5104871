#pragma once

// Closed-form algebra of 3-vectors, 3x3 matrices and 3x3x3 tensors:
// axl/anti and their third-order analogues, adjugates, Cartan split,
// row-wise matrix/vector cross products and the Rodrigues exponential.

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "cosserat/errors.hpp"

namespace cosserat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// --- symmetric / skew / deviatoric parts ---------------------------------

template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 3> sym(const Eigen::MatrixBase<D>& X) {
    return 0.5 * (X + X.transpose());
}

template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 3> skew(const Eigen::MatrixBase<D>& X) {
    return 0.5 * (X - X.transpose());
}

template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 3> dev(const Eigen::MatrixBase<D>& X) {
    using S = typename D::Scalar;
    return X - (X.trace() / S(3)) * Eigen::Matrix<S, 3, 3>::Identity();
}

// --- axl / anti -----------------------------------------------------------
//
// anti(v)*w = v x w;   (axl A)_k = -1/2 eps_ijk A_ij.
// axl of a general matrix contracts against the alternator and therefore
// picks out the skew part, which is exactly what the wryness tensor needs
// on discretely differentiated rotation fields.

template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 3> anti(const Eigen::MatrixBase<D>& v) {
    using S = typename D::Scalar;
    Eigen::Matrix<S, 3, 3> A;
    A << S(0), -v(2), v(1),
         v(2), S(0), -v(0),
        -v(1), v(0), S(0);
    return A;
}

template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 1> axl(const Eigen::MatrixBase<D>& A) {
    using S = typename D::Scalar;
    return Eigen::Matrix<S, 3, 1>(S(0.5) * (A(2, 1) - A(1, 2)),
                                  S(0.5) * (A(0, 2) - A(2, 0)),
                                  S(0.5) * (A(1, 0) - A(0, 1)));
}

// Skew matrix stored by its axial vector, so skewness is exact by
// construction.
struct SkewMat3 {
    Vec3 axial = Vec3::Zero();

    SkewMat3() = default;
    explicit SkewMat3(const Vec3& v) : axial(v) {}

    Mat3 matrix() const { return anti(axial); }
    operator Mat3() const { return matrix(); }
};

inline SkewMat3 skew_from_matrix(const Mat3& A) { return SkewMat3(axl(A)); }

// --- orthogonal matrices --------------------------------------------------

/// Closest orthogonal matrix in Frobenius norm (polar projection, keeps the
/// orientation of the input).
inline Mat3 closest_orthogonal(const Mat3& M) {
    Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

/// Orthogonal 3x3 matrix (O(3), det = +-1). Construction re-orthonormalizes
/// inputs that drift by at most `kProjectTol` and rejects anything worse.
class Rot3 {
  public:
    static constexpr double kProjectTol = 1e-8;

    Rot3() : m_(Mat3::Identity()) {}

    explicit Rot3(const Mat3& M) {
        const double drift = (M.transpose() * M - Mat3::Identity()).norm();
        if (!(drift <= kProjectTol))
            throw NotOrthogonal("Rot3: input deviates from O(3) by " + std::to_string(drift));
        m_ = (drift > 0.0) ? closest_orthogonal(M) : M;
    }

    const Mat3& matrix() const { return m_; }
    operator const Mat3&() const { return m_; }

    double det() const { return m_.determinant(); }

  private:
    Mat3 m_;
};

/// Rodrigues' formula: exp of the skew matrix anti(w).
inline Mat3 exp_so3(const Vec3& w) {
    const double t = w.norm();
    const Mat3 W = anti(w);
    if (t < 1e-8) {
        // two-term series; error O(t^5) is below rounding here
        return Mat3::Identity() + W + 0.5 * (W * W);
    }
    const double a = std::sin(t) / t;
    const double b = (1.0 - std::cos(t)) / (t * t);
    return Mat3::Identity() + a * W + b * (W * W);
}

/// Polar decomposition F = R U with R orthogonal and U symmetric positive
/// definite, via the eigendecomposition of F^T F.
inline void polar_decompose(const Mat3& F, Mat3& R, Mat3& U) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(F.transpose() * F);
    const Vec3 lam = es.eigenvalues();
    if (!(lam.minCoeff() > 0.0))
        throw SingularStretch("polar_decompose: F^T F not positive definite");
    const Mat3 V = es.eigenvectors();
    U = V * lam.cwiseSqrt().asDiagonal() * V.transpose();
    R = F * (V * lam.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose());
}

// --- determinant-adjacent algebra ----------------------------------------

/// Adjugate by explicit cofactors; defined for singular matrices and
/// satisfies A * adjugate(A) = det(A) * id.
template <typename D>
Eigen::Matrix<typename D::Scalar, 3, 3> adjugate(const Eigen::MatrixBase<D>& A) {
    using S = typename D::Scalar;
    Eigen::Matrix<S, 3, 3> adj;
    adj(0, 0) = A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    adj(0, 1) = A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2);
    adj(0, 2) = A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1);
    adj(1, 0) = A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2);
    adj(1, 1) = A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0);
    adj(1, 2) = A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2);
    adj(2, 0) = A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0);
    adj(2, 1) = A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1);
    adj(2, 2) = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    return adj;
}

/// vol(u,v,w) = det (u|v|w), the 3-linear alternating volume form.
inline double vol(const Vec3& u, const Vec3& v, const Vec3& w) {
    Mat3 A;
    A.col(0) = u;
    A.col(1) = v;
    A.col(2) = w;
    return A.determinant();
}

/// Row-wise cross product of a matrix with a vector: row i of the result is
/// (row i of P) x n.
template <typename D, typename E>
Eigen::Matrix<typename D::Scalar, 3, 3> mat_cross_vec(const Eigen::MatrixBase<D>& P,
                                                      const Eigen::MatrixBase<E>& n) {
    using S = typename D::Scalar;
    Eigen::Matrix<S, 3, 3> out;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Matrix<S, 3, 1> row = P.row(i).transpose();
        out.row(i) = row.cross(Eigen::Matrix<S, 3, 1>(n)).transpose();
    }
    return out;
}

// --- Cartan decomposition --------------------------------------------------

/// X = dev sym X + skew X + (tr X / 3) id, pairwise orthogonal parts.
struct CartanParts {
    Mat3 devsym = Mat3::Zero();
    SkewMat3 skew_part;
    double sphere = 0.0; // coefficient of id in the spherical part

    Mat3 reassemble() const {
        return devsym + skew_part.matrix() + sphere * Mat3::Identity();
    }
};

inline CartanParts cartan_split(const Mat3& X) {
    CartanParts p;
    p.devsym = dev(sym(X));
    p.skew_part = SkewMat3(axl(X));
    p.sphere = X.trace() / 3.0;
    return p;
}

// --- third order tensors ----------------------------------------------------

/// 3x3x3 tensor stored by its three (i,j)-slices: slice(k)(i,j) = T_ijk.
struct Tensor3 {
    std::array<Mat3, 3> slices{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};

    double& operator()(int i, int j, int k) { return slices[size_t(k)](i, j); }
    double operator()(int i, int j, int k) const { return slices[size_t(k)](i, j); }

    Mat3& slice(int k) { return slices[size_t(k)]; }
    const Mat3& slice(int k) const { return slices[size_t(k)]; }

    static Tensor3 Zero() { return Tensor3{}; }

    Tensor3 operator+(const Tensor3& o) const {
        Tensor3 r;
        for (int k = 0; k < 3; ++k) r.slice(k) = slice(k) + o.slice(k);
        return r;
    }
    Tensor3 operator-(const Tensor3& o) const {
        Tensor3 r;
        for (int k = 0; k < 3; ++k) r.slice(k) = slice(k) - o.slice(k);
        return r;
    }
    Tensor3 operator*(double s) const {
        Tensor3 r;
        for (int k = 0; k < 3; ++k) r.slice(k) = slice(k) * s;
        return r;
    }

    double norm() const {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += slices[size_t(k)].squaredNorm();
        return std::sqrt(s);
    }
};

/// Levi-Civita alternator as a third order tensor, eps_ijk.
inline const Tensor3& levi_civita() {
    static const Tensor3 eps = [] {
        Tensor3 e;
        e(0, 1, 2) = e(1, 2, 0) = e(2, 0, 1) = 1.0;
        e(0, 2, 1) = e(2, 1, 0) = e(1, 0, 2) = -1.0;
        return e;
    }();
    return eps;
}

/// Anti: M -> third order tensor with slices anti(M e_k).
inline Tensor3 big_anti(const Mat3& M) {
    Tensor3 S;
    for (int k = 0; k < 3; ++k) S.slice(k) = anti(Vec3(M.col(k)));
    return S;
}

/// Axl: inverse of big_anti on tensors with skew slices; column k of the
/// result is axl of slice k. Throws if a slice is not skew within `tol`.
inline Mat3 big_axl(const Tensor3& S, double tol = 1e-10) {
    Mat3 M;
    for (int k = 0; k < 3; ++k) {
        const double drift = (S.slice(k) + S.slice(k).transpose()).norm();
        const double scale = std::max(1.0, S.slice(k).norm());
        if (!(drift <= tol * scale))
            throw NonSkewSlice("big_axl: slice " + std::to_string(k) +
                               " fails skewness by " + std::to_string(drift));
        M.col(k) = axl(S.slice(k));
    }
    return M;
}

/// Double contraction of third order tensors: (A:B)_ij = A_irs B_rsj.
inline Mat3 double_dot(const Tensor3& A, const Tensor3& B) {
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int r = 0; r < 3; ++r)
                for (int t = 0; t < 3; ++t) s += A(i, r, t) * B(r, t, j);
            out(i, j) = s;
        }
    return out;
}

/// Transpose in the last two slots: result_ijk = S_ikj.
inline Tensor3 transpose_23(const Tensor3& S) {
    Tensor3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out(i, j, k) = S(i, k, j);
    return out;
}

} // namespace cosserat
