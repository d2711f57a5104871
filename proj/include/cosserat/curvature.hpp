#pragma once

// Curvature measures of a microrotation field (second Cosserat tensor,
// wryness, dislocation density), Nye's formula, and the integrability
// algebra connecting (U, Curl U) with the curvature measures.

#include <cmath>

#include "cosserat/fd_ops.hpp"
#include "cosserat/grid.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

/// Determinants closer to zero than this reject the stretch as singular.
inline constexpr double kDetEps = 1e-10;

/// Second Cosserat deformation tensor K = R^T Grad R, slicewise.
inline Tensor3Field second_cosserat(const MatField& R) {
    require_rotations(R);
    Tensor3Field K = grad_mat_field(R);
    for (int n = 0; n < K.size(); ++n)
        for (int a = 0; a < 3; ++a) K[n].slice(a) = R[n].transpose() * K[n].slice(a);
    return K;
}

/// Wryness tensor: column k is axl(R^T d_k R).
inline MatField wryness(const MatField& R) {
    require_rotations(R);
    MatField G(R.grid, Mat3::Zero());
    for (int a = 0; a < 3; ++a) {
        const MatField da = differentiate(R, a);
        for (int n = 0; n < G.size(); ++n)
            G[n].col(a) = axl(Mat3(R[n].transpose() * da[n]));
    }
    return G;
}

/// Dislocation density tensor Kbar = R^T Curl R.
inline MatField dislocation_density(const MatField& R) {
    require_rotations(R);
    MatField K = curl_mat_field(R);
    for (int n = 0; n < K.size(); ++n) K[n] = R[n].transpose() * K[n];
    return K;
}

// --- Nye's formula ----------------------------------------------------------

/// Kbar = (tr Gamma) id - Gamma^T.
inline Mat3 nye_gamma_to_kbar(const Mat3& gamma) {
    return gamma.trace() * Mat3::Identity() - gamma.transpose();
}

/// Gamma = (tr Kbar / 2) id - Kbar^T.
inline Mat3 nye_kbar_to_gamma(const Mat3& kbar) {
    return 0.5 * kbar.trace() * Mat3::Identity() - kbar.transpose();
}

/// Third order curvature from the dislocation density: K = -eps Gamma.
inline Tensor3 frak_from_kbar(const Mat3& kbar) {
    return big_anti(nye_kbar_to_gamma(kbar));
}

/// Dislocation density from the third order curvature: Kbar = -K : eps.
inline Mat3 kbar_from_frak(const Tensor3& frak, double tol = 1e-10) {
    return nye_gamma_to_kbar(big_axl(frak, tol));
}

// --- integrability algebra ---------------------------------------------------

/// Axl(R^T Grad R) expressed through the stretch alone:
/// (1/det U) [ U (Curl U)^T - 1/2 tr(U (Curl U)^T) id ] U.
inline Mat3 integrability_rhs(const Mat3& U, const Mat3& curlU) {
    const double d = U.determinant();
    if (!(std::abs(d) > kDetEps))
        throw SingularStretch("integrability_rhs: |det U| = " + std::to_string(d));
    const Mat3 M = U * curlU.transpose();
    return (1.0 / d) * ((M - 0.5 * M.trace() * Mat3::Identity()) * U);
}

/// Inverse direction: (Curl U)^T = Adj U [ Gamma U^-1 - tr(Gamma U^-1) id ].
inline Mat3 curl_from_strain_wryness(const Mat3& U, const Mat3& gamma) {
    const double d = U.determinant();
    if (!(std::abs(d) > kDetEps))
        throw SingularStretch("curl_from_strain_wryness: |det U| = " + std::to_string(d));
    const Mat3 Uinv = U.inverse();
    const Mat3 GU = gamma * Uinv;
    const Mat3 rhs = adjugate(U) * (GU - GU.trace() * Mat3::Identity());
    return rhs.transpose();
}

/// Same map written in terms of the dislocation density (Nye-substituted
/// form; verified in tests against the wryness form).
inline Mat3 curl_from_strain_dislocation(const Mat3& U, const Mat3& kbar) {
    const double d = U.determinant();
    if (!(std::abs(d) > kDetEps))
        throw SingularStretch("curl_from_strain_dislocation: |det U| = " +
                              std::to_string(d));
    const Mat3 Uinv = U.inverse();
    const Mat3 KU = kbar.transpose() * Uinv;
    const Mat3 bracket =
        0.5 * kbar.trace() * (Uinv - Uinv.trace() * Mat3::Identity()) -
        (KU - KU.trace() * Mat3::Identity());
    return (adjugate(U) * bracket).transpose();
}

// --- linearization (small-displacement check) -------------------------------

struct LinearizedCurvature {
    MatField lhs; // grad of axl(skew grad u)
    MatField rhs; // (Curl sym grad u)^T
    double max_interior_discrepancy = 0.0;
};

/// Both sides of the linearized integrability identity
/// grad axl(skew grad u) = (Curl sym grad u)^T, evaluated with the module
/// stencils from a displacement-gradient field.
inline LinearizedCurvature linearized_curvature(const MatField& grad_u) {
    LinearizedCurvature out;
    VecField a(grad_u.grid);
    MatField s(grad_u.grid);
    for (int n = 0; n < grad_u.size(); ++n) {
        a[n] = axl(grad_u[n]);
        s[n] = sym(grad_u[n]);
    }
    out.lhs = grad_vec_field(a);
    out.rhs = curl_mat_field(s);
    for (int n = 0; n < out.rhs.size(); ++n) out.rhs[n].transposeInPlace();
    for (int n = 0; n < out.lhs.size(); ++n)
        if (grad_u.grid.interior(n))
            out.max_interior_discrepancy =
                std::max(out.max_interior_discrepancy, (out.lhs[n] - out.rhs[n]).norm());
    return out;
}

/// Polar decomposition applied nodewise to a deformation-gradient field.
inline std::pair<MatField, MatField> polar_fields(const MatField& F) {
    MatField R(F.grid), U(F.grid);
    for (int n = 0; n < F.size(); ++n) polar_decompose(F[n], R[n], U[n]);
    return {std::move(R), std::move(U)};
}

} // namespace cosserat
