#pragma once

// Compatibility checking: the A-tensor field of a stretch field and the
// residual (Curl A)^T + Adj A that vanishes exactly when the stretch comes
// from an actual decomposition grad(phi) = R U on a simply connected domain.

#include <cmath>

#include "cosserat/curvature.hpp"
#include "cosserat/fd_ops.hpp"
#include "cosserat/grid.hpp"

namespace cosserat {

struct CompatReport {
    double max_residual = 0.0; // max interior Frobenius norm, units 1/length^2
    MatField residual_field;
    bool compatible = false;
    double tolerance_used = 0.0;
};

/// A := (1/det U)[U (Curl U)^T - 1/2 tr(U (Curl U)^T) id] U, nodewise.
inline MatField a_field(const MatField& U) {
    const MatField curlU = curl_mat_field(U);
    MatField A(U.grid);
    for (int n = 0; n < U.size(); ++n) {
        try {
            A[n] = integrability_rhs(U[n], curlU[n]);
        } catch (const SingularStretch&) {
            throw SingularStretch("a_field: singular stretch at node " +
                                  std::to_string(n));
        }
    }
    return A;
}

/// Nodewise (Curl A)^T + Adj A.
inline MatField compat_residual(const MatField& A) {
    MatField res = curl_mat_field(A);
    for (int n = 0; n < res.size(); ++n)
        res[n] = Mat3(res[n].transpose()) + adjugate(A[n]);
    return res;
}

/// Default verdict tolerance: truncation plus an adjugate-scale term.
inline double default_compat_tolerance(const MatField& A) {
    double scale = 0.0;
    for (int n = 0; n < A.size(); ++n) scale = std::max(scale, A[n].squaredNorm());
    const double h = A.grid.max_spacing();
    return std::max(1e-8, 10.0 * h * h * scale);
}

inline CompatReport check_compatibility(const MatField& U, double tol = -1.0) {
    const MatField A = a_field(U);
    CompatReport rep;
    rep.residual_field = compat_residual(A);
    rep.max_residual = max_interior_norm(rep.residual_field);
    rep.tolerance_used = (tol > 0.0) ? tol : default_compat_tolerance(A);
    rep.compatible = rep.max_residual <= rep.tolerance_used;
    return rep;
}

} // namespace cosserat
