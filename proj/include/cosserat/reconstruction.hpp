#pragma once

// Constructive side of the compatibility theory: integrate the rotation
// field from its curvature A along grid sweeps, then the deformation from
// R U, with gauge fixing and rigid-body alignment.

#include <array>
#include <cmath>

#include "cosserat/curvature.hpp"
#include "cosserat/fd_ops.hpp"
#include "cosserat/grid.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct Gauge {
    std::array<int, 3> base_node{0, 0, 0};
    Rot3 R0;
    Vec3 phi0 = Vec3::Zero();
};

struct ReconResult {
    MatField R;
    VecField phi;
    double path_independence_error = 0.0;
    double orthogonality_drift = 0.0; // pre-projection
};

namespace detail {

/// Visit the grid by lexicographic sweeps from the base node: a line along
/// axes[0], then a plane along axes[1], then the volume along axes[2]. The
/// callback receives (from_node, to_node, axis, signed_step).
template <typename EdgeFn>
void sweep(const Grid3& g, const std::array<int, 3>& base,
           const std::array<int, 3>& axes, EdgeFn&& edge) {
    for (int a = 0; a < 3; ++a)
        if (base[size_t(a)] < 0 || base[size_t(a)] >= g.dims[size_t(a)])
            throw GridMismatch("gauge base node outside grid");

    auto march = [&](std::array<int, 3> c, int axis) {
        const double h = g.spacing[size_t(axis)];
        for (int dir : {+1, -1}) {
            std::array<int, 3> cur = c;
            while (true) {
                std::array<int, 3> nxt = cur;
                nxt[size_t(axis)] += dir;
                if (nxt[size_t(axis)] < 0 || nxt[size_t(axis)] >= g.dims[size_t(axis)])
                    break;
                edge(g.index(cur[0], cur[1], cur[2]), g.index(nxt[0], nxt[1], nxt[2]),
                     axis, dir * h);
                cur = nxt;
            }
        }
    };

    march(base, axes[0]);
    for (int i0 = 0; i0 < g.dims[size_t(axes[0])]; ++i0) {
        std::array<int, 3> c = base;
        c[size_t(axes[0])] = i0;
        march(c, axes[1]);
    }
    for (int i0 = 0; i0 < g.dims[size_t(axes[0])]; ++i0)
        for (int i1 = 0; i1 < g.dims[size_t(axes[1])]; ++i1) {
            std::array<int, 3> c = base;
            c[size_t(axes[0])] = i0;
            c[size_t(axes[1])] = i1;
            march(c, axes[2]);
        }
}

inline MatField integrate_rotation_raw(const MatField& A, const Gauge& gauge,
                                       const std::array<int, 3>& axes) {
    for (int n = 0; n < A.size(); ++n)
        if (!A[n].allFinite())
            throw NonFiniteA("integrate_rotation: non-finite A at node " +
                             std::to_string(n));
    MatField R(A.grid, Mat3::Zero());
    const int base =
        A.grid.index(gauge.base_node[0], gauge.base_node[1], gauge.base_node[2]);
    R[base] = gauge.R0.matrix();
    sweep(A.grid, gauge.base_node, axes, [&](int from, int to, int axis, double s) {
        // midpoint-evaluated exponential step for dR = R anti(A e_axis) dx
        const Vec3 w = 0.5 * s * (A[from].col(axis) + A[to].col(axis));
        R[to] = R[from] * exp_so3(w);
    });
    return R;
}

} // namespace detail

/// Solve the discrete rotation ODE [Grad R.h]v = R (A h) x v along
/// lexicographic sweep paths from the gauge base; the accumulated rotations
/// are projected back to O(3) only at output.
inline ReconResult integrate_rotation(const MatField& A, const Gauge& gauge) {
    ReconResult out;
    out.R = detail::integrate_rotation_raw(A, gauge, {0, 1, 2});
    for (int n = 0; n < out.R.size(); ++n) {
        out.orthogonality_drift = std::max(
            out.orthogonality_drift,
            (out.R[n].transpose() * out.R[n] - Mat3::Identity()).norm());
        out.R[n] = closest_orthogonal(out.R[n]);
    }
    return out;
}

/// Max nodewise difference between the x-first and z-first sweeps; small
/// exactly when A is compatible.
inline double path_independence(const MatField& A, const Gauge& gauge) {
    const MatField Ra = detail::integrate_rotation_raw(A, gauge, {0, 1, 2});
    const MatField Rb = detail::integrate_rotation_raw(A, gauge, {2, 1, 0});
    double m = 0.0;
    for (int n = 0; n < Ra.size(); ++n) m = std::max(m, (Ra[n] - Rb[n]).norm());
    return m;
}

/// Line-integrate grad(phi) = R U along the sweep paths with trapezoidal
/// quadrature per edge.
inline VecField integrate_deformation(const MatField& R, const MatField& U,
                                      const Gauge& gauge) {
    require_same_grid(R.grid, U.grid);
    MatField F(R.grid);
    for (int n = 0; n < F.size(); ++n) F[n] = R[n] * U[n];
    VecField phi(R.grid, Vec3::Zero());
    const int base =
        R.grid.index(gauge.base_node[0], gauge.base_node[1], gauge.base_node[2]);
    phi[base] = gauge.phi0;
    detail::sweep(R.grid, gauge.base_node, {0, 1, 2},
                  [&](int from, int to, int axis, double s) {
                      phi[to] = phi[from] +
                                0.5 * s * (F[from].col(axis) + F[to].col(axis));
                  });
    return phi;
}

struct RigidAlignment {
    Rot3 Q;
    Vec3 b = Vec3::Zero();
    double rotation_residual = 0.0;
    double deformation_residual = 0.0;
};

/// Gauge away the rigid-body freedom: Q, b matching the reconstruction to
/// the reference at the base node, with max nodewise residuals after the
/// alignment.
inline RigidAlignment rigid_align(const MatField& R_rec, const VecField& phi_rec,
                                  const MatField& R_ref, const VecField& phi_ref,
                                  const Gauge& gauge) {
    require_same_grid(R_rec.grid, phi_rec.grid);
    require_same_grid(R_rec.grid, R_ref.grid);
    require_same_grid(R_rec.grid, phi_ref.grid);
    const int base = R_rec.grid.index(gauge.base_node[0], gauge.base_node[1],
                                      gauge.base_node[2]);
    RigidAlignment out;
    out.Q = Rot3(Mat3(R_ref[base] * R_rec[base].transpose()));
    out.b = phi_ref[base] - out.Q.matrix() * phi_rec[base];
    for (int n = 0; n < R_rec.size(); ++n) {
        out.rotation_residual = std::max(
            out.rotation_residual, (out.Q.matrix() * R_rec[n] - R_ref[n]).norm());
        out.deformation_residual =
            std::max(out.deformation_residual,
                     (out.Q.matrix() * phi_rec[n] + out.b - phi_ref[n]).norm());
    }
    return out;
}

} // namespace cosserat
