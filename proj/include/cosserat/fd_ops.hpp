#pragma once

// Finite-difference operators on grid fields: second-order central stencils
// in the interior, second-order one-sided stencils at boundary nodes, plus
// the exact adjoints of those stencils (needed for discrete energy
// gradients).

#include <array>

#include "cosserat/grid.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct StencilEntry {
    int offset; // in index units along the axis
    double coeff;
};

using Stencil = std::array<StencilEntry, 4>;

/// 1-D second-order derivative stencil at index i of an n-point axis.
///
/// The one-sided boundary stencils are chosen so their leading truncation
/// term equals the central one (+h^2/6 f''', moment condition sum c_i i^3
/// = 1). With matched error constants the pointwise error of a
/// differentiated smooth field is itself a smooth field, so composed
/// operators (curl of a computed gradient, compatibility residuals) stay
/// uniformly second order up to the first interior ring. Axes with only 3
/// nodes fall back to the classical 3-point stencil.
inline Stencil derivative_stencil(int n, int i, double h) {
    if (i == 0) {
        if (n == 3)
            return {{{0, -1.5 / h}, {1, 2.0 / h}, {2, -0.5 / h}, {0, 0.0}}};
        return {{{0, -2.0 / h}, {1, 3.5 / h}, {2, -2.0 / h}, {3, 0.5 / h}}};
    }
    if (i == n - 1) {
        if (n == 3)
            return {{{0, 1.5 / h}, {-1, -2.0 / h}, {-2, 0.5 / h}, {0, 0.0}}};
        return {{{0, 2.0 / h}, {-1, -3.5 / h}, {-2, 2.0 / h}, {-3, -0.5 / h}}};
    }
    return {{{-1, -0.5 / h}, {1, 0.5 / h}, {0, 0.0}, {0, 0.0}}};
}

namespace detail {
inline int axis_stride(const Grid3& g, int axis) {
    if (axis == 0) return 1;
    if (axis == 1) return g.dims[0];
    return g.dims[0] * g.dims[1];
}
} // namespace detail

/// Derivative of a field along one axis, nodewise.
template <typename V>
GridField<V> differentiate(const GridField<V>& f, int axis) {
    const Grid3& g = f.grid;
    const int stride = detail::axis_stride(g, axis);
    const int n_axis = g.dims[size_t(axis)];
    const double h = g.spacing[size_t(axis)];
    GridField<V> out(g);
    for (int idx = 0; idx < f.size(); ++idx) {
        const int i = g.coords(idx)[size_t(axis)];
        const Stencil st = derivative_stencil(n_axis, i, h);
        V acc = st[0].coeff * f[idx + st[0].offset * stride];
        for (size_t e = 1; e < st.size(); ++e)
            acc += st[e].coeff * f[idx + st[e].offset * stride];
        out[idx] = acc;
    }
    return out;
}

/// Adjoint of `differentiate`: scatter each row of the stencil matrix back.
template <typename V>
GridField<V> differentiate_transpose(const GridField<V>& w, int axis) {
    const Grid3& g = w.grid;
    const int stride = detail::axis_stride(g, axis);
    const int n_axis = g.dims[size_t(axis)];
    const double h = g.spacing[size_t(axis)];
    GridField<V> out(g, V(w[0] * 0.0));
    for (int idx = 0; idx < w.size(); ++idx) {
        const int i = g.coords(idx)[size_t(axis)];
        const Stencil st = derivative_stencil(n_axis, i, h);
        for (const auto& e : st)
            out[idx + e.offset * stride] += e.coeff * w[idx];
    }
    return out;
}

/// Gradient of a vector field: F_ij = d phi_i / d x_j.
inline MatField grad_vec_field(const VecField& phi) {
    MatField F(phi.grid, Mat3::Zero());
    for (int a = 0; a < 3; ++a) {
        const VecField da = differentiate(phi, a);
        for (int n = 0; n < F.size(); ++n) F[n].col(a) = da[n];
    }
    return F;
}

/// Gradient of a matrix field: result (i,j,k) = d R_ij / d x_k.
inline Tensor3Field grad_mat_field(const MatField& R) {
    Tensor3Field out(R.grid);
    for (int a = 0; a < 3; ++a) {
        const MatField da = differentiate(R, a);
        for (int n = 0; n < out.size(); ++n) out[n].slice(a) = da[n];
    }
    return out;
}

/// Row-wise Curl of a matrix field: (Curl P)_ij = eps_jrs d_r P_is.
inline MatField curl_mat_field(const MatField& P) {
    MatField out(P.grid, Mat3::Zero());
    const Tensor3& eps = levi_civita();
    for (int r = 0; r < 3; ++r) {
        const MatField dr = differentiate(P, r);
        for (int n = 0; n < out.size(); ++n)
            for (int j = 0; j < 3; ++j)
                for (int s = 0; s < 3; ++s) {
                    const double e = eps(j, r, s);
                    if (e != 0.0) out[n].col(j) += e * dr[n].col(s);
                }
    }
    return out;
}

/// Adjoint of curl_mat_field.
inline MatField curl_mat_field_transpose(const MatField& Q) {
    const Tensor3& eps = levi_civita();
    MatField out(Q.grid, Mat3::Zero());
    for (int r = 0; r < 3; ++r) {
        // W_r(i,s) = sum_j eps_jrs Q_ij
        MatField w(Q.grid, Mat3::Zero());
        for (int n = 0; n < Q.size(); ++n)
            for (int s = 0; s < 3; ++s)
                for (int j = 0; j < 3; ++j) {
                    const double e = eps(j, r, s);
                    if (e != 0.0) w[n].col(s) += e * Q[n].col(j);
                }
        const MatField g = differentiate_transpose(w, r);
        for (int n = 0; n < out.size(); ++n) out[n] += g[n];
    }
    return out;
}

} // namespace cosserat
