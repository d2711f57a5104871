#pragma once

// Structured 3-D grid of values on a box, x-fastest node ordering.

#include <array>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct Grid3 {
    std::array<int, 3> dims{3, 3, 3};       // nx, ny, nz
    std::array<double, 3> spacing{1, 1, 1}; // hx, hy, hz
    Vec3 origin = Vec3::Zero();

    Grid3() = default;
    Grid3(std::array<int, 3> n, std::array<double, 3> h, const Vec3& o = Vec3::Zero())
        : dims(n), spacing(h), origin(o) {
        for (int a = 0; a < 3; ++a) {
            if (dims[size_t(a)] < 3)
                throw GridTooSmall("Grid3: need at least 3 nodes per axis");
            if (!(spacing[size_t(a)] > 0.0))
                throw GridTooSmall("Grid3: spacing must be positive");
        }
    }

    /// Uniform grid of n^3 nodes on the unit cube [0,1]^3.
    static Grid3 unit_cube(int n) {
        const double h = 1.0 / (n - 1);
        return Grid3({n, n, n}, {h, h, h});
    }

    int num_nodes() const { return dims[0] * dims[1] * dims[2]; }

    int index(int i, int j, int k) const { return i + dims[0] * (j + dims[1] * k); }

    std::array<int, 3> coords(int idx) const {
        const int i = idx % dims[0];
        const int j = (idx / dims[0]) % dims[1];
        const int k = idx / (dims[0] * dims[1]);
        return {i, j, k};
    }

    Vec3 node(int i, int j, int k) const {
        return origin + Vec3(i * spacing[0], j * spacing[1], k * spacing[2]);
    }
    Vec3 node(int idx) const {
        const auto c = coords(idx);
        return node(c[0], c[1], c[2]);
    }

    bool interior(int i, int j, int k) const {
        return i > 0 && i < dims[0] - 1 && j > 0 && j < dims[1] - 1 && k > 0 &&
               k < dims[2] - 1;
    }
    bool interior(int idx) const {
        const auto c = coords(idx);
        return interior(c[0], c[1], c[2]);
    }

    bool same_layout(const Grid3& o) const {
        return dims == o.dims && spacing == o.spacing &&
               (origin - o.origin).norm() == 0.0;
    }

    double max_spacing() const {
        return std::max(spacing[0], std::max(spacing[1], spacing[2]));
    }
};

template <typename V>
struct GridField {
    Grid3 grid;
    std::vector<V> data;

    GridField() = default;
    explicit GridField(const Grid3& g) : grid(g), data(size_t(g.num_nodes())) {}
    GridField(const Grid3& g, const V& fill)
        : grid(g), data(size_t(g.num_nodes()), fill) {}

    V& operator[](int idx) { return data[size_t(idx)]; }
    const V& operator[](int idx) const { return data[size_t(idx)]; }

    V& at(int i, int j, int k) { return data[size_t(grid.index(i, j, k))]; }
    const V& at(int i, int j, int k) const { return data[size_t(grid.index(i, j, k))]; }

    int size() const { return grid.num_nodes(); }
};

using ScalarField = GridField<double>;
using VecField = GridField<Vec3>;
using MatField = GridField<Mat3>;
using Tensor3Field = GridField<Tensor3>;

inline void require_same_grid(const Grid3& a, const Grid3& b) {
    if (!a.same_layout(b)) throw GridMismatch("fields live on different grids");
}

/// Check that every node of a matrix field is orthogonal within `tol`.
inline void require_rotations(const MatField& R, double tol = Rot3::kProjectTol) {
    for (int n = 0; n < R.size(); ++n) {
        const double drift = (R[n].transpose() * R[n] - Mat3::Identity()).norm();
        if (!(drift <= tol))
            throw NotOrthogonal("node " + std::to_string(n) +
                                " deviates from O(3) by " + std::to_string(drift));
    }
}

/// Max Frobenius norm over interior nodes (boundary stencils excluded).
template <typename V>
double max_interior_norm(const GridField<V>& f) {
    double m = 0.0;
    for (int n = 0; n < f.size(); ++n)
        if (f.grid.interior(n)) m = std::max(m, f[n].norm());
    return m;
}

inline double max_interior_norm(const ScalarField& f) {
    double m = 0.0;
    for (int n = 0; n < f.size(); ++n)
        if (f.grid.interior(n)) m = std::max(m, std::abs(f[n]));
    return m;
}

} // namespace cosserat
