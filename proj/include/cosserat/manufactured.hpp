#pragma once

// Analytic manufactured cases: smooth deformations paired with rotation
// fields, with closed-form curvature measures where available. Used by the
// convergence studies and the field-gen tool.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosserat/fd_ops.hpp"
#include "cosserat/grid.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct ManufacturedCase {
    std::string name;
    std::function<Vec3(const Vec3&)> phi;
    std::function<Mat3(const Vec3&)> rotation;
    // closed forms, when the case has them
    std::function<Mat3(const Vec3&)> gamma;   // wryness
    std::function<Mat3(const Vec3&)> kbar;    // dislocation density
    std::function<Mat3(const Vec3&)> stretch; // first Cosserat tensor U
};

/// Pointwise evaluation of a case on a grid.
inline std::pair<VecField, MatField> sample(const ManufacturedCase& c, const Grid3& g) {
    VecField phi(g);
    MatField R(g);
    for (int n = 0; n < phi.size(); ++n) {
        const Vec3 x = g.node(n);
        phi[n] = c.phi(x);
        R[n] = c.rotation(x);
        if (!phi[n].allFinite() || !R[n].allFinite())
            throw NonFiniteSample(c.name + ": non-finite sample at node " +
                                  std::to_string(n));
    }
    return {std::move(phi), std::move(R)};
}

/// First Cosserat tensor on the grid: U = R^T grad(phi), with the gradient
/// taken by the module stencils.
inline MatField stretch_field(const VecField& phi, const MatField& R) {
    require_same_grid(phi.grid, R.grid);
    MatField F = grad_vec_field(phi);
    for (int n = 0; n < F.size(); ++n) F[n] = R[n].transpose() * F[n];
    return F;
}

namespace cases {

inline const Vec3 kTwistAxisWeights(0.3, 0.0, 0.2);

/// phi = x, R = id.
inline ManufacturedCase identity() {
    ManufacturedCase c;
    c.name = "identity";
    c.phi = [](const Vec3& x) { return x; };
    c.rotation = [](const Vec3&) { return Mat3::Identity(); };
    c.gamma = [](const Vec3&) { return Mat3::Zero(); };
    c.kbar = [](const Vec3&) { return Mat3::Zero(); };
    c.stretch = [](const Vec3&) { return Mat3::Identity(); };
    return c;
}

/// Simple shear with identity microrotation: U = id + gamma e1 (x) e2.
inline ManufacturedCase shear(double amount = 0.3) {
    ManufacturedCase c;
    c.name = "shear";
    c.phi = [amount](const Vec3& x) { return Vec3(x(0) + amount * x(1), x(1), x(2)); };
    c.rotation = [](const Vec3&) { return Mat3::Identity(); };
    c.gamma = [](const Vec3&) { return Mat3::Zero(); };
    c.kbar = [](const Vec3&) { return Mat3::Zero(); };
    c.stretch = [amount](const Vec3&) {
        Mat3 U = Mat3::Identity();
        U(0, 1) = amount;
        return U;
    };
    return c;
}

/// Rotation about e3 by the angle <k, x>; phi = x. Closed forms:
/// Gamma = e3 (x) k and Kbar = k3 id - k (x) e3.
inline ManufacturedCase twist() {
    const Vec3 k = kTwistAxisWeights;
    ManufacturedCase c;
    c.name = "twist";
    c.phi = [](const Vec3& x) { return x; };
    c.rotation = [k](const Vec3& x) { return exp_so3(Vec3(0, 0, 1) * k.dot(x)); };
    c.gamma = [k](const Vec3&) { return Mat3(Vec3(0, 0, 1) * k.transpose()); };
    c.kbar = [k](const Vec3&) {
        return Mat3(k(2) * Mat3::Identity() - k * Vec3(0, 0, 1).transpose());
    };
    return c;
}

/// Twist rotation composed with a second, non-commuting rotation about e1
/// and a smooth orientation-preserving deformation; the stretch
/// U = R^T grad(phi) is genuinely nonsymmetric and the wryness varies in
/// direction, so none of the discrete identities degenerate to exact ones.
inline ManufacturedCase twist_composite() {
    const Vec3 k = kTwistAxisWeights;
    ManufacturedCase c;
    c.name = "twist-composite";
    c.phi = [](const Vec3& x) {
        return Vec3(x(0) + 0.1 * std::sin(x(1)), x(1) + 0.1 * std::sin(x(2)),
                    x(2) + 0.1 * std::sin(x(0)));
    };
    c.rotation = [k](const Vec3& x) {
        return Mat3(exp_so3(Vec3(0, 0, 1) * k.dot(x)) *
                    exp_so3(Vec3(0.2 * std::sin(x(1)), 0, 0)));
    };
    return c;
}

/// Smooth non-Cosserat deformation; the rotation is defined by the
/// pointwise polar decomposition of the analytic gradient.
inline ManufacturedCase polar_smooth() {
    const auto grad_phi = [](const Vec3& x) {
        Mat3 F = Mat3::Identity();
        F(0, 1) = 0.2 * std::cos(x(1));
        F(1, 2) = 0.15 * std::cos(x(2));
        F(2, 0) = 0.1 * std::cos(x(0));
        F(0, 0) += 0.1 * std::cos(x(0));
        return F;
    };
    ManufacturedCase c;
    c.name = "polar";
    c.phi = [](const Vec3& x) {
        return Vec3(x(0) + 0.1 * std::sin(x(0)) + 0.2 * std::sin(x(1)),
                    x(1) + 0.15 * std::sin(x(2)), x(2) + 0.1 * std::sin(x(0)));
    };
    c.rotation = [grad_phi](const Vec3& x) {
        Mat3 R, U;
        polar_decompose(grad_phi(x), R, U);
        return R;
    };
    return c;
}

inline ManufacturedCase by_name(const std::string& name) {
    if (name == "identity") return identity();
    if (name == "shear") return shear();
    if (name == "twist") return twist();
    if (name == "twist-composite") return twist_composite();
    if (name == "polar") return polar_smooth();
    throw UnknownCase("unknown manufactured case: " + name);
}

inline std::vector<std::string> names() {
    return {"identity", "shear", "twist", "twist-composite", "polar"};
}

} // namespace cases
} // namespace cosserat
