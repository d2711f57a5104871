#pragma once

// Seeded pointwise identity suite over the tensor algebra and the Nye /
// integrability relations. Shared by the CLI and the acceptance tests.

#include <cmath>
#include <string>
#include <vector>

#include "cosserat/curvature.hpp"
#include "cosserat/random.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct IdentityResult {
    std::string name;
    double max_rel_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

namespace detail {
inline double rel(double err, double scale) { return err / std::max(1.0, scale); }
} // namespace detail

/// Runs every pointwise identity over `trials` seeded random inputs.
/// `corrupt_nye` flips one sign in the Nye map under test; it exists so the
/// suite's failure reporting can itself be exercised.
inline std::vector<IdentityResult> run_identity_suite(int trials, std::uint64_t seed,
                                                      bool corrupt_nye = false) {
    RandomFixtures rnd(seed);
    std::vector<IdentityResult> out;

    auto record = [&](const std::string& name, double tol, auto&& trial) {
        IdentityResult r;
        r.name = name;
        r.tolerance = tol;
        for (int t = 0; t < trials; ++t)
            r.max_rel_error = std::max(r.max_rel_error, trial());
        r.pass = r.max_rel_error <= tol;
        out.push_back(r);
    };

    const auto nye_fwd = [corrupt_nye](const Mat3& gamma) {
        Mat3 k = nye_gamma_to_kbar(gamma);
        if (corrupt_nye) k = -gamma.trace() * Mat3::Identity() - gamma.transpose();
        return k;
    };

    record("axl-anti-roundtrip", 0.0, [&] {
        const Vec3 v = rnd.vec();
        return (axl(anti(v)) - v).norm();
    });
    record("anti-axl-roundtrip", 0.0, [&] {
        const Mat3 A = anti(rnd.vec());
        return (anti(axl(A)) - A).norm();
    });
    record("eps-contract-anti", 1e-13, [&] {
        const Mat3 M = rnd.mat();
        return detail::rel((double_dot(levi_civita(), big_anti(M)) + 2.0 * M).norm(),
                           M.norm());
    });
    record("big-axl-big-anti-roundtrip", 1e-13, [&] {
        const Mat3 M = rnd.mat();
        return detail::rel((big_axl(big_anti(M)) - M).norm(), M.norm());
    });
    record("eps-double-dot-eps", 1e-14, [&] {
        return (double_dot(levi_civita(), levi_civita()) - 2.0 * Mat3::Identity())
            .norm();
    });
    record("adjugate-identity", 1e-12, [&] {
        const Mat3 A = rnd.mat();
        const double scale = std::pow(A.norm(), 3);
        return (A * adjugate(A) - A.determinant() * Mat3::Identity()).norm() /
               std::max(1.0, scale);
    });
    record("vol-det-scaling", 1e-12, [&] {
        const Mat3 A = rnd.mat();
        const Vec3 u = rnd.vec(), v = rnd.vec(), w = rnd.vec();
        return detail::rel(std::abs(vol(A * u, A * v, A * w) -
                                    A.determinant() * vol(u, v, w)),
                           std::abs(A.determinant() * vol(u, v, w)));
    });
    record("vol-adjugate-transfer", 1e-12, [&] {
        const Mat3 A = rnd.mat();
        const Vec3 u = rnd.vec(), v = rnd.vec(), w = rnd.vec();
        return detail::rel(
            std::abs(vol(A * u, A * v, w) - vol(u, v, adjugate(A) * w)), 1.0);
    });
    record("vol-trace-sum-rule", 1e-12, [&] {
        const Mat3 A = rnd.mat();
        const Vec3 u = rnd.vec(), v = rnd.vec(), w = rnd.vec();
        const double lhs =
            vol(A * u, v, w) + vol(u, A * v, w) + vol(u, v, A * w);
        return detail::rel(std::abs(lhs - A.trace() * vol(u, v, w)), 1.0);
    });
    record("cross-product-volume", 1e-13, [&] {
        const Vec3 u = rnd.vec(), v = rnd.vec(), w = rnd.vec();
        return std::abs(u.cross(v).dot(w) - vol(u, v, w));
    });
    record("cartan-pythagoras", 1e-13, [&] {
        const Mat3 X = rnd.mat();
        const CartanParts p = cartan_split(X);
        const double sum = p.devsym.squaredNorm() + p.skew_part.matrix().squaredNorm() +
                           3.0 * p.sphere * p.sphere;
        return detail::rel(std::abs(X.squaredNorm() - sum), X.squaredNorm());
    });
    record("cartan-reassembly", 1e-14, [&] {
        const Mat3 X = rnd.mat();
        return detail::rel((cartan_split(X).reassemble() - X).norm(), X.norm());
    });
    record("transpose23-involution", 0.0, [&] {
        const Tensor3 S = rnd.tensor3();
        return (transpose_23(transpose_23(S)) - S).norm();
    });
    record("transpose23-alternator", 0.0, [&] {
        return (transpose_23(levi_civita()) + levi_civita()).norm();
    });
    record("commute-vector-products", 1e-10, [&] {
        const Mat3 A = rnd.mat(), B = rnd.invertible_mat();
        const Vec3 h = rnd.vec(), k = rnd.vec();
        const Vec3 lhs = Vec3(A * h).cross(B * k) - Vec3(A * k).cross(B * h);
        const Mat3 Binv = B.inverse();
        const Mat3 M = (A * Binv).trace() * adjugate(B).transpose() -
                       (adjugate(B) * A * Binv).transpose();
        return detail::rel((lhs - M * h.cross(k)).norm(), lhs.norm());
    });
    record("baccab", 1e-10, [&] {
        const Mat3 A = rnd.mat();
        const Vec3 h = rnd.vec(), k = rnd.vec(), v = rnd.vec();
        const Vec3 lhs = Vec3(adjugate(A).transpose() * h.cross(k)).cross(v);
        const Vec3 rhs = Vec3(A * h).cross(Vec3(A * k).cross(v)) -
                         Vec3(A * k).cross(Vec3(A * h).cross(v));
        return detail::rel((lhs - rhs).norm(), lhs.norm());
    });
    record("nye-roundtrip", 1e-14, [&] {
        const Mat3 gamma = rnd.mat();
        return detail::rel((nye_kbar_to_gamma(nye_fwd(gamma)) - gamma).norm(),
                           gamma.norm());
    });
    record("nye-trace-relation", 1e-13, [&] {
        const Mat3 gamma = rnd.mat();
        return detail::rel(std::abs(nye_fwd(gamma).trace() - 2.0 * gamma.trace()),
                           std::abs(gamma.trace()));
    });
    record("nye-skew-relation", 1e-13, [&] {
        const Mat3 gamma = rnd.mat();
        return detail::rel((skew(nye_fwd(gamma)) - skew(gamma)).norm(),
                           gamma.norm());
    });
    record("nye-devsym-relation", 1e-13, [&] {
        const Mat3 gamma = rnd.mat();
        return detail::rel((dev(sym(nye_fwd(gamma))) + dev(sym(gamma))).norm(),
                           gamma.norm());
    });
    record("frak-kbar-roundtrip", 1e-13, [&] {
        const Mat3 kbar = rnd.mat();
        return detail::rel((kbar_from_frak(frak_from_kbar(kbar)) - kbar).norm(),
                           kbar.norm());
    });
    record("integrability-inversion", 1e-10, [&] {
        const Mat3 U = rnd.invertible_mat();
        const Mat3 C = rnd.mat();
        const Mat3 back = curl_from_strain_wryness(U, integrability_rhs(U, C));
        return detail::rel((back - C).norm(), C.norm());
    });
    record("curl-from-dislocation-form", 1e-11, [&] {
        const Mat3 U = rnd.invertible_mat();
        const Mat3 gamma = rnd.mat();
        const Mat3 a = curl_from_strain_wryness(U, gamma);
        const Mat3 b = curl_from_strain_dislocation(U, nye_gamma_to_kbar(gamma));
        return detail::rel((a - b).norm(), a.norm());
    });

    return out;
}

} // namespace cosserat
