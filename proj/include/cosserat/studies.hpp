#pragma once

// Fieldwise convergence studies on the manufactured cases: integrability
// formula, compatibility residuals, reconstruction round-trips and the
// linearization checks, each reported as max interior error per level.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cosserat/compatibility.hpp"
#include "cosserat/curvature.hpp"
#include "cosserat/manufactured.hpp"
#include "cosserat/reconstruction.hpp"

namespace cosserat {

/// All applicable check errors for one case at one resolution (n^3 nodes on
/// the unit cube). Keys: integrability, compat, compat-incompatible,
/// recon-rotation, recon-deformation, path-independence.
inline std::map<std::string, double> case_errors(const ManufacturedCase& c, int n) {
    const Grid3 g = Grid3::unit_cube(n);
    std::map<std::string, double> out;

    MatField R(g);
    VecField phi(g);
    MatField U(g);
    if (c.name == "polar") {
        // rotation defined through the pointwise polar decomposition of the
        // grid-computed deformation gradient
        for (int i = 0; i < phi.size(); ++i) phi[i] = c.phi(g.node(i));
        auto ru = polar_fields(grad_vec_field(phi));
        R = std::move(ru.first);
        U = std::move(ru.second);
    } else {
        auto s = sample(c, g);
        phi = std::move(s.first);
        R = std::move(s.second);
        U = stretch_field(phi, R);
    }

    const MatField A = a_field(U);
    {
        const MatField gamma = wryness(R);
        double err = 0.0;
        for (int i = 0; i < A.size(); ++i)
            if (g.interior(i)) err = std::max(err, (gamma[i] - A[i]).norm());
        out["integrability"] = err;
    }
    out["compat"] = max_interior_norm(compat_residual(A));
    {
        MatField Up = U;
        for (int i = 0; i < Up.size(); ++i)
            Up[i](0, 1) += 0.1 * g.node(i)(0); // smooth but incompatible
        out["compat-incompatible"] =
            max_interior_norm(compat_residual(a_field(Up)));
    }
    {
        Gauge gauge;
        gauge.R0 = Rot3(R[0]);
        gauge.phi0 = phi[0];
        const ReconResult rec = integrate_rotation(A, gauge);
        const VecField phi_rec = integrate_deformation(rec.R, U, gauge);
        const RigidAlignment align = rigid_align(rec.R, phi_rec, R, phi, gauge);
        out["recon-rotation"] = align.rotation_residual;
        out["recon-deformation"] = align.deformation_residual;
        out["path-independence"] = path_independence(A, gauge);
    }
    return out;
}

struct StudyRow {
    int n = 0;
    double h = 0.0;
    std::map<std::string, double> errors;
};

struct StudyReport {
    std::string case_name;
    std::vector<StudyRow> rows;
    // observed order log2(err_l / err_{l+1}) per check, one entry per level pair
    std::map<std::string, std::vector<double>> orders;
};

/// h-halving study: grids base_n, 2*base_n - 1, ...
inline StudyReport run_convergence_study(const std::string& case_name, int levels,
                                         int base_n = 9) {
    if (levels < 2) throw std::invalid_argument("convergence study needs >= 2 levels");
    const ManufacturedCase c = cases::by_name(case_name);
    StudyReport rep;
    rep.case_name = case_name;
    int n = base_n;
    for (int l = 0; l < levels; ++l) {
        StudyRow row;
        row.n = n;
        row.h = 1.0 / (n - 1);
        row.errors = case_errors(c, n);
        rep.rows.push_back(std::move(row));
        n = 2 * n - 1;
    }
    for (const auto& [key, e0] : rep.rows[0].errors) {
        std::vector<double> ords;
        for (size_t l = 0; l + 1 < rep.rows.size(); ++l)
            ords.push_back(std::log2(rep.rows[l].errors.at(key) /
                                     rep.rows[l + 1].errors.at(key)));
        rep.orders[key] = std::move(ords);
    }
    return rep;
}

// --- linearization checks (small-displacement regime) ------------------------

inline VecField small_displacement_field(const Grid3& g) {
    VecField u(g);
    for (int i = 0; i < u.size(); ++i) {
        const Vec3 x = g.node(i);
        u[i] = Vec3(std::sin(x(1)), 0.2 * std::sin(x(2)), 0.1 * std::sin(x(0)));
    }
    return u;
}

/// Max interior discrepancy of the linear identity
/// grad axl(skew grad u) = (Curl sym grad u)^T at resolution n.
inline double linearization_identity_error(int n) {
    const Grid3 g = Grid3::unit_cube(n);
    return linearized_curvature(grad_vec_field(small_displacement_field(g)))
        .max_interior_discrepancy;
}

/// Mismatch between the nonlinear integrability formula evaluated on the
/// polar stretch of id + eps grad(u) and eps times the linear formula.
/// O(eps^2) at fixed h.
inline double linearization_mismatch(int n, double eps) {
    const Grid3 g = Grid3::unit_cube(n);
    const MatField grad_u = grad_vec_field(small_displacement_field(g));
    MatField F(g), S(g);
    for (int i = 0; i < F.size(); ++i) {
        F[i] = Mat3::Identity() + eps * grad_u[i];
        S[i] = sym(grad_u[i]);
    }
    const MatField U = polar_fields(F).second;
    const MatField A = a_field(U);
    const MatField curlS = curl_mat_field(S);
    double err = 0.0;
    for (int i = 0; i < F.size(); ++i) {
        if (!g.interior(i)) continue;
        const Mat3 lin =
            eps * (curlS[i].transpose() -
                   0.5 * curlS[i].trace() * Mat3::Identity());
        err = std::max(err, (A[i] - lin).norm());
    }
    return err;
}

} // namespace cosserat
