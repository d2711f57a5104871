#pragma once

// Geometrically nonlinear Cosserat energy on a grid: density, trapezoidal
// assembly with boundary penalty, the exact discrete gradient with respect
// to nodal deformations and rotation tangents, a descent minimizer, and the
// incompatible-Korn Rayleigh quotient.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Geometry>

#include "cosserat/curvature.hpp"
#include "cosserat/fd_ops.hpp"
#include "cosserat/grid.hpp"
#include "cosserat/random.hpp"
#include "cosserat/tensor_core.hpp"

namespace cosserat {

struct CosseratParams {
    double mu = 1.0;
    double lambda = 1.0;
    double mu_c = 0.0;   // Cosserat couple modulus
    double Lc = 0.1;     // internal length of the Curl U term
    double Lc_hat = 0.1; // coefficient of the ||K||^q curvature term
    double q = 4.0;      // curvature exponent, q >= 2
    std::function<Vec3(const Vec3&)> body_force; // empty means zero load
};

enum class BcMode { Hard, Penalty };

// Box faces: 0 xmin, 1 xmax, 2 ymin, 3 ymax, 4 zmin, 5 zmax.
struct BoundarySpec {
    std::vector<int> dirichlet_faces{0, 1, 2, 3, 4, 5};
    BcMode mode = BcMode::Hard;
    double penalty_weight = 1.0;
    std::function<Vec3(const Vec3&)> phi_bc; // empty means phi_bc(x) = x
};

inline Vec3 face_normal(int face) {
    Vec3 n = Vec3::Zero();
    n(face / 2) = (face % 2 == 0) ? -1.0 : 1.0;
    return n;
}

struct MinimizeState {
    VecField phi;
    std::vector<Eigen::Quaterniond> rot; // unit quaternion per node
    std::vector<double> energy_trace;
    int iterations = 0;

    static MinimizeState reference(const Grid3& g) {
        MinimizeState s;
        s.phi = VecField(g);
        for (int n = 0; n < s.phi.size(); ++n) s.phi[n] = g.node(n);
        s.rot.assign(size_t(g.num_nodes()), Eigen::Quaterniond::Identity());
        return s;
    }

    MatField rotation_field() const {
        MatField R(phi.grid);
        for (int n = 0; n < R.size(); ++n)
            R[n] = rot[size_t(n)].toRotationMatrix();
        return R;
    }
};

/// Reference state plus a smooth random perturbation of amplitude `amp`
/// that vanishes on all faces. The displacement is a sum of two bump modes
/// with random directions; each mode contributes a rank-one term to the
/// deformation gradient, so moderate amplitudes keep det U > 0 where
/// independent per-node noise of the same amplitude would not (its finite
/// difference scales like amp/h).
inline MinimizeState perturbed_reference(const Grid3& g, double amp,
                                         std::uint64_t seed) {
    RandomFixtures rnd(seed);
    const Vec3 c1 = rnd.vec(), c2 = rnd.vec(), d1 = rnd.vec(), d2 = rnd.vec();
    MinimizeState s = MinimizeState::reference(g);
    constexpr double pi = 3.14159265358979323846;
    for (int n = 0; n < g.num_nodes(); ++n) {
        const auto c = g.coords(n);
        double b1 = 1.0, b2 = 1.0;
        for (int a = 0; a < 3; ++a) {
            const double t = double(c[size_t(a)]) / double(g.dims[size_t(a)] - 1);
            b1 *= std::sin(pi * t);
            b2 *= std::sin(2.0 * pi * t);
        }
        s.phi[n] += amp * (0.8 * b1 * c1 + 0.2 * b2 * c2);
        const Vec3 w = amp * (0.8 * b1 * d1 + 0.2 * b2 * d2);
        if (w.norm() > 0.0)
            s.rot[size_t(n)] =
                (Eigen::Quaterniond(Eigen::AngleAxisd(w.norm(), Vec3(w.normalized()))) *
                 s.rot[size_t(n)])
                    .normalized();
    }
    return s;
}

// --- quadrature -------------------------------------------------------------

inline double line_weight(const Grid3& g, int axis, int i) {
    const bool edge = (i == 0 || i == g.dims[size_t(axis)] - 1);
    return g.spacing[size_t(axis)] * (edge ? 0.5 : 1.0);
}

/// Trapezoidal volume weights (product rule per axis).
inline ScalarField volume_weights(const Grid3& g) {
    ScalarField w(g);
    for (int n = 0; n < w.size(); ++n) {
        const auto c = g.coords(n);
        w[n] = line_weight(g, 0, c[0]) * line_weight(g, 1, c[1]) *
               line_weight(g, 2, c[2]);
    }
    return w;
}

/// Trapezoidal surface weight of a node within one box face.
inline double surface_weight(const Grid3& g, int face, int node) {
    const int a = face / 2;
    const auto c = g.coords(node);
    double w = 1.0;
    for (int t = 0; t < 3; ++t)
        if (t != a) w *= line_weight(g, t, c[size_t(t)]);
    return w;
}

inline bool on_face(const Grid3& g, int node, int face) {
    const int a = face / 2;
    const int i = g.coords(node)[size_t(a)];
    return (face % 2 == 0) ? (i == 0) : (i == g.dims[size_t(a)] - 1);
}

inline bool on_dirichlet(const Grid3& g, int node, const BoundarySpec& bc) {
    for (int f : bc.dirichlet_faces)
        if (on_face(g, node, f)) return true;
    return false;
}

// --- density ----------------------------------------------------------------

namespace detail {
inline double det_checked(const Mat3& U, const char* who) {
    const double d = U.determinant();
    if (!(std::abs(d) > kDetEps))
        throw SingularStretch(std::string(who) + ": |det U| = " + std::to_string(d));
    return d;
}
} // namespace detail

/// Curvature contribution mu * Lc_hat * ||frak K||^q with
/// ||frak K||^2 = 2 ||Gamma||^2.
inline double curvature_density(const Mat3& gamma, const CosseratParams& p) {
    return p.mu * p.Lc_hat * std::pow(2.0 * gamma.squaredNorm(), 0.5 * p.q);
}

inline double strain_density(const Mat3& U, const Mat3& curlU,
                             const CosseratParams& p) {
    const double xi = detail::det_checked(U, "energy_density");
    const Mat3 P = U - Mat3::Identity();
    const double xi2 = xi * xi;
    return p.mu * sym(P).squaredNorm() + p.mu_c * skew(P).squaredNorm() +
           0.5 * p.lambda * (xi2 + 1.0 / xi2 - 2.0) +
           p.mu * p.Lc * p.Lc * curlU.squaredNorm();
}

/// Pointwise stored-energy density W(U, Curl(U - id), Kbar).
inline double energy_density(const Mat3& U, const Mat3& curlUmId, const Mat3& kbar,
                             const CosseratParams& p) {
    return strain_density(U, curlUmId, p) +
           curvature_density(nye_kbar_to_gamma(kbar), p);
}

// --- assembly -----------------------------------------------------------------

namespace detail {

struct EnergyAssembly {
    MatField F, R, U, curlU, gamma;
    ScalarField w;
    double energy = 0.0;
};

inline MatField wryness_unchecked(const MatField& R) {
    MatField G(R.grid, Mat3::Zero());
    for (int a = 0; a < 3; ++a) {
        const MatField da = differentiate(R, a);
        for (int n = 0; n < G.size(); ++n)
            G[n].col(a) = axl(Mat3(R[n].transpose() * da[n]));
    }
    return G;
}

inline EnergyAssembly assemble(const MinimizeState& state, const CosseratParams& p,
                               const BoundarySpec& bc) {
    const Grid3& g = state.phi.grid;
    if (int(state.rot.size()) != g.num_nodes())
        throw GridMismatch("state rotation count does not match grid");

    EnergyAssembly a;
    a.F = grad_vec_field(state.phi);
    a.R = state.rotation_field();
    a.U = MatField(g);
    for (int n = 0; n < a.U.size(); ++n) a.U[n] = a.R[n].transpose() * a.F[n];
    a.curlU = curl_mat_field(a.U);
    a.gamma = wryness_unchecked(a.R);
    a.w = volume_weights(g);

    double E = 0.0;
    for (int n = 0; n < g.num_nodes(); ++n) {
        double Wn = strain_density(a.U[n], a.curlU[n], p) +
                    curvature_density(a.gamma[n], p);
        if (p.body_force) Wn -= p.body_force(g.node(n)).dot(state.phi[n]);
        E += a.w[n] * Wn;
    }
    if (bc.mode == BcMode::Penalty) {
        for (int f : bc.dirichlet_faces) {
            const Vec3 nrm = face_normal(f);
            for (int n = 0; n < g.num_nodes(); ++n) {
                if (!on_face(g, n, f)) continue;
                const Mat3 P = a.U[n] - Mat3::Identity();
                E += bc.penalty_weight * surface_weight(g, f, n) *
                     mat_cross_vec(P, nrm).squaredNorm();
            }
        }
    }
    a.energy = E;
    return a;
}

} // namespace detail

/// Total discrete energy I(phi, R): trapezoidal quadrature of W - f.phi,
/// plus the tangential-straining boundary penalty when requested.
inline double total_energy(const MinimizeState& state, const CosseratParams& p,
                           const BoundarySpec& bc) {
    return detail::assemble(state, p, bc).energy;
}

struct EnergyGradient {
    VecField dphi;
    VecField dR_tangent; // left-trivialized: perturbation R <- exp(anti(d)) R
};

/// Exact gradient of total_energy with respect to the nodal deformation
/// values and the rotation tangent coordinates. Dirichlet nodes are zeroed
/// in hard mode (constraint projection).
inline EnergyGradient gradient(const MinimizeState& state, const CosseratParams& p,
                               const BoundarySpec& bc) {
    const Grid3& g = state.phi.grid;
    const detail::EnergyAssembly a = detail::assemble(state, p, bc);

    // dE/dU, including quadrature weights, the curl-term adjoint and the
    // boundary penalty.
    MatField gU(g, Mat3::Zero());
    for (int n = 0; n < g.num_nodes(); ++n) {
        const Mat3 P = a.U[n] - Mat3::Identity();
        const double xi = a.U[n].determinant();
        gU[n] = a.w[n] * (2.0 * p.mu * sym(P) + 2.0 * p.mu_c * skew(P) +
                          p.lambda * (xi - 1.0 / (xi * xi * xi)) *
                              adjugate(a.U[n]).transpose());
    }
    {
        MatField q(g);
        const double c = 2.0 * p.mu * p.Lc * p.Lc;
        for (int n = 0; n < g.num_nodes(); ++n) q[n] = c * a.w[n] * a.curlU[n];
        const MatField adj = curl_mat_field_transpose(q);
        for (int n = 0; n < g.num_nodes(); ++n) gU[n] += adj[n];
    }
    if (bc.mode == BcMode::Penalty) {
        for (int f : bc.dirichlet_faces) {
            const Vec3 nrm = face_normal(f);
            for (int n = 0; n < g.num_nodes(); ++n) {
                if (!on_face(g, n, f)) continue;
                const Mat3 P = a.U[n] - Mat3::Identity();
                gU[n] += bc.penalty_weight * surface_weight(g, f, n) * (-2.0) *
                         mat_cross_vec(mat_cross_vec(P, nrm), nrm);
            }
        }
    }

    EnergyGradient out;
    // deformation gradient: U = R^T (D phi), so dE/d(Dphi) = R gU.
    {
        MatField rG(g);
        for (int n = 0; n < g.num_nodes(); ++n) rG[n] = a.R[n] * gU[n];
        out.dphi = VecField(g, Vec3::Zero());
        for (int axis = 0; axis < 3; ++axis) {
            VecField col(g);
            for (int n = 0; n < g.num_nodes(); ++n) col[n] = rG[n].col(axis);
            const VecField s = differentiate_transpose(col, axis);
            for (int n = 0; n < g.num_nodes(); ++n) out.dphi[n] += s[n];
        }
        if (p.body_force)
            for (int n = 0; n < g.num_nodes(); ++n)
                out.dphi[n] -= a.w[n] * p.body_force(g.node(n));
    }

    // rotation tangent: the U = R^T F dependence is nodewise ...
    out.dR_tangent = VecField(g, Vec3::Zero());
    for (int n = 0; n < g.num_nodes(); ++n)
        out.dR_tangent[n] =
            -2.0 * axl(Mat3(a.R[n] * gU[n] * a.F[n].transpose()));

    // ... while the wryness term couples neighbors through the stencil.
    {
        MatField gGamma(g);
        for (int n = 0; n < g.num_nodes(); ++n) {
            const double k2 = 2.0 * a.gamma[n].squaredNorm();
            gGamma[n] = 2.0 * p.q * p.mu * p.Lc_hat * a.w[n] *
                        std::pow(k2, 0.5 * p.q - 1.0) * a.gamma[n];
        }
        for (int axis = 0; axis < 3; ++axis) {
            const MatField dR = differentiate(a.R, axis);
            const int stride = detail::axis_stride(g, axis);
            const int n_axis = g.dims[size_t(axis)];
            const double h = g.spacing[size_t(axis)];
            for (int n = 0; n < g.num_nodes(); ++n) {
                const Mat3 W = a.R[n] * anti(Vec3(gGamma[n].col(axis)));
                out.dR_tangent[n] -= axl(Mat3(W * dR[n].transpose()));
                const int i = g.coords(n)[size_t(axis)];
                for (const auto& e : derivative_stencil(n_axis, i, h)) {
                    const int m = n + e.offset * stride;
                    out.dR_tangent[m] +=
                        e.coeff * axl(Mat3(W * a.R[m].transpose()));
                }
            }
        }
    }

    if (bc.mode == BcMode::Hard) {
        for (int n = 0; n < g.num_nodes(); ++n)
            if (on_dirichlet(g, n, bc)) {
                out.dphi[n].setZero();
                out.dR_tangent[n].setZero();
            }
    }
    return out;
}

// --- minimizer ----------------------------------------------------------------

struct MinimizeOptions {
    int max_iter = 5000;
    double grad_tol = 1e-10;
    double armijo_c = 1e-4;
    double shrink = 0.5;
    double grow = 1.25;
    double initial_step = 1.0;
};

namespace detail {

inline void enforce_hard_bc(MinimizeState& s, const BoundarySpec& bc) {
    if (bc.mode != BcMode::Hard) return;
    const Grid3& g = s.phi.grid;
    for (int n = 0; n < g.num_nodes(); ++n)
        if (on_dirichlet(g, n, bc)) {
            s.phi[n] = bc.phi_bc ? bc.phi_bc(g.node(n)) : g.node(n);
            s.rot[size_t(n)] = Eigen::Quaterniond::Identity();
        }
}

inline MinimizeState step_state(const MinimizeState& s, const EnergyGradient& dir,
                                double step, const BoundarySpec& bc) {
    MinimizeState t = s;
    const int n_nodes = s.phi.size();
    for (int n = 0; n < n_nodes; ++n) {
        t.phi[n] += step * dir.dphi[n];
        const Vec3 w = step * dir.dR_tangent[n];
        t.rot[size_t(n)] =
            (Eigen::Quaterniond(Eigen::AngleAxisd(w.norm(), w.norm() > 0.0
                                                               ? Vec3(w.normalized())
                                                               : Vec3::UnitX())) *
             s.rot[size_t(n)])
                .normalized();
    }
    enforce_hard_bc(t, bc);
    return t;
}

inline bool feasible(const MinimizeState& s) {
    const MatField F = grad_vec_field(s.phi);
    for (int n = 0; n < F.size(); ++n) {
        const double d =
            (s.rot[size_t(n)].toRotationMatrix().transpose() * F[n]).determinant();
        if (!(d > kDetEps)) return false;
    }
    return true;
}

} // namespace detail

/// Gradient descent with Barzilai-Borwein step selection, Armijo
/// backtracking and exponential retraction of the rotations. The energy
/// trace is non-increasing across accepted steps.
inline MinimizeState minimize(const MinimizeState& initial, const CosseratParams& p,
                              const BoundarySpec& bc,
                              const MinimizeOptions& opts = {}) {
    MinimizeState s = initial;
    detail::enforce_hard_bc(s, bc);
    if (!detail::feasible(s))
        throw SingularStretch("minimize: initial state has det U <= 0");

    double E = total_energy(s, p, bc);
    s.energy_trace.assign(1, E);
    double step = opts.initial_step;

    EnergyGradient grad = gradient(s, p, bc);
    for (int it = 0; it < opts.max_iter; ++it) {
        double gnorm2 = 0.0, ginf = 0.0;
        for (int n = 0; n < s.phi.size(); ++n) {
            gnorm2 += grad.dphi[n].squaredNorm() + grad.dR_tangent[n].squaredNorm();
            ginf = std::max(ginf, grad.dphi[n].lpNorm<Eigen::Infinity>());
            ginf = std::max(ginf, grad.dR_tangent[n].lpNorm<Eigen::Infinity>());
        }
        if (ginf < opts.grad_tol) break;

        EnergyGradient dir;
        dir.dphi = VecField(s.phi.grid);
        dir.dR_tangent = VecField(s.phi.grid);
        for (int n = 0; n < s.phi.size(); ++n) {
            dir.dphi[n] = -grad.dphi[n];
            dir.dR_tangent[n] = -grad.dR_tangent[n];
        }

        double taken = step;
        for (;;) {
            if (taken < 1e-14)
                throw LineSearchStalled("minimize: no decrease at step " +
                                        std::to_string(taken));
            MinimizeState trial = detail::step_state(s, dir, taken, bc);
            if (detail::feasible(trial)) {
                const double Et = total_energy(trial, p, bc);
                if (Et <= E - opts.armijo_c * taken * gnorm2) {
                    s = std::move(trial);
                    E = Et;
                    break;
                }
            }
            taken *= opts.shrink;
        }
        s.energy_trace.push_back(E);
        s.iterations = it + 1;

        // BB1 step from the accepted move: with s_k = -t g_k the quotient
        // <s,s>/<s,y> reduces to t |g|^2 / <g, g - g+>.
        const EnergyGradient gnew = gradient(s, p, bc);
        double gdotdiff = 0.0;
        for (int n = 0; n < s.phi.size(); ++n)
            gdotdiff += grad.dphi[n].dot(grad.dphi[n] - gnew.dphi[n]) +
                        grad.dR_tangent[n].dot(grad.dR_tangent[n] - gnew.dR_tangent[n]);
        if (gdotdiff > 0.0)
            step = std::min(taken * gnorm2 / gdotdiff, 1e3);
        else
            step = taken * opts.grow;
        grad = gnew;
    }
    return s;
}

// --- incompatible Korn quotient ------------------------------------------------

/// Discrete Rayleigh quotient (int ||sym P||^2 + ||Curl P||^2) / int ||P||^2
/// for P = U - id.
inline double korn_ratio(const MatField& U) {
    const ScalarField w = volume_weights(U.grid);
    MatField P(U.grid);
    for (int n = 0; n < U.size(); ++n) P[n] = U[n] - Mat3::Identity();
    const MatField curlP = curl_mat_field(P);
    double num = 0.0, den = 0.0;
    for (int n = 0; n < U.size(); ++n) {
        num += w[n] * (sym(P[n]).squaredNorm() + curlP[n].squaredNorm());
        den += w[n] * P[n].squaredNorm();
    }
    if (!(den > 0.0)) throw ZeroField("korn_ratio: P vanishes identically");
    return num / den;
}

} // namespace cosserat
