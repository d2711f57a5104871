#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cosserat/energy.hpp"
#include "cosserat/random.hpp"

using namespace cosserat;

namespace {

CosseratParams case3_params() {
    CosseratParams p;
    p.mu = 1.0;
    p.lambda = 1.0;
    p.mu_c = 0.0;
    p.Lc = 0.1;
    p.Lc_hat = 0.1;
    p.q = 4.0;
    return p;
}

MinimizeState noisy_reference(const Grid3& g, double amp, std::uint64_t seed,
                                  bool interior_only) {
    RandomFixtures rnd(seed);
    MinimizeState s = MinimizeState::reference(g);
    for (int n = 0; n < g.num_nodes(); ++n) {
        if (interior_only && !g.interior(n)) continue;
        s.phi[n] += amp * rnd.vec();
        const Vec3 w = amp * rnd.vec();
        s.rot[size_t(n)] =
            (Eigen::Quaterniond(Eigen::AngleAxisd(
                 w.norm(), w.norm() > 0 ? Vec3(w.normalized()) : Vec3::UnitX())) *
             s.rot[size_t(n)])
                .normalized();
    }
    return s;
}

} // namespace

TEST_CASE("density hand-oracles") {
    CosseratParams p = case3_params();
    CHECK(energy_density(Mat3::Identity(), Mat3::Zero(), Mat3::Zero(), p) == 0.0);

    const Mat3 U = Vec3(2, 1, 1).asDiagonal();
    CHECK(energy_density(U, Mat3::Zero(), Mat3::Zero(), p) ==
          doctest::Approx(p.mu + 9.0 / 8.0 * p.lambda).epsilon(1e-14));

    const double gma = 0.4;
    const Mat3 Us = Mat3::Identity() + anti(Vec3(0, 0, gma));
    const double d = 1.0 + gma * gma;
    CHECK(energy_density(Us, Mat3::Zero(), Mat3::Zero(), p) ==
          doctest::Approx(0.5 * p.lambda * (d * d + 1.0 / (d * d) - 2.0))
              .epsilon(1e-13));

    CHECK_THROWS_AS(energy_density(Mat3::Zero(), Mat3::Zero(), Mat3::Zero(), p),
                    SingularStretch);
}

TEST_CASE("density is nonnegative and zero only at the stress-free point") {
    CosseratParams p = case3_params();
    p.mu_c = 0.3;
    RandomFixtures rnd(71);
    for (int t = 0; t < 500; ++t) {
        const Mat3 U = Mat3::Identity() + 0.4 * rnd.mat();
        if (std::abs(U.determinant()) < 1e-6) continue;
        const Mat3 C = rnd.mat(), K = rnd.mat();
        const double W = energy_density(U, C, K, p);
        CHECK(W >= 0.0);
        if ((U - Mat3::Identity()).norm() > 1e-3) CHECK(W > 0.0);
    }
}

TEST_CASE("curvature density matches the third-order tensor norm") {
    // ||frak K||^2 = 2 ||Gamma||^2 since each slice is anti(Gamma e_k)
    RandomFixtures rnd(72);
    CosseratParams p = case3_params();
    for (int t = 0; t < 200; ++t) {
        const Mat3 gamma = rnd.mat();
        const double direct = p.mu * p.Lc_hat *
                              std::pow(big_anti(gamma).norm(), p.q);
        CHECK(curvature_density(gamma, p) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("volume weights sum to the box volume") {
    const Grid3 g({5, 7, 4}, {0.2, 0.1, 0.3});
    const ScalarField w = volume_weights(g);
    double s = 0.0;
    for (int n = 0; n < w.size(); ++n) s += w[n];
    CHECK(s == doctest::Approx(0.8 * 0.6 * 0.9).epsilon(1e-13));
}

TEST_CASE("total energy: reference state is stress free, constant load linear") {
    const Grid3 g = Grid3::unit_cube(7);
    CosseratParams p = case3_params();
    BoundarySpec bc;
    bc.mode = BcMode::Penalty;
    const MinimizeState ref = MinimizeState::reference(g);
    CHECK(std::abs(total_energy(ref, p, bc)) < 1e-14);

    const Vec3 c(0.3, -0.2, 0.5);
    p.body_force = [c](const Vec3&) { return c; };
    // -int c.x over the unit cube = -c.(1/2,1/2,1/2)
    CHECK(total_energy(ref, p, bc) ==
          doctest::Approx(-0.5 * c.sum()).epsilon(1e-12));
}

TEST_CASE("total energy: uniform stretch gives volume times the density") {
    const Grid3 g = Grid3::unit_cube(6);
    CosseratParams p = case3_params();
    BoundarySpec bc; // hard mode: no penalty term in the energy
    MinimizeState s = MinimizeState::reference(g);
    const Mat3 B = Vec3(2, 1, 1).asDiagonal();
    for (int n = 0; n < g.num_nodes(); ++n) s.phi[n] = B * g.node(n);
    CHECK(total_energy(s, p, bc) ==
          doctest::Approx(p.mu + 9.0 / 8.0 * p.lambda).epsilon(1e-11));
}

TEST_CASE("gradient vanishes at the unloaded reference state") {
    const Grid3 g = Grid3::unit_cube(5);
    const CosseratParams p = case3_params();
    BoundarySpec bc;
    bc.mode = BcMode::Penalty;
    const EnergyGradient grad = gradient(MinimizeState::reference(g), p, bc);
    for (int n = 0; n < g.num_nodes(); ++n) {
        CHECK(grad.dphi[n].norm() < 1e-12);
        CHECK(grad.dR_tangent[n].norm() < 1e-12);
    }
}

TEST_CASE("constant load at reference: dphi = -w f, rotations unaffected") {
    const Grid3 g = Grid3::unit_cube(5);
    CosseratParams p = case3_params();
    const Vec3 c(0.1, 0.2, -0.3);
    p.body_force = [c](const Vec3&) { return c; };
    BoundarySpec bc;
    bc.mode = BcMode::Penalty;
    const ScalarField w = volume_weights(g);
    const EnergyGradient grad = gradient(MinimizeState::reference(g), p, bc);
    for (int n = 0; n < g.num_nodes(); ++n) {
        CHECK((grad.dphi[n] + w[n] * c).norm() < 1e-12);
        CHECK(grad.dR_tangent[n].norm() < 1e-12);
    }
}

TEST_CASE("gradient matches central finite differences on random states") {
    const Grid3 g = Grid3::unit_cube(4);
    CosseratParams p = case3_params();
    p.mu_c = 0.2;
    p.body_force = [](const Vec3& x) { return Vec3(0.05 * x(1), -0.02, 0.03 * x(0)); };
    BoundarySpec bc;
    bc.mode = BcMode::Penalty;
    bc.penalty_weight = 0.7;

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const MinimizeState s = noisy_reference(g, 0.05, seed, false);
        const EnergyGradient grad = gradient(s, p, bc);

        RandomFixtures rnd(1000 + seed);
        EnergyGradient dir;
        dir.dphi = VecField(g);
        dir.dR_tangent = VecField(g);
        double dd = 0.0;
        for (int n = 0; n < g.num_nodes(); ++n) {
            dir.dphi[n] = rnd.vec();
            dir.dR_tangent[n] = rnd.vec();
            dd += grad.dphi[n].dot(dir.dphi[n]) +
                  grad.dR_tangent[n].dot(dir.dR_tangent[n]);
        }
        const double eps = 1e-6;
        const double Ep = total_energy(detail::step_state(s, dir, eps, bc), p, bc);
        const double Em = total_energy(detail::step_state(s, dir, -eps, bc), p, bc);
        const double fd = (Ep - Em) / (2.0 * eps);
        CHECK(std::abs(dd - fd) < 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("frame indifference: rigid motion leaves the stored energy unchanged") {
    const Grid3 g = Grid3::unit_cube(5);
    const CosseratParams p = case3_params(); // f = 0
    BoundarySpec bc;
    bc.mode = BcMode::Penalty;
    RandomFixtures rnd(73);
    const MinimizeState s = noisy_reference(g, 0.05, 9, false);
    const double E0 = total_energy(s, p, bc);

    const Mat3 Q = rnd.rotation();
    const Vec3 b = rnd.vec();
    MinimizeState t = s;
    for (int n = 0; n < g.num_nodes(); ++n) {
        t.phi[n] = Q * s.phi[n] + b;
        t.rot[size_t(n)] = (Eigen::Quaterniond(Q) * s.rot[size_t(n)]).normalized();
    }
    CHECK(std::abs(total_energy(t, p, bc) - E0) < 1e-10 * std::max(1.0, std::abs(E0)));
}

TEST_CASE("minimize: reference start with zero load stops immediately") {
    const Grid3 g = Grid3::unit_cube(5);
    const CosseratParams p = case3_params();
    BoundarySpec bc;
    MinimizeOptions opts;
    opts.grad_tol = 1e-8;
    const MinimizeState out = minimize(MinimizeState::reference(g), p, bc, opts);
    CHECK(out.iterations == 0);
    CHECK(out.energy_trace.size() == 1);
}

TEST_CASE("minimize: zero load recovers the reference from a perturbed start") {
    const Grid3 g = Grid3::unit_cube(5);
    const CosseratParams p = case3_params();
    BoundarySpec bc; // hard clamp on all faces
    MinimizeOptions opts;
    opts.max_iter = 3000;
    opts.grad_tol = 1e-10;
    const MinimizeState start = perturbed_reference(g, 0.05, 17);
    const MinimizeState out = minimize(start, p, bc, opts);
    CHECK(out.energy_trace.back() < 1e-8);
    for (size_t i = 1; i < out.energy_trace.size(); ++i)
        CHECK(out.energy_trace[i] <= out.energy_trace[i - 1]);
    double dist = 0.0;
    for (int n = 0; n < g.num_nodes(); ++n)
        dist = std::max(dist, (out.phi[n] - g.node(n)).norm());
    CHECK(dist < 1e-4);
    for (const auto& qn : out.rot)
        CHECK(std::abs(qn.norm() - 1.0) < 1e-12);
}

TEST_CASE("minimize: small constant load does positive work") {
    const Grid3 g = Grid3::unit_cube(5);
    CosseratParams p = case3_params();
    const Vec3 f(0, 0, 0.01);
    p.body_force = [f](const Vec3&) { return f; };
    BoundarySpec bc;
    MinimizeOptions opts;
    opts.max_iter = 2000;
    opts.grad_tol = 1e-8;
    const MinimizeState out = minimize(MinimizeState::reference(g), p, bc, opts);
    const ScalarField w = volume_weights(g);
    double work = 0.0;
    for (int n = 0; n < g.num_nodes(); ++n)
        work += w[n] * f.dot(out.phi[n] - g.node(n));
    CHECK(work > 0.0);
    for (size_t i = 1; i < out.energy_trace.size(); ++i)
        CHECK(out.energy_trace[i] <= out.energy_trace[i - 1]);
}

TEST_CASE("korn ratio: constant symmetric gives 1, constant skew gives 0") {
    const Grid3 g = Grid3::unit_cube(5);
    RandomFixtures rnd(74);
    const Mat3 S = sym(rnd.mat());
    MatField U(g, Mat3(Mat3::Identity() + S));
    CHECK(korn_ratio(U) == doctest::Approx(1.0).epsilon(1e-12));

    MatField Us(g, Mat3(Mat3::Identity() + anti(Vec3(0.2, -0.4, 0.1))));
    CHECK(korn_ratio(Us) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(korn_ratio(MatField(g, Mat3::Identity())), ZeroField);
}

TEST_CASE("korn ratio: tangentially clamped random fields stay coercive") {
    for (int nn : {9}) {
        const Grid3 g = Grid3::unit_cube(nn);
        double mn = 1e300;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomFixtures rnd(200 + seed);
            MatField U(g, Mat3::Identity());
            for (int n = 0; n < g.num_nodes(); ++n)
                if (g.interior(n)) U[n] += 0.3 * rnd.mat();
            mn = std::min(mn, korn_ratio(U));
        }
        CHECK(mn > 0.0);
    }
}
