#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cosserat/identities.hpp"
#include "cosserat/random.hpp"
#include "cosserat/tensor_core.hpp"

using namespace cosserat;

TEST_CASE("anti matches the fixed sign pattern") {
    const Mat3 A = anti(Vec3(1, 2, 3));
    Mat3 expect;
    expect << 0, -3, 2, 3, 0, -1, -2, 1, 0;
    CHECK((A - expect).norm() == 0.0);
}

TEST_CASE("axl of the zero matrix is zero") {
    CHECK(axl(Mat3::Zero()).norm() == 0.0);
}

TEST_CASE("axl(anti(v)) is an exact round-trip") {
    RandomFixtures rnd(7);
    for (int t = 0; t < 1000; ++t) {
        const Vec3 v = rnd.vec();
        CHECK((axl(anti(v)) - v).norm() == 0.0);
    }
}

TEST_CASE("anti(v) w = v x w") {
    RandomFixtures rnd(8);
    for (int t = 0; t < 100; ++t) {
        const Vec3 v = rnd.vec(), w = rnd.vec();
        CHECK((anti(v) * w - v.cross(w)).norm() < 1e-15);
    }
}

TEST_CASE("big_anti of zero is the zero tensor") {
    CHECK(big_anti(Mat3::Zero()).norm() == 0.0);
}

TEST_CASE("eps : big_anti(M) = -2M") {
    RandomFixtures rnd(9);
    for (int t = 0; t < 1000; ++t) {
        const Mat3 M = rnd.mat();
        CHECK((double_dot(levi_civita(), big_anti(M)) + 2.0 * M).norm() <
              1e-13 * std::max(1.0, M.norm()));
    }
}

TEST_CASE("big_axl inverts big_anti") {
    RandomFixtures rnd(10);
    for (int t = 0; t < 1000; ++t) {
        const Mat3 M = rnd.mat();
        CHECK((big_axl(big_anti(M)) - M).norm() < 1e-13);
    }
}

TEST_CASE("big_axl rejects non-skew slices") {
    Tensor3 S;
    S.slice(1) = Mat3::Identity();
    CHECK_THROWS_AS(big_axl(S), NonSkewSlice);
}

TEST_CASE("eps : eps = 2 id") {
    CHECK((double_dot(levi_civita(), levi_civita()) - 2.0 * Mat3::Identity()).norm() <
          1e-15);
}

TEST_CASE("double dot against zero vanishes") {
    RandomFixtures rnd(11);
    CHECK(double_dot(rnd.tensor3(), Tensor3::Zero()).norm() == 0.0);
}

TEST_CASE("double dot agrees with the brute-force index sum") {
    RandomFixtures rnd(12);
    const Tensor3 A = rnd.tensor3(), B = rnd.tensor3();
    const Mat3 got = double_dot(A, B);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int r = 0; r < 3; ++r)
                for (int t = 0; t < 3; ++t) s += A(i, r, t) * B(r, t, j);
            CHECK(got(i, j) == doctest::Approx(s).epsilon(1e-14));
        }
}

TEST_CASE("adjugate basics") {
    CHECK((adjugate(Mat3::Identity()) - Mat3::Identity()).norm() == 0.0);
    const Mat3 adj = adjugate(Vec3(2, 3, 4).asDiagonal().toDenseMatrix());
    CHECK((adj - Mat3(Vec3(12, 8, 6).asDiagonal())).norm() == 0.0);
}

TEST_CASE("A adj(A) = det(A) id, including near-singular A") {
    RandomFixtures rnd(13);
    for (int t = 0; t < 1000; ++t) {
        const Mat3 A = rnd.mat();
        const double scale = std::max(1.0, std::pow(A.norm(), 3));
        CHECK((A * adjugate(A) - A.determinant() * Mat3::Identity()).norm() <
              1e-12 * scale);
    }
    // genuinely singular input is still defined
    Mat3 S = Mat3::Zero();
    S(0, 0) = 1.0;
    CHECK((S * adjugate(S)).norm() == 0.0);
}

TEST_CASE("vol is the determinant of the column-assembled matrix") {
    CHECK(vol(Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()) == 1.0);
    RandomFixtures rnd(14);
    for (int t = 0; t < 100; ++t) {
        const Vec3 u = rnd.vec(), w = rnd.vec();
        CHECK(std::abs(vol(u, u, w)) < 1e-15);
        CHECK(std::abs(u.cross(w).dot(w)) < 1e-15);
    }
}

TEST_CASE("vol lemmas: det scaling, adjugate transfer, trace sum rule") {
    RandomFixtures rnd(15);
    for (int t = 0; t < 500; ++t) {
        const Mat3 A = rnd.mat();
        const Vec3 u = rnd.vec(), v = rnd.vec(), w = rnd.vec();
        CHECK(vol(A * u, A * v, A * w) ==
              doctest::Approx(A.determinant() * vol(u, v, w)).epsilon(1e-10));
        CHECK(std::abs(vol(A * u, A * v, w) - vol(u, v, adjugate(A) * w)) < 1e-12);
        CHECK(std::abs(vol(A * u, v, w) + vol(u, A * v, w) + vol(u, v, A * w) -
                       A.trace() * vol(u, v, w)) < 1e-12);
    }
}

TEST_CASE("mat_cross_vec acts row-wise") {
    const Mat3 got = mat_cross_vec(Mat3::Identity(), Vec3::UnitZ());
    for (int i = 0; i < 3; ++i) {
        const Vec3 expect = Vec3(Mat3::Identity().row(i)).cross(Vec3::UnitZ());
        CHECK((Vec3(got.row(i)) - expect).norm() == 0.0);
    }
    RandomFixtures rnd(16);
    CHECK(mat_cross_vec(rnd.mat(), Vec3::Zero()).norm() == 0.0);
    CHECK(mat_cross_vec(Mat3::Zero(), rnd.vec()).norm() == 0.0);
}

TEST_CASE("cartan split: parts, orthogonality, reassembly") {
    const CartanParts pid = cartan_split(Mat3::Identity());
    CHECK(pid.devsym.norm() == 0.0);
    CHECK(pid.skew_part.axial.norm() == 0.0);
    CHECK(pid.sphere == doctest::Approx(1.0));

    const Vec3 v(0.3, -0.7, 1.1);
    const CartanParts psk = cartan_split(anti(v));
    CHECK(psk.devsym.norm() < 1e-15);
    CHECK((psk.skew_part.axial - v).norm() < 1e-15);
    CHECK(psk.sphere == 0.0);

    RandomFixtures rnd(17);
    for (int t = 0; t < 500; ++t) {
        const Mat3 X = rnd.mat();
        const CartanParts p = cartan_split(X);
        CHECK((p.reassemble() - X).norm() < 1e-14 * std::max(1.0, X.norm()));
        const double sum = p.devsym.squaredNorm() +
                           p.skew_part.matrix().squaredNorm() +
                           3.0 * p.sphere * p.sphere;
        CHECK(std::abs(X.squaredNorm() - sum) < 1e-13 * X.squaredNorm());
    }
}

TEST_CASE("transpose_23 is an involution and negates the alternator") {
    RandomFixtures rnd(18);
    const Tensor3 S = rnd.tensor3();
    CHECK((transpose_23(transpose_23(S)) - S).norm() == 0.0);
    CHECK((transpose_23(levi_civita()) + levi_civita()).norm() == 0.0);
    CHECK(transpose_23(Tensor3::Zero()).norm() == 0.0);
}

TEST_CASE("Rot3 projects small drift and rejects large drift") {
    const Mat3 R = exp_so3(Vec3(0.4, -0.2, 0.9));
    Mat3 noisy = R;
    noisy(0, 0) += 3e-9;
    const Rot3 r(noisy);
    CHECK((r.matrix().transpose() * r.matrix() - Mat3::Identity()).norm() <= 1e-12);
    CHECK(std::abs(std::abs(r.det()) - 1.0) <= 1e-12);

    Mat3 bad = R;
    bad(0, 0) += 1e-3;
    CHECK_THROWS_AS((void)Rot3(bad), NotOrthogonal);
}

TEST_CASE("exp_so3 is a rotation with the right angle") {
    RandomFixtures rnd(19);
    for (int t = 0; t < 200; ++t) {
        const Vec3 w = rnd.vec();
        const Mat3 R = exp_so3(w);
        CHECK((R.transpose() * R - Mat3::Identity()).norm() < 1e-14);
        CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(R.trace() == doctest::Approx(1.0 + 2.0 * std::cos(w.norm())).epsilon(1e-12));
    }
}

TEST_CASE("polar decomposition: orthogonal factor, spd stretch, product") {
    RandomFixtures rnd(20);
    for (int t = 0; t < 200; ++t) {
        const Mat3 F0 = rnd.mat();
        // push away from the singular set
        const Mat3 F = F0 + 2.0 * Mat3::Identity() * (F0.determinant() < 0 ? -1.0 : 1.0);
        if (std::abs(F.determinant()) < 0.1) continue;
        Mat3 R, U;
        polar_decompose(F, R, U);
        CHECK((R.transpose() * R - Mat3::Identity()).norm() < 1e-12);
        CHECK((U - U.transpose()).norm() < 1e-12);
        CHECK((U.transpose() * U - F.transpose() * F).norm() <
              1e-12 * std::max(1.0, F.squaredNorm()));
        CHECK((R * U - F).norm() < 1e-12 * std::max(1.0, F.norm()));
    }
}

TEST_CASE("lemma: commuting vector products through an invertible matrix") {
    RandomFixtures rnd(21);
    for (int t = 0; t < 1000; ++t) {
        const Mat3 A = rnd.mat(), B = rnd.invertible_mat();
        const Vec3 h = rnd.vec(), k = rnd.vec();
        const Vec3 lhs = Vec3(A * h).cross(B * k) - Vec3(A * k).cross(B * h);
        const Mat3 Binv = B.inverse();
        const Mat3 M = (A * Binv).trace() * adjugate(B).transpose() -
                       (adjugate(B) * A * Binv).transpose();
        CHECK((lhs - M * h.cross(k)).norm() < 1e-10 * std::max(1.0, lhs.norm()));
    }
}

TEST_CASE("lemma: adjugate-transposed triple cross expansion") {
    RandomFixtures rnd(22);
    for (int t = 0; t < 1000; ++t) {
        const Mat3 A = rnd.mat();
        const Vec3 h = rnd.vec(), k = rnd.vec(), v = rnd.vec();
        const Vec3 lhs = Vec3(adjugate(A).transpose() * h.cross(k)).cross(v);
        const Vec3 rhs = Vec3(A * h).cross(Vec3(A * k).cross(v)) -
                         Vec3(A * k).cross(Vec3(A * h).cross(v));
        CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, lhs.norm()));
    }
}

TEST_CASE("identity suite passes and the corrupted variant fails by name") {
    const auto results = run_identity_suite(200, 42);
    for (const auto& r : results) {
        INFO(r.name);
        CHECK(r.pass);
    }
    const auto corrupted = run_identity_suite(200, 42, /*corrupt_nye=*/true);
    bool nye_failed = false;
    for (const auto& r : corrupted)
        if (r.name == "nye-roundtrip" && !r.pass) nye_failed = true;
    CHECK(nye_failed);
}
