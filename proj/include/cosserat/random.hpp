#pragma once

// Seeded random fixtures shared by the identity suites and the CLI: entries
// uniform in [-1, 1], with resampling to keep matrices well away from the
// singular set where an inverse is involved.

#include <random>

#include "cosserat/tensor_core.hpp"

namespace cosserat {

class RandomFixtures {
  public:
    explicit RandomFixtures(std::uint64_t seed) : rng_(seed), dist_(-1.0, 1.0) {}

    double real() { return dist_(rng_); }

    Vec3 vec() { return Vec3(real(), real(), real()); }

    Mat3 mat() {
        Mat3 M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = real();
        return M;
    }

    /// Random matrix with |det| >= 0.1 (resampled).
    Mat3 invertible_mat() {
        for (;;) {
            const Mat3 M = mat();
            if (std::abs(M.determinant()) >= 0.1) return M;
        }
    }

    /// Random rotation from a uniform axis-angle draw.
    Mat3 rotation() {
        Vec3 w = vec();
        while (w.norm() < 1e-6) w = vec();
        return exp_so3(Vec3(w.normalized() * (std::abs(real()) * 3.0)));
    }

    Tensor3 tensor3() {
        Tensor3 T;
        for (int k = 0; k < 3; ++k) T.slice(k) = mat();
        return T;
    }

  private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_;
};

} // namespace cosserat
