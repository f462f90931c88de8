#pragma once

// Seeded generators for property tests. All draws go through
// numeric::unit_uniform so sequences are identical on every platform.

#include <cmath>
#include <numbers>
#include <random>

#include "corostab/numeric.hpp"
#include "corostab/tensor3.hpp"

namespace corostab::testkit {

class TensorRng {
public:
    explicit TensorRng(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return numeric::uniform(rng_, lo, hi); }

    /// Standard normal by Box-Muller.
    double normal() {
        const double u1 = 1.0 - numeric::unit_uniform(rng_);
        const double u2 = numeric::unit_uniform(rng_);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Vec3 unit_vector() {
        Vec3 v{normal(), normal(), normal()};
        const double n = norm(v);
        return {v[0] / n, v[1] / n, v[2] / n};
    }

    Mat3 matrix(double scale = 1.0) {
        Mat3 m;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m(i, j) = scale * normal();
            }
        }
        return m;
    }

    SymTensor3 symmetric(double scale = 1.0) { return SymTensor3::sym(matrix(scale)); }

    /// Symmetric tensor of unit Frobenius norm.
    SymTensor3 unit_symmetric() {
        const SymTensor3 s = symmetric();
        return s * (1.0 / norm(s));
    }

    Mat3 skew_matrix(double scale = 1.0) { return skew(matrix(scale)); }

    /// Proper rotation via Gram-Schmidt on a random matrix.
    Mat3 rotation() {
        const Vec3 a = unit_vector();
        Vec3 b = unit_vector();
        const double p = dot(a, b);
        b = {b[0] - p * a[0], b[1] - p * a[1], b[2] - p * a[2]};
        const double nb = norm(b);
        b = {b[0] / nb, b[1] / nb, b[2] / nb};
        return Mat3::from_columns(a, b, cross(a, b));
    }

    /// Q diag(l) Q^T with eigenvalues uniform in [lo, hi].
    SymTensor3 spd(double lo, double hi) {
        const Vec3 d{uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
        return rotate(SymTensor3::diag(d), rotation());
    }

    /// SPD tensor with det = 1.
    SymTensor3 unimodular_spd(double lo, double hi) {
        const SymTensor3 v = spd(lo, hi);
        return v * std::pow(det(v), -1.0 / 3.0);
    }

    /// R1 diag(l) R2 with stretches in [lo, hi]; det > 0.
    Mat3 deformation(double lo, double hi) {
        const Vec3 d{uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
        return rotation() * Mat3::diag(d) * rotation();
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace corostab::testkit
