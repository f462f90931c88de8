#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "corostab/error.hpp"
#include "corostab/tensor3.hpp"
#include "random_tensors.hpp"

using namespace corostab;

namespace {

Eigen::Matrix3d to_eigen(const SymTensor3& a) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m(i, j) = a(i, j);
        }
    }
    return m;
}

double max_abs_diff(const SymTensor3& a, const SymTensor3& b) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
        }
    }
    return d;
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
        }
    }
    return d;
}

}  // namespace

TEST(Mat3Test, ProductAndTranspose) {
    const Mat3 a({1, 2, 3, 4, 5, 6, 7, 8, 10});
    const Mat3 b({2, 0, 1, 1, 3, 0, 0, 1, 4});
    const Mat3 ab = a * b;
    EXPECT_DOUBLE_EQ(ab(0, 0), 4.0);
    EXPECT_DOUBLE_EQ(ab(1, 2), 28.0);
    EXPECT_DOUBLE_EQ(ab(2, 1), 34.0);
    EXPECT_DOUBLE_EQ(transpose(a)(0, 2), 7.0);
    EXPECT_DOUBLE_EQ(trace(a), 16.0);
    EXPECT_DOUBLE_EQ(det(a), -3.0);
}

TEST(Mat3Test, InverseAndCofactor) {
    testkit::TensorRng rng(11);
    for (int n = 0; n < 100; ++n) {
        const Mat3 f = rng.deformation(0.3, 3.0);
        EXPECT_LT(max_abs_diff(f * inverse(f), Mat3::identity()), 1e-12);
        EXPECT_LT(max_abs_diff(cof(f), det(f) * transpose(inverse(f))), 1e-12 * std::max(1.0, norm(cof(f))));
    }
    EXPECT_THROW(inverse(Mat3::zero()), DomainError);
    EXPECT_THROW(inverse(Mat3({1, 2, 3, 2, 4, 6, 0, 0, 1})), DomainError);
}

TEST(Mat3Test, SkewAndOuter) {
    const Mat3 a({1, 2, 3, 4, 5, 6, 7, 8, 9});
    const Mat3 w = skew(a);
    EXPECT_LT(norm(w + transpose(w)), 1e-15);
    EXPECT_DOUBLE_EQ(w(0, 1), -1.0);
    const Mat3 o = outer({1, 2, 3}, {4, 5, 6});
    EXPECT_DOUBLE_EQ(o(1, 2), 12.0);
    EXPECT_DOUBLE_EQ(inner(o, o), 14.0 * 77.0);
}

TEST(SymTensor3Test, InnerProductCountsOffDiagonalsTwice) {
    const SymTensor3 a(1, 2, 3, 4, 5, 6);
    EXPECT_DOUBLE_EQ(inner(a, a), inner(a.matrix(), a.matrix()));
    EXPECT_DOUBLE_EQ(norm(a) * norm(a), 1 + 4 + 9 + 2 * (16 + 25 + 36));
    EXPECT_DOUBLE_EQ(trace(dev(a)), 0.0);
}

TEST(SymTensor3Test, DeterminantInverseCofactor) {
    testkit::TensorRng rng(3);
    for (int n = 0; n < 100; ++n) {
        const SymTensor3 a = rng.spd(0.2, 5.0);
        EXPECT_NEAR(det(a), to_eigen(a).determinant(), 1e-12 * std::abs(det(a)) + 1e-14);
        EXPECT_LT(max_abs_diff(inverse(a).matrix() * a.matrix(), Mat3::identity()), 1e-11);
        EXPECT_LT(max_abs_diff(cof(a), inverse(a) * det(a)), 1e-11 * norm(cof(a)));
    }
}

TEST(SymTensor3Test, RotateMatchesMatrixProduct) {
    testkit::TensorRng rng(5);
    const SymTensor3 a = rng.symmetric();
    const Mat3 q = rng.rotation();
    EXPECT_LT(max_abs_diff(rotate(a, q).matrix(), q * a.matrix() * transpose(q)), 1e-14);
    EXPECT_NEAR(det(q), 1.0, 1e-14);
}

TEST(EigSymTest, AgreesWithEigenOnRandomTensors) {
    testkit::TensorRng rng(7);
    for (int n = 0; n < 500; ++n) {
        const SymTensor3 a = rng.symmetric(std::exp(rng.uniform(-5.0, 5.0)));
        const EigenSystem3 es = eig_sym(a);
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> oracle(to_eigen(a));
        const double scale = std::max(1e-300, norm(a));
        for (int i = 0; i < 3; ++i) {
            // Eigen sorts ascending, eig_sym descending.
            EXPECT_NEAR(es.values[static_cast<std::size_t>(i)], oracle.eigenvalues()(2 - i), 1e-13 * scale);
        }
        EXPECT_LT(max_abs_diff(from_spectral(es.values, es.frame), a), 1e-13 * scale);
        EXPECT_LT(max_abs_diff(transpose(es.frame) * es.frame, Mat3::identity()), 1e-13);
    }
}

TEST(EigSymTest, RepeatedAndNearlyRepeatedEigenvalues) {
    testkit::TensorRng rng(9);
    for (double gap : {0.0, 1e-14, 1e-10, 1e-6}) {
        for (int n = 0; n < 50; ++n) {
            const SymTensor3 a = rotate(SymTensor3::diag({2.0, 2.0 + gap, -1.0}), rng.rotation());
            const EigenSystem3 es = eig_sym(a);
            EXPECT_NEAR(es.values[0], 2.0 + gap, 1e-13);
            EXPECT_NEAR(es.values[1], 2.0, 1e-13);
            EXPECT_NEAR(es.values[2], -1.0, 1e-13);
            EXPECT_LT(max_abs_diff(from_spectral(es.values, es.frame), a), 1e-13);
        }
    }
    const EigenSystem3 triple = eig_sym(SymTensor3::identity() * 3.0);
    EXPECT_EQ(triple.values, (Vec3{3.0, 3.0, 3.0}));
    const EigenSystem3 zero = eig_sym(SymTensor3::zero());
    EXPECT_EQ(zero.values, (Vec3{0.0, 0.0, 0.0}));
}

TEST(EigSymTest, RejectsNonFiniteInput) {
    EXPECT_THROW(eig_sym(SymTensor3(1, 1, std::numeric_limits<double>::quiet_NaN(), 0, 0, 0)), InvalidInputError);
    EXPECT_THROW(eig_sym(SymTensor3(std::numeric_limits<double>::infinity(), 1, 1, 0, 0, 0)), InvalidInputError);
}

TEST(PrimaryFunctionTest, LogExpRoundTrip) {
    testkit::TensorRng rng(13);
    for (int n = 0; n < 1000; ++n) {
        const SymTensor3 v = rng.spd(0.05, 20.0);
        EXPECT_LT(max_abs_diff(exp_sym(log_spd(v)), v), 1e-10 * std::max(1.0, norm(v)));
        const SymTensor3 h = rng.symmetric(2.0);
        EXPECT_LT(max_abs_diff(log_spd(exp_sym(h)), h), 1e-10 * std::max(1.0, norm(h)));
    }
}

TEST(PrimaryFunctionTest, SqrtSquaresBack) {
    testkit::TensorRng rng(17);
    for (int n = 0; n < 200; ++n) {
        const SymTensor3 b = rng.spd(0.1, 10.0);
        const SymTensor3 r = sqrt_spd(b);
        EXPECT_LT(max_abs_diff(r.matrix() * r.matrix(), b.matrix()), 1e-12 * norm(b));
    }
}

TEST(PrimaryFunctionTest, DiagonalInputActsEntrywise) {
    const SymTensor3 l = log_spd(SymTensor3::diag({4.0, 1.0, 0.5}));
    EXPECT_NEAR(l(0, 0), std::log(4.0), 1e-15);
    EXPECT_NEAR(l(1, 1), 0.0, 1e-15);
    EXPECT_NEAR(l(2, 2), std::log(0.5), 1e-15);
    EXPECT_EQ(l(0, 1), 0.0);
}

TEST(PrimaryFunctionTest, LogRequiresPositiveDefinite) {
    EXPECT_THROW(log_spd(SymTensor3::diag({1.0, 0.0, 2.0})), DomainError);
    EXPECT_THROW(log_spd(SymTensor3::diag({1.0, -1.0, 2.0})), DomainError);
    EXPECT_THROW(sqrt_spd(SymTensor3(1, 1, 1, 2, 0, 0)), DomainError);
    EXPECT_NO_THROW(exp_sym(SymTensor3::diag({-3.0, 0.0, 3.0})));
}

TEST(PrimaryFunctionTest, LogIsIsotropic) {
    testkit::TensorRng rng(19);
    for (int n = 0; n < 100; ++n) {
        const SymTensor3 v = rng.spd(0.2, 5.0);
        const Mat3 q = rng.rotation();
        EXPECT_LT(max_abs_diff(log_spd(rotate(v, q)), rotate(log_spd(v), q)), 1e-12);
    }
}

TEST(Basis6Test, OrthonormalBasisIsIsometric) {
    const Basis6& b = Basis6::orthonormal();
    EXPECT_TRUE(b.is_orthonormal());
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            EXPECT_NEAR(inner(b[i], b[j]), i == j ? 1.0 : 0.0, 1e-15);
        }
    }
    testkit::TensorRng rng(23);
    for (int n = 0; n < 1000; ++n) {
        const SymTensor3 a = rng.symmetric();
        const SymTensor3 c = rng.symmetric();
        const Vec6 va = vec6(a);
        const Vec6 vc = vec6(c);
        double dotv = 0.0;
        for (std::size_t k = 0; k < 6; ++k) {
            dotv += va[k] * vc[k];
        }
        EXPECT_NEAR(dotv, inner(a, c), 1e-14 * std::max(1.0, norm(a) * norm(c)));
        EXPECT_LT(max_abs_diff(unvec6(va), a), 1e-15 * std::max(1.0, norm(a)));
    }
}

TEST(Basis6Test, VoigtCoordinatesAreRawEntries) {
    const SymTensor3 a(1, 2, 3, 4, 5, 6);
    const Vec6 v = vec6(a, Basis6::voigt());
    EXPECT_EQ(v, (Vec6{1, 2, 3, 4, 5, 6}));
    EXPECT_FALSE(Basis6::voigt().is_orthonormal());
    EXPECT_EQ(unvec6(v, Basis6::voigt()), a);
    const Vec6 o = vec6(a);
    EXPECT_NEAR(o[3], 4.0 * std::sqrt(2.0), 1e-14);
}
