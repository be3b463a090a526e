#include <gtest/gtest.h>

#include <random>

#include "disclinate/so3.hpp"
#include "test_support.hpp"

using namespace disclinate;
using disclinate::testing::kPi;
using disclinate::testing::kTwoPi;
using disclinate::testing::series_rotation;

namespace {

double max_diff(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

Eigen::Vector3d random_vector(std::mt19937_64& rng, double max_norm) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, max_norm);
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    return v.normalized() * u(rng);
}

}  // namespace

TEST(LeviCivita, Convention) {
    EXPECT_EQ(levi_civita(0, 1, 2), 1.0);
    EXPECT_EQ(levi_civita(1, 2, 0), 1.0);
    EXPECT_EQ(levi_civita(1, 0, 2), -1.0);
    EXPECT_EQ(levi_civita(2, 1, 0), -1.0);
    EXPECT_EQ(levi_civita(0, 0, 2), 0.0);
}

TEST(Rodrigues, ZeroAngleIsIdentity) {
    EXPECT_EQ(rodrigues(AxisAngleVector(0, 0, 0)).entries(), Eigen::Matrix3d::Identity());
}

TEST(Rodrigues, HalfTurnAboutThirdAxis) {
    const Eigen::Matrix3d expected = Eigen::Vector3d(-1, -1, 1).asDiagonal();
    const RotationMatrix s = rodrigues(AxisAngleVector(0, 0, kPi));
    EXPECT_LT(max_diff(s.entries(), expected), 1e-15);
    EXPECT_LT(max_diff(series_rotation({0, 0, kPi}), expected), 1e-13);
}

TEST(Rodrigues, QuarterTurnSigns) {
    const RotationMatrix s = rodrigues(AxisAngleVector(0, 0, kPi / 2));
    Eigen::Matrix3d expected;
    expected << 0, 1, 0,
                -1, 0, 0,
                0, 0, 1;
    EXPECT_LT(max_diff(s.entries(), expected), 1e-15);
    EXPECT_LT(max_diff(series_rotation({0, 0, kPi / 2}), expected), 1e-15);
    // S_1^2 = 1, S_2^1 = -1
    EXPECT_NEAR(s(0, 1), 1.0, 1e-15);
    EXPECT_NEAR(s(1, 0), -1.0, 1e-15);
}

TEST(Rodrigues, GeneratorMatchesHandWrittenMatrix) {
    const Eigen::Vector3d t(0.3, -1.2, 0.7);
    Eigen::Matrix3d hand;
    hand << 0.0, t[2], -t[1],
            -t[2], 0.0, t[0],
            t[1], -t[0], 0.0;
    EXPECT_EQ(generator(AxisAngleVector(t)), hand);
}

TEST(Rodrigues, RandomOutputsAreProperRotations) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 1000; ++n) {
        const RotationMatrix s = rodrigues(AxisAngleVector(random_vector(rng, 20.0)));
        EXPECT_LE(s.orthogonality_error(), 1e-12);
        EXPECT_NEAR(s.determinant(), 1.0, 1e-12);
    }
}

TEST(Rodrigues, AgreesWithSeriesUpToHalfTurn) {
    std::mt19937_64 rng(12);
    for (int n = 0; n < 500; ++n) {
        const Eigen::Vector3d t = random_vector(rng, kPi);
        EXPECT_LE(max_diff(rodrigues(AxisAngleVector(t)).entries(), series_rotation(t)), 1e-12);
    }
}

TEST(Rodrigues, SmallAngleBranchIsContinuous) {
    const Eigen::Vector3d axis = Eigen::Vector3d(1, 2, -2).normalized();
    for (double angle : {0.0, 1e-12, 1e-8, 9.999e-5, 1e-4, 1.0001e-4, 1e-3}) {
        const Eigen::Vector3d t = angle * axis;
        EXPECT_LE(max_diff(rodrigues(AxisAngleVector(t)).entries(), series_rotation(t)), 2e-15);
    }
}

TEST(Rodrigues, SameAxisComposition) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int n = 0; n < 200; ++n) {
        const Eigen::Vector3d axis = random_vector(rng, 1.0).normalized();
        const double a = u(rng);
        const double b = u(rng);
        const RotationMatrix lhs = rodrigues(AxisAngleVector(a * axis)) * rodrigues(AxisAngleVector(b * axis));
        EXPECT_LE(max_diff(lhs.entries(), rodrigues(AxisAngleVector((a + b) * axis)).entries()), 1e-10);
    }
}

TEST(Rodrigues, FullTurnsAreIdentity) {
    std::mt19937_64 rng(14);
    for (int k = -3; k <= 3; ++k) {
        const Eigen::Vector3d axis = random_vector(rng, 1.0).normalized();
        EXPECT_LE(rodrigues(AxisAngleVector(kTwoPi * k * axis)).identity_error(), 1e-10);
    }
}

TEST(Dual, SingleEntry) {
    const AntisymmetricPair v(0.0, 0.0, 2.5);  // v^{12} = 2.5
    EXPECT_EQ(v(0, 1), 2.5);
    EXPECT_EQ(v(1, 0), -2.5);
    const AxisAngleVector d = dualize(v);
    EXPECT_EQ(d.components(), Eigen::Vector3d(0, 0, 2.5));
}

TEST(Dual, Zero) {
    EXPECT_EQ(dualize(AntisymmetricPair()).components(), Eigen::Vector3d::Zero());
    EXPECT_EQ(undualize(AxisAngleVector()).matrix(), Eigen::Matrix3d::Zero());
}

TEST(Dual, UndualizeThirdComponent) {
    const Eigen::Matrix3d m = undualize(AxisAngleVector(0, 0, 1)).matrix();
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(0, 1) = 1.0;
    expected(1, 0) = -1.0;
    EXPECT_EQ(m, expected);
}

TEST(Dual, RoundTripsAreExact) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int n = 0; n < 200; ++n) {
        const AntisymmetricPair v(u(rng), u(rng), u(rng));
        const AntisymmetricPair back = undualize(dualize(v));
        EXPECT_EQ(back.matrix(), v.matrix());
        const AxisAngleVector w(u(rng), u(rng), u(rng));
        EXPECT_EQ(dualize(undualize(w)).components(), w.components());
    }
}

TEST(Dual, MatrixIsAntisymmetric) {
    const AntisymmetricPair v(1.0, -2.0, 3.0);
    const Eigen::Matrix3d m = v.matrix();
    EXPECT_EQ(m + m.transpose(), Eigen::Matrix3d::Zero());
    // v^{ij} = v_k eps^{kij} is the same matrix as the rotation generator of v_k
    EXPECT_EQ(m, generator(dualize(v)));
}

TEST(RotateDirector, Identity) {
    const Director n = rotate_director(Director(1, 0, 0), AxisAngleVector());
    EXPECT_EQ(n.components(), Eigen::Vector3d(1, 0, 0));
}

TEST(RotateDirector, QuarterTurn) {
    const Director n = rotate_director(Director(1, 0, 0), AxisAngleVector(0, 0, kPi / 2));
    const Eigen::Vector3d expected = series_rotation({0, 0, kPi / 2}).transpose() * Eigen::Vector3d(1, 0, 0);
    EXPECT_LT((n.components() - Eigen::Vector3d(0, 1, 0)).norm(), 1e-15);
    EXPECT_LT((n.components() - expected).norm(), 1e-15);
}

TEST(RotateDirector, FullTurn) {
    const Director n = rotate_director(Director(1, 0, 0), AxisAngleVector(0, 0, kTwoPi));
    EXPECT_LT((n.components() - Eigen::Vector3d(1, 0, 0)).norm(), 1e-12);
}

TEST(RotateDirector, OutputIsUnit) {
    std::mt19937_64 rng(16);
    for (int k = 0; k < 200; ++k) {
        const Director n0(random_vector(rng, 1.0).normalized());
        const Director n = rotate_director(n0, AxisAngleVector(random_vector(rng, 50.0)));
        EXPECT_NEAR(n.components().norm(), 1.0, 1e-12);
    }
}

TEST(RotateDirector, RejectsNonUnit) {
    EXPECT_THROW(Director(2, 0, 0), std::invalid_argument);
    EXPECT_THROW(Director(1.0 + 1e-8, 0, 0), std::invalid_argument);
    EXPECT_NO_THROW(Director(1.0 + 1e-10, 0, 0));
}

TEST(AxisAngleVectorTest, RejectsNonFinite) {
    EXPECT_THROW(AxisAngleVector(std::nan(""), 0, 0), std::invalid_argument);
}
