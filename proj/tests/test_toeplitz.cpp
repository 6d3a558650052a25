#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crcep/line.hpp"
#include "crcep/smoother.hpp"
#include "crcep/spectral_factor.hpp"
#include "crcep/toeplitz.hpp"
#include "helpers.hpp"

using namespace crcep;

TEST_CASE("toeplitz positive definiteness") {
    Vec c(2);
    c << 1.0, 0.5;
    CHECK(toeplitz_pd(c));
    auto rep = toeplitz_pd_report(c);
    CHECK(rep.positive);
    CHECK(rep.min_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));

    c << 1.0, 1.0;
    CHECK_FALSE(toeplitz_pd(c));
    CHECK(toeplitz_pd_report(c).min_eigenvalue ==
          doctest::Approx(0.0).epsilon(1e-12));

    std::vector<Mat> C{Mat::Identity(2, 2), Mat::Zero(2, 2)};
    CHECK(toeplitz_pd(C));
    CHECK(toeplitz_pd_report(C).min_eigenvalue == doctest::Approx(1.0));
}

TEST_CASE("levinson on AR(1) data") {
    Vec c(2);
    c << 1.0, 0.5;
    auto res = levinson(c);
    CHECK(res.a[0] == doctest::Approx(1.0));
    CHECK(res.a[1] == doctest::Approx(-0.5));
    CHECK(res.sigma2 == doctest::Approx(0.75));

    c << 1.0, 0.0;
    res = levinson(c);
    CHECK(res.a[1] == doctest::Approx(0.0));
    CHECK(res.sigma2 == doctest::Approx(1.0));

    Vec c2(3);
    c2 << 1.0, 0.5, 0.25;
    res = levinson(c2);
    CHECK(res.a[0] == doctest::Approx(1.0));
    CHECK(res.a[1] == doctest::Approx(-0.5));
    CHECK(res.a[2] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(res.sigma2 == doctest::Approx(0.75));
    CHECK(res.reflection[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("levinson rejects non-PD data") {
    CHECK_THROWS_AS(levinson((Vec(2) << 1.0, 1.0).finished()), DataError);
    CHECK_THROWS_AS(levinson((Vec(2) << -1.0, 0.0).finished()), DataError);
}

TEST_CASE("levinson equals the direct Yule-Walker solve") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        // generate PD data as line lags of a random AR model
        const Vec a = testutil::random_schur(rng, n, 0.8);
        const Vec b = Vec::Unit(n + 1, 0);
        const Vec c = line_lags(a, b, 1.0, n);
        REQUIRE(toeplitz_pd(c));
        auto res = levinson(c);
        CHECK(is_schur(res.a));
        for (double k : res.reflection) CHECK(std::abs(k) < 1.0);

        // T_n a = sigma2 e_1
        const Vec resid = toeplitz_from_lags(c) * res.a -
                          res.sigma2 * Vec::Unit(n + 1, 0);
        CHECK(resid.cwiseAbs().maxCoeff() < 1e-12 * c[0]);
    }
}

TEST_CASE("levinson_whittle white and decoupled examples") {
    std::vector<Mat> C{Mat::Identity(2, 2), Mat::Zero(2, 2)};
    auto res = levinson_whittle(C);
    CHECK((res.A[0] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(res.A[1].cwiseAbs().maxCoeff() < 1e-14);
    CHECK((res.D - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    C[1] = 0.5 * Mat::Identity(2, 2);
    res = levinson_whittle(C);
    CHECK((res.A[1] + 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((res.D - 0.75 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("levinson_whittle block Yule-Walker residual on the state model") {
    StateSpaceModel ss;
    ss.A_ss = (Mat(2, 2) << 0.9, -0.3, 0.3, 0.9).finished();
    ss.W = Mat::Identity(2, 2);
    ss.C = Mat::Identity(2, 2);
    ss.R = Mat::Identity(2, 2);
    const auto C = lyapunov_lags(ss, 1);
    const auto res = levinson_whittle(C);

    // [A_0 .. A_n] T_n = [D 0 .. 0]
    Mat row(2, 4);
    row << res.A[0], res.A[1];
    Mat expect = Mat::Zero(2, 4);
    expect.block(0, 0, 2, 2) = res.D;
    CHECK((row * block_toeplitz(C) - expect).cwiseAbs().maxCoeff() <
          1e-10 * C[0].cwiseAbs().maxCoeff());
}

TEST_CASE("levinson_whittle recovers a known AR truth from its line lags") {
    // decoupled but rotated AR(1): A1 = -0.5 R(theta), stable
    const double th = 0.4;
    Mat rot(2, 2);
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    std::vector<Mat> A_true{Mat::Identity(2, 2), -0.5 * rot};
    const Mat D_true = Mat::Identity(2, 2);

    // line lags by fine grid quadrature of [A(1/z)' A(z)]^{-1}
    const int M = 1 << 12;
    std::vector<Mat> C(2, Mat::Zero(2, 2));
    for (int u = 0; u < M; ++u) {
        const double theta = 2.0 * M_PI * u / M;
        const cd z = std::polar(1.0, theta);
        CMat Az = A_true[0].cast<cd>() + A_true[1].cast<cd>() / z;
        CMat Q = Az.adjoint() * Az;
        CMat Phi = Q.inverse();
        C[0] += (Phi / double(M)).real();
        C[1] += ((Phi * z) / double(M)).real();
    }
    auto res = levinson_whittle(C);
    CHECK((res.A[1] - A_true[1]).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((res.D - D_true).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("block toeplitz layout") {
    std::vector<Mat> C{(Mat(1, 1) << 2.0).finished(),
                       (Mat(1, 1) << 0.7).finished()};
    const Mat T = block_toeplitz(C);
    CHECK(T(0, 1) == doctest::Approx(0.7));
    CHECK(T(1, 0) == doctest::Approx(0.7));
    CHECK(T(0, 0) == doctest::Approx(2.0));
}
