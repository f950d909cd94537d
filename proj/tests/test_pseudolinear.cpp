#include "doctest.h"
#include "homlt/pseudolinear.hpp"

using namespace homlt;

TEST_CASE("standard metric layout") {
    const Mat g = make_standard_metric(2, 1);
    REQUIRE(g.rows() == 3);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 1) == 1.0);
    CHECK(g(2, 2) == -1.0);
    CHECK(g(0, 1) == 0.0);
    CHECK(is_diagonal_pm1(g));
    Mat h = g;
    h(0, 1) = 0.5;
    CHECK(!is_diagonal_pm1(h));
}

TEST_CASE("lower and raise invert each other") {
    const Mat g = make_standard_metric(3, 2);
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec v = rng.normal_vector(5);
        CHECK((raise(g, lower(g, v)) - v).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((lower(g, raise(g, v)) - v).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("raise_last / lower_last round trip") {
    const int d = 4;
    const Mat g = make_standard_metric(3, 1);
    const Mat ginv = g;  // diagonal +-1 is its own inverse
    Rng rng(5);
    Tensor4 T(d);
    for (double& v : T.data()) v = rng.normal();
    const Tensor4 back = lower_last(raise_last(T, ginv), g);
    double dev = 0.0;
    for (std::size_t i = 0; i < T.data().size(); ++i)
        dev = std::max(dev, std::abs(T.data()[i] - back.data()[i]));
    CHECK(dev < 1e-14);
}

TEST_CASE("contract12 is frame independent") {
    const int d = 4;
    const Mat g = make_standard_metric(3, 1);
    Rng rng(23);
    Tensor3 T(d);
    for (double& v : T.data()) v = rng.normal();
    const Vec direct = contract12(T, g);

    const Mat F = random_pseudo_orthonormal_frame(g, 77);
    // sum_r eps_r T(f_r, f_r, z) with eps_r = g(f_r, f_r)
    Vec framed = Vec::Zero(d);
    for (int r = 0; r < d; ++r) {
        const Vec f = F.col(r);
        const double eps_r = f.dot(g * f);
        for (int z = 0; z < d; ++z) {
            double acc = 0.0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) acc += f[a] * f[b] * T(a, b, z);
            framed[z] += eps_r * acc;
        }
    }
    CHECK((direct - framed).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random pseudo-orthonormal frame") {
    const Mat g = make_standard_metric(2, 2);
    const Mat F = random_pseudo_orthonormal_frame(g, 3);
    const Mat gram = F.transpose() * g * F;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(std::abs(std::abs(gram(i, j)) - 1.0) < 1e-10);
            else
                CHECK(std::abs(gram(i, j)) < 1e-10);
        }
    // signature preserved
    CHECK(std::abs(gram.trace() - g.trace()) < 1e-9);
}

TEST_CASE("random anisotropic vector avoids the light cone") {
    const Mat g = make_standard_metric(2, 2);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Vec v = random_anisotropic_vector(g, seed);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        CHECK(std::abs(v.dot(g * v)) >= 0.1);
    }
}
