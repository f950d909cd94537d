#include "doctest.h"
#include "homlt/nomizu.hpp"
#include "homlt/pseudolinear.hpp"

using namespace homlt;

namespace {

std::array<Vec, 3> zero3(int d) {
    return {Vec::Zero(d), Vec::Zero(d), Vec::Zero(d)};
}

Tensor3 standard_S(const ModelSpace& M, const Vec& xi) {
    const Tensor3 S03 = M.is_kahler() ? build_S_kahler(M, xi, Vec::Zero(M.dim))
                                      : build_S_quat(M, xi, zero3(M.dim));
    return to_operator(S03, M.ginv);
}

// Rt applied to a vector triple: (Rt_{XY} Z)^k
Vec apply_rt(const Tensor4& Rt, const Vec& X, const Vec& Y, const Vec& Z) {
    const int d = Rt.dim();
    Vec out = Vec::Zero(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const double w = X[a] * Y[b];
            if (w == 0.0) continue;
            for (int c = 0; c < d; ++c) {
                if (Z[c] == 0.0) continue;
                for (int k = 0; k < d; ++k) out[k] += w * Z[c] * Rt(a, b, c, k);
            }
        }
    return out;
}

}  // namespace

TEST_CASE("reduced curvature kills xi and acts by the structure maps on the perp") {
    for (Case cs : {Case::KahlerPara, Case::KahlerPseudo, Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, is_kahler_case(cs) ? 3 : 2, 0);
        const Vec xi = Vec::Unit(M.dim, 0);
        const double gxx = xi.dot(M.g * xi);
        const Tensor4 Rt = rt_operator(M, xi, standard_S(M, xi));

        double kills = 0.0;
        for (int a = 0; a < M.dim; ++a)
            for (int b = 0; b < M.dim; ++b)
                for (int k = 0; k < M.dim; ++k) {
                    double acc = 0.0;
                    for (int c = 0; c < M.dim; ++c) acc += Rt(a, b, c, k) * xi[c];
                    kills = std::max(kills, std::abs(acc));
                }
        CHECK(kills < 1e-10);

        if (M.is_kahler()) {
            // X, Y = JX, Z perpendicular to span{xi, Jxi}
            const int base = 2;  // first perp coordinate pair
            const Vec X = Vec::Unit(M.dim, base);
            const Vec Y = M.J[0] * X;
            const Vec Z = X;
            const Vec got = apply_rt(Rt, X, Y, Z);
            const Vec want =
                -2.0 * M.eps * X.dot(M.g * (M.J[0] * Y)) * gxx * (M.J[0] * Z);
            CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("holonomy span has the family dimension and matches the generators") {
    for (Case cs : {Case::KahlerPara, Case::KahlerPseudo, Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Vec xi = random_anisotropic_vector(M.g, 6);
        const Tensor4 Rt = rt_operator(M, xi, standard_S(M, xi));
        const std::vector<Mat> span = holonomy_span(Rt);
        CHECK(static_cast<int>(span.size()) == (M.is_kahler() ? 1 : 3));
        CHECK(span_match_residual(span, canonical_holonomy(M, xi)) < 1e-9);
    }
}

TEST_CASE("standard algebra: layout, bilinear form, closure, Jacobi") {
    const ModelSpace M = make_model(Case::QuatPara, 2, 0);
    const Vec xi = random_anisotropic_vector(M.g, 3);
    const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
    CHECK(alg.nm == 8);
    CHECK(alg.nh == 3);
    CHECK(alg.N == 11);
    CHECK(alg.labels[0] == "e0");
    CHECK(alg.labels[8] == "hol1");
    CHECK(alg.parts[0] == 'm');
    CHECK(alg.parts[10] == 'h');
    CHECK((alg.gt.topLeftCorner(8, 8) - M.g).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(alg.gt.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(alg.expand_residual < 1e-12);
    CHECK(jacobi_residual(alg.c) < 1e-10);

    // antisymmetry of the table
    double asym = 0.0;
    for (int i = 0; i < alg.N; ++i)
        for (int j = 0; j < alg.N; ++j)
            for (int k = 0; k < alg.N; ++k)
                asym = std::max(asym, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));
    CHECK(asym < 1e-12);
}

TEST_CASE("Jacobi residual detects a corrupted table") {
    const ModelSpace M = make_model(Case::KahlerPseudo, 2, 0);
    const Vec xi = Vec::Unit(4, 0);
    NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
    Tensor3 bad = alg.c;
    bad(0, 1, 2) += 0.01;
    bad(1, 0, 2) -= 0.01;
    CHECK(jacobi_residual(bad) > 1e-4);
}

TEST_CASE("Jacobi identity across sizes and seeds") {
    struct Cfg { Case cs; int n; };
    const Cfg cfgs[] = {{Case::KahlerPara, 4}, {Case::KahlerPseudo, 5}, {Case::QuatPseudo, 3}};
    for (const Cfg& c : cfgs) {
        const ModelSpace M = make_model(c.cs, c.n, 0);
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const Vec xi = random_anisotropic_vector(M.g, seed);
            const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
            CHECK(jacobi_residual(alg.c) < 1e-10);
        }
    }
}

TEST_CASE("closed-form bracket tables hold in the adapted frame") {
    struct Cfg { Case cs; int n, s; };
    const Cfg cfgs[] = {{Case::KahlerPara, 3, 0},
                        {Case::KahlerPseudo, 3, 1},
                        {Case::QuatPara, 2, 0},
                        {Case::QuatPseudo, 2, 1}};
    for (const Cfg& c : cfgs) {
        const ModelSpace M = make_model(c.cs, c.n, c.s);
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const Vec xi = random_anisotropic_vector(M.g, seed);
            const auto res = reference_bracket_residuals(M, xi, standard_S(M, xi));
            if (M.is_kahler()) {
                REQUIRE(res.count("xi,Jxi") == 1);
                REQUIRE(res.count("Z1,Z2") == 1);
            } else {
                REQUIRE(res.count("Jaxi,Jbxi") == 1);
                REQUIRE(res.count("Jaxi,Z") == 1);
            }
            for (const auto& [key, v] : res) {
                INFO(case_name(c.cs), " ", key, " seed ", seed, " residual ", v);
                CHECK(v < 1e-10);
            }
        }
    }
}

TEST_CASE("adapted frame is metric-orthogonal with unit lines") {
    const ModelSpace M = make_model(Case::QuatPseudo, 3, 1);
    const Vec xi = random_anisotropic_vector(M.g, 4);
    const AdaptedFrame af = adapted_frame(M, xi);
    REQUIRE(af.jxi.size() == 3);
    REQUIRE(af.lines.size() == 2);
    std::vector<Vec> all = {af.xi};
    for (const Vec& v : af.jxi) all.push_back(v);
    for (const LineFrame& ln : af.lines) {
        CHECK(std::abs(std::abs(ln.fr[0].dot(M.g * ln.fr[0])) - 1.0) < 1e-9);
        CHECK(std::abs(ln.sign) == 1.0);
        for (const Vec& v : ln.fr) all.push_back(v);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK(std::abs(all[i].dot(M.g * all[j])) < 1e-9);
}

TEST_CASE("adapted algebra uses informative labels") {
    const ModelSpace M = make_model(Case::KahlerPara, 2, 0);
    const Vec xi = random_anisotropic_vector(M.g, 7);
    const NomizuAlgebra alg =
        adapted_nomizu(M, xi, standard_S(M, xi), adapted_frame(M, xi));
    CHECK(alg.labels[0] == "xi");
    CHECK(alg.labels[1] == "Jxi");
    CHECK(alg.labels[4] == "hol1");
    CHECK(jacobi_residual(alg.c) < 1e-10);
    CHECK(alg.expand_residual < 1e-12);

    const ModelSpace Mq = make_model(Case::QuatPseudo, 2, 0);
    const Vec xq = random_anisotropic_vector(Mq.g, 7);
    const NomizuAlgebra algq =
        adapted_nomizu(Mq, xq, standard_S(Mq, xq), adapted_frame(Mq, xq));
    CHECK(algq.labels[0] == "xi");
    CHECK(algq.labels[1] == "J1xi");
    CHECK(algq.labels[3] == "J3xi");
}
