#include "doctest.h"
#include "homlt/structures.hpp"

using namespace homlt;

namespace {

// Pullback of a (0,4) tensor along the linear map R, one index at a time.
Tensor4 pullback4(const Tensor4& T, const Mat& R) {
    const int d = T.dim();
    Tensor4 cur = T;
    for (int slot = 0; slot < 4; ++slot) {
        Tensor4 next(d);
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int u = 0; u < d; ++u) {
                        double acc = 0.0;
                        for (int a = 0; a < d; ++a) {
                            const double w = (slot == 0)   ? cur(a, y, z, u) * R(a, x)
                                             : (slot == 1) ? cur(x, a, z, u) * R(a, y)
                                             : (slot == 2) ? cur(x, y, a, u) * R(a, z)
                                                           : cur(x, y, z, a) * R(a, u);
                            acc += w;
                        }
                        next(x, y, z, u) = acc;
                    }
        cur = next;
    }
    return cur;
}

}  // namespace

TEST_CASE("case names round trip") {
    for (Case cs : {Case::KahlerPara, Case::KahlerPseudo, Case::QuatPara, Case::QuatPseudo})
        CHECK(parse_case(case_name(cs)) == cs);
    CHECK(std::string(case_name(Case::QuatPseudo)) == "quat-pseudo");
    CHECK_THROWS_AS(parse_case("bogus"), std::invalid_argument);
    CHECK(is_kahler_case(Case::KahlerPara));
    CHECK(!is_kahler_case(Case::QuatPara));
}

TEST_CASE("model invariants across the four cases") {
    struct Cfg { Case cs; int n, s, dim, nj; };
    const Cfg cfgs[] = {{Case::KahlerPara, 3, 0, 6, 1},
                        {Case::KahlerPseudo, 3, 1, 6, 1},
                        {Case::QuatPara, 2, 0, 8, 3},
                        {Case::QuatPseudo, 2, 1, 8, 3}};
    for (const Cfg& c : cfgs) {
        const ModelSpace M = make_model(c.cs, c.n, c.s);
        CHECK(M.dim == c.dim);
        CHECK(M.num_J() == c.nj);
        CHECK(verify_structure(M).worst < 1e-12);
        for (int a = 0; a < M.num_J(); ++a) {
            const Mat& J = M.J[static_cast<std::size_t>(a)];
            // compatibility: g(J_a X, J_a Y) = -eps_a g(X, Y)
            CHECK((J.transpose() * M.g * J + M.eps_a(a) * M.g).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
}

TEST_CASE("metric layouts") {
    const ModelSpace Mk = make_model(Case::KahlerPseudo, 2, 1);
    Vec want(4);
    want << 1, 1, -1, -1;
    CHECK((Mk.g.diagonal() - want).cwiseAbs().maxCoeff() == 0.0);

    const ModelSpace Mp = make_model(Case::KahlerPara, 2, 0);
    want << 1, -1, 1, -1;
    CHECK((Mp.g.diagonal() - want).cwiseAbs().maxCoeff() == 0.0);

    const ModelSpace Mq = make_model(Case::QuatPseudo, 2, 1);
    CHECK(Mq.g.diagonal().head(4).minCoeff() == 1.0);
    CHECK(Mq.g.diagonal().tail(4).maxCoeff() == -1.0);

    const ModelSpace Mqp = make_model(Case::QuatPara, 2, 0);
    Vec w8(8);
    w8 << 1, 1, -1, -1, 1, 1, -1, -1;
    CHECK((Mqp.g.diagonal() - w8).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quaternionic unit squares") {
    const ModelSpace Mq = make_model(Case::QuatPseudo, 2, 0);
    CHECK(Mq.eps3[0] == -1.0);
    CHECK(Mq.eps3[1] == -1.0);
    CHECK(Mq.eps3[2] == -1.0);
    const ModelSpace Mp = make_model(Case::QuatPara, 2, 0);
    CHECK(Mp.eps3[0] == -1.0);
    CHECK(Mp.eps3[1] == 1.0);
    CHECK(Mp.eps3[2] == 1.0);
    for (const ModelSpace* M : {&Mq, &Mp})
        CHECK((M->J[0] * M->J[1] - M->J[2]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("four-form is antisymmetric and rotation invariant") {
    for (Case cs : {Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Tensor4 Om = canonical_four_form(M);
        CHECK(Om.max_abs() > 1.0);
        // antisymmetry in a couple of transpositions
        double asym = 0.0;
        const int d = M.dim;
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int u = 0; u < d; ++u) {
                        asym = std::max(asym, std::abs(Om(x, y, z, u) + Om(y, x, z, u)));
                        asym = std::max(asym, std::abs(Om(x, y, z, u) + Om(x, y, u, z)));
                        asym = std::max(asym, std::abs(Om(x, y, z, u) - Om(z, u, x, y)));
                    }
        CHECK(asym < 1e-12);
        // invariance under the one-parameter rotations of each structure map
        for (int a = 0; a < 3; ++a) {
            const Mat R = expm(0.3 * M.J[static_cast<std::size_t>(a)]);
            const Tensor4 pulled = pullback4(Om, R);
            double dev = 0.0;
            for (std::size_t i = 0; i < pulled.data().size(); ++i)
                dev = std::max(dev, std::abs(pulled.data()[i] - Om.data()[i]));
            CHECK(dev < 1e-12);
        }
    }
    CHECK_THROWS_AS(canonical_four_form(make_model(Case::KahlerPara, 2, 0)),
                    std::invalid_argument);
}

TEST_CASE("constructor rejects bad arguments") {
    CHECK_THROWS_AS(make_model(Case::KahlerPseudo, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_model(Case::KahlerPseudo, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_model(Case::QuatPseudo, 2, -1), std::invalid_argument);
}
