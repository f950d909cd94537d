#include "doctest.h"
#include "homlt/linear_type.hpp"
#include "homlt/pseudolinear.hpp"

using namespace homlt;

namespace {

std::array<Vec, 3> zero3(int d) {
    return {Vec::Zero(d), Vec::Zero(d), Vec::Zero(d)};
}

}  // namespace

TEST_CASE("frozen entries of the two S builders") {
    {
        const ModelSpace M = make_model(Case::KahlerPseudo, 2, 0);
        Vec xi = Vec::Zero(4);
        xi[0] = 1.0;
        const Tensor3 S = build_S_kahler(M, xi, Vec::Zero(4));
        CHECK(S(1, 0, 1) == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(S(0, 1, 1) == doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        const ModelSpace M = make_model(Case::QuatPseudo, 2, 0);
        Vec xi = Vec::Zero(8);
        xi[0] = 1.0;
        const Tensor3 S = build_S_quat(M, xi, zero3(8));
        CHECK(S(1, 0, 1) == doctest::Approx(-2.0).epsilon(1e-14));
    }
}

TEST_CASE("class symmetries hold for every case and random anisotropic xi") {
    struct Cfg { Case cs; int n, s; };
    const Cfg cfgs[] = {{Case::KahlerPara, 2, 0},
                        {Case::KahlerPseudo, 3, 1},
                        {Case::QuatPara, 2, 0},
                        {Case::QuatPseudo, 2, 1}};
    for (const Cfg& c : cfgs) {
        const ModelSpace M = make_model(c.cs, c.n, c.s);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Vec xi = random_anisotropic_vector(M.g, seed);
            if (M.is_kahler()) {
                const Tensor3 S = build_S_kahler(M, xi, Vec::Zero(M.dim));
                CHECK(kahler_symmetry_residuals(S, M).worst() < 1e-10);
                CHECK(symmetry1_residual(S) < 1e-12);
            } else {
                const Tensor3 S = build_S_quat(M, xi, zero3(M.dim));
                CHECK(quat_symmetry_residuals(S, M).worst() < 1e-10);
                CHECK(symmetry1_residual(S) < 1e-12);
            }
        }
    }
}

TEST_CASE("antisymmetry detector has teeth") {
    const ModelSpace M = make_model(Case::KahlerPseudo, 2, 0);
    Vec xi = Vec::Zero(4);
    xi[0] = 1.0;
    Tensor3 S = build_S_kahler(M, xi, Vec::Zero(4));
    S(0, 1, 1) += 0.01;
    CHECK(symmetry1_residual(S) > 1e-3);
}

TEST_CASE("degeneracy classification") {
    const ModelSpace M = make_model(Case::KahlerPseudo, 2, 1);
    Vec xi = Vec::Zero(4);
    xi[0] = 1.0;
    Vec null_xi = Vec::Zero(4);
    null_xi[0] = null_xi[2] = 1.0;  // g = diag(1,1,-1,-1), so this is isotropic
    Vec z = Vec::Zero(4);
    z[1] = 0.3;

    CHECK(classify_degeneracy(M, xi, {}) == Degeneracy::NonDegenerate);
    CHECK(classify_degeneracy(M, null_xi, {z}) == Degeneracy::Degenerate);
    CHECK(classify_degeneracy(M, null_xi, {}) == Degeneracy::StronglyDegenerate);
    CHECK(classify_degeneracy(M, null_xi, {Vec::Zero(4)}) ==
          Degeneracy::StronglyDegenerate);

    // the quaternionic family has no strong subclass
    const ModelSpace Mq = make_model(Case::QuatPseudo, 2, 1);
    Vec nq = Vec::Zero(8);
    nq[0] = nq[4] = 1.0;
    CHECK(classify_degeneracy(Mq, nq, {}) == Degeneracy::Degenerate);

    CHECK(std::string(degeneracy_name(Degeneracy::NonDegenerate)) == "nondegenerate");
    CHECK(std::string(degeneracy_name(Degeneracy::StronglyDegenerate)) ==
          "strongly_degenerate");
}

TEST_CASE("operator form round trips through the metric") {
    const ModelSpace M = make_model(Case::QuatPara, 2, 0);
    const Vec xi = random_anisotropic_vector(M.g, 2);
    const Tensor3 S03 = build_S_quat(M, xi, zero3(8));
    const Tensor3 S12 = to_operator(S03, M.ginv);
    double dev = 0.0;
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y)
            for (int z = 0; z < 8; ++z) {
                double acc = 0.0;
                for (int k = 0; k < 8; ++k) acc += S12(x, y, k) * M.g(k, z);
                dev = std::max(dev, std::abs(acc - S03(x, y, z)));
            }
    CHECK(dev < 1e-13);
}

TEST_CASE("sp(1) commutation of the quaternionic S") {
    for (Case cs : {Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Vec xi = random_anisotropic_vector(M.g, 5);
        const Tensor3 S12 = to_operator(build_S_quat(M, xi, zero3(8)), M.ginv);
        CHECK(sp1_part_norm(M, S12) < 1e-10);

        // control: J_1 itself anticommutes with J_2, so inserting it as an
        // "S_X" produces a visible sp(1) component
        Tensor3 fake(8);
        for (int y = 0; y < 8; ++y)
            for (int k = 0; k < 8; ++k) fake(0, y, k) = M.J[1](k, y);
        double res = 0.0;
        const Vec e0 = Vec::Unit(8, 0);
        const Eigen::Matrix3d co = sp1_component(M, fake, e0, &res);
        CHECK(co.cwiseAbs().maxCoeff() > 0.5);
    }
}

TEST_CASE("class membership of the quaternionic S and the pure classes") {
    const ModelSpace M = make_model(Case::QuatPseudo, 2, 0);
    const Vec xi = random_anisotropic_vector(M.g, 3);
    const Tensor3 S = build_S_quat(M, xi, zero3(8));
    const QKMembership mem = qk_class_membership(S, M);
    CHECK(mem.flag_class3);
    CHECK(mem.res_class3 < 1e-10);
    CHECK(mem.res_class123 < 1e-10);
    CHECK(mem.c12_norm > 0.1);
    // the class-3 one-form of S is the metric dual of xi
    const Vec theta = M.g * xi;
    CHECK((mem.theta_class3 - theta).cwiseAbs().maxCoeff() < 1e-9);

    Rng rng(8);
    const Vec th = rng.normal_vector(8);
    const QKMembership m1 = qk_class_membership(build_class1(M, th), M);
    CHECK(m1.flag_class1);
    CHECK(m1.res_class1 < 1e-10);
    const QKMembership m3 = qk_class_membership(build_class3(M, th), M);
    CHECK(m3.flag_class3);
    CHECK((m3.theta_class3 - th).cwiseAbs().maxCoeff() < 1e-9);
}
