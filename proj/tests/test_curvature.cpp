#include "doctest.h"
#include "homlt/curvature.hpp"
#include "homlt/pseudolinear.hpp"

using namespace homlt;

namespace {

std::array<Vec, 3> zero3(int d) {
    return {Vec::Zero(d), Vec::Zero(d), Vec::Zero(d)};
}

double tensor4_max_diff(const Tensor4& a, const Tensor4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace

TEST_CASE("frozen entries of the display tensors") {
    {
        const ModelSpace M = make_model(Case::KahlerPseudo, 2, 0);
        const Tensor4 R0 = curvature_model(M);
        CHECK(R0(0, 1, 0, 1) == doctest::Approx(-4.0).epsilon(1e-14));
        CHECK(R0(0, 1, 2, 3) == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(R0(0, 2, 0, 2) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    {
        const ModelSpace M = make_model(Case::QuatPseudo, 2, 0);
        const Tensor4 R0 = curvature_model(M);
        CHECK(R0(0, 1, 0, 1) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(R0(0, 4, 0, 4) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(R0(0, 1, 2, 3) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("display tensors satisfy all curvature symmetries") {
    for (Case cs : {Case::KahlerPara, Case::KahlerPseudo, Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        CHECK(curvature_symmetry_residuals(curvature_model(M)).worst() < 1e-12);
    }
}

TEST_CASE("Ricci and scalar of the display tensors") {
    for (int n : {2, 3}) {
        for (Case cs : {Case::KahlerPara, Case::KahlerPseudo}) {
            const ModelSpace M = make_model(cs, n, 0);
            const Mat r = ricci(curvature_model(M), M.g);
            CHECK((r + (2.0 * n + 2.0) * M.g).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    for (Case cs : {Case::QuatPara, Case::QuatPseudo}) {
        const int n = 2;
        const ModelSpace M = make_model(cs, n, 0);
        const Tensor4 R0 = curvature_model(M);
        const Mat r = ricci(R0, M.g);
        CHECK((r - 4.0 * (n + 2.0) * M.g).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(scalar_curvature(R0, M.g) ==
              doctest::Approx(16.0 * n * (n + 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("quaternionic decomposition recovers the scale") {
    const ModelSpace M = make_model(Case::QuatPseudo, 2, 1);
    const Tensor4 R0 = curvature_model(M);
    const QuatCurvatureDecomp d0 = quat_curvature_decomp(R0, M);
    CHECK(d0.nu_q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d0.sp_part.max_abs() < 1e-12);

    const double gxx = -0.7;
    const QuatCurvatureDecomp d1 = quat_curvature_decomp(scaled_curvature(M, gxx), M);
    CHECK(d1.nu_q == doctest::Approx(-gxx).epsilon(1e-12));
    CHECK(d1.sp_part.max_abs() < 1e-12);
}

TEST_CASE("canonical generators are metric-skew and counted per family") {
    for (Case cs : {Case::KahlerPara, Case::KahlerPseudo, Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Vec xi = random_anisotropic_vector(M.g, 1);
        const auto gens = canonical_holonomy(M, xi);
        CHECK(static_cast<int>(gens.size()) == (M.is_kahler() ? 1 : 3));
        for (const Mat& E : gens) {
            const Mat gE = M.g * E;
            CHECK((gE + gE.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("operator curvature closes over S and the generators") {
    for (Case cs : {Case::KahlerPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Vec xi = random_anisotropic_vector(M.g, 4);
        const double gxx = xi.dot(M.g * xi);
        Tensor3 S03 = M.is_kahler() ? build_S_kahler(M, xi, Vec::Zero(M.dim))
                                    : build_S_quat(M, xi, zero3(M.dim));
        const Tensor3 S12 = to_operator(S03, M.ginv);
        CHECK(tensor4_max_diff(reconstructed_curvature_op(M, xi, S12),
                               curvature_operator(M, gxx)) < 1e-10);
    }
}

TEST_CASE("second Bianchi identity for the homogeneous connection") {
    const ModelSpace M = make_model(Case::KahlerPseudo, 2, 1);
    const Vec xi = random_anisotropic_vector(M.g, 9);
    const double gxx = xi.dot(M.g * xi);
    const Tensor3 S12 = to_operator(build_S_kahler(M, xi, Vec::Zero(4)), M.ginv);
    const Tensor5 nR = covariant_derivative_R(scaled_curvature(M, gxx), S12);
    CHECK(second_bianchi_residual(nR) < 1e-10);
}

TEST_CASE("complex-family verification sweep passes at several sizes") {
    for (int n : {2, 3}) {
        for (Case cs : {Case::KahlerPara, Case::KahlerPseudo}) {
            const ModelSpace M = make_model(cs, n, 0);
            const Vec xi = random_anisotropic_vector(M.g, 31 + static_cast<std::uint64_t>(n));
            const TheoremReport rep = theorem_kahler_check(M, xi, Vec::Zero(M.dim));
            for (const CheckItem& c : rep.checks) {
                INFO(c.name, " residual ", c.residual);
                CHECK(c.pass);
            }
            CHECK(rep.all_pass);
        }
    }
}

TEST_CASE("complex-family sweep detects a nonzero zeta") {
    const ModelSpace M = make_model(Case::KahlerPseudo, 2, 0);
    Vec xi = Vec::Zero(4);
    xi[0] = 1.0;
    Vec zeta = Vec::Zero(4);
    zeta[2] = 0.5;
    const TheoremReport rep = theorem_kahler_check(M, xi, zeta);
    CHECK(!rep.all_pass);
    CHECK(rep.residual("zeta_obstruction") > 1e-3);

    // the pointwise obstruction form is identically zero only when zeta is
    const Vec ob0 = kahler_zeta_obstruction(M, xi, Vec::Zero(4), Vec::Unit(4, 1),
                                            Vec::Unit(4, 2));
    CHECK(ob0.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("quaternionic verification sweep passes for both structure kinds") {
    for (Case cs : {Case::QuatPara, Case::QuatPseudo}) {
        const ModelSpace M = make_model(cs, 2, 0);
        const Vec xi = random_anisotropic_vector(M.g, 12);
        const TheoremReport rep = theorem_quat_check(M, xi, zero3(8));
        for (const CheckItem& c : rep.checks) {
            INFO(c.name, " residual ", c.residual);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass);
        CHECK(rep.residual("sp_part") <= 1e-10);
        CHECK(rep.residual("reduced_scalar") <= 1e-8);
    }
}

TEST_CASE("quaternionic sweep detects a nonzero zeta") {
    const ModelSpace M = make_model(Case::QuatPseudo, 2, 0);
    Vec xi = Vec::Zero(8);
    xi[1] = 1.0;
    auto zeta = zero3(8);
    zeta[0][5] = 1.0;
    const TheoremReport rep = theorem_quat_check(M, xi, zeta);
    CHECK(!rep.all_pass);
    CHECK(rep.residual("zeta_obstruction") > 1e-3);
}
