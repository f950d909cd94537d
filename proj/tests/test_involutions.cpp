#include "doctest.h"
#include "homlt/involutions.hpp"
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

struct ChainCfg {
    Case cs;
    int n, s;
    std::vector<int> dims;  // algebra dimension after each step
};

const ChainCfg chain_cfgs[] = {{Case::KahlerPara, 2, 0, {2, 2}},
                               {Case::KahlerPseudo, 4, 1, {4, 2}},
                               {Case::QuatPara, 2, 0, {5, 2, 2}},
                               {Case::QuatPseudo, 3, 1, {7, 3, 2}}};

}  // namespace

TEST_CASE("which layouts carry the documented reduction") {
    CHECK(chain_supported(make_model(Case::KahlerPara, 2, 0), Vec::Unit(4, 0)));
    CHECK(chain_supported(make_model(Case::QuatPseudo, 3, 1), Vec::Unit(12, 0)));
    // definite layout: no Lorentzian plane anywhere
    CHECK(!chain_supported(make_model(Case::QuatPseudo, 2, 0), Vec::Unit(8, 1)));
    // split outside the realizable range
    CHECK(!chain_supported(make_model(Case::KahlerPseudo, 2, 1), Vec::Unit(4, 0)));
    // negative xi norm
    CHECK(!chain_supported(make_model(Case::KahlerPara, 2, 0), Vec::Unit(4, 1)));
}

TEST_CASE("standard involutions are isometric automorphisms") {
    for (const ChainCfg& cc : chain_cfgs) {
        const ModelSpace M = make_model(cc.cs, cc.n, cc.s);
        const Vec xi = Vec::Unit(M.dim, 0);
        const Realization rz = build_realization(M, xi);
        const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
        const InvolutionSet invs = standard_involutions(M, xi, rz);
        CHECK(invs.chain_names.size() == (M.is_kahler() ? 2u : 3u));
        for (const auto& [name, F] : invs.maps) {
            const InvolutionCheck ic = check_involution(alg, M, F);
            INFO(case_name(cc.cs), " ", name);
            CHECK(ic.inv2 < 1e-10);
            CHECK(ic.autom < 1e-10);
            CHECK(ic.block < 1e-10);
            CHECK(ic.isometry < 1e-10);
        }
    }
}

TEST_CASE("automorphism residual rejects a non-automorphism") {
    const ModelSpace M = make_model(Case::KahlerPara, 2, 0);
    const Vec xi = Vec::Unit(4, 0);
    const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
    Mat F = Mat::Identity(alg.N, alg.N);
    F(0, 0) = -1.0;  // flipping xi alone does not respect [xi, Z] = g(xi,xi) Z
    CHECK(automorphism_residual(alg.c, F) > 0.1);
    CHECK(involution_residual(F) < 1e-15);
}

TEST_CASE("involution chains terminate on the documented two-dimensional group") {
    for (const ChainCfg& cc : chain_cfgs) {
        const ModelSpace M = make_model(cc.cs, cc.n, cc.s);
        const Vec xi = Vec::Unit(M.dim, 0);
        const Realization rz = build_realization(M, xi);
        const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
        const InvolutionSet invs = standard_involutions(M, xi, rz);
        const ChainResult chain = involution_chain(alg, invs, invs.chain_names);

        REQUIRE(chain.steps.size() == cc.dims.size());
        for (std::size_t i = 0; i < chain.steps.size(); ++i) {
            const ChainStep& st = chain.steps[i];
            INFO(case_name(cc.cs), " step ", st.name);
            CHECK(st.dim_out == cc.dims[i]);
            CHECK(st.inv2 < 1e-10);
            CHECK(st.autom < 1e-10);
            CHECK(st.closure < 1e-10);
        }
        CHECK(chain.dim == 2);

        const TerminalK tk = terminal_K(chain.c, chain.gt);
        CHECK(tk.bracket_residual < 1e-10);
        CHECK(tk.gAA == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(tk.gVV == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(std::abs(tk.gAV) < 1e-10);
    }
}

TEST_CASE("chains from generic anisotropic xi still reach a Lorentzian plane") {
    const ChainCfg cc = chain_cfgs[3];
    const ModelSpace M = make_model(cc.cs, cc.n, cc.s);
    Vec xi;
    for (std::uint64_t seed = 2;; ++seed) {
        xi = random_anisotropic_vector(M.g, seed);
        if (xi.dot(M.g * xi) > 0.1) break;
    }
    const Realization rz = build_realization(M, xi);
    const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
    const InvolutionSet invs = standard_involutions(M, xi, rz);
    const ChainResult chain = involution_chain(alg, invs, invs.chain_names);
    CHECK(chain.dim == 2);
    const TerminalK tk = terminal_K(chain.c, chain.gt);
    CHECK(tk.bracket_residual < 1e-8);
    CHECK(tk.gAA > 0.0);
    CHECK(tk.gVV < 0.0);
    CHECK(std::abs(tk.gAV) < 1e-8);
}

TEST_CASE("fixed subalgebra of one involution is closed") {
    const ModelSpace M = make_model(Case::QuatPara, 2, 0);
    const Vec xi = Vec::Unit(8, 0);
    const Realization rz = build_realization(M, xi);
    const NomizuAlgebra alg = standard_nomizu(M, xi, standard_S(M, xi));
    const InvolutionSet invs = standard_involutions(M, xi, rz);
    const FixedSubalgebra fix =
        fixed_subalgebra(alg.c, alg.gt, invs.maps.at(invs.chain_names[0]));
    CHECK(fix.Q.cols() == 5);
    CHECK(fix.closure < 1e-10);
    CHECK(jacobi_residual(fix.c) < 1e-10);
}
