#pragma once

#include "homlt/common.hpp"

namespace homlt {

enum class Case { KahlerPara, KahlerPseudo, QuatPara, QuatPseudo };

const char* case_name(Case cs);
Case parse_case(const std::string& name);

inline bool is_kahler_case(Case cs) {
    return cs == Case::KahlerPara || cs == Case::KahlerPseudo;
}

// Flat model space: metric + compatible structure J (one map for the complex
// family, a triple for the quaternionic one) on R^dim, plus the data needed to
// rebuild it.
struct ModelSpace {
    Case cs = Case::KahlerPseudo;
    int n = 0, s = 0, dim = 0;
    double eps = 0.0;                         // complex family: J^2 = eps
    std::array<double, 3> eps3{{0, 0, 0}};    // quaternionic family: J_a^2 = eps3[a]
    Mat g, ginv;
    std::vector<Mat> J;

    bool is_kahler() const { return cs == Case::KahlerPara || cs == Case::KahlerPseudo; }
    bool is_quat() const { return !is_kahler(); }
    int num_J() const { return static_cast<int>(J.size()); }
    double eps_a(int a) const { return is_kahler() ? eps : eps3[static_cast<std::size_t>(a)]; }
};

// eps = -1: n blocks diag(sigma_b, sigma_b) with the last s blocks negative and
// J the standard rotation per block.  eps = +1: n blocks diag(+1, -1) with J
// the swap per block (signature (n, n)).
ModelSpace make_standard_eps_complex(int n, int s, double eps);

// Right-multiplication realization of (i, j, k) on n hypercomplex slots;
// e2 = -1 quaternionic (signature (4(n-s), 4s)), e2 = +1 para (signature (2n, 2n)).
ModelSpace make_standard_eps_quat(int n, int s, double e2);

ModelSpace make_model(Case cs, int n, int s);

// Omega = sum_a (-eps_a) omega_a ^ omega_a with omega_a = g(., J_a .),
// fully antisymmetrized (0,4) tensor.  Quaternionic family only.
Tensor4 canonical_four_form(const ModelSpace& M);

struct StructureReport {
    std::vector<std::pair<std::string, double>> residuals;
    double worst = 0.0;
    bool pass(double tol = 1e-10) const { return worst < tol; }
};

// Max-norm residual of every defining invariant; reports, never throws.
StructureReport verify_structure(const ModelSpace& M);

// Matrix exponential by scaling-and-squaring (Taylor core); desk-scale sizes.
Mat expm(const Mat& A);

}  // namespace homlt
