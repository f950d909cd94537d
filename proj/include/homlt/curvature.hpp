#pragma once

#include "homlt/linear_type.hpp"

#include <map>

namespace homlt {

// Unit-curvature display tensors R0 (0,4) of the two model families.
// Complex family:
//   R0_XYZW = g(Y,Z)g(X,W) - g(X,Z)g(Y,W) + e g(X,JZ)g(Y,JW)
//             - e g(X,JW)g(Y,JZ) + 2e g(X,JY)g(Z,JW)
// Quaternionic family:
//   R0_XYZW = g(X,Z)g(Y,W) - g(Y,Z)g(X,W)
//             - sum_a e_a { g(J_aX,Z)g(J_aY,W) - g(J_aY,Z)g(J_aX,W)
//                           + 2 g(X,J_aY)g(Z,J_aW) }
Tensor4 curvature_model(const ModelSpace& M);

// r(Y,U) = sum_ab g^{ab} R(a,Y,b,U)  (signed trace over slots 1 and 3)
Mat ricci(const Tensor4& R04, const Mat& g);
double scalar_curvature(const Tensor4& R04, const Mat& g);

// (c/4) times the family's display tensor; the constant-curvature model of the
// space carrying the structure is c = -4 g(xi,xi).
Tensor4 constant_hol_model(double c, const ModelSpace& M);

// Index symmetries every curvature tensor here must satisfy.
struct CurvatureSymmetry {
    double antisym12 = 0.0, antisym34 = 0.0, pair_sym = 0.0, bianchi1 = 0.0;
    double worst() const {
        return std::max(std::max(antisym12, antisym34), std::max(pair_sym, bianchi1));
    }
};
CurvatureSymmetry curvature_symmetry_residuals(const Tensor4& R04);

// R = nu_q R0 + sp_part with nu_q = scalar/(16 n (n+2)) (quaternionic family).
struct QuatCurvatureDecomp {
    double nu_q = 0.0;
    Tensor4 sp_part;
};
QuatCurvatureDecomp quat_curvature_decomp(const Tensor4& R04, const ModelSpace& M);

// (0,4) curvature of the space carrying the structure: R = -g(xi,xi) * R0.
Tensor4 scaled_curvature(const ModelSpace& M, double gxx);

// Curvature as an operator-valued tensor (x,y,z,k): (R_{e_x e_y} e_z)^k.
// The raise convention differs per family; both satisfy
//   R(xi,Y)xi = -g(xi,xi)^2 Y                       for Y perp to the xi-span,
//   R(X,Y)xi  = -2 sum_a e_a g(xi,xi) g(X,J_aY) J_a xi   for X,Y perp.
Tensor4 curvature_operator(const ModelSpace& M, double gxx);

// R^S_{XY}Z = S_{S_XY - S_YX} Z - S_X S_Y Z + S_Y S_X Z  (operator-valued).
Tensor4 rs_operator(const Tensor3& S12);

// (nabla_X R)(Y,Z,W,U) = -R(S_XY,Z,W,U) - R(Y,S_XZ,W,U) - ... (0,5).
Tensor5 covariant_derivative_R(const Tensor4& R04, const Tensor3& S12);
double second_bianchi_residual(const Tensor5& nR);

// Canonical curvature-commutation generators, built geometrically:
// complex family: J compressed to the g-orthogonal complement of span{xi,Jxi};
// quaternionic family: J_a on the complement of the quaternionic span of xi,
// and the quaternion commutator action q -> [q, u_a] on that span.
std::vector<Mat> canonical_holonomy(const ModelSpace& M, const Vec& xi);

// Rebuilds the curvature operator from S and the canonical generators via
//   Rt_{XY} = sum_a (-2 e_a g(xi,xi) g(X,J_aY)) E_a,   R = Rt + R^S,
// without touching the display tensors; used for the closure check A = 0.
Tensor4 reconstructed_curvature_op(const ModelSpace& M, const Vec& xi,
                                   const Tensor3& S12);

struct CheckItem {
    std::string name;
    std::string anchor;  // what the residual is measured against
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct TheoremReport {
    std::vector<CheckItem> checks;
    bool all_pass = true;

    // invert = true flips the pass sense: the check passes when the residual
    // EXCEEDS tol (used for injected negative controls that must not vanish).
    void add(const std::string& name, const std::string& anchor, double residual,
             double tol, bool invert = false);
    double residual(const std::string& name) const;
};

// Complex-family verification sweep: Einstein property, the five derived
// curvature identities, class membership of S, closure A = R + g(xi,xi) R0,
// second Bianchi for nabla R, and the zeta obstruction when zeta != 0.
TheoremReport theorem_kahler_check(const ModelSpace& M, const Vec& xi, const Vec& zeta,
                                   const std::map<std::string, double>& tol_overrides = {});

// Quaternionic-family sweep: Einstein property, class-3 membership, vanishing
// sp(1) part, reduced scalar curvature vs -g(xi,xi), Rt-kills-xi, closure,
// second Bianchi, and the zeta obstruction when any zeta_a != 0.
TheoremReport theorem_quat_check(const ModelSpace& M, const Vec& xi,
                                 const std::array<Vec, 3>& zeta,
                                 const std::map<std::string, double>& tol_overrides = {});

// Obstruction 2-form value Theta^zeta_{X,Y} xi of the complex family; vanishes
// identically iff zeta does.
Vec kahler_zeta_obstruction(const ModelSpace& M, const Vec& xi, const Vec& zeta,
                            const Vec& X, const Vec& Y);

}  // namespace homlt
