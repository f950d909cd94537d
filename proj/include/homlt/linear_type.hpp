#pragma once

#include "homlt/structures.hpp"

#include <optional>

namespace homlt {

// S_XYZ = g(X,Y)g(xi,Z) - g(xi,Y)g(X,Z) + eps g(X,JY)g(Jxi,Z)
//         - eps g(xi,JY)g(JX,Z) - 2 g(zeta,JX)g(JY,Z)
Tensor3 build_S_kahler(const ModelSpace& M, const Vec& xi, const Vec& zeta);

// S_XYZ = g(X,Y)g(xi,Z) - g(xi,Y)g(X,Z)
//         - sum_a eps_a { g(J_aY,xi)g(J_aX,Z) - g(X,J_aY)g(J_axi,Z) }
//         + sum_a g(X,zeta_a)g(J_aY,Z)
Tensor3 build_S_quat(const ModelSpace& M, const Vec& xi,
                     const std::array<Vec, 3>& zeta);

// (S_X Y)^k = sum_z S(X,Y,z) g^{zk}
Tensor3 to_operator(const Tensor3& S03, const Mat& ginv);

enum class Degeneracy { NonDegenerate, Degenerate, StronglyDegenerate };
const char* degeneracy_name(Degeneracy d);

// Nondegenerate iff |g(xi,xi)| > tol; degenerate otherwise; strongly degenerate
// additionally needs every zeta = 0 (complex family only; the quaternionic
// family has no strong subclass).
Degeneracy classify_degeneracy(const ModelSpace& M, const Vec& xi,
                               const std::vector<Vec>& zetas, double tol_deg = 1e-8);

// Least-squares fit of [J_i, S_X] on span{J_1,J_2,J_3}: coefficients c with
// J_i(S_X Y) - S_X(J_i Y) = sum_j c_ij J_j Y; residual_out gets the part of
// the commutator outside the span.
Eigen::Matrix3d sp1_component(const ModelSpace& M, const Tensor3& S12, const Vec& X,
                              double* residual_out = nullptr);

// Max over basis X of the sp(1)-coefficient norm; 0 iff S_X commutes with all
// J_a up to the fit residual.
double sp1_part_norm(const ModelSpace& M, const Tensor3& S12);

// Antisymmetry in the last two slots (shared by both families).
double symmetry1_residual(const Tensor3& S03);

// Complex-family class conditions: antisymmetry + S(X,JY,JZ) = -eps S(X,Y,Z).
struct KahlerClassResiduals {
    double antisym = 0.0;
    double j_compat = 0.0;
    double worst() const { return std::max(antisym, j_compat); }
};
KahlerClassResiduals kahler_symmetry_residuals(const Tensor3& S03, const ModelSpace& M);

// Quaternionic-family condition: for cyclic (a,b,c),
//   S(X,J_aY,J_aZ) + eps_a S(X,Y,Z)
//     = eps_b pi_c(X) g(J_bY,J_aZ) - eps_c pi_b(X) g(J_cY,J_aZ)
// with the three one-forms pi_a fitted jointly by least squares.
struct QuatSymmetryResiduals {
    double antisym = 0.0;
    double j_compat = 0.0;  // joint fit residual over the three cyclic equations
    std::array<Vec, 3> pi;
    double worst() const { return std::max(antisym, j_compat); }
};
QuatSymmetryResiduals quat_symmetry_residuals(const Tensor3& S03, const ModelSpace& M);

// Membership of S in the candidate classes, each via a least-squares one-form
// fit; residuals are relative to max(1, |S|).
struct QKMembership {
    double res_class1 = 0.0;   // S = sum_a theta(J_aX) omega_a(Y,Z)
    double res_class2 = 0.0;   // S = sum_a theta_a(X) omega_a(Y,Z)
    double trace_condition2 = 0.0;  // |sum_a theta_a o J_a| for the class-2 fit
    double res_class3 = 0.0;   // metric wedge form
    double res_class123 = 0.0; // combined span
    Vec theta_class3;
    double c12_norm = 0.0;
    bool flag_class1 = false, flag_class2 = false, flag_class3 = false;
};
QKMembership qk_class_membership(const Tensor3& S03, const ModelSpace& M,
                                 double tol = 1e-9);

// Builders for the individual classes (used for round-trip tests).
Tensor3 build_class1(const ModelSpace& M, const Vec& theta);
Tensor3 build_class3(const ModelSpace& M, const Vec& theta);

Vec c12(const Tensor3& S03, const Mat& g);

}  // namespace homlt
