#pragma once

#include "homlt/curvature.hpp"
#include "homlt/hypercomplex.hpp"

#include <map>

namespace homlt {

// Rt = R_op - R^S, the curvature of the connection nabla - S, as an
// operator-valued tensor (x,y,z,k).
Tensor4 rt_operator(const ModelSpace& M, const Vec& xi, const Tensor3& S12);

// Numerically independent spanning set of {Rt_xy}, closed under commutators.
// Singular values below rel_tol * largest are treated as zero; commutator
// closure is iterated to a fixed rank (cap 10 rounds, then an error).
std::vector<Mat> holonomy_span(const Tensor4& Rt, double rel_tol = 1e-9,
                               int closure_cap = 10);

// Worst expansion residual of span elements over the generator set.
double span_match_residual(const std::vector<Mat>& span, const std::vector<Mat>& gens);

// One g-orthogonal "line" of the decomposition of (span{xi, J_a xi})^perp:
// frame [X, J_1 X, ...] with sign = sign g(X,X).
struct LineFrame {
    std::vector<Vec> fr;
    double sign = 1.0;
};

struct AdaptedFrame {
    Vec xi;
    std::vector<Vec> jxi;
    std::vector<LineFrame> lines;
};

// Deterministic greedy frame: lines extracted from coordinate-vector
// candidates by largest |g(X,X)| after g-orthogonalization against the span
// already used; split-signature lines in the para cases are rotated to a
// positive representative by the appropriate J.
AdaptedFrame adapted_frame(const ModelSpace& M, const Vec& xi);

// Coordinate slots for the perp part: unit lines first, then null pairs built
// from (positive, negative) line combinations. Each slot map sends a tangent
// vector to hypercomplex coordinates (conjugated imaginary components).
struct SlotLayout {
    HCAlgebra::Kind kind = HCAlgebra::Kind::Complex;
    int nunit = 0;
    int npair = 0;
    std::vector<Mat> slot_mats;  // each (algebra dim) x (space dim)
    int nslots() const { return nunit + 2 * npair; }
};
SlotLayout slot_layout(const ModelSpace& M, const AdaptedFrame& af);

// The Lie algebra T_pM + hol of the construction: tangent basis vectors plus
// holonomy generator matrices, with structure constants assembled from
//   [x,y] = S_x y - S_y x + Rt_{xy},  [A,x] = A x,  [A,B] = AB - BA.
struct NomizuAlgebra {
    int d = 0, nm = 0, nh = 0, N = 0;
    std::vector<Vec> mvecs;
    std::vector<Mat> hmats;
    std::vector<std::string> labels;
    std::vector<char> parts;  // 'm' tangent, 'h' holonomy
    Tensor3 c;
    Mat gt;  // bilinear form: metric on the tangent block, 0 on holonomy
    double expand_residual = 0.0;
};

NomizuAlgebra nomizu_build(const ModelSpace& M, const Vec& xi, const Tensor3& S12,
                           const std::vector<Vec>& mvecs, const std::vector<Mat>& hmats,
                           std::vector<std::string> labels = {});

// Standard-coordinates algebra: tangent basis e_i plus canonical holonomy.
NomizuAlgebra standard_nomizu(const ModelSpace& M, const Vec& xi, const Tensor3& S12);

// Adapted-basis algebra with informative labels (xi, J1xi, Z1, ...).
NomizuAlgebra adapted_nomizu(const ModelSpace& M, const Vec& xi, const Tensor3& S12,
                             const AdaptedFrame& af);

// Max Jacobi cyclic-sum entry, normalized by max(1, |c|^2).
double jacobi_residual(const Tensor3& c);

// Residuals of the closed-form bracket tables ([xi,Z], [J_a xi, Z],
// [xi, J_a xi], [J_a xi, J_b xi], [Z1, Z2]) in the adapted frame.
std::map<std::string, double> reference_bracket_residuals(const ModelSpace& M,
                                                          const Vec& xi,
                                                          const Tensor3& S12);

}  // namespace homlt
