#pragma once

#include "homlt/common.hpp"

namespace homlt {

// ---------------------------------------------------------------------------
// Scalar types
// ---------------------------------------------------------------------------

// Number of the form re + im*e with e^2 = eps (eps = -1 or +1).
struct EpsComplex {
    double re = 0.0;
    double im = 0.0;
    double eps = -1.0;
};

EpsComplex ec_mul(const EpsComplex& a, const EpsComplex& b);
EpsComplex ec_conj(const EpsComplex& a);

// Quaternion-type number over units (1, i, j, k) with i^2 = -1, j^2 = k^2 = e2,
// ij = k = -ji, jk = -kj, ki = -ik.  e2 = -1 gives the quaternions, +1 the
// para-quaternions.
struct EpsQuaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    double e2 = -1.0;
};

EpsQuaternion quat_mul(const EpsQuaternion& a, const EpsQuaternion& b);
EpsQuaternion quat_conj(const EpsQuaternion& a);

// Raw coefficient product, shared with the table builders:
// (w,x,y,z) coefficients of (1,i,j,k), j^2 = k^2 = e2.
Eigen::Vector4d quat_mul_coeff(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                               double e2);

// ---------------------------------------------------------------------------
// Algebra tables + matrices over them
// ---------------------------------------------------------------------------

struct HCAlgebra {
    enum class Kind { Complex, ParaComplex, Quaternion, ParaQuaternion };

    Kind kind;
    int dim;     // 2 or 4
    double e2;   // square of e (complex-type) or of j,k (quaternion-type)
    int idx[4][4];
    double sgn[4][4];

    static const HCAlgebra& get(Kind k);
};

using HCS = Eigen::Vector4d;  // scalar coefficients; complex-type uses slots 0,1

HCS hc_unit(int a);
HCS hc_mul(const HCAlgebra& A, const HCS& p, const HCS& q);
HCS hc_conj(const HCS& p);
Mat hc_left_mult(const HCAlgebra& A, const HCS& q);  // dim x dim real block

struct HCMat {
    const HCAlgebra* alg = nullptr;
    int rows = 0, cols = 0;
    std::vector<HCS> e;

    static HCMat zero(const HCAlgebra& A, int r, int c);
    HCS& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    const HCS& at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

    HCMat& operator+=(const HCMat& o);
    HCMat& operator-=(const HCMat& o);
    HCMat& operator*=(double s);

    double max_abs() const;
    Vec flatten() const;  // rows*cols*alg->dim reals
};

HCMat operator+(HCMat a, const HCMat& b);
HCMat operator-(HCMat a, const HCMat& b);
HCMat operator*(double s, HCMat a);
HCMat hc_matmul(const HCMat& A, const HCMat& B);
HCMat hc_conjT(const HCMat& A);
HCS hc_trace(const HCMat& A);
HCMat hc_commutator(const HCMat& A, const HCMat& B);

// Block expansion: each entry replaced by its left-multiplication matrix.
Mat real_matrix_expansion(const HCMat& A);

// <q,q'> = -sum_{i<r} q_i conj(q'_i) + sum_{i>=r} q_i conj(q'_i)
// (leading-minus convention; r = 0 gives the definite/para form).
struct SignedHermitianForm {
    int n = 0;
    int r = 0;

    HCS evaluate(const HCAlgebra& A, const std::vector<HCS>& q,
                 const std::vector<HCS>& qp) const;
    HCMat matrix(const HCAlgebra& A) const;  // diag(-1 x r, +1 x (n-r))
};

// Pair form with 1s on the anti-diagonal of each 2x2 block listed in `pairs`
// plus +1 units elsewhere; used by the group realizations.  Congruence of this
// to the diagonal signed form is exercised by a dedicated test.
HCMat antidiagonal_pair_form(const HCAlgebra& A, int n, int num_pairs);

}  // namespace homlt
