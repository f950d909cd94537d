#include "homlt/hypercomplex.hpp"

#include <map>

namespace homlt {

EpsComplex ec_mul(const EpsComplex& a, const EpsComplex& b) {
    if (a.eps != b.eps) throw std::invalid_argument("ec_mul: algebra mismatch");
    return {a.re * b.re + a.eps * a.im * b.im, a.re * b.im + a.im * b.re, a.eps};
}

EpsComplex ec_conj(const EpsComplex& a) { return {a.re, -a.im, a.eps}; }

Eigen::Vector4d quat_mul_coeff(const Eigen::Vector4d& a, const Eigen::Vector4d& b,
                               double e2) {
    const double w1 = a[0], x1 = a[1], y1 = a[2], z1 = a[3];
    const double w2 = b[0], x2 = b[1], y2 = b[2], z2 = b[3];
    Eigen::Vector4d r;
    r[0] = w1 * w2 - x1 * x2 + e2 * (y1 * y2 + z1 * z2);
    r[1] = w1 * x2 + x1 * w2 - e2 * (y1 * z2 - z1 * y2);
    r[2] = w1 * y2 + y1 * w2 + (z1 * x2 - x1 * z2);
    r[3] = w1 * z2 + z1 * w2 + (x1 * y2 - y1 * x2);
    return r;
}

EpsQuaternion quat_mul(const EpsQuaternion& a, const EpsQuaternion& b) {
    if (a.e2 != b.e2) throw std::invalid_argument("quat_mul: algebra mismatch");
    const Eigen::Vector4d r =
        quat_mul_coeff({a.w, a.x, a.y, a.z}, {b.w, b.x, b.y, b.z}, a.e2);
    return {r[0], r[1], r[2], r[3], a.e2};
}

EpsQuaternion quat_conj(const EpsQuaternion& a) { return {a.w, -a.x, -a.y, -a.z, a.e2}; }

static HCAlgebra build_algebra(HCAlgebra::Kind k) {
    HCAlgebra A;
    A.kind = k;
    switch (k) {
        case HCAlgebra::Kind::Complex: A.dim = 2; A.e2 = -1.0; break;
        case HCAlgebra::Kind::ParaComplex: A.dim = 2; A.e2 = +1.0; break;
        case HCAlgebra::Kind::Quaternion: A.dim = 4; A.e2 = -1.0; break;
        case HCAlgebra::Kind::ParaQuaternion: A.dim = 4; A.e2 = +1.0; break;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) { A.idx[a][b] = 0; A.sgn[a][b] = 0.0; }
    if (A.dim == 2) {
        A.idx[0][0] = 0; A.sgn[0][0] = 1.0;
        A.idx[0][1] = 1; A.sgn[0][1] = 1.0;
        A.idx[1][0] = 1; A.sgn[1][0] = 1.0;
        A.idx[1][1] = 0; A.sgn[1][1] = A.e2;
    } else {
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                Eigen::Vector4d ua = Eigen::Vector4d::Zero(), ub = Eigen::Vector4d::Zero();
                ua[a] = 1.0; ub[b] = 1.0;
                const Eigen::Vector4d p = quat_mul_coeff(ua, ub, A.e2);
                for (int c = 0; c < 4; ++c) {
                    if (p[c] != 0.0) { A.idx[a][b] = c; A.sgn[a][b] = p[c]; }
                }
            }
        }
    }
    return A;
}

const HCAlgebra& HCAlgebra::get(Kind k) {
    static const HCAlgebra c = build_algebra(Kind::Complex);
    static const HCAlgebra pc = build_algebra(Kind::ParaComplex);
    static const HCAlgebra q = build_algebra(Kind::Quaternion);
    static const HCAlgebra pq = build_algebra(Kind::ParaQuaternion);
    switch (k) {
        case Kind::Complex: return c;
        case Kind::ParaComplex: return pc;
        case Kind::Quaternion: return q;
        default: return pq;
    }
}

HCS hc_unit(int a) {
    HCS u = HCS::Zero();
    u[a] = 1.0;
    return u;
}

HCS hc_mul(const HCAlgebra& A, const HCS& p, const HCS& q) {
    HCS r = HCS::Zero();
    for (int a = 0; a < A.dim; ++a) {
        if (p[a] == 0.0) continue;
        for (int b = 0; b < A.dim; ++b) {
            if (q[b] == 0.0) continue;
            r[A.idx[a][b]] += A.sgn[a][b] * p[a] * q[b];
        }
    }
    return r;
}

HCS hc_conj(const HCS& p) { return {p[0], -p[1], -p[2], -p[3]}; }

Mat hc_left_mult(const HCAlgebra& A, const HCS& q) {
    Mat L = Mat::Zero(A.dim, A.dim);
    for (int b = 0; b < A.dim; ++b) {
        const HCS col = hc_mul(A, q, hc_unit(b));
        for (int c = 0; c < A.dim; ++c) L(c, b) = col[c];
    }
    return L;
}

HCMat HCMat::zero(const HCAlgebra& A, int r, int c) {
    HCMat M;
    M.alg = &A;
    M.rows = r;
    M.cols = c;
    M.e.assign(static_cast<std::size_t>(r) * c, HCS::Zero());
    return M;
}

HCMat& HCMat::operator+=(const HCMat& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
    return *this;
}
HCMat& HCMat::operator-=(const HCMat& o) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
    return *this;
}
HCMat& HCMat::operator*=(double s) {
    for (auto& q : e) q *= s;
    return *this;
}

double HCMat::max_abs() const {
    double m = 0.0;
    for (const auto& q : e)
        for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(q[c]));
    return m;
}

Vec HCMat::flatten() const {
    const int d = alg->dim;
    Vec v(static_cast<int>(e.size()) * d);
    int k = 0;
    for (const auto& q : e)
        for (int c = 0; c < d; ++c) v[k++] = q[c];
    return v;
}

HCMat operator+(HCMat a, const HCMat& b) { a += b; return a; }
HCMat operator-(HCMat a, const HCMat& b) { a -= b; return a; }
HCMat operator*(double s, HCMat a) { a *= s; return a; }

HCMat hc_matmul(const HCMat& A, const HCMat& B) {
    if (A.alg != B.alg || A.cols != B.rows) {
        throw std::invalid_argument("hc_matmul: shape or algebra mismatch");
    }
    HCMat C = HCMat::zero(*A.alg, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const HCS& a = A.at(i, k);
            if (a.isZero(0.0)) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += hc_mul(*A.alg, a, B.at(k, j));
        }
    return C;
}

HCMat hc_conjT(const HCMat& A) {
    HCMat B = HCMat::zero(*A.alg, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B.at(j, i) = hc_conj(A.at(i, j));
    return B;
}

HCS hc_trace(const HCMat& A) {
    HCS t = HCS::Zero();
    for (int i = 0; i < std::min(A.rows, A.cols); ++i) t += A.at(i, i);
    return t;
}

HCMat hc_commutator(const HCMat& A, const HCMat& B) {
    return hc_matmul(A, B) - hc_matmul(B, A);
}

Mat real_matrix_expansion(const HCMat& A) {
    const int d = A.alg->dim;
    Mat out = Mat::Zero(A.rows * d, A.cols * d);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            out.block(i * d, j * d, d, d) = hc_left_mult(*A.alg, A.at(i, j));
    return out;
}

HCS SignedHermitianForm::evaluate(const HCAlgebra& A, const std::vector<HCS>& q,
                                  const std::vector<HCS>& qp) const {
    if (static_cast<int>(q.size()) != n || static_cast<int>(qp.size()) != n) {
        throw std::invalid_argument("SignedHermitianForm: wrong vector length");
    }
    HCS s = HCS::Zero();
    for (int i = 0; i < n; ++i) {
        const double sign = (i < r) ? -1.0 : 1.0;
        s += sign * hc_mul(A, q[i], hc_conj(qp[i]));
    }
    return s;
}

HCMat SignedHermitianForm::matrix(const HCAlgebra& A) const {
    HCMat M = HCMat::zero(A, n, n);
    for (int i = 0; i < n; ++i) M.at(i, i) = ((i < r) ? -1.0 : 1.0) * hc_unit(0);
    return M;
}

HCMat antidiagonal_pair_form(const HCAlgebra& A, int n, int num_pairs) {
    if (2 * num_pairs > n) throw std::invalid_argument("antidiagonal_pair_form: too many pairs");
    HCMat M = HCMat::zero(A, n, n);
    const int nunit = n - 2 * num_pairs;
    for (int i = 0; i < nunit; ++i) M.at(i, i) = hc_unit(0);
    for (int p = 0; p < num_pairs; ++p) {
        const int a = nunit + 2 * p, b = nunit + 2 * p + 1;
        M.at(a, b) = hc_unit(0);
        M.at(b, a) = hc_unit(0);
    }
    return M;
}

}  // namespace homlt
