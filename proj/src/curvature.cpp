#include "homlt/curvature.hpp"

#include "homlt/hypercomplex.hpp"
#include "homlt/pseudolinear.hpp"

namespace homlt {

Tensor4 curvature_model(const ModelSpace& M) {
    const int d = M.dim;
    const Mat& g = M.g;
    Tensor4 R(d);
    if (M.is_kahler()) {
        const double e = M.eps;
        const Mat gJ = g * M.J[0];  // gJ(x,y) = g(x, Jy)
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int w = 0; w < d; ++w) {
                        R(x, y, z, w) = g(y, z) * g(x, w) - g(x, z) * g(y, w) +
                                        e * gJ(x, z) * gJ(y, w) -
                                        e * gJ(x, w) * gJ(y, z) +
                                        2.0 * e * gJ(x, y) * gJ(z, w);
                    }
    } else {
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int w = 0; w < d; ++w)
                        R(x, y, z, w) = g(x, z) * g(y, w) - g(y, z) * g(x, w);
        for (int a = 0; a < 3; ++a) {
            const double ea = M.eps3[static_cast<std::size_t>(a)];
            const Mat gJ = g * M.J[static_cast<std::size_t>(a)];
            // g(J_a x, z) = gJ(z, x)
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y)
                    for (int z = 0; z < d; ++z)
                        for (int w = 0; w < d; ++w) {
                            R(x, y, z, w) -= ea * (gJ(z, x) * gJ(w, y) -
                                                   gJ(z, y) * gJ(w, x) +
                                                   2.0 * gJ(x, y) * gJ(z, w));
                        }
        }
    }
    return R;
}

Mat ricci(const Tensor4& R04, const Mat& g) {
    const int d = R04.dim();
    const Mat ginv = g.inverse();
    Mat r = Mat::Zero(d, d);
    for (int y = 0; y < d; ++y)
        for (int u = 0; u < d; ++u) {
            double s = 0.0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    if (ginv(a, b) == 0.0) continue;
                    s += ginv(a, b) * R04(a, y, b, u);
                }
            r(y, u) = s;
        }
    return r;
}

double scalar_curvature(const Tensor4& R04, const Mat& g) {
    const Mat r = ricci(R04, g);
    const Mat ginv = g.inverse();
    return (ginv * r).trace();
}

Tensor4 scaled_curvature(const ModelSpace& M, double gxx) {
    Tensor4 R = curvature_model(M);
    for (double& v : R.data()) v *= -gxx;
    return R;
}

Tensor4 constant_hol_model(double c, const ModelSpace& M) {
    Tensor4 R = curvature_model(M);
    for (double& v : R.data()) v *= 0.25 * c;
    return R;
}

CurvatureSymmetry curvature_symmetry_residuals(const Tensor4& R) {
    const int d = R.dim();
    CurvatureSymmetry out;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                for (int w = 0; w < d; ++w) {
                    out.antisym12 = std::max(out.antisym12,
                                             std::abs(R(x, y, z, w) + R(y, x, z, w)));
                    out.antisym34 = std::max(out.antisym34,
                                             std::abs(R(x, y, z, w) + R(x, y, w, z)));
                    out.pair_sym = std::max(out.pair_sym,
                                            std::abs(R(x, y, z, w) - R(z, w, x, y)));
                    out.bianchi1 = std::max(
                        out.bianchi1,
                        std::abs(R(x, y, z, w) + R(y, z, x, w) + R(z, x, y, w)));
                }
    return out;
}

QuatCurvatureDecomp quat_curvature_decomp(const Tensor4& R04, const ModelSpace& M) {
    if (!M.is_quat())
        throw std::invalid_argument("quat_curvature_decomp: quaternionic family only");
    QuatCurvatureDecomp out;
    const double sc = scalar_curvature(R04, M.g);
    out.nu_q = sc / (16.0 * M.n * (M.n + 2.0));
    out.sp_part = curvature_model(M);
    const std::size_t total = out.sp_part.data().size();
    for (std::size_t i = 0; i < total; ++i)
        out.sp_part.data()[i] = R04.data()[i] - out.nu_q * out.sp_part.data()[i];
    return out;
}

Tensor4 curvature_operator(const ModelSpace& M, double gxx) {
    Tensor4 R04 = curvature_model(M);
    const double c = M.is_kahler() ? gxx : -gxx;
    for (double& v : R04.data()) v *= c;
    return raise_last(R04, M.ginv);
}

Tensor4 rs_operator(const Tensor3& S12) {
    const int d = S12.dim();
    Tensor4 out(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                for (int k = 0; k < d; ++k) {
                    double s = 0.0;
                    for (int a = 0; a < d; ++a) {
                        s += (S12(x, y, a) - S12(y, x, a)) * S12(a, z, k);
                        s -= S12(x, a, k) * S12(y, z, a);
                        s += S12(y, a, k) * S12(x, z, a);
                    }
                    out(x, y, z, k) = s;
                }
    return out;
}

Tensor5 covariant_derivative_R(const Tensor4& R04, const Tensor3& S12) {
    const int d = R04.dim();
    Tensor5 nR(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                for (int w = 0; w < d; ++w)
                    for (int u = 0; u < d; ++u) {
                        double s = 0.0;
                        for (int a = 0; a < d; ++a) {
                            s += S12(x, y, a) * R04(a, z, w, u);
                            s += S12(x, z, a) * R04(y, a, w, u);
                            s += S12(x, w, a) * R04(y, z, a, u);
                            s += S12(x, u, a) * R04(y, z, w, a);
                        }
                        nR(x, y, z, w, u) = -s;
                    }
    return nR;
}

double second_bianchi_residual(const Tensor5& nR) {
    const int d = nR.dim();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(d) * d * d * d * d;
    return max_reduce(total, [&](std::ptrdiff_t idx) {
        int rem = static_cast<int>(idx);
        const int u = rem % d; rem /= d;
        const int w = rem % d; rem /= d;
        const int z = rem % d; rem /= d;
        const int y = rem % d; rem /= d;
        const int x = rem;
        return std::abs(nR(x, y, z, w, u) + nR(y, z, x, w, u) + nR(z, x, y, w, u));
    });
}

std::vector<Mat> canonical_holonomy(const ModelSpace& M, const Vec& xi) {
    const int d = M.dim;
    const Mat& g = M.g;
    const int nh = M.is_kahler() ? 1 : 3;
    Mat U(d, nh + 1);
    U.col(0) = xi;
    for (int a = 0; a < nh; ++a) U.col(a + 1) = M.J[static_cast<std::size_t>(a)] * xi;
    const Mat G = U.transpose() * g * U;
    const Mat Pi = U * G.colPivHouseholderQr().solve(U.transpose() * g);  // onto the span
    const Mat P = Mat::Identity(d, d) - Pi;
    std::vector<Mat> out;
    if (M.is_kahler()) {
        out.push_back(P * M.J[0] * P);
        return out;
    }
    const double e2 = M.eps3[1];
    const auto qrsolver = G.colPivHouseholderQr();
    for (int a = 0; a < 3; ++a) {
        Mat E = P * M.J[static_cast<std::size_t>(a)] * P;
        Eigen::Vector4d ua = Eigen::Vector4d::Zero();
        ua[a + 1] = (a == 2) ? -1.0 : 1.0;  // J_3 is right multiplication by -k
        for (int c = 0; c < d; ++c) {
            // quaternionic-span part of e_c in the (xi, J_1 xi, J_2 xi, J_3 xi) basis
            const Vec co = qrsolver.solve(U.transpose() * (g * Vec::Unit(d, c)));
            // identify v = xi*q: coefficients (w, x, y, z) with J_3 xi = -xi k
            Eigen::Vector4d q(co[0], co[1], co[2], -co[3]);
            const Eigen::Vector4d r =
                quat_mul_coeff(q, ua, e2) - quat_mul_coeff(ua, q, e2);
            Vec img = r[0] * U.col(0) + r[1] * U.col(1) + r[2] * U.col(2) - r[3] * U.col(3);
            E.col(c) += img;
        }
        out.push_back(E);
    }
    return out;
}

Tensor4 reconstructed_curvature_op(const ModelSpace& M, const Vec& xi,
                                   const Tensor3& S12) {
    const int d = M.dim;
    const double gxx = xi.dot(M.g * xi);
    const std::vector<Mat> E = canonical_holonomy(M, xi);
    Tensor4 out = rs_operator(S12);
    for (int a = 0; a < M.num_J(); ++a) {
        const double ea = M.eps_a(a);
        const Mat gJ = M.g * M.J[static_cast<std::size_t>(a)];
        const Mat& Ea = E[static_cast<std::size_t>(a)];
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                const double c = -2.0 * ea * gxx * gJ(x, y);
                if (c == 0.0) continue;
                for (int z = 0; z < d; ++z)
                    for (int k = 0; k < d; ++k) out(x, y, z, k) += c * Ea(k, z);
            }
    }
    return out;
}

void TheoremReport::add(const std::string& name, const std::string& anchor,
                        double residual, double tol, bool invert) {
    CheckItem it;
    it.name = name;
    it.anchor = anchor;
    it.residual = residual;
    it.tol = tol;
    it.pass = invert ? residual > tol : residual <= tol;
    all_pass = all_pass && it.pass;
    checks.push_back(std::move(it));
}

double TheoremReport::residual(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.residual;
    throw std::out_of_range("TheoremReport: no check named " + name);
}

namespace {

double tol_of(const std::map<std::string, double>& ov, const std::string& key,
              double dflt) {
    auto it = ov.find(key);
    return it == ov.end() ? dflt : it->second;
}

// alpha ^ beta for a 1-form and a 2-form, evaluated at (x,y,z).
inline double wedge12(const Vec& a, const Mat& b, int x, int y, int z) {
    return a[x] * b(y, z) - a[y] * b(x, z) + a[z] * b(x, y);
}
// F ^ gamma for a 2-form and a 1-form.
inline double wedge21(const Mat& F, const Vec& c, int x, int y, int z) {
    return F(x, y) * c[z] - F(x, z) * c[y] + F(y, z) * c[x];
}

double tensor4_diff_max(const Tensor4& A, const Tensor4& B) {
    const int d = A.dim();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(d) * d * d * d;
    return max_reduce(total, [&](std::ptrdiff_t i) {
        return std::abs(A.data()[static_cast<std::size_t>(i)] -
                        B.data()[static_cast<std::size_t>(i)]);
    });
}

}  // namespace

Vec kahler_zeta_obstruction(const ModelSpace& M, const Vec& xi, const Vec& zeta,
                            const Vec& X, const Vec& Y) {
    const Mat& g = M.g;
    const Mat& J = M.J[0];
    const double eps = M.eps;
    const Vec Jz = J * zeta;
    const Vec Jxi = J * xi;
    const double gXJz = X.dot(g * Jz);
    const double gYJz = Y.dot(g * Jz);
    const double gxx = xi.dot(g * xi);
    const Vec t1 = 2.0 * gXJz *
                   ((Y.dot(g * Jxi)) * xi + gxx * (J * Y) + 2.0 * eps * (zeta.dot(g * Y)) * Jxi);
    const Vec t2 = -2.0 * gYJz *
                   ((X.dot(g * Jxi)) * xi + gxx * (J * X) + 2.0 * eps * (X.dot(g * zeta)) * Jxi);
    const double c3 = 2.0 * ((Y.dot(g * zeta)) * (xi.dot(g * (J * X))) -
                             (X.dot(g * zeta)) * (xi.dot(g * (J * Y))) +
                             2.0 * (X.dot(g * (J * Y))) * (xi.dot(g * zeta)));
    return t1 + t2 + c3 * Jxi;
}

TheoremReport theorem_kahler_check(const ModelSpace& M, const Vec& xi, const Vec& zeta,
                                   const std::map<std::string, double>& ov) {
    if (!M.is_kahler()) throw std::invalid_argument("theorem_kahler_check: wrong family");
    TheoremReport rep;
    const int d = M.dim;
    const int n = M.n;
    const Mat& g = M.g;
    const Mat& J = M.J[0];
    const double eps = M.eps;
    const double gxx = xi.dot(g * xi);
    const bool zeta_zero = zeta.cwiseAbs().maxCoeff() == 0.0;

    const Tensor4 R0 = curvature_model(M);
    const Tensor4 R4 = scaled_curvature(M, gxx);
    const Mat r = ricci(R4, g);
    const double sc = scalar_curvature(R4, g);
    const Vec th = g * xi;
    const Mat gJ = g * J;
    const Vec rxi = r * xi;
    const Vec rJ = r * (J * xi);
    const Vec thJ = J.transpose() * th;  // (theta o J)(z) = g(xi, J e_z)

    // Einstein: r = (scalar/dim) g
    {
        const double lam = sc / static_cast<double>(d);
        rep.add("einstein", "r = (scalar/dim) g", (r - lam * g).cwiseAbs().maxCoeff(),
                tol_of(ov, "einstein", 1e-9));
        rep.add("einstein_xi", "r(Z,xi) = (scalar/2n) g(Z,xi)",
                (rxi - lam * th).cwiseAbs().maxCoeff(), tol_of(ov, "einstein_xi", 1e-9));
    }

    // formula1: (2n+2) R(Z,Y,xi,U) against the Ricci combination.
    {
        const double res = max_reduce(
            static_cast<std::ptrdiff_t>(d) * d * d, [&](std::ptrdiff_t idx) {
                int rem = static_cast<int>(idx);
                const int U = rem % d; rem /= d;
                const int Y = rem % d; rem /= d;
                const int Z = rem;
                double rx = 0.0;
                for (int x = 0; x < d; ++x) rx += R4(Z, Y, x, U) * xi[x];
                const double v = -2.0 * th[Y] * r(Z, U) + 2.0 * th[Z] * r(Y, U) -
                                 2.0 * eps * gJ(Y, Z) * rJ[U] - g(Y, U) * rxi[Z] -
                                 eps * gJ(Y, U) * rJ[Z] + g(Z, U) * rxi[Y] +
                                 eps * gJ(Z, U) * rJ[Y];
                return std::abs((2.0 * n + 2.0) * rx - v);
            });
        rep.add("formula1", "Ricci contraction identity", res, tol_of(ov, "formula1", 1e-9));
    }

    // formula2: (2n+2) R(xi,U,.,.) as a 2-form identity, U over the basis.
    {
        const double b = sc / (2.0 * n);
        double res = 0.0;
        for (int U = 0; U < d; ++U) {
            const Vec rU = r.row(U).transpose();
            const Vec Ub = g.row(U).transpose();
            const Vec JUb = g * J.col(U);
            const double thJU = th.dot(J.col(U));
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y) {
                    double lhs = 0.0;
                    for (int p = 0; p < d; ++p) lhs += xi[p] * R4(p, U, x, y);
                    lhs *= (2.0 * n + 2.0);
                    const double rhs = 2.0 * (th[x] * rU[y] - rU[x] * th[y]) -
                                       2.0 * b * eps * thJU * gJ(x, y) +
                                       b * (Ub[x] * th[y] - th[x] * Ub[y]) -
                                       eps * b * (JUb[x] * thJ[y] - thJ[x] * JUb[y]);
                    res = std::max(res, std::abs(lhs - rhs));
                }
        }
        rep.add("formula2", "xi-contracted 2-form identity", res, tol_of(ov, "formula2", 1e-9));
    }

    // formula3: the 3-form combination of curvature contractions vanishes.
    {
        std::vector<Mat> Rxi(d);  // Rxi[q](x,y) = sum_p xi^p R(p,q,x,y)
        for (int q = 0; q < d; ++q) {
            Rxi[q] = Mat::Zero(d, d);
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y) {
                    double s = 0.0;
                    for (int p = 0; p < d; ++p) s += xi[p] * R4(p, q, x, y);
                    Rxi[q](x, y) = s;
                }
        }
        const double res = max_reduce(
            static_cast<std::ptrdiff_t>(d) * d, [&](std::ptrdiff_t idx) {
                const int U = static_cast<int>(idx) % d;
                const int W = static_cast<int>(idx) / d;
                const Vec Wb = g.row(W).transpose();
                const Vec Ub = g.row(U).transpose();
                const Vec JWb = g * J.col(W);
                const Vec JUb = g * J.col(U);
                Mat R_WU(d, d);
                for (int x = 0; x < d; ++x)
                    for (int y = 0; y < d; ++y) R_WU(x, y) = R4(W, U, x, y);
                Mat R_xiJU = Mat::Zero(d, d), R_xiJW = Mat::Zero(d, d);
                for (int q = 0; q < d; ++q) {
                    if (J(q, U) != 0.0) R_xiJU += J(q, U) * Rxi[q];
                    if (J(q, W) != 0.0) R_xiJW += J(q, W) * Rxi[q];
                }
                const Vec gamma = (R_xiJU.row(W) - R_xiJW.row(U)).transpose();
                double worst = 0.0;
                for (int x = 0; x < d; ++x)
                    for (int y = 0; y < d; ++y)
                        for (int z = 0; z < d; ++z) {
                            double t = 2.0 * wedge12(th, R_WU, x, y, z);
                            t += wedge12(Wb, Rxi[U], x, y, z);
                            t -= wedge12(Ub, Rxi[W], x, y, z);
                            t -= 2.0 * eps * wedge21(gJ, gamma, x, y, z);
                            t -= eps * wedge12(JWb, R_xiJU, x, y, z);
                            t += eps * wedge12(JUb, R_xiJW, x, y, z);
                            worst = std::max(worst, std::abs(t));
                        }
                return worst;
            });
        rep.add("formula3", "0", res, tol_of(ov, "formula3", 1e-9));
    }

    // formula4: R(X,JX)xi for random anisotropic X.
    {
        const Tensor4 R13 = raise_last(R4, M.ginv);
        Rng rng(7);
        double res = 0.0;
        for (int trial = 0; trial < 6; ++trial) {
            const Vec X = rng.normal_vector(d);
            const Vec JX = J * X;
            Vec v = Vec::Zero(d);
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y) {
                    const double c = X[x] * JX[y];
                    if (c == 0.0) continue;
                    for (int z = 0; z < d; ++z) {
                        if (xi[z] == 0.0) continue;
                        for (int u = 0; u < d; ++u) v[u] += c * xi[z] * R13(x, y, z, u);
                    }
                }
            const double gJXxi = (g * JX).dot(xi);
            const double gXxi = (g * X).dot(xi);
            const double gXX = X.dot(g * X);
            const Vec want =
                -gxx * (2.0 * gJXxi * X - 2.0 * gXxi * JX - 2.0 * gXX * (J * xi));
            res = std::max(res, (v - want).cwiseAbs().maxCoeff());
        }
        rep.add("formula4", "-g(xi,xi) * plane combination", res, tol_of(ov, "formula4", 1e-9));
    }

    // formula5: R(X,JX)xi + g(xi,xi) R0(X,JX)xi = 0 (zeta = 0 form).
    {
        Rng rng(9);
        double res = 0.0;
        for (int trial = 0; trial < 6; ++trial) {
            const Vec X = rng.normal_vector(d);
            const Vec JX = J * X;
            for (int u = 0; u < d; ++u) {
                double s = 0.0;
                for (int x = 0; x < d; ++x)
                    for (int y = 0; y < d; ++y) {
                        const double c = X[x] * JX[y];
                        if (c == 0.0) continue;
                        for (int z = 0; z < d; ++z)
                            s += c * xi[z] * (R4(x, y, z, u) + gxx * R0(x, y, z, u));
                    }
                res = std::max(res, std::abs(s));
            }
        }
        rep.add("formula5", "0", res, tol_of(ov, "formula5", 1e-9));
    }

    // Class conditions of S and the closure identity need the actual S.
    const Tensor3 S = build_S_kahler(M, xi, zeta);
    const Tensor3 S12 = to_operator(S, M.ginv);
    {
        const KahlerClassResiduals kk = kahler_symmetry_residuals(S, M);
        rep.add("class_membership", "antisymmetry + J-compatibility", kk.worst(),
                tol_of(ov, "class_membership", 1e-10));
    }
    {
        const Tensor4 Rrec = reconstructed_curvature_op(M, xi, S12);
        Tensor4 R4rec = lower_last(Rrec, g);
        for (double& v : R4rec.data()) v = -v;  // family raise convention
        rep.add("closure_A", "R + g(xi,xi) R0 = 0", tensor4_diff_max(R4rec, R4),
                tol_of(ov, "closure_A", 1e-9));
    }
    {
        const Tensor5 nR = covariant_derivative_R(R4, S12);
        rep.add("second_bianchi", "0", second_bianchi_residual(nR),
                tol_of(ov, "second_bianchi", 1e-9));
    }
    if (!zeta_zero) {
        // Generic probe directions: restricting X to the g-orthogonal complement of
        // span{zeta, J zeta} would annihilate the obstruction by construction.
        Rng rng(11);
        double obs = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const Vec X = rng.normal_vector(d);
            obs = std::max(obs, kahler_zeta_obstruction(M, xi, zeta, X, J * X)
                                    .cwiseAbs()
                                    .maxCoeff());
        }
        rep.add("zeta_obstruction", "0", obs, tol_of(ov, "zeta_obstruction", 1e-3));
    }
    return rep;
}

TheoremReport theorem_quat_check(const ModelSpace& M, const Vec& xi,
                                 const std::array<Vec, 3>& zeta,
                                 const std::map<std::string, double>& ov) {
    if (!M.is_quat()) throw std::invalid_argument("theorem_quat_check: wrong family");
    TheoremReport rep;
    const int d = M.dim;
    const int n = M.n;
    const Mat& g = M.g;
    const double gxx = xi.dot(g * xi);
    bool zeta_zero = true;
    for (const Vec& z : zeta)
        if (z.cwiseAbs().maxCoeff() != 0.0) zeta_zero = false;

    const Tensor4 R4 = scaled_curvature(M, gxx);
    const Mat r = ricci(R4, g);
    const double sc = scalar_curvature(R4, g);

    {
        const double lam = sc / static_cast<double>(d);
        rep.add("einstein", "r = (scalar/dim) g", (r - lam * g).cwiseAbs().maxCoeff(),
                tol_of(ov, "einstein", 1e-9));
    }
    {
        const double nu = sc / (16.0 * n * (n + 2.0));
        rep.add("reduced_scalar", "-g(xi,xi)", std::abs(nu - (-gxx)),
                tol_of(ov, "reduced_scalar", 1e-8));
    }
    {
        const QuatCurvatureDecomp dec = quat_curvature_decomp(R4, M);
        rep.add("sp_part", "R - nu_q R0 = 0", dec.sp_part.max_abs(),
                tol_of(ov, "sp_part", 1e-10));
    }

    const Tensor3 S = build_S_quat(M, xi, zeta);
    const Tensor3 S12 = to_operator(S, M.ginv);
    {
        const QuatSymmetryResiduals qs = quat_symmetry_residuals(S, M);
        rep.add("symmetries", "antisymmetry + fitted pi forms", qs.worst(),
                tol_of(ov, "symmetries", 1e-10));
    }
    {
        const QKMembership qk = qk_class_membership(S, M);
        rep.add("class3_membership", "least-squares one-form fit", qk.res_class3,
                tol_of(ov, "class3_membership", 1e-9));
        rep.add("class3_flag", "membership flag set", qk.flag_class3 ? 0.0 : 1.0, 0.5);
    }
    {
        rep.add("sp1_part", "0", sp1_part_norm(M, S12), tol_of(ov, "sp1_part", 1e-10));
    }
    {
        const Tensor4 Rop = curvature_operator(M, gxx);
        const Tensor4 RS = rs_operator(S12);
        const double res = max_reduce(
            static_cast<std::ptrdiff_t>(d) * d * d, [&](std::ptrdiff_t idx) {
                int rem = static_cast<int>(idx);
                const int k = rem % d; rem /= d;
                const int y = rem % d; rem /= d;
                const int x = rem;
                double s = 0.0;
                for (int z = 0; z < d; ++z)
                    s += (Rop(x, y, z, k) - RS(x, y, z, k)) * xi[z];
                return std::abs(s);
            });
        rep.add("rt_kills_xi", "0", res, tol_of(ov, "rt_kills_xi", 1e-9));
    }
    {
        const Tensor4 Rrec = reconstructed_curvature_op(M, xi, S12);
        const Tensor4 R4rec = lower_last(Rrec, g);
        rep.add("closure_A", "R + g(xi,xi) R0 = 0", tensor4_diff_max(R4rec, R4),
                tol_of(ov, "closure_A", 1e-9));
        // Rt = R_op - R^S against its holonomy-generator closed form directly.
        Tensor4 Rt = curvature_operator(M, gxx);
        {
            const Tensor4 RS = rs_operator(S12);
            for (std::size_t i = 0; i < Rt.data().size(); ++i)
                Rt.data()[i] -= RS.data()[i];
        }
        Tensor4 Rt_cf(d);
        {
            const std::vector<Mat> E = canonical_holonomy(M, xi);
            for (int a = 0; a < 3; ++a) {
                const Mat gJ = g * M.J[static_cast<std::size_t>(a)];
                const double ea = M.eps3[static_cast<std::size_t>(a)];
                for (int x = 0; x < d; ++x)
                    for (int y = 0; y < d; ++y) {
                        const double c = -2.0 * ea * gxx * gJ(x, y);
                        if (c == 0.0) continue;
                        for (int z = 0; z < d; ++z)
                            for (int k = 0; k < d; ++k)
                                Rt_cf(x, y, z, k) += c * E[static_cast<std::size_t>(a)](k, z);
                    }
            }
        }
        rep.add("rt_closed_form", "Rt = sum_a -2 e_a g(xi,xi) g(X,J_aY) E_a",
                tensor4_diff_max(Rt, Rt_cf), tol_of(ov, "rt_closed_form", 1e-9));
    }
    {
        const Tensor5 nR = covariant_derivative_R(R4, S12);
        rep.add("second_bianchi", "0", second_bianchi_residual(nR),
                tol_of(ov, "second_bianchi", 1e-9));
    }
    {
        // wedge / xi-contraction functionals of an sp(1)-block tensor
        const Vec th = g * xi;
        const auto functionals = [&](const Tensor4& T) {
            double contr = 0.0;
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int u = 0; u < d; ++u) {
                        double s = 0.0;
                        for (int w = 0; w < d; ++w) s += T(y, z, w, u) * xi[w];
                        contr = std::max(contr, std::abs(s));
                    }
            double wedge = 0.0;
            Mat form(d, d);
            for (int W = 0; W < d; ++W)
                for (int U = 0; U < d; ++U) {
                    for (int x = 0; x < d; ++x)
                        for (int y = 0; y < d; ++y) form(x, y) = T(W, U, x, y);
                    for (int x = 0; x < d; ++x)
                        for (int y = x + 1; y < d; ++y)
                            for (int z = y + 1; z < d; ++z)
                                wedge = std::max(
                                    wedge, std::abs(wedge12(th, form, x, y, z)));
                }
            return std::max(contr, wedge);
        };
        const QuatCurvatureDecomp dec = quat_curvature_decomp(R4, M);
        rep.add("sp_identities", "0 on the actual sp-part", functionals(dec.sp_part),
                tol_of(ov, "sp_identities", 1e-10));
        // negative control: the same functionals on an injected sp(1)-type block
        Tensor4 B(d);
        for (int a = 0; a < 3; ++a) {
            const double ea = M.eps3[static_cast<std::size_t>(a)];
            const Mat gJ = g * M.J[static_cast<std::size_t>(a)];
            for (int x = 0; x < d; ++x)
                for (int y = 0; y < d; ++y)
                    for (int z = 0; z < d; ++z)
                        for (int w = 0; w < d; ++w)
                            B(x, y, z, w) -= ea * (gJ(z, x) * gJ(w, y) -
                                                   gJ(z, y) * gJ(w, x) +
                                                   2.0 * gJ(x, y) * gJ(z, w));
        }
        rep.add("sp_injection_control", "functionals must not vanish on injected block",
                functionals(B), tol_of(ov, "sp_injection_control", 1e-3),
                /*invert=*/true);
    }
    if (!zeta_zero) {
        rep.add("zeta_obstruction", "0", sp1_part_norm(M, S12),
                tol_of(ov, "zeta_obstruction", 1e-3));
    }
    return rep;
}

}  // namespace homlt
