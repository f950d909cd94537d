#include "homlt/linear_type.hpp"

#include "homlt/pseudolinear.hpp"

namespace homlt {

Tensor3 build_S_kahler(const ModelSpace& M, const Vec& xi, const Vec& zeta) {
    if (!M.is_kahler()) throw std::invalid_argument("build_S_kahler: wrong family");
    const int d = M.dim;
    if (xi.size() != d || zeta.size() != d) {
        throw std::invalid_argument("build_S_kahler: dimension mismatch");
    }
    const Mat& g = M.g;
    const Mat& J = M.J[0];
    const double eps = M.eps;
    const Vec th = g * xi;           // g(xi, .)
    const Vec thJ = g * (J * xi);    // g(Jxi, .)
    const Mat gJ = g * J;            // gJ(x,y) = g(x, Jy)
    Tensor3 S(d);
    for (int X = 0; X < d; ++X) {
        const Vec JX = J.col(X);
        const Vec gJX = g * JX;          // g(JX, .)
        const double zJX = zeta.dot(gJX);  // g(zeta, JX)
        for (int Y = 0; Y < d; ++Y) {
            const double gXY = g(X, Y);
            const double thY = th[Y];
            const double gXJY = gJ(X, Y);
            // g(xi, J e_Y) = (g J)(.,Y) dot xi
            const double gxJY = xi.dot(gJ.col(Y));
            const Vec gJY = g * J.col(Y);  // g(JY, .)
            for (int Z = 0; Z < d; ++Z) {
                S(X, Y, Z) = gXY * th[Z] - thY * g(X, Z) + eps * gXJY * thJ[Z] -
                             eps * gxJY * gJX[Z] - 2.0 * zJX * gJY[Z];
            }
        }
    }
    return S;
}

Tensor3 build_S_quat(const ModelSpace& M, const Vec& xi,
                     const std::array<Vec, 3>& zeta) {
    if (!M.is_quat()) throw std::invalid_argument("build_S_quat: wrong family");
    const int d = M.dim;
    if (xi.size() != d) throw std::invalid_argument("build_S_quat: dimension mismatch");
    for (const Vec& z : zeta) {
        if (z.size() != d) throw std::invalid_argument("build_S_quat: dimension mismatch");
    }
    const Mat& g = M.g;
    const Vec gx = g * xi;
    std::array<Vec, 3> gJx;
    for (int a = 0; a < 3; ++a) gJx[a] = g * (M.J[a] * xi);
    Tensor3 S(d);
    for (int X = 0; X < d; ++X) {
        for (int Y = 0; Y < d; ++Y) {
            Vec row = g(X, Y) * gx - gx[Y] * g.row(X).transpose();
            for (int a = 0; a < 3; ++a) {
                const double ea = M.eps3[static_cast<std::size_t>(a)];
                const Vec JY = M.J[a].col(Y);
                const double gJYxi = (g * JY).dot(xi);
                const double gXJY = g.row(X).dot(JY);
                const Vec JX = M.J[a].col(X);
                row -= ea * (gJYxi * (g * JX) - gXJY * gJx[a]);
            }
            for (int a = 0; a < 3; ++a) {
                const double gXza = g.row(X).dot(zeta[static_cast<std::size_t>(a)]);
                row += gXza * (g * M.J[a].col(Y));
            }
            for (int Z = 0; Z < d; ++Z) S(X, Y, Z) = row[Z];
        }
    }
    return S;
}

Tensor3 to_operator(const Tensor3& S03, const Mat& ginv) {
    const int d = S03.dim();
    Tensor3 out(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int z = 0; z < d; ++z) s += S03(x, y, z) * ginv(z, k);
                out(x, y, k) = s;
            }
    return out;
}

const char* degeneracy_name(Degeneracy d) {
    switch (d) {
        case Degeneracy::NonDegenerate: return "nondegenerate";
        case Degeneracy::Degenerate: return "degenerate";
        default: return "strongly_degenerate";
    }
}

Degeneracy classify_degeneracy(const ModelSpace& M, const Vec& xi,
                               const std::vector<Vec>& zetas, double tol_deg) {
    const double gxx = xi.dot(M.g * xi);
    if (std::abs(gxx) > tol_deg) return Degeneracy::NonDegenerate;
    if (M.is_kahler()) {
        bool all_zero = true;
        for (const Vec& z : zetas) {
            if (z.size() > 0 && z.cwiseAbs().maxCoeff() > tol_deg) all_zero = false;
        }
        if (all_zero) return Degeneracy::StronglyDegenerate;
    }
    return Degeneracy::Degenerate;
}

Eigen::Matrix3d sp1_component(const ModelSpace& M, const Tensor3& S12, const Vec& X,
                              double* residual_out) {
    if (!M.is_quat()) throw std::invalid_argument("sp1_component: quaternionic family only");
    const int d = M.dim;
    // S_X as an endomorphism: (S_X)(k, y) = sum_x X^x S12(x, y, k)
    Mat SX = Mat::Zero(d, d);
    for (int x = 0; x < d; ++x) {
        if (X[x] == 0.0) continue;
        for (int y = 0; y < d; ++y)
            for (int k = 0; k < d; ++k) SX(k, y) += X[x] * S12(x, y, k);
    }
    Mat basis(d * d, 3);
    for (int j = 0; j < 3; ++j) {
        basis.col(j) = Eigen::Map<const Vec>(M.J[static_cast<std::size_t>(j)].data(),
                                             d * d);
    }
    const auto qr = basis.colPivHouseholderQr();
    Eigen::Matrix3d c;
    double res = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Mat Ci = M.J[static_cast<std::size_t>(i)] * SX - SX * M.J[static_cast<std::size_t>(i)];
        const Vec rhs = Eigen::Map<const Vec>(Ci.data(), d * d);
        const Vec sol = qr.solve(rhs);
        for (int j = 0; j < 3; ++j) c(i, j) = sol[j];
        res = std::max(res, (basis * sol - rhs).cwiseAbs().maxCoeff());
    }
    if (residual_out) *residual_out = res;
    return c;
}

double sp1_part_norm(const ModelSpace& M, const Tensor3& S12) {
    double worst = 0.0;
    for (int x = 0; x < M.dim; ++x) {
        const Eigen::Matrix3d c = sp1_component(M, S12, Vec::Unit(M.dim, x), nullptr);
        worst = std::max(worst, c.cwiseAbs().maxCoeff());
    }
    return worst;
}

double symmetry1_residual(const Tensor3& S03) {
    const int d = S03.dim();
    double r = 0.0;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) r = std::max(r, std::abs(S03(x, y, z) + S03(x, z, y)));
    return r;
}

KahlerClassResiduals kahler_symmetry_residuals(const Tensor3& S03, const ModelSpace& M) {
    if (!M.is_kahler()) throw std::invalid_argument("kahler_symmetry_residuals: wrong family");
    KahlerClassResiduals out;
    out.antisym = symmetry1_residual(S03);
    const int d = M.dim;
    const Mat& J = M.J[0];
    double r = 0.0;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) {
                double sjj = 0.0;
                for (int b = 0; b < d; ++b) {
                    if (J(b, y) == 0.0) continue;
                    for (int c = 0; c < d; ++c) sjj += S03(x, b, c) * J(b, y) * J(c, z);
                }
                r = std::max(r, std::abs(sjj + M.eps * S03(x, y, z)));
            }
    out.j_compat = r;
    return out;
}

QuatSymmetryResiduals quat_symmetry_residuals(const Tensor3& S03, const ModelSpace& M) {
    if (!M.is_quat()) throw std::invalid_argument("quat_symmetry_residuals: wrong family");
    QuatSymmetryResiduals out;
    out.antisym = symmetry1_residual(S03);
    const int d = M.dim;
    const Mat& g = M.g;
    // T_a(X,Y,Z) = S(X, J_aY, J_aZ) + eps_a S(X,Y,Z)
    std::array<Tensor3, 3> T;
    for (int a = 0; a < 3; ++a) {
        const Mat& J = M.J[static_cast<std::size_t>(a)];
        T[a] = Tensor3(d);
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z) {
                    double sjj = 0.0;
                    for (int b = 0; b < d; ++b) {
                        if (J(b, y) == 0.0) continue;
                        for (int c = 0; c < d; ++c) sjj += S03(x, b, c) * J(b, y) * J(c, z);
                    }
                    T[a](x, y, z) = sjj + M.eps3[static_cast<std::size_t>(a)] * S03(x, y, z);
                }
    }
    // g(J_b Y, J_a Z) as matrices
    Mat G[3][3];
    for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a)
            G[b][a] = M.J[static_cast<std::size_t>(b)].transpose() * g *
                      M.J[static_cast<std::size_t>(a)];
    const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (int a = 0; a < 3; ++a) out.pi[a] = Vec::Zero(d);
    double res = 0.0;
    for (int X = 0; X < d; ++X) {
        // rows: (a, Y, Z); unknowns: (pi_1(X), pi_2(X), pi_3(X))
        Mat D = Mat::Zero(3 * d * d, 3);
        Vec rhs(3 * d * d);
        int row = 0;
        for (int ci = 0; ci < 3; ++ci) {
            const int a = cyc[ci][0], b = cyc[ci][1], c = cyc[ci][2];
            const double eb = M.eps3[static_cast<std::size_t>(b)];
            const double ec = M.eps3[static_cast<std::size_t>(c)];
            for (int Y = 0; Y < d; ++Y)
                for (int Z = 0; Z < d; ++Z) {
                    D(row, c) = eb * G[b][a](Y, Z);
                    D(row, b) = -ec * G[c][a](Y, Z);
                    rhs[row] = T[a](X, Y, Z);
                    ++row;
                }
        }
        const Vec sol = D.colPivHouseholderQr().solve(rhs);
        for (int a = 0; a < 3; ++a) out.pi[a][X] = sol[a];
        res = std::max(res, (D * sol - rhs).cwiseAbs().maxCoeff());
    }
    out.j_compat = res;
    return out;
}

Tensor3 build_class1(const ModelSpace& M, const Vec& theta) {
    const int d = M.dim;
    Tensor3 S(d);
    for (int a = 0; a < M.num_J(); ++a) {
        const Mat& J = M.J[static_cast<std::size_t>(a)];
        const Vec thJ = J.transpose() * theta;       // theta(J_a X)
        const Mat B = (M.g * J).transpose();         // B(Y,Z) = g(J_a Y, Z)
        for (int x = 0; x < d; ++x) {
            if (thJ[x] == 0.0) continue;
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z) S(x, y, z) += thJ[x] * B(y, z);
        }
    }
    return S;
}

Tensor3 build_class3(const ModelSpace& M, const Vec& theta) {
    const int d = M.dim;
    const Mat& g = M.g;
    Tensor3 S(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) {
                double v = g(x, y) * theta[z] - g(x, z) * theta[y];
                for (int a = 0; a < M.num_J(); ++a) {
                    const Mat& J = M.J[static_cast<std::size_t>(a)];
                    const double gXJY = g.row(x).dot(J.col(y));
                    const double gXJZ = g.row(x).dot(J.col(z));
                    const double thJY = theta.dot(J.col(y));
                    const double thJZ = theta.dot(J.col(z));
                    v -= M.eps_a(a) * (gXJY * thJZ - gXJZ * thJY);
                }
                S(x, y, z) = v;
            }
    return S;
}

Vec c12(const Tensor3& S03, const Mat& g) { return contract12(S03, g); }

namespace {

// Column t of the class-1 design: sum_a (J_a)^T e_t pattern.
Mat class1_design(const ModelSpace& M) {
    const int d = M.dim;
    Mat D = Mat::Zero(d * d * d, d);
    for (int t = 0; t < d; ++t) {
        const Tensor3 S = build_class1(M, Vec::Unit(d, t));
        D.col(t) = Eigen::Map<const Vec>(S.data().data(), d * d * d);
    }
    return D;
}

Mat class3_design(const ModelSpace& M) {
    const int d = M.dim;
    Mat D = Mat::Zero(d * d * d, d);
    for (int t = 0; t < d; ++t) {
        const Tensor3 S = build_class3(M, Vec::Unit(d, t));
        D.col(t) = Eigen::Map<const Vec>(S.data().data(), d * d * d);
    }
    return D;
}

}  // namespace

QKMembership qk_class_membership(const Tensor3& S03, const ModelSpace& M, double tol) {
    if (!M.is_quat()) throw std::invalid_argument("qk_class_membership: quaternionic family only");
    const int d = M.dim;
    const double scale = std::max(1.0, S03.max_abs());
    QKMembership out;
    const Vec svec = Eigen::Map<const Vec>(S03.data().data(), d * d * d);

    const Mat D1 = class1_design(M);
    {
        const Vec th = D1.colPivHouseholderQr().solve(svec);
        out.res_class1 = (D1 * th - svec).cwiseAbs().maxCoeff() / scale;
    }
    // class 2 decouples per X: S(X,.,.) = sum_a theta_a(X) B_a
    {
        std::array<Mat, 3> B;
        for (int a = 0; a < 3; ++a) B[a] = (M.g * M.J[static_cast<std::size_t>(a)]).transpose();
        Mat D = Mat::Zero(d * d, 3);
        for (int a = 0; a < 3; ++a)
            D.col(a) = Eigen::Map<const Vec>(B[a].data(), d * d);
        const auto qr = D.colPivHouseholderQr();
        std::array<Vec, 3> theta;
        for (int a = 0; a < 3; ++a) theta[a] = Vec::Zero(d);
        double res = 0.0;
        for (int X = 0; X < d; ++X) {
            Vec rhs(d * d);
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z) rhs[y + d * z] = 0.0;
            // B matrices were flattened column-major by Eigen::Map; match it.
            for (int z = 0; z < d; ++z)
                for (int y = 0; y < d; ++y) rhs[y + d * z] = S03(X, y, z);
            const Vec sol = qr.solve(rhs);
            for (int a = 0; a < 3; ++a) theta[a][X] = sol[a];
            res = std::max(res, (D * sol - rhs).cwiseAbs().maxCoeff());
        }
        out.res_class2 = res / scale;
        Vec tr = Vec::Zero(d);
        for (int a = 0; a < 3; ++a)
            tr += M.J[static_cast<std::size_t>(a)].transpose() * theta[a];
        out.trace_condition2 = tr.cwiseAbs().maxCoeff() / scale;
    }
    const Mat D3 = class3_design(M);
    {
        const Vec th = D3.colPivHouseholderQr().solve(svec);
        out.res_class3 = (D3 * th - svec).cwiseAbs().maxCoeff() / scale;
        out.theta_class3 = th;
    }
    {
        // Combined span: class1 + class2 + class3.  Class-2 columns indexed (a, t).
        Mat D = Mat::Zero(d * d * d, d + 3 * d + d);
        D.block(0, 0, d * d * d, d) = D1;
        for (int a = 0; a < 3; ++a) {
            const Mat B = (M.g * M.J[static_cast<std::size_t>(a)]).transpose();
            for (int t = 0; t < d; ++t) {
                Tensor3 S(d);
                for (int y = 0; y < d; ++y)
                    for (int z = 0; z < d; ++z) S(t, y, z) = B(y, z);
                D.col(d + a * d + t) =
                    Eigen::Map<const Vec>(S.data().data(), d * d * d);
            }
        }
        D.block(0, 4 * d, d * d * d, d) = D3;
        Eigen::CompleteOrthogonalDecomposition<Mat> cod(D);
        const Vec sol = cod.solve(svec);
        out.res_class123 = (D * sol - svec).cwiseAbs().maxCoeff() / scale;
    }
    out.c12_norm = c12(S03, M.g).cwiseAbs().maxCoeff();
    out.flag_class1 = out.res_class1 < tol;
    out.flag_class2 = out.res_class2 < tol && out.trace_condition2 < tol;
    out.flag_class3 = out.res_class3 < tol;
    return out;
}

}  // namespace homlt
