#include "homlt/nomizu.hpp"

#include <Eigen/SVD>

namespace homlt {

Tensor4 rt_operator(const ModelSpace& M, const Vec& xi, const Tensor3& S12) {
    const double gxx = xi.dot(M.g * xi);
    Tensor4 Rt = curvature_operator(M, gxx);
    const Tensor4 RS = rs_operator(S12);
    for (std::size_t i = 0; i < Rt.data().size(); ++i) Rt.data()[i] -= RS.data()[i];
    return Rt;
}

namespace {

Mat action_matrix(const Tensor4& T, int x, int y) {
    const int d = T.dim();
    Mat A(d, d);  // A(k,z): (T_{xy} v)^k = A(k,z) v^z
    for (int z = 0; z < d; ++z)
        for (int k = 0; k < d; ++k) A(k, z) = T(x, y, z, k);
    return A;
}

Vec flatten(const Mat& A) {
    return Eigen::Map<const Vec>(A.data(), A.size());
}

// Orthonormal basis of the span of the given flattened matrices.
std::vector<Mat> svd_span(const std::vector<Mat>& mats, int d, double rel_tol) {
    if (mats.empty()) return {};
    Mat St(static_cast<int>(mats.size()), d * d);
    for (int i = 0; i < static_cast<int>(mats.size()); ++i)
        St.row(i) = flatten(mats[static_cast<std::size_t>(i)]).transpose();
    Eigen::JacobiSVD<Mat> svd(St, Eigen::ComputeThinV);
    const Vec sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0) return {};
    std::vector<Mat> out;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] <= rel_tol * sv[0]) break;
        out.push_back(Eigen::Map<const Mat>(svd.matrixV().col(i).data(), d, d));
    }
    return out;
}

}  // namespace

std::vector<Mat> holonomy_span(const Tensor4& Rt, double rel_tol, int closure_cap) {
    const int d = Rt.dim();
    std::vector<Mat> gens;
    for (int x = 0; x < d; ++x)
        for (int y = x + 1; y < d; ++y) gens.push_back(action_matrix(Rt, x, y));
    std::vector<Mat> basis = svd_span(gens, d, rel_tol);
    for (int round = 0; round < closure_cap; ++round) {
        std::vector<Mat> all = basis;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                all.push_back(basis[i] * basis[j] - basis[j] * basis[i]);
        std::vector<Mat> next = svd_span(all, d, rel_tol);
        if (next.size() == basis.size()) return next;
        basis = std::move(next);
    }
    throw std::runtime_error("holonomy_span: commutator closure did not stabilize");
}

double span_match_residual(const std::vector<Mat>& span, const std::vector<Mat>& gens) {
    if (span.empty()) return 0.0;
    if (gens.empty()) {
        double worst = 0.0;
        for (const Mat& S : span) worst = std::max(worst, S.cwiseAbs().maxCoeff());
        return worst;
    }
    const int d2 = static_cast<int>(gens[0].size());
    Mat G(d2, static_cast<int>(gens.size()));
    for (int j = 0; j < static_cast<int>(gens.size()); ++j)
        G.col(j) = flatten(gens[static_cast<std::size_t>(j)]);
    const auto cod = G.completeOrthogonalDecomposition();
    double worst = 0.0;
    for (const Mat& S : span) {
        const Vec s = flatten(S);
        const Vec c = cod.solve(s);
        worst = std::max(worst, (G * c - s).cwiseAbs().maxCoeff());
    }
    return worst;
}

AdaptedFrame adapted_frame(const ModelSpace& M, const Vec& xi) {
    const int d = M.dim;
    const Mat& g = M.g;
    const int nh = M.num_J();
    AdaptedFrame af;
    af.xi = xi;
    for (int a = 0; a < nh; ++a) af.jxi.push_back(M.J[static_cast<std::size_t>(a)] * xi);

    std::vector<Vec> used;
    used.push_back(xi);
    for (const Vec& v : af.jxi) used.push_back(v);

    const auto gproj = [&](const Vec& v) {
        Mat U(d, static_cast<int>(used.size()));
        for (int j = 0; j < static_cast<int>(used.size()); ++j)
            U.col(j) = used[static_cast<std::size_t>(j)];
        const Mat G = U.transpose() * g * U;
        return Vec(v - U * G.colPivHouseholderQr().solve(U.transpose() * (g * v)));
    };

    const int nlines = (d - (nh + 1)) / (nh + 1);
    for (int line = 0; line < nlines; ++line) {
        Vec best;
        double bval = 0.0;
        for (int cidx = 0; cidx < d; ++cidx) {
            Vec w = gproj(Vec::Unit(d, cidx));
            const double nn = w.norm();
            if (nn < 1e-8) continue;
            w /= nn;
            const double val = std::abs(w.dot(g * w));
            if (val > bval + 1e-12) {
                best = w;
                bval = val;
            }
        }
        if (bval == 0.0)
            throw std::runtime_error("adapted_frame: no anisotropic line candidate");
        Vec X = best / std::sqrt(std::abs(best.dot(g * best)));
        if (M.cs == Case::KahlerPara && X.dot(g * X) < 0.0) X = M.J[0] * X;
        if (M.cs == Case::QuatPara && X.dot(g * X) < 0.0) X = M.J[1] * X;
        LineFrame lf;
        lf.sign = X.dot(g * X) >= 0.0 ? 1.0 : -1.0;
        lf.fr.push_back(X);
        for (int a = 0; a < nh; ++a) lf.fr.push_back(M.J[static_cast<std::size_t>(a)] * X);
        for (const Vec& v : lf.fr) used.push_back(v);
        af.lines.push_back(std::move(lf));
    }
    return af;
}

SlotLayout slot_layout(const ModelSpace& M, const AdaptedFrame& af) {
    SlotLayout sl;
    switch (M.cs) {
        case Case::KahlerPara: sl.kind = HCAlgebra::Kind::ParaComplex; break;
        case Case::KahlerPseudo: sl.kind = HCAlgebra::Kind::Complex; break;
        case Case::QuatPara: sl.kind = HCAlgebra::Kind::ParaQuaternion; break;
        case Case::QuatPseudo: sl.kind = HCAlgebra::Kind::Quaternion; break;
    }
    const int hdim = HCAlgebra::get(sl.kind).dim;
    const Mat& g = M.g;
    const int d = M.dim;

    const auto kap_mat = [&](const std::vector<Vec>& fr) {
        Mat K(hdim, d);
        for (int a = 0; a < hdim; ++a) {
            const Vec& v = fr[static_cast<std::size_t>(a)];
            const double nv = v.dot(g * v);
            K.row(a) = ((g * v) / nv).transpose() * (a == 0 ? 1.0 : -1.0);
        }
        return K;
    };

    std::vector<const LineFrame*> pos, neg;
    for (const LineFrame& lf : af.lines)
        (lf.sign > 0 ? pos : neg).push_back(&lf);
    sl.npair = static_cast<int>(std::min(pos.size(), neg.size()));
    sl.nunit = static_cast<int>(pos.size() + neg.size()) - 2 * sl.npair;

    for (std::size_t i = static_cast<std::size_t>(sl.npair); i < pos.size(); ++i)
        sl.slot_mats.push_back(kap_mat(pos[i]->fr));
    for (std::size_t i = static_cast<std::size_t>(sl.npair); i < neg.size(); ++i)
        sl.slot_mats.push_back(kap_mat(neg[i]->fr));
    const double rt2 = std::sqrt(2.0);
    for (int p = 0; p < sl.npair; ++p) {
        const Mat Mp = kap_mat(pos[static_cast<std::size_t>(p)]->fr);
        const Mat Mn = kap_mat(neg[static_cast<std::size_t>(p)]->fr);
        sl.slot_mats.push_back((Mp + Mn) / rt2);
        sl.slot_mats.push_back((Mp - Mn) / rt2);
    }
    return sl;
}

NomizuAlgebra nomizu_build(const ModelSpace& M, const Vec& xi, const Tensor3& S12,
                           const std::vector<Vec>& mvecs, const std::vector<Mat>& hmats,
                           std::vector<std::string> labels) {
    NomizuAlgebra alg;
    alg.d = M.dim;
    alg.nm = static_cast<int>(mvecs.size());
    alg.nh = static_cast<int>(hmats.size());
    alg.N = alg.nm + alg.nh;
    alg.mvecs = mvecs;
    alg.hmats = hmats;
    const int d = alg.d;

    if (labels.empty()) {
        for (int i = 0; i < alg.nm; ++i) labels.push_back("e" + std::to_string(i));
        for (int a = 0; a < alg.nh; ++a) labels.push_back("hol" + std::to_string(a + 1));
    }
    if (static_cast<int>(labels.size()) != alg.N)
        throw std::invalid_argument("nomizu_build: label count mismatch");
    alg.labels = std::move(labels);
    for (int i = 0; i < alg.nm; ++i) alg.parts.push_back('m');
    for (int a = 0; a < alg.nh; ++a) alg.parts.push_back('h');

    const Tensor4 Rt = rt_operator(M, xi, S12);

    Mat Mm(d, alg.nm);
    for (int j = 0; j < alg.nm; ++j) Mm.col(j) = mvecs[static_cast<std::size_t>(j)];
    const auto m_cod = Mm.completeOrthogonalDecomposition();
    Mat Hh(d * d, std::max(alg.nh, 1));
    for (int j = 0; j < alg.nh; ++j)
        Hh.col(j) = Eigen::Map<const Vec>(hmats[static_cast<std::size_t>(j)].data(),
                                          static_cast<Eigen::Index>(d) * d);
    const auto h_cod = Hh.completeOrthogonalDecomposition();

    const auto expand = [&](const Vec* mv, const Mat* hm) {
        Vec co = Vec::Zero(alg.N);
        if (mv != nullptr) {
            const Vec cm = m_cod.solve(*mv);
            co.head(alg.nm) = cm;
            alg.expand_residual =
                std::max(alg.expand_residual, (Mm * cm - *mv).cwiseAbs().maxCoeff());
        }
        if (hm != nullptr && alg.nh > 0) {
            const Vec hv = Eigen::Map<const Vec>(hm->data(),
                                                 static_cast<Eigen::Index>(d) * d);
            const Vec ch = h_cod.solve(hv);
            co.tail(alg.nh) = ch;
            alg.expand_residual =
                std::max(alg.expand_residual, (Hh * ch - hv).cwiseAbs().maxCoeff());
        }
        return co;
    };

    alg.c = Tensor3(alg.N);
    for (int i = 0; i < alg.N; ++i)
        for (int j = i + 1; j < alg.N; ++j) {
            Vec co;
            if (i < alg.nm && j < alg.nm) {
                const Vec& x = mvecs[static_cast<std::size_t>(i)];
                const Vec& y = mvecs[static_cast<std::size_t>(j)];
                Vec mv = Vec::Zero(d);
                Mat hm = Mat::Zero(d, d);
                for (int a = 0; a < d; ++a) {
                    if (x[a] == 0.0) continue;
                    for (int b = 0; b < d; ++b) {
                        const double w = x[a] * y[b];
                        if (w == 0.0) continue;
                        for (int k = 0; k < d; ++k)
                            mv[k] += w * (S12(a, b, k) - S12(b, a, k));
                    }
                }
                for (int k = 0; k < d; ++k)
                    for (int z = 0; z < d; ++z) {
                        double s = 0.0;
                        for (int a = 0; a < d; ++a) {
                            if (x[a] == 0.0) continue;
                            for (int b = 0; b < d; ++b)
                                s += x[a] * y[b] * Rt(a, b, z, k);
                        }
                        hm(k, z) = s;
                    }
                co = expand(&mv, &hm);
            } else if (i < alg.nm) {
                const Mat& A = hmats[static_cast<std::size_t>(j - alg.nm)];
                const Vec mv = -(A * mvecs[static_cast<std::size_t>(i)]);
                co = expand(&mv, nullptr);
            } else {
                const Mat& A = hmats[static_cast<std::size_t>(i - alg.nm)];
                const Mat& B = hmats[static_cast<std::size_t>(j - alg.nm)];
                const Mat hm = A * B - B * A;
                co = expand(nullptr, &hm);
            }
            for (int k = 0; k < alg.N; ++k) {
                alg.c(i, j, k) = co[k];
                alg.c(j, i, k) = -co[k];
            }
        }

    alg.gt = Mat::Zero(alg.N, alg.N);
    alg.gt.topLeftCorner(alg.nm, alg.nm) =
        Mm.transpose() * M.g * Mm;  // metric in the given tangent basis
    return alg;
}

NomizuAlgebra standard_nomizu(const ModelSpace& M, const Vec& xi, const Tensor3& S12) {
    std::vector<Vec> mvecs;
    for (int i = 0; i < M.dim; ++i) mvecs.push_back(Vec::Unit(M.dim, i));
    return nomizu_build(M, xi, S12, mvecs, canonical_holonomy(M, xi));
}

NomizuAlgebra adapted_nomizu(const ModelSpace& M, const Vec& xi, const Tensor3& S12,
                             const AdaptedFrame& af) {
    std::vector<Vec> mvecs;
    std::vector<std::string> labels;
    mvecs.push_back(af.xi);
    labels.push_back("xi");
    const int nh = M.num_J();
    for (int a = 0; a < nh; ++a) {
        mvecs.push_back(af.jxi[static_cast<std::size_t>(a)]);
        labels.push_back(M.is_kahler() ? "Jxi" : "J" + std::to_string(a + 1) + "xi");
    }
    int ell = 0;
    for (const LineFrame& lf : af.lines) {
        ++ell;
        mvecs.push_back(lf.fr[0]);
        labels.push_back("Z" + std::to_string(ell));
        for (int a = 0; a < nh; ++a) {
            mvecs.push_back(lf.fr[static_cast<std::size_t>(a + 1)]);
            labels.push_back((M.is_kahler() ? "J" : "J" + std::to_string(a + 1)) + "Z" +
                             std::to_string(ell));
        }
    }
    for (int a = 0; a < nh; ++a) labels.push_back("hol" + std::to_string(a + 1));
    return nomizu_build(M, xi, S12, mvecs, canonical_holonomy(M, xi), labels);
}

double jacobi_residual(const Tensor3& c) {
    const int N = c.dim();
    double cmax = 0.0;
    for (const double v : c.data()) cmax = std::max(cmax, std::abs(v));
    const double worst = max_reduce(
        static_cast<std::ptrdiff_t>(N) * N * N, [&](std::ptrdiff_t idx) {
            int rem = static_cast<int>(idx);
            const int k = rem % N; rem /= N;
            const int j = rem % N; rem /= N;
            const int i = rem;
            double w = 0.0;
            for (int l = 0; l < N; ++l) {
                double s = 0.0;
                for (int m = 0; m < N; ++m)
                    s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) +
                         c(k, i, m) * c(m, j, l);
                w = std::max(w, std::abs(s));
            }
            return w;
        });
    return worst / std::max(1.0, cmax * cmax);
}

std::map<std::string, double> reference_bracket_residuals(const ModelSpace& M,
                                                          const Vec& xi,
                                                          const Tensor3& S12) {
    const int d = M.dim;
    const Mat& g = M.g;
    const double gxx = xi.dot(g * xi);
    const Tensor4 Rt = rt_operator(M, xi, S12);
    const std::vector<Mat> E = canonical_holonomy(M, xi);
    const int nh = static_cast<int>(E.size());

    Mat A(d * d, nh);
    for (int j = 0; j < nh; ++j)
        A.col(j) = Eigen::Map<const Vec>(E[static_cast<std::size_t>(j)].data(),
                                         static_cast<Eigen::Index>(d) * d);
    const auto cod = A.completeOrthogonalDecomposition();

    // bracket of two tangent vectors: tangent part and hol coefficients
    const auto bk = [&](const Vec& x, const Vec& y, Vec& mv, Vec& ch) {
        mv = Vec::Zero(d);
        Mat hm = Mat::Zero(d, d);
        for (int a = 0; a < d; ++a) {
            if (x[a] == 0.0 && y[a] == 0.0) continue;
            for (int b = 0; b < d; ++b)
                for (int k = 0; k < d; ++k)
                    mv[k] += x[a] * y[b] * (S12(a, b, k) - S12(b, a, k));
        }
        for (int k = 0; k < d; ++k)
            for (int z = 0; z < d; ++z) {
                double s = 0.0;
                for (int a = 0; a < d; ++a) {
                    if (x[a] == 0.0) continue;
                    for (int b = 0; b < d; ++b) s += x[a] * y[b] * Rt(a, b, z, k);
                }
                hm(k, z) = s;
            }
        ch = cod.solve(Eigen::Map<const Vec>(hm.data(), static_cast<Eigen::Index>(d) * d));
    };

    const AdaptedFrame af = adapted_frame(M, xi);
    std::vector<Vec> Us;
    for (const LineFrame& lf : af.lines)
        for (const Vec& v : lf.fr) Us.push_back(v);

    std::map<std::string, double> out;
    Vec mv, ch;
    if (M.is_kahler()) {
        const Mat& J = M.J[0];
        const Vec Jxi = af.jxi[0];
        bk(xi, Jxi, mv, ch);
        Vec want_h = Vec::Zero(nh);
        want_h[0] = -2.0 * gxx * gxx;
        out["xi,Jxi"] = std::max((mv - 2.0 * gxx * Jxi).cwiseAbs().maxCoeff(),
                                 (ch - want_h).cwiseAbs().maxCoeff());
        double r1 = 0.0, r2 = 0.0, r3 = 0.0;
        for (const Vec& Z : Us) {
            bk(xi, Z, mv, ch);
            r1 = std::max({r1, (mv - gxx * Z).cwiseAbs().maxCoeff(),
                           ch.cwiseAbs().maxCoeff()});
            bk(Jxi, Z, mv, ch);
            r2 = std::max({r2, (mv - gxx * (J * Z)).cwiseAbs().maxCoeff(),
                           ch.cwiseAbs().maxCoeff()});
        }
        out["xi,Z"] = r1;
        out["Jxi,Z"] = r2;
        for (const Vec& Z1 : Us)
            for (const Vec& Z2 : Us) {
                bk(Z1, Z2, mv, ch);
                const double co = 2.0 * M.eps * Z1.dot(g * (J * Z2));
                Vec wh = Vec::Zero(nh);
                wh[0] = -co * gxx;
                r3 = std::max({r3, (mv - co * Jxi).cwiseAbs().maxCoeff(),
                               (ch - wh).cwiseAbs().maxCoeff()});
            }
        out["Z1,Z2"] = r3;
    } else {
        double r = 0.0;
        for (const Vec& Z : Us) {
            bk(xi, Z, mv, ch);
            r = std::max({r, (mv - gxx * Z).cwiseAbs().maxCoeff(),
                          ch.cwiseAbs().maxCoeff()});
        }
        out["xi,Z"] = r;
        r = 0.0;
        for (int a = 0; a < 3; ++a)
            for (const Vec& Z : Us) {
                bk(af.jxi[static_cast<std::size_t>(a)], Z, mv, ch);
                r = std::max(
                    {r,
                     (mv - gxx * (M.J[static_cast<std::size_t>(a)] * Z)).cwiseAbs().maxCoeff(),
                     ch.cwiseAbs().maxCoeff()});
            }
        out["Jaxi,Z"] = r;
        r = 0.0;
        for (int a = 0; a < 3; ++a) {
            bk(xi, af.jxi[static_cast<std::size_t>(a)], mv, ch);
            Vec wh = Vec::Zero(nh);
            wh[a] = -2.0 * gxx * gxx;
            r = std::max(
                {r, (mv - 2.0 * gxx * af.jxi[static_cast<std::size_t>(a)]).cwiseAbs().maxCoeff(),
                 (ch - wh).cwiseAbs().maxCoeff()});
        }
        out["xi,Jaxi"] = r;
        r = 0.0;
        const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
        for (const auto& t : cyc) {
            const int a = t[0], b = t[1], cdx = t[2];
            bk(af.jxi[static_cast<std::size_t>(a)], af.jxi[static_cast<std::size_t>(b)], mv, ch);
            const double ec = M.eps3[static_cast<std::size_t>(cdx)];
            Vec wm, wh = Vec::Zero(nh);
            if (M.cs == Case::QuatPara) {
                wm = ec * 4.0 * gxx * af.jxi[static_cast<std::size_t>(cdx)];
                wh[cdx] = -ec * 2.0 * gxx * gxx;
            } else {
                wm = 4.0 * gxx * af.jxi[static_cast<std::size_t>(cdx)];
                wh[cdx] = -2.0 * gxx * gxx;
            }
            r = std::max({r, (mv - wm).cwiseAbs().maxCoeff(),
                          (ch - wh).cwiseAbs().maxCoeff()});
        }
        out["Jaxi,Jbxi"] = r;
        r = 0.0;
        for (const Vec& Z1 : Us)
            for (const Vec& Z2 : Us) {
                bk(Z1, Z2, mv, ch);
                Vec wm = Vec::Zero(d), wh = Vec::Zero(nh);
                for (int a = 0; a < 3; ++a) {
                    const double co = 2.0 * M.eps3[static_cast<std::size_t>(a)] *
                                      Z1.dot(g * (M.J[static_cast<std::size_t>(a)] * Z2));
                    wm += co * af.jxi[static_cast<std::size_t>(a)];
                    wh[a] = -co * gxx;
                }
                r = std::max({r, (mv - wm).cwiseAbs().maxCoeff(),
                              (ch - wh).cwiseAbs().maxCoeff()});
            }
        out["Z1,Z2"] = r;
    }
    return out;
}

}  // namespace homlt
