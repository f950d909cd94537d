#include "homlt/realization.hpp"

#include <Eigen/SVD>

namespace homlt {

namespace {

HCS hcs_scaled(const HCS& q, double s) { return q * s; }

}  // namespace

HCMat Realization::n1(const std::vector<HCS>& v) const {
    if (static_cast<int>(v.size()) != n - 1)
        throw std::invalid_argument("n1: expected one scalar per coordinate slot");
    HCMat C = zero();
    const HCAlgebra& A = *hc;
    if (cs == Case::KahlerPara) {
        const HCS e = hc_unit(1);
        for (int m = 0; m < n - 1; ++m) {
            C.at(m, N - 2) = -hc_mul(A, e, v[static_cast<std::size_t>(m)]);
            C.at(m, N - 1) = v[static_cast<std::size_t>(m)];
            C.at(N - 2, m) = -hc_mul(A, e, hc_conj(v[static_cast<std::size_t>(m)]));
            C.at(N - 1, m) = -hc_conj(v[static_cast<std::size_t>(m)]);
        }
    } else if (cs == Case::QuatPara) {
        const HCS j = hc_unit(2);
        for (int m = 0; m < n - 1; ++m) {
            C.at(m, N - 2) = -hc_mul(A, v[static_cast<std::size_t>(m)], j);
            C.at(m, N - 1) = v[static_cast<std::size_t>(m)];
            C.at(N - 2, m) = -hc_mul(A, j, hc_conj(v[static_cast<std::size_t>(m)]));
            C.at(N - 1, m) = -hc_conj(v[static_cast<std::size_t>(m)]);
        }
    } else {
        for (int m = 0; m < n - 1; ++m) C.at(m, N - 1) = v[static_cast<std::size_t>(m)];
        // pair slots swap under the coordinate-block form before conjugation
        std::vector<HCS> sv(v.size());
        for (int m = 0; m < slots.nunit; ++m) sv[static_cast<std::size_t>(m)] = v[static_cast<std::size_t>(m)];
        for (int p = 0; p < slots.npair; ++p) {
            const int a = slots.nunit + 2 * p, b = a + 1;
            sv[static_cast<std::size_t>(a)] = v[static_cast<std::size_t>(b)];
            sv[static_cast<std::size_t>(b)] = v[static_cast<std::size_t>(a)];
        }
        for (int m = 0; m < n - 1; ++m)
            C.at(N - 2, m) = -hc_conj(sv[static_cast<std::size_t>(m)]);
    }
    return C;
}

HCMat Realization::n2(const HCS& q) const {
    HCMat C = zero();
    const HCAlgebra& A = *hc;
    if (cs == Case::KahlerPara) {
        const HCS e = hc_unit(1);
        C.at(N - 2, N - 2) = -hc_mul(A, e, q);
        C.at(N - 2, N - 1) = q;
        C.at(N - 1, N - 2) = -q;
        C.at(N - 1, N - 1) = hc_mul(A, e, q);
    } else if (cs == Case::QuatPara) {
        const HCS j = hc_unit(2);
        C.at(N - 2, N - 2) = -hc_mul(A, hc_mul(A, j, q), j);
        C.at(N - 2, N - 1) = hc_mul(A, j, q);
        C.at(N - 1, N - 2) = hc_mul(A, hc_conj(q), j);
        C.at(N - 1, N - 1) = q;
    } else {
        C.at(N - 2, N - 1) = q;
    }
    return C;
}

HCMat Realization::jscr(int a) const {
    HCMat C = zero();
    if (is_kahler_case(cs)) {
        const HCS u = hc_unit(1);
        for (int m = 0; m < n - 1; ++m) C.at(m, m) = hcs_scaled(u, -2.0 / (n + 1));
        C.at(N - 2, N - 2) = hcs_scaled(u, static_cast<double>(n - 1) / (n + 1));
        C.at(N - 1, N - 1) = hcs_scaled(u, static_cast<double>(n - 1) / (n + 1));
    } else if (cs == Case::QuatPara) {
        const HCS qa = hc_unit(a + 1);
        if (a == 0 || a == 2) {
            C.at(N - 2, N - 2) = -qa;
            C.at(N - 1, N - 1) = qa;
        } else {
            C.at(N - 2, N - 2) = qa;
            C.at(N - 1, N - 1) = qa;
        }
    } else {
        const HCS qa = hc_unit(a + 1);
        C.at(N - 2, N - 2) = qa;
        C.at(N - 1, N - 1) = qa;
    }
    return C;
}

std::vector<HCS> Realization::iota(const Vec& Z) const {
    std::vector<HCS> out;
    for (const Mat& Msl : slots.slot_mats) {
        const Vec co = Msl * Z;  // hdim entries
        HCS q = HCS::Zero();
        for (int a = 0; a < hc->dim; ++a) q[a] = co[a];
        out.push_back(q);
    }
    return out;
}

HCMat Realization::phi(const Vec& Z, const Vec& hol_co) const {
    const double co_xi = Z.dot(g * xi) / gxx;
    HCMat C = co_xi * gxx * A0;
    Vec rest = Z - co_xi * xi;
    for (int a = 0; a < nh; ++a) {
        const Vec Ja_xi = J[static_cast<std::size_t>(a)] * xi;
        const double co = rest.dot(g * Ja_xi) / Ja_xi.dot(g * Ja_xi);
        rest -= co * Ja_xi;
        if (cs == Case::KahlerPara)
            C += co * n2(hc_unit(0)) + (co * gxx) * jscr(0);
        else if (cs == Case::KahlerPseudo)
            C += co * n2(hc_unit(1)) + (co * gxx) * jscr(0);
        else
            C += co * n2(hc_unit(a + 1)) + (co * gxx) * jscr(a);
    }
    C += n1(iota(rest));
    for (int a = 0; a < nh; ++a) C += hol_co[a] * jscr(a);
    return C;
}

double Realization::member_residual(const HCMat& C) const {
    double r;
    if (cs == Case::KahlerPara || cs == Case::QuatPara) {
        r = (hc_conjT(C) + C).max_abs();
    } else {
        r = (hc_matmul(hc_conjT(C), Sigma) + hc_matmul(Sigma, C)).max_abs();
    }
    if (is_kahler_case(cs)) r = std::max(r, hc_trace(C).cwiseAbs().maxCoeff());
    return r;
}

Realization build_realization(const ModelSpace& M, const Vec& xi) {
    return build_realization(M, xi, adapted_frame(M, xi));
}

Realization build_realization(const ModelSpace& M, const Vec& xi,
                              const AdaptedFrame& af) {
    Realization rz;
    rz.cs = M.cs;
    rz.n = M.n;
    rz.N = M.n + 1;
    rz.nh = M.num_J();
    rz.xi = xi;
    rz.g = M.g;
    rz.J = M.J;
    rz.af = af;
    rz.gxx = xi.dot(M.g * xi);
    if (!(rz.gxx > 0.0))
        throw std::domain_error("build_realization: requires g(xi,xi) > 0");
    rz.slots = slot_layout(M, af);
    rz.hc = &HCAlgebra::get(rz.slots.kind);

    int npos = 0, nneg = 0;
    for (const LineFrame& lf : af.lines) (lf.sign > 0 ? npos : nneg)++;
    if (nneg > npos)
        throw std::domain_error(
            "build_realization: split outside the realizable range (more negative "
            "than positive lines)");

    const int N = rz.N;
    const HCS one = hc_unit(0);
    rz.Sigma = HCMat::zero(*rz.hc, N, N);
    if (M.cs == Case::KahlerPara || M.cs == Case::QuatPara) {
        for (int i = 0; i < N; ++i) rz.Sigma.at(i, i) = one;
    } else {
        for (int i = 0; i < rz.slots.nunit; ++i) rz.Sigma.at(i, i) = one;
        for (int p = 0; p < rz.slots.npair; ++p) {
            const int a = rz.slots.nunit + 2 * p, b = a + 1;
            rz.Sigma.at(a, b) = one;
            rz.Sigma.at(b, a) = one;
        }
        rz.Sigma.at(N - 2, N - 1) = one;
        rz.Sigma.at(N - 1, N - 2) = one;
    }

    rz.A0 = HCMat::zero(*rz.hc, N, N);
    if (M.cs == Case::KahlerPara) {
        const HCS e = hc_unit(1);
        rz.A0.at(N - 2, N - 1) = e;
        rz.A0.at(N - 1, N - 2) = e;
    } else if (M.cs == Case::QuatPara) {
        const HCS j = hc_unit(2);
        rz.A0.at(N - 2, N - 1) = j;
        rz.A0.at(N - 1, N - 2) = j;
    } else {
        rz.A0.at(N - 2, N - 2) = one;
        rz.A0.at(N - 1, N - 1) = -one;
    }

    const int p = rz.slots.nunit + rz.slots.npair + 1;
    const int q = rz.slots.npair + 1;
    switch (M.cs) {
        case Case::KahlerPara:
            rz.algebra_ref = "sl(" + std::to_string(N) + ",R)";
            break;
        case Case::KahlerPseudo:
            rz.algebra_ref = "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
            break;
        case Case::QuatPara:
            rz.algebra_ref = "sp(" + std::to_string(2 * N) + ",R)";
            break;
        case Case::QuatPseudo:
            rz.algebra_ref = "sp(" + std::to_string(p) + "," + std::to_string(q) + ")";
            break;
    }
    return rz;
}

HomReport homomorphism_residual(const NomizuAlgebra& alg, const Realization& rz) {
    HomReport rep;
    const Vec h0 = Vec::Zero(alg.nh);
    for (int i = 0; i < alg.nm; ++i)
        rep.images.push_back(rz.phi(alg.mvecs[static_cast<std::size_t>(i)], h0));
    for (int a = 0; a < alg.nh; ++a) {
        Vec co = Vec::Zero(alg.nh);
        co[a] = 1.0;
        rep.images.push_back(rz.phi(Vec::Zero(alg.d), co));
    }
    for (const HCMat& C : rep.images)
        rep.membership = std::max(rep.membership, rz.member_residual(C));

    for (int i = 0; i < alg.N; ++i)
        for (int j = i + 1; j < alg.N; ++j) {
            HCMat lhs = hc_commutator(rep.images[static_cast<std::size_t>(i)],
                                      rep.images[static_cast<std::size_t>(j)]);
            for (int k = 0; k < alg.N; ++k) {
                const double co = alg.c(i, j, k);
                if (co != 0.0) lhs -= co * rep.images[static_cast<std::size_t>(k)];
            }
            rep.hom = std::max(rep.hom, lhs.max_abs());
        }

    Mat F(rep.images[0].flatten().size(), alg.N);
    for (int j = 0; j < alg.N; ++j)
        F.col(j) = rep.images[static_cast<std::size_t>(j)].flatten();
    Eigen::JacobiSVD<Mat> svd(F);
    const Vec sv = svd.singularValues();
    rep.injectivity = sv[sv.size() - 1] / sv[0];
    return rep;
}

}  // namespace homlt
