#include "homlt/involutions.hpp"

#include <Eigen/SVD>

namespace homlt {

namespace {

// Adapted coordinates: row 0 reads off the xi coefficient, rows 1..nh the
// J_a xi coefficients, then one block of rows per slot (hdim each).
Mat adapted_T(const ModelSpace& M, const Vec& xi, const SlotLayout& slots) {
    const int d = M.dim;
    const int nh = M.num_J();
    const double gxx = xi.dot(M.g * xi);
    const int hdim = HCAlgebra::get(slots.kind).dim;
    Mat T(d, d);
    int r = 0;
    T.row(r++) = (M.g * xi).transpose() / gxx;
    for (int a = 0; a < nh; ++a) {
        const Vec Ja_xi = M.J[static_cast<std::size_t>(a)] * xi;
        T.row(r++) = (M.g * Ja_xi).transpose() / Ja_xi.dot(M.g * Ja_xi);
    }
    for (const Mat& Msl : slots.slot_mats)
        for (int a = 0; a < hdim; ++a) T.row(r++) = Msl.row(a);
    if (r != d) throw std::logic_error("adapted_T: row count mismatch");
    return T;
}

struct SlotAction {
    std::vector<double> comp_signs;  // one sign per scalar component
    std::vector<int> perm;           // out slot m takes in slot perm[m]
    std::vector<double> slot_signs;  // extra sign per out slot
};

SlotAction identity_action(int nslots, int hdim) {
    SlotAction a;
    a.comp_signs.assign(static_cast<std::size_t>(hdim), 1.0);
    for (int m = 0; m < nslots; ++m) {
        a.perm.push_back(m);
        a.slot_signs.push_back(1.0);
    }
    return a;
}

// Negate every slot except the last.
SlotAction negate_but_last(int nslots, int hdim) {
    SlotAction a = identity_action(nslots, hdim);
    for (int m = 0; m + 1 < nslots; ++m) a.slot_signs[static_cast<std::size_t>(m)] = -1.0;
    return a;
}

// Negate every slot and swap the last two (the distinguished pair).
SlotAction negate_swap_last_pair(int nslots, int hdim) {
    SlotAction a = identity_action(nslots, hdim);
    for (int m = 0; m < nslots; ++m) a.slot_signs[static_cast<std::size_t>(m)] = -1.0;
    if (nslots < 2)
        throw std::domain_error("involution needs at least two slots to swap");
    std::swap(a.perm[static_cast<std::size_t>(nslots - 2)],
              a.perm[static_cast<std::size_t>(nslots - 1)]);
    return a;
}

Mat build_involution(const ModelSpace& M, const Mat& T, const Mat& Tinv, int nslots,
                     int hdim, double xi_sign, const std::vector<double>& jaxi_signs,
                     const SlotAction& act, const std::vector<double>& hol_signs) {
    const int d = M.dim;
    const int nh = M.num_J();
    Mat D = Mat::Zero(d, d);
    D(0, 0) = xi_sign;
    for (int a = 0; a < nh; ++a) D(1 + a, 1 + a) = jaxi_signs[static_cast<std::size_t>(a)];
    const int base = 1 + nh;
    for (int m = 0; m < nslots; ++m)
        for (int cpt = 0; cpt < hdim; ++cpt)
            D(base + m * hdim + cpt, base + act.perm[static_cast<std::size_t>(m)] * hdim + cpt) =
                act.slot_signs[static_cast<std::size_t>(m)] *
                act.comp_signs[static_cast<std::size_t>(cpt)];
    const Mat S = Tinv * D * T;
    const int Nf = d + nh;
    Mat F = Mat::Zero(Nf, Nf);
    F.topLeftCorner(d, d) = S;
    for (int a = 0; a < nh; ++a) F(d + a, d + a) = hol_signs[static_cast<std::size_t>(a)];
    return F;
}

}  // namespace

InvolutionSet standard_involutions(const ModelSpace& M, const Vec& xi,
                                   const Realization& rz) {
    const SlotLayout& slots = rz.slots;
    const int hdim = rz.hc->dim;
    const int nslots = slots.nslots();
    const Mat T = adapted_T(M, xi, slots);
    const Mat Tinv = T.inverse();
    InvolutionSet out;

    const auto put = [&](const std::string& name, double xs,
                         std::vector<double> js, const SlotAction& act,
                         std::vector<double> hs) {
        out.maps[name] = build_involution(M, T, Tinv, nslots, hdim, xs, js, act, hs);
    };

    switch (M.cs) {
        case Case::KahlerPara: {
            SlotAction smap = identity_action(nslots, hdim);
            smap.comp_signs[0] = -1.0;  // v -> -conj(v): real part flips
            put("sigma", 1.0, {-1.0}, smap, {-1.0});
            put("tau", 1.0, {1.0}, negate_but_last(nslots, hdim), {1.0});
            out.chain_names = {"sigma", "tau"};
            break;
        }
        case Case::KahlerPseudo: {
            SlotAction smap = identity_action(nslots, hdim);
            smap.comp_signs[1] = -1.0;  // v -> conj(v)
            put("sigma", 1.0, {-1.0}, smap, {-1.0});
            put("tau", 1.0, {1.0}, negate_swap_last_pair(nslots, hdim), {1.0});
            out.chain_names = {"sigma", "tau"};
            break;
        }
        case Case::QuatPara: {
            SlotAction smap = identity_action(nslots, hdim);
            smap.comp_signs[1] = -1.0;
            smap.comp_signs[3] = -1.0;
            put("sigma", 1.0, {-1.0, 1.0, -1.0}, smap, {-1.0, 1.0, -1.0});
            SlotAction tmap = identity_action(nslots, hdim);  // v -> -k v k
            tmap.comp_signs[0] = -1.0;
            tmap.comp_signs[3] = -1.0;
            put("tau", 1.0, {-1.0, -1.0, 1.0}, tmap, {-1.0, -1.0, 1.0});
            put("lambda", 1.0, {1.0, 1.0, 1.0}, negate_but_last(nslots, hdim),
                {1.0, 1.0, 1.0});
            out.chain_names = {"sigma", "tau", "lambda"};
            break;
        }
        case Case::QuatPseudo: {
            SlotAction smap = identity_action(nslots, hdim);
            smap.comp_signs[2] = -1.0;
            smap.comp_signs[3] = -1.0;
            put("sigma", 1.0, {1.0, -1.0, -1.0}, smap, {1.0, -1.0, -1.0});
            SlotAction tmap = identity_action(nslots, hdim);  // v -> j v j^{-1}
            tmap.comp_signs[1] = -1.0;
            tmap.comp_signs[3] = -1.0;
            put("tau", 1.0, {-1.0, 1.0, -1.0}, tmap, {-1.0, 1.0, -1.0});
            put("lambda", 1.0, {1.0, 1.0, 1.0}, negate_swap_last_pair(nslots, hdim),
                {1.0, 1.0, 1.0});
            out.chain_names = {"sigma", "tau", "lambda"};
            break;
        }
    }
    return out;
}

bool chain_supported(const ModelSpace& M, const Vec& xi) {
    if (!(xi.dot(M.g * xi) > 0.0)) return false;
    if (M.cs == Case::KahlerPseudo || M.cs == Case::QuatPseudo)
        return M.s >= 1 && 2 * M.s <= M.n - 1;
    return M.n >= 2;
}

double involution_residual(const Mat& F) {
    return (F * F - Mat::Identity(F.rows(), F.cols())).cwiseAbs().maxCoeff();
}

double automorphism_residual(const Tensor3& c, const Mat& F) {
    const int N = c.dim();
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                double lhs = 0.0;
                for (int a = 0; a < N; ++a) {
                    if (F(a, i) == 0.0) continue;
                    for (int b = 0; b < N; ++b) lhs += F(a, i) * F(b, j) * c(a, b, k);
                }
                double rhs = 0.0;
                for (int m = 0; m < N; ++m) rhs += F(k, m) * c(i, j, m);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

InvolutionCheck check_involution(const NomizuAlgebra& alg, const ModelSpace& M,
                                 const Mat& F) {
    InvolutionCheck out;
    out.inv2 = involution_residual(F);
    out.autom = automorphism_residual(alg.c, F);
    const int d = alg.nm, nh = alg.nh;
    out.block = std::max(F.topRightCorner(d, nh).cwiseAbs().maxCoeff(),
                         F.bottomLeftCorner(nh, d).cwiseAbs().maxCoeff());
    const Mat S = F.topLeftCorner(d, d);
    out.isometry = (S.transpose() * M.g * S - M.g).cwiseAbs().maxCoeff();
    return out;
}

FixedSubalgebra fixed_subalgebra(const Tensor3& c, const Mat& gt, const Mat& F,
                                 double rel_tol) {
    const int N = static_cast<int>(F.rows());
    Eigen::JacobiSVD<Mat> svd(F - Mat::Identity(N, N), Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    const double tol = rel_tol * std::max(1.0, sv.size() ? sv[0] : 1.0);
    int k = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] <= tol) ++k;
    FixedSubalgebra out;
    out.Q = svd.matrixV().rightCols(k);
    out.c = Tensor3(k);
    out.closure = 0.0;
    const auto cod = out.Q.completeOrthogonalDecomposition();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Vec br = Vec::Zero(N);
            for (int a = 0; a < N; ++a) {
                if (out.Q(a, i) == 0.0) continue;
                for (int b = 0; b < N; ++b) {
                    const double w = out.Q(a, i) * out.Q(b, j);
                    if (w == 0.0) continue;
                    for (int m = 0; m < N; ++m) br[m] += w * c(a, b, m);
                }
            }
            const Vec co = cod.solve(br);
            out.closure = std::max(out.closure, (out.Q * co - br).cwiseAbs().maxCoeff());
            for (int m = 0; m < k; ++m) out.c(i, j, m) = co[m];
        }
    out.gt = out.Q.transpose() * gt * out.Q;
    return out;
}

ChainResult involution_chain(const NomizuAlgebra& alg, const InvolutionSet& invs,
                             const std::vector<std::string>& names) {
    ChainResult out;
    out.c = alg.c;
    out.gt = alg.gt;
    out.dim = alg.N;
    out.emb = Mat::Identity(alg.N, alg.N);
    for (const std::string& nm : names) {
        const auto it = invs.maps.find(nm);
        if (it == invs.maps.end())
            throw std::invalid_argument("involution_chain: unknown involution " + nm);
        // restrict the full-space involution to the current subalgebra
        const Mat F = out.emb.transpose() * it->second * out.emb;
        ChainStep step;
        step.name = nm;
        step.dim_in = out.dim;
        step.inv2 = involution_residual(F);
        step.autom = automorphism_residual(out.c, F);
        FixedSubalgebra fs = fixed_subalgebra(out.c, out.gt, F);
        step.closure = fs.closure;
        step.dim_out = static_cast<int>(fs.Q.cols());
        out.steps.push_back(step);
        out.emb = out.emb * fs.Q;
        out.c = std::move(fs.c);
        out.gt = std::move(fs.gt);
        out.dim = step.dim_out;
    }
    return out;
}

TerminalK terminal_K(const Tensor3& c, const Mat& gt) {
    if (c.dim() != 2)
        throw std::invalid_argument("terminal_K: expected a 2-dimensional algebra");
    TerminalK out;
    Vec v(2);
    v << c(0, 1, 0), c(0, 1, 1);
    const double nv = v.norm();
    if (nv == 0.0) throw std::domain_error("terminal_K: abelian terminal algebra");
    out.V = v / nv;
    Mat M(2, 2);  // column x: coordinates of [b_x, V]
    for (int x = 0; x < 2; ++x)
        for (int k = 0; k < 2; ++k)
            M(k, x) = out.V[0] * c(x, 0, k) + out.V[1] * c(x, 1, k);
    out.A = M.colPivHouseholderQr().solve(out.V);
    out.bracket_residual = (M * out.A - out.V).cwiseAbs().maxCoeff();
    const double gV = out.V.dot(gt * out.V);
    const double gAV = out.A.dot(gt * out.V);
    out.A -= (gAV / gV) * out.V;
    out.gAA = out.A.dot(gt * out.A);
    out.gVV = gV;
    out.gAV = out.A.dot(gt * out.V);
    return out;
}

}  // namespace homlt
