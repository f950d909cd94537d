#include "homlt/structures.hpp"

#include "homlt/hypercomplex.hpp"

namespace homlt {

const char* case_name(Case cs) {
    switch (cs) {
        case Case::KahlerPara: return "kahler-para";
        case Case::KahlerPseudo: return "kahler-pseudo";
        case Case::QuatPara: return "quat-para";
        default: return "quat-pseudo";
    }
}

Case parse_case(const std::string& name) {
    if (name == "kahler-para") return Case::KahlerPara;
    if (name == "kahler-pseudo") return Case::KahlerPseudo;
    if (name == "quat-para") return Case::QuatPara;
    if (name == "quat-pseudo") return Case::QuatPseudo;
    throw std::invalid_argument("unknown case name: " + name);
}

ModelSpace make_standard_eps_complex(int n, int s, double eps) {
    if (n < 1) throw std::invalid_argument("make_standard_eps_complex: n >= 1 required");
    if (eps != 1.0 && eps != -1.0) {
        throw std::invalid_argument("make_standard_eps_complex: eps must be +-1");
    }
    if (eps == -1.0 && (s < 0 || s > n)) {
        throw std::invalid_argument("make_standard_eps_complex: split 0 <= s <= n violated");
    }
    ModelSpace M;
    M.cs = (eps > 0) ? Case::KahlerPara : Case::KahlerPseudo;
    M.n = n;
    M.s = (eps > 0) ? 0 : s;
    M.dim = 2 * n;
    M.eps = eps;
    M.g = Mat::Zero(M.dim, M.dim);
    Mat J = Mat::Zero(M.dim, M.dim);
    for (int b = 0; b < n; ++b) {
        const int i = 2 * b;
        if (eps < 0) {
            const double sig = (b >= n - s) ? -1.0 : 1.0;
            M.g(i, i) = sig;
            M.g(i + 1, i + 1) = sig;
            J(i + 1, i) = 1.0;   // J e_i = e_{i+1}
            J(i, i + 1) = -1.0;  // J e_{i+1} = -e_i
        } else {
            M.g(i, i) = 1.0;
            M.g(i + 1, i + 1) = -1.0;
            J(i + 1, i) = 1.0;
            J(i, i + 1) = 1.0;
        }
    }
    M.J.push_back(std::move(J));
    M.ginv = M.g;  // diagonal +-1
    return M;
}

ModelSpace make_standard_eps_quat(int n, int s, double e2) {
    if (n < 1) throw std::invalid_argument("make_standard_eps_quat: n >= 1 required");
    if (e2 != 1.0 && e2 != -1.0) {
        throw std::invalid_argument("make_standard_eps_quat: e2 must be +-1");
    }
    if (e2 < 0 && (s < 0 || s > n)) {
        throw std::invalid_argument("make_standard_eps_quat: split 0 <= s <= n violated");
    }
    ModelSpace M;
    M.cs = (e2 > 0) ? Case::QuatPara : Case::QuatPseudo;
    M.n = n;
    M.s = (e2 > 0) ? 0 : s;
    M.dim = 4 * n;
    M.eps3 = {-1.0, e2, e2};
    M.g = Mat::Zero(M.dim, M.dim);
    for (int slot = 0; slot < n; ++slot) {
        for (int c = 0; c < 4; ++c) {
            double v;
            if (e2 < 0) {
                v = (slot >= n - s) ? -1.0 : 1.0;
            } else {
                v = (c < 2) ? 1.0 : -1.0;
            }
            M.g(4 * slot + c, 4 * slot + c) = v;
        }
    }
    M.ginv = M.g;
    // Right multiplication by i, j, -k on each slot; J1 J2 = J3 holds with the
    // minus sign on k because right multiplications compose in reverse order.
    auto right_mult = [&](const Eigen::Vector4d& u) {
        Mat R4 = Mat::Zero(4, 4);
        for (int c = 0; c < 4; ++c) {
            Eigen::Vector4d q = Eigen::Vector4d::Zero();
            q[c] = 1.0;
            R4.col(c) = quat_mul_coeff(q, u, e2);
        }
        return R4;
    };
    const Mat Ri = right_mult({0, 1, 0, 0});
    const Mat Rj = right_mult({0, 0, 1, 0});
    const Mat Rk = right_mult({0, 0, 0, 1});
    Mat J1 = Mat::Zero(M.dim, M.dim), J2 = J1, J3 = J1;
    for (int slot = 0; slot < n; ++slot) {
        J1.block(4 * slot, 4 * slot, 4, 4) = Ri;
        J2.block(4 * slot, 4 * slot, 4, 4) = Rj;
        J3.block(4 * slot, 4 * slot, 4, 4) = -Rk;
    }
    M.J = {J1, J2, J3};
    return M;
}

ModelSpace make_model(Case cs, int n, int s) {
    switch (cs) {
        case Case::KahlerPara: return make_standard_eps_complex(n, 0, +1.0);
        case Case::KahlerPseudo: return make_standard_eps_complex(n, s, -1.0);
        case Case::QuatPara: return make_standard_eps_quat(n, 0, +1.0);
        default: return make_standard_eps_quat(n, s, -1.0);
    }
}

Tensor4 canonical_four_form(const ModelSpace& M) {
    if (!M.is_quat()) {
        throw std::invalid_argument("canonical_four_form: quaternionic family only");
    }
    const int d = M.dim;
    std::vector<Mat> omega;
    for (const Mat& J : M.J) omega.push_back(M.g * J);  // omega_a(X,Y) = g(X, J_a Y)
    Tensor4 Om(d);
    for (int a = 0; a < 3; ++a) {
        const double c = -M.eps3[static_cast<std::size_t>(a)];
        const Mat& w = omega[static_cast<std::size_t>(a)];
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                for (int z = 0; z < d; ++z)
                    for (int u = 0; u < d; ++u) {
                        // (w ^ w)(X,Y,Z,U), six shuffle terms
                        const double v = w(x, y) * w(z, u) - w(x, z) * w(y, u) +
                                         w(x, u) * w(y, z) + w(z, u) * w(x, y) -
                                         w(y, u) * w(x, z) + w(y, z) * w(x, u);
                        Om(x, y, z, u) += c * v;
                    }
    }
    return Om;
}

StructureReport verify_structure(const ModelSpace& M) {
    StructureReport rep;
    auto add = [&](const std::string& name, double v) {
        rep.residuals.emplace_back(name, v);
        rep.worst = std::max(rep.worst, v);
    };
    const int d = M.dim;
    add("metric_symmetry", (M.g - M.g.transpose()).cwiseAbs().maxCoeff());
    add("metric_inverse", (M.g * M.ginv - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
    for (int a = 0; a < M.num_J(); ++a) {
        const Mat& J = M.J[static_cast<std::size_t>(a)];
        const double ea = M.eps_a(a);
        add("J" + std::to_string(a + 1) + "_square",
            (J * J - ea * Mat::Identity(d, d)).cwiseAbs().maxCoeff());
        const Mat gJ = M.g * J;
        add("J" + std::to_string(a + 1) + "_skew", (gJ + gJ.transpose()).cwiseAbs().maxCoeff());
    }
    if (M.is_quat()) {
        add("J1J2_minus_J3", (M.J[0] * M.J[1] - M.J[2]).cwiseAbs().maxCoeff());
        add("J2J1_plus_J3", (M.J[1] * M.J[0] + M.J[2]).cwiseAbs().maxCoeff());
    }
    // Signature counts (diagonalizable symmetric metric).
    Eigen::SelfAdjointEigenSolver<Mat> es(M.g);
    int p = 0, q = 0;
    for (int i = 0; i < d; ++i) {
        if (es.eigenvalues()[i] > 0) ++p;
        else ++q;
    }
    int want_p = 0, want_q = 0;
    switch (M.cs) {
        case Case::KahlerPara: want_p = M.n; want_q = M.n; break;
        case Case::KahlerPseudo: want_p = 2 * (M.n - M.s); want_q = 2 * M.s; break;
        case Case::QuatPara: want_p = 2 * M.n; want_q = 2 * M.n; break;
        default: want_p = 4 * (M.n - M.s); want_q = 4 * M.s; break;
    }
    add("signature", (p == want_p && q == want_q) ? 0.0 : 1.0);
    return rep;
}

Mat expm(const Mat& A) {
    const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int k = 0;
    double scale = 1.0;
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++k;
    }
    const Mat B = A * scale;
    const int d = static_cast<int>(A.rows());
    Mat term = Mat::Identity(d, d);
    Mat sum = term;
    for (int t = 1; t <= 20; ++t) {
        term = (term * B) / static_cast<double>(t);
        sum += term;
    }
    for (int i = 0; i < k; ++i) sum = sum * sum;
    return sum;
}

}  // namespace homlt
