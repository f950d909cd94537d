#include "homlt/pseudolinear.hpp"

namespace homlt {

namespace {
bool g_parallel =
#ifdef _OPENMP
    true;
#else
    false;
#endif
}  // namespace

void set_parallel_kernels(bool on) { g_parallel = on; }
bool parallel_kernels() { return g_parallel; }

Mat make_standard_metric(int p, int q) {
    if (p < 0 || q < 0 || p + q == 0) {
        throw std::invalid_argument("make_standard_metric: need p,q >= 0 and p+q > 0");
    }
    Mat g = Mat::Zero(p + q, p + q);
    for (int i = 0; i < p; ++i) g(i, i) = 1.0;
    for (int i = p; i < p + q; ++i) g(i, i) = -1.0;
    return g;
}

bool is_diagonal_pm1(const Mat& g, double tol) {
    if (g.rows() != g.cols()) return false;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == j) {
                if (std::abs(std::abs(g(i, i)) - 1.0) > tol) return false;
            } else if (std::abs(g(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

Vec lower(const Mat& g, const Vec& v) { return g * v; }

Vec raise(const Mat& g, const Vec& alpha) {
    return g.colPivHouseholderQr().solve(alpha);
}

Tensor4 raise_last(const Tensor4& T, const Mat& ginv) {
    const int d = T.dim();
    Tensor4 out(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z)
                for (int k = 0; k < d; ++k) {
                    double s = 0.0;
                    for (int w = 0; w < d; ++w) s += T(x, y, z, w) * ginv(w, k);
                    out(x, y, z, k) = s;
                }
    return out;
}

Tensor4 lower_last(const Tensor4& T, const Mat& g) { return raise_last(T, g); }

Vec contract12(const Tensor3& T, const Mat& g) {
    const int d = T.dim();
    const Mat ginv = g.inverse();
    Vec out = Vec::Zero(d);
    for (int z = 0; z < d; ++z) {
        double s = 0.0;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) s += ginv(a, b) * T(a, b, z);
        out[z] = s;
    }
    return out;
}

Mat random_pseudo_orthonormal_frame(const Mat& g, std::uint64_t seed) {
    const int d = static_cast<int>(g.rows());
    Rng rng(seed);
    std::vector<Vec> frame;
    std::vector<double> signs;
    int guard = 0;
    while (static_cast<int>(frame.size()) < d) {
        if (++guard > 10000) {
            throw std::runtime_error("random_pseudo_orthonormal_frame: give up");
        }
        Vec w = rng.normal_vector(d);
        for (std::size_t i = 0; i < frame.size(); ++i) {
            const double c = (frame[i].dot(g * w)) * signs[i];
            w -= c * frame[i];
        }
        const double nn = w.dot(g * w);
        if (std::abs(nn) < 0.05 * w.squaredNorm()) continue;
        w /= std::sqrt(std::abs(nn));
        frame.push_back(w);
        signs.push_back(nn > 0 ? 1.0 : -1.0);
    }
    Mat F(d, d);
    for (int i = 0; i < d; ++i) F.col(i) = frame[i];
    return F;
}

Vec random_anisotropic_vector(const Mat& g, std::uint64_t seed, double min_norm,
                              int max_draws) {
    const int d = static_cast<int>(g.rows());
    Rng rng(seed);
    for (int k = 0; k < max_draws; ++k) {
        Vec v = rng.normal_vector(d);
        const double cn = v.norm();
        if (cn == 0.0) continue;
        v /= cn;
        if (std::abs(v.dot(g * v)) >= min_norm) return v;
    }
    // Deterministic fallback: the basis vector with the largest |g(e_i,e_i)|.
    int best = 0;
    double bv = 0.0;
    for (int i = 0; i < d; ++i) {
        if (std::abs(g(i, i)) > bv) {
            bv = std::abs(g(i, i));
            best = i;
        }
    }
    if (bv < min_norm) {
        throw std::runtime_error("random_anisotropic_vector: no anisotropic direction found");
    }
    return Vec::Unit(d, best);
}

}  // namespace homlt
