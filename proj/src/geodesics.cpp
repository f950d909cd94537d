#include "homlt/geodesics.hpp"

#include <sstream>

namespace homlt {

KGroup standard_K() {
    KGroup K;
    K.c(0, 1, 1) = 1.0;
    K.c(1, 0, 1) = -1.0;
    K.g << 1.0, 0.0, 0.0, -1.0;
    return K;
}

Tensor3 koszul_connection(const Tensor3& c, const Mat& g) {
    const int N = c.dim();
    const Mat ginv = g.inverse();
    Tensor3 Gam(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Vec rhs = Vec::Zero(N);
            for (int m = 0; m < N; ++m) {
                double s = 0.0;
                for (int k = 0; k < N; ++k)
                    s += c(i, j, k) * g(k, m) - c(j, m, k) * g(k, i) +
                         c(m, i, k) * g(k, j);
                rhs[m] = 0.5 * s;
            }
            const Vec co = ginv * rhs;
            for (int k = 0; k < N; ++k) Gam(i, j, k) = co[k];
        }
    return Gam;
}

Eigen::Vector2d geodesic_rhs(const Eigen::Vector2d& v) {
    return {v[1] * v[1], v[0] * v[1]};
}

const char* character_name(Character ch) {
    switch (ch) {
        case Character::SpaceLike: return "space-like";
        case Character::Null: return "null";
        case Character::TimeLike: return "time-like";
    }
    return "?";
}

Character causal_character(const Eigen::Vector2d& v, double tol) {
    const double q = v[0] * v[0] - v[1] * v[1];
    if (q > tol) return Character::TimeLike;
    if (q < -tol) return Character::SpaceLike;
    return Character::Null;
}

namespace {

[[noreturn]] void domain_throw(double singular_t) {
    std::ostringstream os;
    os << "closed_form: outside domain, singular at t = " << singular_t;
    throw std::domain_error(os.str());
}

}  // namespace

double closed_form_pole(Family f, double r) {
    switch (f) {
        case Family::SpaceLike: return M_PI / 2.0;
        case Family::Null: return 1.0;
        case Family::TimeLike: {
            if (!(r > 0.0 && r < 1.0))
                throw std::invalid_argument("closed_form: time-like family needs 0 < r < 1");
            const double s = std::sqrt(1.0 - r * r);
            const double k = std::atanh(s);
            return -k / s;
        }
    }
    throw std::invalid_argument("closed_form: unknown family");
}

Eigen::Vector2d closed_form(Family f, double r, double t) {
    switch (f) {
        case Family::SpaceLike: {
            if (t >= M_PI / 2.0) domain_throw(M_PI / 2.0);
            if (t <= -M_PI / 2.0) domain_throw(-M_PI / 2.0);
            return {std::tan(t), 1.0 / std::cos(t)};
        }
        case Family::Null: {
            if (t >= 1.0) domain_throw(1.0);
            return {1.0 / (1.0 - t), 1.0 / (1.0 - t)};
        }
        case Family::TimeLike: {
            if (!(r > 0.0 && r < 1.0))
                throw std::invalid_argument("closed_form: time-like family needs 0 < r < 1");
            const double s = std::sqrt(1.0 - r * r);
            const double k = std::atanh(s);
            const double u = s * t + k;
            if (u <= 0.0) domain_throw(-k / s);
            return {s * std::cosh(u) / std::sinh(u), s / std::sinh(u)};
        }
    }
    throw std::invalid_argument("closed_form: unknown family");
}

double GeodesicResult::causal_drift(double margin) const {
    if (points.empty()) return 0.0;
    const double q0 = points[0][1] * points[0][1] - points[0][2] * points[0][2];
    const double t_last = points.back()[0];
    double worst = 0.0;
    for (const auto& p : points) {
        if (blew_up && std::abs(t_last - p[0]) < margin) continue;
        const double q = p[1] * p[1] - p[2] * p[2];
        worst = std::max(worst, std::abs(q - q0));
    }
    return worst;
}

GeodesicResult integrate_geodesic(const Eigen::Vector2d& init, int direction,
                                  double t_max, double rtol) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("integrate_geodesic: direction must be +1 or -1");
    if (!(t_max > 0.0)) throw std::invalid_argument("integrate_geodesic: t_max must be > 0");
    if (!(rtol > 0.0)) throw std::invalid_argument("integrate_geodesic: rtol must be > 0");

    // Dormand-Prince 5(4) tableau.
    static const double A2[] = {1.0 / 5};
    static const double A3[] = {3.0 / 40, 9.0 / 40};
    static const double A4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
    static const double A5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                                -212.0 / 729};
    static const double A6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                                -5103.0 / 18656};
    static const double B5[] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                                -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double B4[] = {5179.0 / 57600,    0.0,          7571.0 / 16695,
                                393.0 / 640,       -92097.0 / 339200,
                                187.0 / 2100,      1.0 / 40};
    const double atol = 1e-12;

    // Time reversal: (v1,v2)(t) -> (-v1,v2)(-t) maps solutions to solutions.
    Eigen::Vector2d y = init;
    if (direction < 0) y[0] = -y[0];

    GeodesicResult out;
    out.direction = direction;
    double t = 0.0;
    double h = std::min(1e-3, t_max);
    out.points.push_back({0.0, y[0], y[1]});
    out.max_norm = y.cwiseAbs().maxCoeff();

    Eigen::Vector2d kst[7];
    kst[0] = geodesic_rhs(y);  // FSAL
    long steps = 0;

    while (t < t_max) {
        if (++steps > 2000000)
            throw std::runtime_error("integrate_geodesic: step limit exceeded");
        const double hs = std::min(h, t_max - t);
        kst[1] = geodesic_rhs(y + hs * (A2[0] * kst[0]));
        kst[2] = geodesic_rhs(y + hs * (A3[0] * kst[0] + A3[1] * kst[1]));
        kst[3] = geodesic_rhs(y + hs * (A4[0] * kst[0] + A4[1] * kst[1] + A4[2] * kst[2]));
        kst[4] = geodesic_rhs(
            y + hs * (A5[0] * kst[0] + A5[1] * kst[1] + A5[2] * kst[2] + A5[3] * kst[3]));
        kst[5] = geodesic_rhs(y + hs * (A6[0] * kst[0] + A6[1] * kst[1] + A6[2] * kst[2] +
                                        A6[3] * kst[3] + A6[4] * kst[4]));
        Eigen::Vector2d y5 = y;
        for (int i = 0; i < 6; ++i) y5 += hs * B5[i] * kst[i];
        kst[6] = geodesic_rhs(y5);
        Eigen::Vector2d y4 = y;
        for (int i = 0; i < 7; ++i) y4 += hs * B4[i] * kst[i];

        double err = 0.0;
        bool finite = y5.allFinite() && y4.allFinite();
        if (finite)
            for (int i = 0; i < 2; ++i) {
                const double sc =
                    atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
            }
        if (!finite || err > 1.0) {
            h = hs * std::max(0.2, finite ? 0.9 * std::pow(err, -0.2) : 0.5);
            if (h < 1e-15)
                throw std::runtime_error("integrate_geodesic: step size underflow");
            kst[0] = geodesic_rhs(y);
            continue;
        }
        t += hs;
        y = y5;
        kst[0] = kst[6];
        out.points.push_back({t, y[0], y[1]});
        out.max_norm = std::max(out.max_norm, y.cwiseAbs().maxCoeff());
        const double mn = std::min(std::abs(y[0]), std::abs(y[1]));
        if (y.cwiseAbs().maxCoeff() >= 1e8 && mn >= 1e6) {
            // From here both components dominate w' = w^2 started at mn, which
            // reaches infinity within 1/mn; pad for integration error.
            out.blew_up = true;
            out.t_low = t - 1e-5;
            out.t_high = t + 1.0 / mn + 1e-5;
            break;
        }
        h = hs * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    }

    if (direction < 0) {
        for (auto& p : out.points) {
            p[0] = -p[0];
            p[1] = -p[1];
        }
        if (out.blew_up) {
            const double lo = -out.t_high, hi = -out.t_low;
            out.t_low = lo;
            out.t_high = hi;
        }
    }
    return out;
}

}  // namespace homlt
