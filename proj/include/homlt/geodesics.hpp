#pragma once

#include "homlt/common.hpp"

namespace homlt {

// The terminal 2-dimensional group: basis (A, V) with [A,V] = V and
// left-invariant metric g(A,A) = 1, g(V,V) = -1, g(A,V) = 0.
struct KGroup {
    Tensor3 c{2};
    Mat g{2, 2};
};
KGroup standard_K();

// Left-invariant Levi-Civita coefficients via the Koszul formula:
// Gamma(i,j,k): nabla_{b_i} b_j = sum_k Gamma(i,j,k) b_k.  Works for any
// bracket + nondegenerate invariant form; on standard_K the table is
// nabla_A A = nabla_A V = 0, nabla_V A = -V, nabla_V V = -A.
Tensor3 koszul_connection(const Tensor3& c, const Mat& g);

// Velocity equation in frame components on standard_K: (v1', v2') = (v2^2, v1 v2).
Eigen::Vector2d geodesic_rhs(const Eigen::Vector2d& v);

// Sign of v1^2 - v2^2 with a tolerance band around null; the labels follow the
// source convention in which (0,1) is space-like and (1,r), r<1, time-like.
enum class Character { SpaceLike, Null, TimeLike };
const char* character_name(Character ch);
Character causal_character(const Eigen::Vector2d& v, double tol = 1e-10);

// Exact solution families.  r parameterizes the time-like family (0 < r < 1);
// it is ignored by the other two.  Throws std::domain_error (message carries
// the singular time) outside the domain of definition.
enum class Family { SpaceLike, Null, TimeLike };
Eigen::Vector2d closed_form(Family f, double r, double t);
double closed_form_pole(Family f, double r);  // pi/2, 1, -k/s

struct GeodesicResult {
    std::vector<Eigen::Vector3d> points;  // (t, v1, v2) at accepted steps
    int direction = 1;
    bool blew_up = false;
    double t_low = 0.0, t_high = 0.0;  // escape-time bracket when blew_up
    double max_norm = 0.0;
    // max |v1^2 - v2^2 - initial value| over accepted points that are at least
    // margin before the escape time (all points when no blow-up)
    double causal_drift(double margin = 1e-2) const;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of the
// velocity equation.  direction = -1 integrates backwards (implemented by the
// time-reversal symmetry (v1,v2)(t) -> (-v1,v2)(-t)).  Blow-up is declared
// once the state norm exceeds 1e8; the reported bracket [t_low, t_high] is
// rigorous for the true escape time: from a state with m = min(|v1|,|v2|) both
// components dominate the scalar equation w' = w^2, so the pole lies within
// 1/m of the last accepted time.
GeodesicResult integrate_geodesic(const Eigen::Vector2d& init, int direction,
                                  double t_max, double rtol = 1e-10);

}  // namespace homlt
