#pragma once

#include "homlt/common.hpp"

namespace homlt {

// diag(+1 x p, -1 x q)
Mat make_standard_metric(int p, int q);

bool is_diagonal_pm1(const Mat& g, double tol = 1e-12);

// Index gymnastics for a fixed nondegenerate symmetric g.
Vec lower(const Mat& g, const Vec& v);
Vec raise(const Mat& g, const Vec& alpha);

// Lower / raise the last slot of a rank-4 tensor.
Tensor4 raise_last(const Tensor4& T, const Mat& ginv);
Tensor4 lower_last(const Tensor4& T, const Mat& g);

// Signed trace over the first two slots: c12(T)(z) = sum_ab g^{ab} T(a,b,z).
// Equals sum_r eps_r T(r,r,z) in any g-orthonormal frame.
Vec contract12(const Tensor3& T, const Mat& g);

// Columns form a g-orthonormal frame (g(f_i,f_j) = +-delta_ij), built by
// seeded Gram-Schmidt.  Used by frame-independence property tests.
Mat random_pseudo_orthonormal_frame(const Mat& g, std::uint64_t seed);

// Deterministic unit-coordinate-norm vector with |g(v,v)| >= min_norm.
// Falls back to the best standard basis vector if max_draws rejections occur.
Vec random_anisotropic_vector(const Mat& g, std::uint64_t seed,
                              double min_norm = 0.1, int max_draws = 1000);

}  // namespace homlt
