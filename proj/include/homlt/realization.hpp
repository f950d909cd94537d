#pragma once

#include "homlt/nomizu.hpp"

namespace homlt {

// Realization of the standard algebra by (n+1)x(n+1) matrices over the scalar
// algebra matching the case.  The coordinate block occupies indices 0..n-2
// (unit slots first, then paired slots); indices n-1, n carry the distinguished
// plane spanned by the images of xi and its structure rotations.
struct Realization {
    const HCAlgebra* hc = nullptr;
    Case cs{};
    int n = 0;
    int N = 0;       // n + 1
    int nh = 0;      // 1 or 3
    double gxx = 0.0;
    Vec xi;
    Mat g;
    std::vector<Mat> J;
    AdaptedFrame af;
    SlotLayout slots;
    HCMat Sigma;     // ambient form (identity for the para cases)
    HCMat A0;        // semisimple generator; ad(A0) grades the nilpotent parts
    std::string algebra_ref;

    HCMat zero() const { return HCMat::zero(*hc, N, N); }

    // First nilpotent layer from a coordinate vector (one scalar per slot).
    HCMat n1(const std::vector<HCS>& v) const;
    // Second nilpotent layer from a single scalar.  The layer is parametrised by
    // imaginary scalars (conj(q) = -q) in the quaternionic and pseudo cases and by
    // real scalars in the para-complex case; outside that domain the result need
    // not lie in the algebra.
    HCMat n2(const HCS& q) const;
    // Image of the a-th holonomy generator.
    HCMat jscr(int a) const;
    // Tangent vector -> coordinate-slot scalars (length = number of slots).
    std::vector<HCS> iota(const Vec& Z) const;
    // Full linear map on (tangent vector, holonomy coefficients).
    HCMat phi(const Vec& Z, const Vec& hol_co) const;
    // Residual of membership in the ambient algebra (anti-self-adjointness
    // w.r.t. Sigma, plus tracelessness for the complex-family cases).
    double member_residual(const HCMat& C) const;
};

// Throws std::domain_error when g(xi,xi) <= 0 or (pseudo cases) when the
// negative lines outnumber the positive ones, i.e. the split is outside the
// realizable range 0 <= 2s <= n-1.
Realization build_realization(const ModelSpace& M, const Vec& xi);
Realization build_realization(const ModelSpace& M, const Vec& xi,
                              const AdaptedFrame& af);

struct HomReport {
    double membership = 0.0;   // worst ambient-membership residual
    double hom = 0.0;          // worst |[phi x, phi y] - phi([x,y])|
    double injectivity = 0.0;  // smallest/largest singular value of the images
    std::vector<HCMat> images;
};

// The algebra's m-basis is mapped through phi(.,0), its holonomy basis through
// phi(0, unit_a); requires the holonomy basis to be the canonical generators in
// order (as built by standard_nomizu / adapted_nomizu).
HomReport homomorphism_residual(const NomizuAlgebra& alg, const Realization& rz);

}  // namespace homlt
