#pragma once

#include "homlt/realization.hpp"

namespace homlt {

// Linear involutions on the standard algebra (d tangent coordinates followed
// by the holonomy coordinates), built in the adapted coordinate system and
// conjugated back.  chain_names lists the documented reduction order.
struct InvolutionSet {
    std::map<std::string, Mat> maps;
    std::vector<std::string> chain_names;
};

InvolutionSet standard_involutions(const ModelSpace& M, const Vec& xi,
                                   const Realization& rz);

// True when the documented chain applies: g(xi,xi) > 0 and, for the pseudo
// cases, an indefinite layout with the split inside the realizable range
// (1 <= s, 2s <= n-1).  The definite pseudo layouts contain no Lorentzian
// plane, so the terminal-group reduction does not exist there.
bool chain_supported(const ModelSpace& M, const Vec& xi);

double involution_residual(const Mat& F);                      // |F^2 - I|
double automorphism_residual(const Tensor3& c, const Mat& F);  // bracket preservation

struct InvolutionCheck {
    double inv2 = 0.0;      // |F^2 - I|
    double autom = 0.0;     // |[Fx,Fy] - F[x,y]|
    double block = 0.0;     // tangent/holonomy coupling (must vanish)
    double isometry = 0.0;  // |S^T g S - g| on the tangent block
};
InvolutionCheck check_involution(const NomizuAlgebra& alg, const ModelSpace& M,
                                 const Mat& F);

struct FixedSubalgebra {
    Mat Q;           // orthonormal basis of the fixed space (columns)
    Tensor3 c;       // restricted structure constants
    Mat gt;          // restricted bilinear form
    double closure;  // residual of the fixed space being bracket-closed
};
FixedSubalgebra fixed_subalgebra(const Tensor3& c, const Mat& gt, const Mat& F,
                                 double rel_tol = 1e-9);

struct ChainStep {
    std::string name;
    int dim_in = 0, dim_out = 0;
    double inv2 = 0.0, autom = 0.0, closure = 0.0;
};

struct ChainResult {
    std::vector<ChainStep> steps;
    Mat emb;  // columns: final basis expressed in the original coordinates
    Tensor3 c;
    Mat gt;
    int dim = 0;
};

ChainResult involution_chain(const NomizuAlgebra& alg, const InvolutionSet& invs,
                             const std::vector<std::string>& names);

// Terminal 2-dimensional data: V spans the derived algebra, A solves
// [A,V] = V, then A is g-orthogonalized against V.
struct TerminalK {
    Vec A, V;
    double gAA = 0.0, gVV = 0.0, gAV = 0.0;
    double bracket_residual = 0.0;  // |[A,V] - V|
};
TerminalK terminal_K(const Tensor3& c, const Mat& gt);

}  // namespace homlt
