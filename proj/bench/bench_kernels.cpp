#include "homlt/nomizu.hpp"
#include "homlt/pseudolinear.hpp"

#include <chrono>
#include <cstdio>

using namespace homlt;

namespace {

std::array<Vec, 3> zero3(int d) {
    return {Vec::Zero(d), Vec::Zero(d), Vec::Zero(d)};
}

template <class F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    // largest desk-scale configuration: 12 coordinates, 15 algebra directions
    const ModelSpace M = make_model(Case::QuatPseudo, 3, 1);
    const Vec xi = random_anisotropic_vector(M.g, 1);
    const double gxx = xi.dot(M.g * xi);
    const Tensor3 S12 = to_operator(build_S_quat(M, xi, zero3(M.dim)), M.ginv);
    const Tensor4 R04 = scaled_curvature(M, gxx);
    const Tensor5 nR = covariant_derivative_R(R04, S12);
    const NomizuAlgebra alg = standard_nomizu(M, xi, S12);

    const int reps = 20;
    std::printf("%-24s %12s %12s %9s\n", "kernel", "serial[ms]", "openmp[ms]", "speedup");

    {
        double serial_v = 0.0, parallel_v = 0.0;
        set_parallel_kernels(false);
        const double ts = time_ms([&] { serial_v = second_bianchi_residual(nR); }, reps);
        set_parallel_kernels(true);
        const double tp = time_ms([&] { parallel_v = second_bianchi_residual(nR); }, reps);
        if (serial_v != parallel_v) {
            std::printf("second_bianchi mismatch: %.17g vs %.17g\n", serial_v, parallel_v);
            return 1;
        }
        std::printf("%-24s %12.3f %12.3f %8.2fx\n", "second_bianchi(12^5)", ts, tp, ts / tp);
    }
    {
        double serial_v = 0.0, parallel_v = 0.0;
        set_parallel_kernels(false);
        const double ts = time_ms([&] { serial_v = jacobi_residual(alg.c); }, reps);
        set_parallel_kernels(true);
        const double tp = time_ms([&] { parallel_v = jacobi_residual(alg.c); }, reps);
        if (serial_v != parallel_v) {
            std::printf("jacobi mismatch: %.17g vs %.17g\n", serial_v, parallel_v);
            return 1;
        }
        std::printf("%-24s %12.3f %12.3f %8.2fx\n", "jacobi(15^3)", ts, tp, ts / tp);
    }
    {
        double serial_v = 0.0, parallel_v = 0.0;
        set_parallel_kernels(false);
        const double ts =
            time_ms([&] { serial_v = curvature_symmetry_residuals(R04).worst(); }, reps);
        set_parallel_kernels(true);
        const double tp =
            time_ms([&] { parallel_v = curvature_symmetry_residuals(R04).worst(); }, reps);
        if (serial_v != parallel_v) {
            std::printf("symmetry mismatch: %.17g vs %.17g\n", serial_v, parallel_v);
            return 1;
        }
        std::printf("%-24s %12.3f %12.3f %8.2fx\n", "curvature_sym(12^4)", ts, tp, ts / tp);
    }
    set_parallel_kernels(true);
    return 0;
}
