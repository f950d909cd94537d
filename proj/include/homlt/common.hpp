#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace homlt {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline const char* version() { return "1.0.0"; }

// Dense cubic tensor T(i,j,k) over a single dimension.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n, 0.0) {}

    int dim() const { return n_; }
    double& operator()(int i, int j, int k) {
        return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
    }
    double operator()(int i, int j, int k) const {
        return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
    }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int n) : n_(n), a_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

    int dim() const { return n_; }
    double& operator()(int i, int j, int k, int l) {
        return a_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(int i, int j, int k, int l) const {
        return a_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

class Tensor5 {
public:
    Tensor5() = default;
    explicit Tensor5(int n)
        : n_(n), a_(static_cast<std::size_t>(n) * n * n * n * n, 0.0) {}

    int dim() const { return n_; }
    double& operator()(int i, int j, int k, int l, int m) {
        return a_[(((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l) * n_ + m];
    }
    double operator()(int i, int j, int k, int l, int m) const {
        return a_[(((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l) * n_ + m];
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Deterministic scalar stream: raw 64-bit engine output mapped to doubles so the
// sequence is identical across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Box-Muller with a cached spare draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    Vec normal_vector(int d) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = normal();
        return v;
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Global switch for the OpenMP residual kernels; the serial path is the
// reference implementation.  Both produce identical bits because the reduction
// is a max over the same value set.
void set_parallel_kernels(bool on);
bool parallel_kernels();

template <class F>
double max_reduce(std::ptrdiff_t count, F&& f, bool parallel) {
    double r = 0.0;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for reduction(max : r) schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) r = std::max(r, f(i));
        return r;
    }
#else
    (void)parallel;
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) r = std::max(r, f(i));
    return r;
}

template <class F>
double max_reduce(std::ptrdiff_t count, F&& f) {
    return max_reduce(count, std::forward<F>(f), parallel_kernels());
}

}  // namespace homlt
