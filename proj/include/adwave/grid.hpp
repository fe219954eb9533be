#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace adwave {

// Uniform 1-d grid on [0, L] with N cells and N+1 nodes.
struct Grid1D {
    double length = 1.0;
    int cells = 4;

    double dx() const { return length / cells; }
    std::size_t nodes() const { return static_cast<std::size_t>(cells) + 1; }
    double node(std::size_t j) const { return length * static_cast<double>(j) / cells; }

    void validate() const;  // throws ParameterError
};

// Displacement/velocity pair sampled on the grid nodes at time t.
struct PdeState {
    Grid1D grid;
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;

    void validate() const;  // throws ParameterError
};

// Trapezoid quadrature of f over the grid.
inline double trap_integral(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    double s = 0.5 * (f[0] + f[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) s += f[j];
    return dx * s;
}

// Trapezoid quadrature of a*b (discrete L^2 inner product).
inline double trap_inner(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    const std::size_t n = a.size();
    double s = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) s += a[j] * b[j];
    return dx * s;
}

inline double trap_norm_sq(const std::vector<double>& f, double dx) {
    return trap_inner(f, f, dx);
}

// Cell-sum quadrature of |u'|^2 (one slope per cell).
inline double grad_norm_sq(const std::vector<double>& u, double dx) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
        const double d = (u[j + 1] - u[j]) / dx;
        s += d * d;
    }
    return dx * s;
}

inline double mean_value(const std::vector<double>& u, double dx, double length) {
    return trap_integral(u, dx) / length;
}

// sqrt(||u - ref||^2 + ||grad u||^2), the H^1 distance to the constant ref.
inline double h1_deviation(const std::vector<double>& u, double ref, double dx) {
    const std::size_t n = u.size();
    double s = 0.0;
    {
        const double d0 = u[0] - ref;
        const double dn = u[n - 1] - ref;
        s = 0.5 * (d0 * d0 + dn * dn);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double d = u[j] - ref;
        s += d * d;
    }
    return std::sqrt(dx * s + grad_norm_sq(u, dx));
}

}  // namespace adwave
