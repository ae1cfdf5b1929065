// oracles.hpp — test-only reference implementations, independent of the
// library's numerical paths (Taylor-series exponential, adaptive Simpson).
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace oracles {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// exp(-i h t) by plain Taylor series with scaling and squaring.
inline Matrix expm_series(const Matrix& h, double t) {
    Matrix a = Complex(0.0, -t) * h;
    int squarings = 0;
    double norm = a.cwiseAbs().sum();
    while (norm > 0.25 && squarings < 60) {
        a *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    for (int k = 1; k <= 30; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol = 1e-12) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

inline Matrix random_hermitian(std::mt19937_64& rng, int dim, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (m + m.adjoint());
}

} // namespace oracles
