#pragma once

// Test-only oracles, kept independent of the library's quadrature/maximization
// paths: plain adaptive Simpson, dense-grid maximization, central differences.

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fb, double fm, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
           simpson_rec(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double eps = 1e-12, int depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson_rec(f, a, b, fa, fb, fm, eps, depth);
}

// dense-scan maximum of f on [a, b]
inline double brute_max(const std::function<double(double)>& f, double a, double b,
                        int pts = 2000001) {
    double best = -1e300;
    for (int i = 0; i <= pts; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / pts;
        best = std::max(best, f(x));
    }
    return best;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-3) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracles
