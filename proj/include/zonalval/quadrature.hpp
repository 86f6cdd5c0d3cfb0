#pragma once

#include <functional>

#include "zonalval/common.hpp"

namespace zonalval {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

struct QuadOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_panels = 1 << 20;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const QuadOptions& opt = {});

// Integral of f(t)*(1-t^2)^{-1} * (weighted integrand supplied in t = tanh(tau) form):
// computes \int_{lo}^{hi} g(t) / (1-t^2) dt by substituting t = tanh(tau), where g is
// expected to stay bounded up to the endpoints (the weighted form of a density).
// Endpoints at exactly +-1 are mapped to |tau| <= tau_cap.
QuadResult integrate_weighted_tanh(const std::function<double(double)>& g, double lo, double hi,
                                   const QuadOptions& opt = {}, double tau_cap = 19.0);

// log Beta(p, q)
inline double lbeta(double p, double q) {
    return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

inline double beta_fn(double p, double q) { return std::exp(lbeta(p, q)); }

// Regularized incomplete beta I_x(p, q), 0 <= x <= 1, p, q > 0.
double inc_beta_reg(double p, double q, double x);

// \int_0^s (1-t^2)^{c-1} dt for c > 0, s in [-1, 1]  (odd in s, exact via incomplete beta).
double partial_even_weight(double c, double s);

// \int_0^s t^k (1-t^2)^{c-1} dt for c > 0, k >= 0 (stable downward use of the recurrence
// M_k = [(k-1) M_{k-2} - s^{k-1}(1-s^2)^c] / (k-1+2c)).
double partial_monomial_weight(double c, int k, double s);

// Max of |f| (or f, signed=false) on [lo,hi]: coarse scan plus golden-section refinement.
double max_scan(const std::function<double(double)>& f, double lo, double hi, int coarse = 4096,
                int refine_iters = 80);

// Chebyshev nodes of the first kind on (-1,1), descending? No: returned ascending.
std::vector<double> chebyshev_nodes(int n);

}  // namespace zonalval
