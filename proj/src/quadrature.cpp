#include "zonalval/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>

namespace zonalval {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights (abscissae on [0,1] side, symmetric).
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double gk;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        double x = h * kXgk[i];
        double f1 = f(c - x);
        double f2 = f(c + x);
        res_k += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) res_g += kWg[i / 2] * (f1 + f2);
    }
    res_g *= h;
    res_k *= h;
    double err = std::abs(res_k - res_g);
    // standard GK error sharpening
    err = std::pow(200.0 * err, 1.5);
    if (err > std::abs(res_k - res_g)) err = std::abs(res_k - res_g);
    return {res_k, std::max(err, 1e-18 * std::abs(res_k))};
}

struct Segment {
    double a, b, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                              const QuadOptions& opt) {
    if (lo == hi) return {0.0, 0.0};
    double sgn = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sgn = -1.0;
    }
    std::priority_queue<Segment> segs;
    auto first = gk15(f, lo, hi);
    segs.push({lo, hi, first.gk, first.err});
    double total = first.gk, total_err = first.err;
    double abs_sum = std::abs(first.gk);
    int panels = 1;
    // stagnation guard: stop once refinement no longer reduces the estimate
    double best_err = total_err;
    int since_improved = 0;
    while (panels < opt.max_panels) {
        // the summation roundoff floor is the best any refinement can reach
        double floor = 64.0 * 1.1e-16 * abs_sum;
        double tol = std::max({opt.abs_tol, opt.rel_tol * std::abs(total), floor});
        if (total_err <= tol) break;
        Segment s = segs.top();
        double width = s.b - s.a;
        // terminate on machine-width panels or a genuine noise floor (window
        // grows with the panel count so spread-out error keeps refining)
        if (width < 4e-16 * std::max(1.0, std::abs(s.a)) || since_improved > 256 + panels / 2)
            break;
        segs.pop();
        double mid = 0.5 * (s.a + s.b);
        auto l = gk15(f, s.a, mid);
        auto r = gk15(f, mid, s.b);
        total += l.gk + r.gk - s.value;
        total_err += l.err + r.err - s.err;
        abs_sum += std::abs(l.gk) + std::abs(r.gk) - std::abs(s.value);
        segs.push({s.a, mid, l.gk, l.err});
        segs.push({mid, s.b, r.gk, r.err});
        ++panels;
        if (total_err < 0.999 * best_err) {
            best_err = total_err;
            since_improved = 0;
        } else {
            ++since_improved;
        }
    }
    if (panels >= opt.max_panels && total_err > 1e-9 * std::max(1.0, std::abs(total)))
        throw NumericalError("integrate_adaptive: panel cap reached, est. error " +
                             fmt17(total_err));
    return {sgn * total, total_err};
}

QuadResult integrate_weighted_tanh(const std::function<double(double)>& g, double lo, double hi,
                                   const QuadOptions& opt, double tau_cap) {
    auto clamp_atanh = [tau_cap](double t) {
        if (t >= 1.0) return tau_cap;
        if (t <= -1.0) return -tau_cap;
        double tau = std::atanh(t);
        return std::clamp(tau, -tau_cap, tau_cap);
    };
    double ta = clamp_atanh(lo), tb = clamp_atanh(hi);
    auto integrand = [&g](double tau) { return g(std::tanh(tau)); };
    return integrate_adaptive(integrand, ta, tb, opt);
}

double inc_beta_reg(double p, double q, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // continued fraction (Lentz), NR-style
    auto betacf = [](double a, double b, double x) {
        const int kMaxIter = 400;
        const double kEps = 1e-16, kFpmin = 1e-300;
        double qab = a + b, qap = a + 1.0, qam = a - 1.0;
        double c = 1.0, d = 1.0 - qab * x / qap;
        if (std::abs(d) < kFpmin) d = kFpmin;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= kMaxIter; ++m) {
            int m2 = 2 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < kFpmin) d = kFpmin;
            c = 1.0 + aa / c;
            if (std::abs(c) < kFpmin) c = kFpmin;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < kFpmin) d = kFpmin;
            c = 1.0 + aa / c;
            if (std::abs(c) < kFpmin) c = kFpmin;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < kEps) return h;
        }
        throw NumericalError("inc_beta_reg: continued fraction did not converge");
    };
    double ln_front = p * std::log(x) + q * std::log1p(-x) - lbeta(p, q);
    double front = std::exp(ln_front);
    if (x < (p + 1.0) / (p + q + 2.0))
        return front * betacf(p, q, x) / p;
    return 1.0 - std::exp(q * std::log1p(-x) + p * std::log(x) - lbeta(q, p)) *
                     betacf(q, p, 1.0 - x) / q;
}

double partial_even_weight(double c, double s) {
    if (c <= 0.0) throw ValidationError("partial_even_weight: exponent must be positive");
    double as = std::min(std::abs(s), 1.0);
    double v = 0.5 * beta_fn(0.5, c) * inc_beta_reg(0.5, c, as * as);
    return s < 0 ? -v : v;
}

double partial_monomial_weight(double c, int k, double s) {
    if (k < 0) throw ValidationError("partial_monomial_weight: k must be >= 0");
    if (k == 0) return partial_even_weight(c, s);
    double as = std::min(std::abs(s), 1.0);
    double w = std::pow(1.0 - as * as, c);  // (1-s^2)^c
    if (k == 1) {
        double v = (1.0 - w) / (2.0 * c);
        return v;  // even in s
    }
    // recurrence upward from M_{k-2}
    double v = partial_monomial_weight(c, k - 2, as) * (k - 1) - std::pow(as, k - 1) * w;
    v /= (k - 1 + 2.0 * c);
    // parity: integrand t^k (1-t^2)^{c-1}; M_k(s) odd for even k, even for odd k
    if (k % 2 == 0 && s < 0) v = -v;
    return v;
}

double max_scan(const std::function<double(double)>& f, double lo, double hi, int coarse,
                int refine_iters) {
    double best = -1e300;
    std::vector<double> xs(coarse + 1);
    for (int i = 0; i <= coarse; ++i) xs[i] = lo + (hi - lo) * i / coarse;
    std::vector<double> fs(coarse + 1);
    int best_i = 0;
    for (int i = 0; i <= coarse; ++i) {
        fs[i] = f(xs[i]);
        if (fs[i] > best) {
            best = fs[i];
            best_i = i;
        }
    }
    // golden-section refine around the best bracket
    double a = xs[std::max(0, best_i - 1)], b = xs[std::min(coarse, best_i + 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < refine_iters; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return std::max({best, fc, fd});
}

std::vector<double> chebyshev_nodes(int n) {
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[n - 1 - k] = std::cos((2.0 * k + 1.0) * M_PI / (2.0 * n));
    return x;
}

}  // namespace zonalval
