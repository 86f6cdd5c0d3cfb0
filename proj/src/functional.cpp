#include "zonalval/functional.hpp"

#include <algorithm>
#include <random>

#include "zonalval/geometry.hpp"
#include "zonalval/quadrature.hpp"

namespace zonalval::fnal {

namespace {

// piecewise-linear interpolant with exact zero beyond the support
double lin_interp(const std::vector<double>& x, const std::vector<double>& y, double t) {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    double u = (t - x[i]) / (x[i + 1] - x[i]);
    return (1 - u) * y[i] + u * y[i + 1];
}

// \int_a^b (A + B s + C s^2) s^{-(m+1)} ds, exact (m >= 1)
double segment_moment(double A, double B, double C, int m, double a, double b) {
    double v = A * (std::pow(b, -m) - std::pow(a, -m)) / (-m);
    if (m == 1)
        v += B * std::log(b / a);
    else
        v += B * (std::pow(b, 1 - m) - std::pow(a, 1 - m)) / (1.0 - m);
    if (m == 2)
        v += C * std::log(b / a);
    else
        v += C * (std::pow(b, 2 - m) - std::pow(a, 2 - m)) / (2.0 - m);
    return v;
}

// quadratic through three samples, coefficients in the monomial basis
void quad_through(double x0, double y0, double x1, double y1, double x2, double y2, double* A,
                  double* B, double* C) {
    double d0 = (x0 - x1) * (x0 - x2), d1 = (x1 - x0) * (x1 - x2), d2 = (x2 - x0) * (x2 - x1);
    *C = y0 / d0 + y1 / d1 + y2 / d2;
    *B = -(y0 * (x1 + x2) / d0 + y1 * (x0 + x2) / d1 + y2 * (x0 + x1) / d2);
    *A = y0 * x1 * x2 / d0 + y1 * x0 * x2 / d1 + y2 * x0 * x1 / d2;
}

// \int_t^{end} phi(s) s^{-(p+1)} ds on sampled phi, product-integrating a
// piecewise quadratic (linear interpolation error gets amplified by s^{-(p+1)}
// near the origin, quadratic keeps the round trip at the 1e-6 level)
double sampled_tail_moment(const std::vector<double>& t, const std::vector<double>& phi, int p,
                           double lo) {
    const std::size_t m = t.size();
    double tail = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double a = std::max(lo, t[i]), b = t[i + 1];
        if (a >= b) continue;
        std::size_t k = i + 2 < m ? i : i - 1;  // triple (k, k+1, k+2) covering [a,b]
        double A, B, C;
        quad_through(t[k], phi[k], t[k + 1], phi[k + 1], t[k + 2], phi[k + 2], &A, &B, &C);
        tail += segment_moment(A, B, C, p, a, b);
    }
    return tail;
}

}  // namespace

ZetaDensity ZetaDensity::callable(std::function<double(double)> f, double support_radius,
                                  double near0_delta) {
    if (!(support_radius > 0)) throw ValidationError("zeta: support radius must be > 0");
    ZetaDensity z;
    z.f_ = std::move(f);
    z.R_ = support_radius;
    z.delta_ = near0_delta;
    return z;
}

ZetaDensity ZetaDensity::sampled(std::vector<double> t, std::vector<double> values) {
    if (t.size() != values.size() || t.size() < 2)
        throw ValidationError("zeta samples: need matching rows (>= 2)");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw ValidationError("zeta samples: t must increase");
    if (!(t.front() > 0)) throw ValidationError("zeta samples: t must be positive");
    ZetaDensity z;
    z.tnodes_ = t;
    z.vals_ = values;
    z.R_ = t.back();
    auto tn = z.tnodes_;
    auto vv = z.vals_;
    z.f_ = [tn, vv](double x) { return x >= tn.back() ? 0.0 : lin_interp(tn, vv, x); };
    return z;
}

double ZetaDensity::eval(double t) const {
    if (!(t > 0)) throw ValidationError("zeta: defined on (0, infinity)");
    if (t >= R_) return 0.0;
    return f_(t);
}

ZetaDensity::Membership ZetaDensity::membership_check(int n, int j) const {
    Membership m;
    const int p = n - j;
    double t0 = is_sampled() ? tnodes_.front() : 1e-8;
    for (int k = 0; k < 24; ++k) {
        double t = std::max(t0, R_ * std::pow(2.0, -k - 1));
        m.t_seq.push_back(t);
        m.tpow_seq.push_back(std::pow(t, p) * eval(t));
        auto g = [this, p](double s) { return eval(s) * std::pow(s, p - 1); };
        m.tail_seq.push_back(integrate_adaptive(g, t, R_).value);
        if (t <= t0) break;
    }
    double scale = 1.0;
    for (double v : m.tail_seq) scale = std::max(scale, std::abs(v));
    m.limit_ok = std::abs(m.tpow_seq.back()) < 1e-4 * scale + 1e-10;
    if (m.tail_seq.size() >= 3) {
        double d1 = std::abs(m.tail_seq[m.tail_seq.size() - 1] -
                             m.tail_seq[m.tail_seq.size() - 2]);
        m.tail_ok = d1 < 1e-4 * scale + 1e-10;
    }
    return m;
}

double r_transform(const ZetaDensity& zeta, int n, int j, double t) {
    if (j < 1 || j > n - 1) throw ValidationError("r_transform: need 1 <= j <= n-1");
    if (t < 0) throw ValidationError("r_transform: t must be >= 0");
    const int p = n - j;
    const double R = zeta.support_radius();
    if (t >= R) return 0.0;
    double tail;
    if (zeta.is_sampled()) {
        // exact on the piecewise-linear interpolant
        const auto& x = zeta.nodes();
        const auto& y = zeta.values();
        tail = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            double a = std::max(t, x[i]), b = x[i + 1];
            if (a >= b) continue;
            double B = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
            double A = y[i] - B * x[i];
            // \int (A + B s) s^{p-1} ds
            tail += A * (std::pow(b, p) - std::pow(a, p)) / p +
                    B * (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
        }
    } else {
        auto g = [&zeta, p](double s) { return zeta.eval(s) * std::pow(s, p - 1); };
        tail = integrate_adaptive(g, t, R, {1e-12, 1e-15, 1 << 20}).value;
    }
    double head = t > 0 ? std::pow(t, p) * zeta.eval(t) : 0.0;
    return head + p * tail;
}

RInverseResult r_inverse(const std::function<double(double)>& phi, double support_radius, int n,
                         int j, const std::vector<double>& out_grid) {
    if (j < 1 || j > n - 1) throw ValidationError("r_inverse: need 1 <= j <= n-1");
    const int p = n - j;
    const double R = support_radius;
    std::vector<double> t_used, z;
    for (double t : out_grid) {
        if (!(t > 0) || t > R) continue;
        auto g = [&phi, p](double s) { return phi(s) * std::pow(s, -(p + 1)); };
        double tail = integrate_adaptive(g, t, R, {1e-12, 1e-15, 1 << 20}).value;
        t_used.push_back(t);
        z.push_back(std::pow(t, -p) * phi(t) - p * tail);
    }
    RInverseResult out{ZetaDensity::sampled(t_used, z), false, 0.0};
    return out;
}

RInverseResult r_inverse_sampled(const std::vector<double>& t, const std::vector<double>& phi,
                                 int n, int j) {
    if (t.size() != phi.size() || t.size() < 8)
        throw ValidationError("r_inverse: need matching samples (>= 8)");
    const int p = n - j;
    const std::size_t m = t.size();

    // oscillation diagnostic: 4th-order central differences of phi
    std::vector<double> dphi(m, 0.0);
    double h = t[1] - t[0];
    for (std::size_t i = 2; i + 2 < m; ++i)
        dphi[i] = (-phi[i + 2] + 8 * phi[i + 1] - 8 * phi[i - 1] + phi[i - 2]) / (12 * h);
    double osc = 0.0, scale = 1e-30;
    for (std::size_t i = 3; i + 2 < m; ++i) {
        osc += std::abs(dphi[i] - dphi[i - 1]);
        scale = std::max(scale, std::abs(dphi[i]));
    }
    osc /= (scale * static_cast<double>(m));

    // by-parts inverse on a piecewise-quadratic interpolant, exact moments
    std::vector<double> tz, z;
    for (std::size_t idx = 0; idx < m; ++idx) {
        double ti = t[idx];
        if (!(ti > 0)) continue;
        double tail = sampled_tail_moment(t, phi, p, ti);
        tz.push_back(ti);
        z.push_back(std::pow(ti, -p) * phi[idx] - p * tail);
    }
    RInverseResult out{ZetaDensity::sampled(tz, z), osc > 0.5, osc};
    return out;
}

double u_t_eval(double t, const Vec& x) {
    if (t < 0) throw ValidationError("u_t: t must be >= 0");
    return std::max(0.0, norm2(x) - t);
}

double v_star_on_ut(const ZetaDensity& zeta, int n, int j, double t) {
    return unit_ball_volume(n) * binomial(n, j) * r_transform(zeta, n, j, t);
}

double cone_bridge_residual(int n, double h, const std::vector<Vec>& points) {
    if (h > 0) throw ValidationError("cone_bridge_residual: needs h <= 0");
    auto cone = geom::make_cone(n + 1, h);
    double res = 0.0;
    for (const auto& x : points) {
        Vec y(n + 1);
        for (int i = 0; i < n; ++i) y[i] = x[i];
        y[n] = -1.0;
        double lhs = geom::support(cone, y);
        double rhs = u_t_eval(-h, x) - h;
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

std::vector<Vec> bridge_sample_points(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 2.0);
    std::vector<Vec> pts;
    pts.push_back(Vec(n, 0.0));
    while (static_cast<int>(pts.size()) < count) {
        Vec x(n);
        for (auto& v : x) v = g(rng);
        pts.push_back(std::move(x));
    }
    return pts;
}

ZetaReconstruction reconstruct_zeta(const std::vector<double>& t, const std::vector<double>& phi,
                                    int n, int j) {
    if (t.size() != phi.size() || t.size() < 8)
        throw ValidationError("reconstruct_zeta: need matching samples (>= 8)");
    double scale = 0.0;
    for (double v : phi) scale = std::max(scale, std::abs(v));
    bool warn = std::abs(phi.back()) > 1e-6 * scale;

    auto inv = r_inverse_sampled(t, phi, n, j);
    const double c = unit_ball_volume(n) * binomial(n, j);
    std::vector<double> zvals = inv.zeta.values();
    for (auto& v : zvals) v /= c;
    ZetaDensity zeta = ZetaDensity::sampled(inv.zeta.nodes(), zvals);

    double res = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0)) continue;
        res = std::max(res, std::abs(v_star_on_ut(zeta, n, j, t[i]) - phi[i]));
    }
    return {zeta, res, warn};
}

}  // namespace zonalval::fnal
