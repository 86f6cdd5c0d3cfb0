#include "zonalval/transforms.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace zonalval::transforms {

using dspace::ZonalDensity;

ConeProfile ConeProfile::from_callable(std::function<double(double)> u, double u_at_1,
                                       double u_at_m1, double limit0, int parity,
                                       std::string label) {
    ConeProfile p;
    p.u_ = std::move(u);
    p.u1_ = u_at_1;
    p.um1_ = u_at_m1;
    p.limit0_ = limit0;
    p.parity_ = parity;
    p.label_ = std::move(label);
    return p;
}

ConeProfile ConeProfile::from_samples(std::vector<double> s, std::vector<double> u,
                                      double limit0) {
    if (s.size() != u.size() || s.size() < 4)
        throw ValidationError("cone profile samples: need matching rows (>= 4)");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i] > s[i - 1]))
            throw ValidationError("cone profile samples: s must be strictly increasing");
    if (s.front() != -1.0 || s.back() != 1.0)
        throw ValidationError("cone profile samples: endpoint rows s=-1 and s=1 are mandatory");

    ConeProfile p;
    p.snodes_ = s;
    p.uvals_ = u;
    p.u1_ = u.back();
    p.um1_ = u.front();
    p.limit0_ = limit0;
    p.label_ = "sampled-profile";

    // interpolate v = |s| u(s), continuously extended by limit0 at 0, pchip in s
    std::vector<double> vs, vv;
    bool zero_inserted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!zero_inserted && s[i] > 0.0) {
            vs.push_back(0.0);
            vv.push_back(limit0);
            zero_inserted = true;
        }
        vs.push_back(s[i]);
        vv.push_back(std::abs(s[i]) * u[i]);
    }
    const std::size_t m = vs.size();
    std::vector<double> slope(m, 0.0), dl(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) dl[i] = (vv[i + 1] - vv[i]) / (vs[i + 1] - vs[i]);
    slope[0] = dl[0];
    slope[m - 1] = dl[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (dl[i - 1] * dl[i] <= 0)
            slope[i] = 0.0;
        else {
            double w1 = 2 * (vs[i + 1] - vs[i]) + (vs[i] - vs[i - 1]);
            double w2 = (vs[i + 1] - vs[i]) + 2 * (vs[i] - vs[i - 1]);
            slope[i] = (w1 + w2) / (w1 / dl[i - 1] + w2 / dl[i]);
        }
    }
    p.u_ = [vs, vv, slope](double x) {
        double xq = std::clamp(x, -1.0, 1.0);
        auto it = std::upper_bound(vs.begin(), vs.end(), xq);
        std::size_t i = it == vs.begin() ? 0 : static_cast<std::size_t>(it - vs.begin()) - 1;
        if (i + 1 >= vs.size()) i = vs.size() - 2;
        double hseg = vs[i + 1] - vs[i], t = (xq - vs[i]) / hseg;
        double h00 = (1 + 2 * t) * sq(1 - t), h10 = t * sq(1 - t);
        double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        double v = h00 * vv[i] + hseg * h10 * slope[i] + h01 * vv[i + 1] + hseg * h11 * slope[i + 1];
        return v / std::abs(x);
    };
    return p;
}

double ConeProfile::eval(double s) const {
    if (s == 0.0) throw ValidationError("cone profile: undefined at s = 0");
    if (std::abs(s) > 1.0) throw ValidationError("cone profile: |s| > 1");
    if (s == 1.0) return u1_;
    if (s == -1.0) return um1_;
    return u_(s);
}

double ConeProfile::v_eval(double s) const {
    if (s == 0.0) return limit0_;
    return std::abs(s) * eval(s);
}

double ConeProfile::norm_C() const {
    auto v = [this](double s) { return std::abs(v_eval(s)); };
    double m = max_scan(v, -1.0, 1.0, 4096);
    m = std::max({m, std::abs(u1_), std::abs(um1_), std::abs(limit0_)});
    return m;
}

ConeProfile::CMembership ConeProfile::check_membership(double tol) const {
    CMembership r;
    double scale = std::max({1.0, std::abs(u1_), std::abs(limit0_)});
    r.endpoints_equal = std::abs(u1_ - um1_) <= tol * scale;
    double lo = 1e-7;
    if (is_sampled()) {
        for (double s : snodes_)
            if (s > 0) {
                lo = s;
                break;
            }
    }
    double lp = 0.0, lm = 0.0;
    for (double s = std::min(0.5, 8 * lo); s >= lo * 0.999; s *= 0.5) {
        lp = v_eval(s);
        lm = v_eval(-s);
    }
    r.limit_plus = lp;
    r.limit_minus = lm;
    r.limit_exists = std::abs(lp - lm) <= std::max(tol * scale, 1e3 * tol * std::abs(lp));
    return r;
}

double transform_I_at(const ZonalDensity& f, double s) {
    const double a = f.a();
    if (s == 0.0) throw ValidationError("I_a(f) undefined at s = 0");
    if (std::abs(s) > 1.0) throw ValidationError("I_a(f): |s| > 1");
    if (std::abs(s) == 1.0)
        return 2.0 * a * (f.partial_integral(1.0) - f.partial_integral(-1.0));
    double sign = s > 0 ? 1.0 : -1.0;
    double w = f.eval_weighted(s);
    double integral = f.partial_integral(s) - f.partial_integral(-sign);
    return sign * (w / s + 2.0 * a * integral);
}

ConeProfile transform_I(const ZonalDensity& f) {
    const double a = f.a();
    double u1 = 2.0 * a * (f.partial_integral(1.0) - f.partial_integral(-1.0));
    double limit0 = f.eval_f(0.0);
    int parity = 0;
    if (f.kind() == dspace::DensityKind::Power) {
        parity = 1;
    } else if (f.kind() == dspace::DensityKind::Poly) {
        bool even = true, odd = true;
        const auto& c = f.poly_coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] != 0.0) {
                if (k % 2 == 0) odd = false;
                else even = false;
            }
        }
        parity = even ? 1 : (odd ? -1 : 0);
    }
    ZonalDensity fc = f;
    auto u = [fc](double s) { return transform_I_at(fc, s); };
    return ConeProfile::from_callable(u, u1, u1, limit0, parity, "I[" + f.label() + "]");
}

namespace {

// Memoized antiderivative Q(s) = \int_0^s t (1-t^2)^{-(a+1)} u(t) dt, computed
// in t = tanh(tau) coordinates by adaptive increments from the nearest cached
// point. Queries at quadrature nodes sweep overlapping ranges, so increments
// keep the cost linear instead of quadratic.
class QCache {
public:
    QCache(ConeProfile u, double a) : u_(std::move(u)), a_(a) { vals_[0.0] = 0.0; }

    double q(double s) const {
        if (s == 0.0) return 0.0;
        const double cap = 19.0;
        double tau = std::abs(s) >= 1.0 ? (s > 0 ? cap : -cap)
                                        : std::clamp(std::atanh(s), -cap, cap);
        std::lock_guard<std::mutex> lock(m_);
        auto it = vals_.lower_bound(tau);
        double tau0, q0;
        if (it != vals_.end() && it->first == tau) return it->second;
        if (it == vals_.end()) {
            auto last = std::prev(it);
            tau0 = last->first;
            q0 = last->second;
        } else if (it == vals_.begin()) {
            tau0 = it->first;
            q0 = it->second;
        } else {
            auto prev = std::prev(it);
            if (tau - prev->first <= it->first - tau) {
                tau0 = prev->first;
                q0 = prev->second;
            } else {
                tau0 = it->first;
                q0 = it->second;
            }
        }
        auto integrand = [this](double t_) {
            double t = std::tanh(t_);
            double sech2 = 1.0 / sq(std::cosh(t_));
            double v = u_.v_eval(t);
            double sign = t >= 0 ? 1.0 : -1.0;
            return sign * v * std::pow(sech2, -a_);
        };
        // march in bounded tau steps; the integrand grows like e^{2a tau}, so
        // short panels stay well-conditioned and every step point is cached
        double qv = q0;
        double cur = tau0;
        while (cur != tau) {
            double next = tau > cur ? std::min(tau, cur + 1.0) : std::max(tau, cur - 1.0);
            qv += integrate_adaptive(integrand, cur, next, {1e-12, 1e-16, 1 << 16}).value;
            vals_[next] = qv;
            cur = next;
        }
        return qv;
    }

private:
    ConeProfile u_;
    double a_;
    mutable std::map<double, double> vals_;
    mutable std::mutex m_;
};

}  // namespace

ZonalDensity transform_J(const ConeProfile& u, double a) {
    if (!(a > 0)) throw ValidationError("transform_J: weight a must be > 0");
    auto mem = u.check_membership();
    if (!mem.endpoints_equal)
        throw ValidationError("transform_J: profile not in C (u(1) != u(-1))");
    if (!mem.limit_exists)
        throw ValidationError("transform_J: profile not in C (one-sided limits of |s|u(s) "
                              "disagree)");
    auto cache = std::make_shared<QCache>(u, a);
    ConeProfile uc = u;
    const double u1 = u.endpoint();
    const double lim0 = u.limit0();
    auto f_eval = [uc, cache, a, u1, lim0](double s) {
        if (s == 0.0) return lim0;
        double as = std::abs(s);
        return as * (-u1 / 2.0) + as * std::pow(1.0 - s * s, -a) * uc.eval(s) -
               2.0 * a * as * cache->q(s);
    };
    // exact partial integral: sign(s) * [ -u(1)/2 * M1(|s|) + (1-s^2)^a Q(s) ],
    // with the endpoint limit (1-s^2)^a Q(s) -> u(+-1)/(2a).
    auto exact_partial = [cache, a, u1](double s) {
        if (s == 0.0) return 0.0;
        double sign = s > 0 ? 1.0 : -1.0;
        double m1 = (1.0 - std::pow(std::max(0.0, 1.0 - s * s), a)) / (2.0 * a);
        double wq = std::abs(s) >= 1.0
                        ? u1 / (2.0 * a)
                        : std::pow(1.0 - s * s, a) * cache->q(s);
        return sign * ((-u1 / 2.0) * m1 + wq);
    };
    double tail = std::min(0.5, a);
    return ZonalDensity::derived(a, f_eval, {tail, tail}, "J[" + u.label() + "]",
                                 exact_partial);
}

double norm_C(const ConeProfile& u) { return u.norm_C(); }

std::vector<double> profile_grid(int n_nodes, double s_min) {
    auto x = chebyshev_nodes(n_nodes);
    std::vector<double> s;
    s.reserve(n_nodes);
    for (double xi : x) {
        double si = std::sin(0.5 * M_PI * xi);
        if (std::abs(si) >= s_min) s.push_back(si);
    }
    return s;
}

RoundtripReport roundtrip_IJ(const ConeProfile& u, double a, int grid_size) {
    ZonalDensity f = transform_J(u, a);
    double res = 0.0;
    for (double s : profile_grid(grid_size)) {
        double iv = transform_I_at(f, s);
        res = std::max(res, std::abs(s) * std::abs(iv - u.eval(s)));
    }
    for (double s : {-1.0, 1.0})
        res = std::max(res, std::abs(transform_I_at(f, s) - u.eval(s)));
    return {res, 0.0};
}

RoundtripReport roundtrip_JI(const ZonalDensity& f, int grid_size) {
    const double a = f.a();
    ConeProfile u = transform_I(f);
    ZonalDensity g = transform_J(u, a);
    // odd-route linear correction: 2a \int_0^1 f_odd (1-t^2)^{a-1} dt
    double corr = a * (f.partial_integral(1.0) + f.partial_integral(-1.0));
    double res = 0.0;
    for (double s : profile_grid(grid_size)) {
        double w = std::pow(1.0 - s * s, a);
        double dev = g.eval_f(s) - (f.eval_f(s) - corr * s);
        res = std::max(res, w * std::abs(dev));
    }
    return {res, corr};
}

}  // namespace zonalval::transforms
