#include "zonalval/dspace.hpp"

#include <algorithm>

namespace zonalval::dspace {

namespace {

double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

}  // namespace

ZonalDensity ZonalDensity::power(double a, double beta) {
    if (!(a > 0)) throw ValidationError("density weight a must be > 0");
    ZonalDensity d;
    d.a_ = a;
    d.kind_ = DensityKind::Power;
    d.beta_ = beta;
    d.tail_minus_ = d.tail_plus_ = a - beta;  // may be <= 0: then not a member
    d.label_ = "power(" + fmt17(beta) + ")";
    return d;
}

ZonalDensity ZonalDensity::poly(double a, std::vector<double> coeffs) {
    if (!(a > 0)) throw ValidationError("density weight a must be > 0");
    if (coeffs.empty()) coeffs = {0.0};
    ZonalDensity d;
    d.a_ = a;
    d.kind_ = DensityKind::Poly;
    d.coeffs_ = std::move(coeffs);
    d.tail_minus_ = d.tail_plus_ = a;
    d.label_ = "poly";
    return d;
}

ZonalDensity ZonalDensity::sampled(double a, SampledData data,
                                   std::optional<std::pair<double, double>> tails, bool trusted) {
    if (!(a > 0)) throw ValidationError("density weight a must be > 0");
    if (data.nodes.size() != data.gvals.size() || data.nodes.empty())
        throw ValidationError("sampled density: nodes/values size mismatch");
    for (std::size_t i = 0; i < data.nodes.size(); ++i) {
        if (!(std::abs(data.nodes[i]) < 1.0))
            throw ValidationError("sampled density: nodes must lie in (-1,1)");
        if (!std::isfinite(data.gvals[i]))
            throw ValidationError("sampled density: non-finite weighted value");
        if (i > 0 && !(data.nodes[i] > data.nodes[i - 1]))
            throw ValidationError("sampled density: nodes must be strictly increasing");
    }
    if (!tails && !trusted)
        throw ValidationError(
            "sampled density: tail exponents required (or pass trusted=true)");
    ZonalDensity d;
    d.a_ = a;
    d.kind_ = DensityKind::Sampled;
    d.sampled_ = std::move(data);
    if (tails) {
        if (!(tails->first > 0) || !(tails->second > 0))
            throw ValidationError("sampled density: tail exponents must be positive");
        d.tail_minus_ = tails->first;
        d.tail_plus_ = tails->second;
    } else {
        d.tail_minus_ = d.tail_plus_ = a;
    }
    d.label_ = "sampled";
    d.build_interp();
    return d;
}

ZonalDensity ZonalDensity::derived(double a, std::function<double(double)> f_eval,
                                   std::pair<double, double> tails, std::string label,
                                   std::function<double(double)> exact_partial) {
    if (!(a > 0)) throw ValidationError("density weight a must be > 0");
    ZonalDensity d;
    d.a_ = a;
    d.kind_ = DensityKind::Derived;
    d.eval_ = std::move(f_eval);
    d.tail_minus_ = tails.first;
    d.tail_plus_ = tails.second;
    d.label_ = std::move(label);
    d.exact_partial_ = std::move(exact_partial);
    return d;
}

ZonalDensity ZonalDensity::sampled_with_evaluator(double a, SampledData data,
                                                  std::pair<double, double> tails,
                                                  std::function<double(double)> f_eval,
                                                  std::function<double(double)> exact_partial,
                                                  std::string label) {
    ZonalDensity d = sampled(a, std::move(data), tails, false);
    d.eval_ = std::move(f_eval);
    d.exact_partial_ = std::move(exact_partial);
    d.label_ = std::move(label);
    return d;
}

double ZonalDensity::power_beta() const {
    if (kind_ != DensityKind::Power) throw ValidationError("not a power density");
    return beta_;
}

const std::vector<double>& ZonalDensity::poly_coeffs() const {
    if (kind_ != DensityKind::Poly) throw ValidationError("not a polynomial density");
    return coeffs_;
}

const SampledData& ZonalDensity::samples() const { return sampled_; }

void ZonalDensity::build_interp() {
    // pchip slopes in theta = arcsin(s)
    const auto& s = sampled_.nodes;
    const auto& g = sampled_.gvals;
    const std::size_t m = s.size();
    pchip_slopes_.assign(m, 0.0);
    if (m < 2) return;
    std::vector<double> th(m), dl(m - 1);
    for (std::size_t i = 0; i < m; ++i) th[i] = std::asin(s[i]);
    for (std::size_t i = 0; i + 1 < m; ++i) dl[i] = (g[i + 1] - g[i]) / (th[i + 1] - th[i]);
    pchip_slopes_[0] = dl[0];
    pchip_slopes_[m - 1] = dl[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (dl[i - 1] * dl[i] <= 0) {
            pchip_slopes_[i] = 0.0;
        } else {
            double w1 = 2 * (th[i + 1] - th[i]) + (th[i] - th[i - 1]);
            double w2 = (th[i + 1] - th[i]) + 2 * (th[i] - th[i - 1]);
            pchip_slopes_[i] = (w1 + w2) / (w1 / dl[i - 1] + w2 / dl[i]);
        }
    }
}

double ZonalDensity::interp_g(double s) const {
    const auto& nodes = sampled_.nodes;
    const auto& g = sampled_.gvals;
    if (nodes.size() == 1) return g[0];
    if (s <= nodes.front()) {
        // tail model toward -1
        double s0 = nodes.front();
        double base = std::pow((1.0 + s) / (1.0 + s0), tail_minus_);
        return g.front() * base;
    }
    if (s >= nodes.back()) {
        double s0 = nodes.back();
        double base = std::pow((1.0 - s) / (1.0 - s0), tail_plus_);
        return g.back() * base;
    }
    auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin()) - 1;
    double t0 = std::asin(nodes[i]), t1 = std::asin(nodes[i + 1]);
    double th = std::asin(s);
    double hseg = t1 - t0, u = (th - t0) / hseg;
    double h00 = (1 + 2 * u) * sq(1 - u), h10 = u * sq(1 - u);
    double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * g[i] + hseg * h10 * pchip_slopes_[i] + h01 * g[i + 1] +
           hseg * h11 * pchip_slopes_[i + 1];
}

double ZonalDensity::eval_weighted(double s) const {
    if (std::abs(s) > 1.0) throw ValidationError("eval_weighted: |s| > 1");
    switch (kind_) {
        case DensityKind::Power: {
            double e = a_ - beta_;
            double b = 1.0 - s * s;
            return b <= 0 ? (e > 0 ? 0.0 : (e == 0 ? 1.0 : INFINITY)) : std::pow(b, e);
        }
        case DensityKind::Poly:
            return std::pow(std::max(0.0, 1.0 - s * s), a_) * poly_eval(coeffs_, s);
        case DensityKind::Sampled:
            if (eval_) {
                if (std::abs(s) == 1.0) return 0.0;
                return std::pow(1.0 - s * s, a_) * eval_(s);
            }
            return interp_g(s);
        case DensityKind::Derived:
            if (std::abs(s) == 1.0) return 0.0;
            return std::pow(1.0 - s * s, a_) * eval_(s);
    }
    throw ValidationError("eval_weighted: bad kind");
}

double ZonalDensity::eval_f(double s) const {
    if (!(std::abs(s) < 1.0)) throw ValidationError("eval_f: s must lie in (-1,1)");
    switch (kind_) {
        case DensityKind::Power:
            return std::pow(1.0 - s * s, -beta_);
        case DensityKind::Poly:
            return poly_eval(coeffs_, s);
        case DensityKind::Sampled:
            if (eval_) return eval_(s);
            return interp_g(s) * std::pow(1.0 - s * s, -a_);
        case DensityKind::Derived:
            return eval_(s);
    }
    throw ValidationError("eval_f: bad kind");
}

double ZonalDensity::partial_integral(double s) const {
    s = std::clamp(s, -1.0, 1.0);
    switch (kind_) {
        case DensityKind::Power: {
            double c = a_ - beta_;
            if (c <= 0)
                throw NumericalError("partial_integral diverges: power density with beta >= a");
            return partial_even_weight(c, s);
        }
        case DensityKind::Poly: {
            double v = 0.0;
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                if (coeffs_[k] != 0.0)
                    v += coeffs_[k] * partial_monomial_weight(a_, static_cast<int>(k), s);
            return v;
        }
        default: {
            if (exact_partial_) return exact_partial_(s);
            double tmin = std::min(tail_minus_, tail_plus_);
            if (tmin <= 0)
                throw NumericalError("partial_integral: nonpositive tail exponent, integral "
                                     "cannot be certified");
            double cap = 0.5 * (34.0 * M_LN2 / std::max(tmin, 0.05));
            cap = std::clamp(cap, 19.0, 400.0);
            auto g = [this](double t) { return eval_weighted(t); };
            // interpolated/derived evaluations carry ~1e-10 noise; tighter
            // tolerances only churn
            return integrate_weighted_tanh(g, 0.0, s, {3e-10, 1e-13, 1 << 15}, cap).value;
        }
    }
}

double ZonalDensity::kernel_integral(double c, int k, double lo, double hi) const {
    if (lo > hi) return -kernel_integral(c, k, hi, lo);
    switch (kind_) {
        case DensityKind::Power: {
            double ce = c - beta_;
            if (ce <= 0 && (std::abs(lo) == 1.0 || std::abs(hi) == 1.0))
                throw NumericalError("kernel_integral diverges at endpoint " +
                                     std::string(std::abs(hi) == 1.0 ? "+1" : "-1") +
                                     " (power density, c <= beta)");
            if (ce <= 0) {
                // finite interval strictly inside (-1,1): direct quadrature
                auto f = [this, c, k](double t) {
                    return eval_f(t) * std::pow(t, k) * std::pow(1.0 - t * t, c - 1.0);
                };
                return integrate_adaptive(f, lo, hi).value;
            }
            if (k == 0) return partial_even_weight(ce, hi) - partial_even_weight(ce, lo);
            return partial_monomial_weight(ce, k, hi) - partial_monomial_weight(ce, k, lo);
        }
        case DensityKind::Poly: {
            double v = 0.0;
            for (std::size_t m = 0; m < coeffs_.size(); ++m)
                if (coeffs_[m] != 0.0)
                    v += coeffs_[m] * (partial_monomial_weight(c, static_cast<int>(m) + k, hi) -
                                       partial_monomial_weight(c, static_cast<int>(m) + k, lo));
            return v;
        }
        default: {
            // integrand in tau: g(t) t^k (1-t^2)^{c-a}
            double dm = tail_minus_ + c - a_;
            double dp = tail_plus_ + c - a_;
            if (lo <= -1.0 + 1e-15 && dm <= 0)
                throw NumericalError("kernel_integral diverges at endpoint -1 (tail exponent)");
            if (hi >= 1.0 - 1e-15 && dp <= 0)
                throw NumericalError("kernel_integral diverges at endpoint +1 (tail exponent)");
            double tmin = std::min(dm, dp);
            double cap = 0.5 * (34.0 * M_LN2 / std::clamp(tmin, 0.05, 10.0));
            cap = std::clamp(cap, 19.0, 400.0);
            auto g = [this, c, k](double t) {
                return eval_weighted(t) * std::pow(t, k) * std::pow(1.0 - t * t, c - a_);
            };
            return integrate_weighted_tanh(g, lo, hi, {3e-10, 3e-10, 1 << 14}, cap).value;
        }
    }
}

ValueWithError ZonalDensity::norm_Da() const {
    auto gabs = [this](double s) { return std::abs(eval_weighted(s)); };
    double sup_g = max_scan(gabs, -1.0, 1.0, 8192);
    auto pabs = [this](double s) { return std::abs(partial_integral(s)); };
    double sup_p = max_scan(pabs, -1.0, 1.0, 4096);
    double err = 1e-12 * (sup_g + sup_p) + 1e-14;
    if (kind_ == DensityKind::Sampled || kind_ == DensityKind::Derived) err += 1e-10;
    return {sup_g + sup_p, err};
}

ZonalDensity ZonalDensity::truncate(double r) const {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("truncate: r must lie in (0,1)");
    ZonalDensity self = *this;
    double fr = eval_f(r), fmr = eval_f(-r);
    auto f_eval = [self, r, fr, fmr](double s) {
        if (s >= r) return fr;
        if (s <= -r) return fmr;
        return self.eval_f(s);
    };
    double pr = partial_integral(r), pmr = partial_integral(-r);
    double a = a_;
    auto exact_partial = [self, r, fr, fmr, pr, pmr, a](double s) {
        if (s >= r) return pr + fr * (partial_even_weight(a, s) - partial_even_weight(a, r));
        if (s <= -r) return pmr + fmr * (partial_even_weight(a, s) - partial_even_weight(a, -r));
        return self.partial_integral(s);
    };
    return derived(a_, f_eval, {a_, a_}, label_ + "^r(" + fmt17(r) + ")", exact_partial);
}

ZonalDensity ZonalDensity::with_weight(double a_new) const {
    if (a_new == a_) return *this;
    switch (kind_) {
        case DensityKind::Power:
            return power(a_new, beta_);
        case DensityKind::Poly:
            return poly(a_new, coeffs_);
        default: {
            ZonalDensity self = *this;
            auto f_eval = [self](double s) { return self.eval_f(s); };
            double shift = a_new - a_;
            return derived(a_new, f_eval, {tail_minus_ + shift, tail_plus_ + shift},
                           label_ + "@a=" + fmt17(a_new));
        }
    }
}

ZonalDensity ZonalDensity::scaled_by(double c) const {
    switch (kind_) {
        case DensityKind::Power: {
            if (c == 1.0) return *this;
            auto self = *this;
            auto f_eval = [self, c](double s) { return c * self.eval_f(s); };
            auto p = [self, c](double s) { return c * self.partial_integral(s); };
            return derived(a_, f_eval, {tail_minus_, tail_plus_}, label_ + "*c", p);
        }
        case DensityKind::Poly: {
            auto cs = coeffs_;
            for (auto& x : cs) x *= c;
            return poly(a_, cs);
        }
        default: {
            auto self = *this;
            auto f_eval = [self, c](double s) { return c * self.eval_f(s); };
            std::function<double(double)> p;
            if (exact_partial_) {
                auto ep = exact_partial_;
                p = [ep, c](double s) { return c * ep(s); };
            }
            return derived(a_, f_eval, {tail_minus_, tail_plus_}, label_ + "*c", p);
        }
    }
}

ZonalDensity ZonalDensity::plus_linear(double c) const {
    if (c == 0.0) return *this;
    if (kind_ == DensityKind::Poly) {
        auto cs = coeffs_;
        if (cs.size() < 2) cs.resize(2, 0.0);
        cs[1] += c;
        return poly(a_, cs);
    }
    ZonalDensity self = *this;
    double a = a_;
    auto f_eval = [self, c](double s) { return self.eval_f(s) + c * s; };
    auto p = [self, c, a](double s) {
        return self.partial_integral(s) + c * partial_monomial_weight(a, 1, s);
    };
    return derived(a_, f_eval, {std::min(tail_minus_, a_), std::min(tail_plus_, a_)},
                   label_ + "+lin", p);
}

bool ZonalDensity::is_member() const {
    switch (kind_) {
        case DensityKind::Power:
            return beta_ < a_;
        case DensityKind::Poly:
            return true;
        default:
            return tail_minus_ > 0 && tail_plus_ > 0;
    }
}

MembershipReport ZonalDensity::membership_check() const {
    MembershipReport rep;
    for (int k = 1; k <= 30; ++k) {
        double s = 1.0 - std::pow(2.0, -k);
        rep.s_seq.push_back(s);
        rep.weighted_seq.push_back(
            std::max(std::abs(eval_weighted(s)), std::abs(eval_weighted(-s))));
        bool diverges = false;
        double pp = 0.0, pm = 0.0;
        try {
            pp = partial_integral(s);
            pm = partial_integral(-s);
        } catch (const NumericalError&) {
            diverges = true;
        }
        rep.partial_plus.push_back(diverges ? INFINITY : pp);
        rep.partial_minus.push_back(diverges ? INFINITY : pm);
    }
    switch (kind_) {
        case DensityKind::Power:
            rep.limit_ok = beta_ < a_;
            rep.integral_ok = beta_ < a_;
            break;
        case DensityKind::Poly:
            rep.limit_ok = rep.integral_ok = true;
            break;
        default:
            rep.limit_ok = tail_minus_ > 0 && tail_plus_ > 0;
            rep.integral_ok = rep.limit_ok && std::isfinite(rep.partial_plus.back()) &&
                              std::isfinite(rep.partial_minus.back()) &&
                              std::abs(rep.partial_plus.back() -
                                       rep.partial_plus[rep.partial_plus.size() - 6]) < 1e-6 &&
                              std::abs(rep.partial_minus.back() -
                                       rep.partial_minus[rep.partial_minus.size() - 6]) < 1e-6;
            break;
    }
    return rep;
}

bool ZonalDensity::integrability_check(int n, int j) const {
    if (j < 1 || j > n - 2) throw ValidationError("integrability_check: need 1 <= j <= n-2");
    double c = 0.5 * (n - j - 1);  // integral weight exponent is c - 1 = (n-j-3)/2
    switch (kind_) {
        case DensityKind::Power:
            return beta_ < c;
        case DensityKind::Poly:
            return true;
        default:
            return tail_minus_ + c - a_ > 0 && tail_plus_ + c - a_ > 0;
    }
}

ZonalDensity ZonalDensity::center_project(int n) const {
    double q = 0.5 * (n - 1);
    double denom = beta_fn(1.5, q);
    double numer = 0.0;
    switch (kind_) {
        case DensityKind::Power:
            numer = 0.0;  // odd integrand
            break;
        default:
            numer = kernel_integral(q, 1, -1.0, 1.0);
            break;
    }
    double c = numer / denom;
    if (!std::isfinite(c)) throw ValidationError("center_project: moment integral diverged");
    if (c == 0.0) return *this;
    return plus_linear(-c);
}

std::pair<double, double> fit_tail_exponents(const SampledData& d, double fallback) {
    auto fit = [&](bool plus) -> double {
        std::vector<double> lx, ly;
        const std::size_t m = d.nodes.size();
        const std::size_t use = std::min<std::size_t>(6, m / 3 + 1);
        for (std::size_t i = 0; i < use; ++i) {
            std::size_t idx = plus ? m - 1 - i : i;
            double s = d.nodes[idx], g = std::abs(d.gvals[idx]);
            if (g <= 0) continue;
            lx.push_back(std::log(1.0 - s * s));
            ly.push_back(std::log(g));
        }
        if (lx.size() < 3) return fallback;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        double nn = static_cast<double>(lx.size());
        double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
        if (!std::isfinite(slope) || slope <= 1e-3) return fallback;
        return slope;
    };
    return {fit(false), fit(true)};
}

}  // namespace zonalval::dspace
