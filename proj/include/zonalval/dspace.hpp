#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zonalval/common.hpp"
#include "zonalval/quadrature.hpp"

namespace zonalval::dspace {

enum class DensityKind { Power, Poly, Sampled, Derived };

struct SampledData {
    std::vector<double> nodes;   // strictly increasing, in (-1,1)
    std::vector<double> gvals;   // g_k = (1-s_k^2)^a f(s_k)
};

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

struct MembershipReport {
    bool limit_ok = false;
    bool integral_ok = false;
    std::vector<double> s_seq;
    std::vector<double> weighted_seq;  // max of |g(+-s_k)|
    std::vector<double> partial_plus;  // \int_0^{s_k}
    std::vector<double> partial_minus;
};

// A density f on (-1,1) stored through its bounded weighted form
// g(s) = (1-s^2)^a f(s). All quadrature runs against g with the t = tanh(tau)
// substitution; analytic families use exact incomplete-beta antiderivatives.
class ZonalDensity {
public:
    static ZonalDensity power(double a, double beta);
    static ZonalDensity poly(double a, std::vector<double> coeffs);  // f(t) = sum c_k t^k
    static ZonalDensity zero(double a) { return poly(a, {0.0}); }
    static ZonalDensity constant(double a, double c) { return poly(a, {c}); }
    // tail exponents required unless trusted (then they default to a)
    static ZonalDensity sampled(double a, SampledData data,
                                std::optional<std::pair<double, double>> tails,
                                bool trusted = false);
    // derived densities (truncations, transform outputs, projections)
    static ZonalDensity derived(double a, std::function<double(double)> f_eval,
                                std::pair<double, double> tails, std::string label,
                                std::function<double(double)> exact_partial = nullptr);
    // sampled data of record plus a transform-backed evaluator (reconstruction)
    static ZonalDensity sampled_with_evaluator(double a, SampledData data,
                                               std::pair<double, double> tails,
                                               std::function<double(double)> f_eval,
                                               std::function<double(double)> exact_partial,
                                               std::string label = "reconstructed");

    double a() const { return a_; }
    DensityKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    std::pair<double, double> tails() const { return {tail_minus_, tail_plus_}; }
    double power_beta() const;
    const std::vector<double>& poly_coeffs() const;
    const SampledData& samples() const;
    bool has_samples() const { return !sampled_.nodes.empty(); }

    double eval_f(double s) const;         // |s| < 1
    double eval_weighted(double s) const;  // |s| <= 1

    // \int_0^s f(t) (1-t^2)^{a-1} dt  (improper endpoints allowed, s in [-1,1])
    double partial_integral(double s) const;

    // \int_{lo}^{hi} f(t) t^k (1-t^2)^{c-1} dt; throws NumericalError naming the
    // endpoint when the combination diverges.
    double kernel_integral(double c, int k, double lo, double hi) const;

    ValueWithError norm_Da() const;

    ZonalDensity truncate(double r) const;
    ZonalDensity with_weight(double a_new) const;  // same f, different exponent
    ZonalDensity scaled_by(double c) const;
    ZonalDensity plus_linear(double c) const;  // f + c*t

    MembershipReport membership_check() const;
    // membership booleans only (no diagnostic sequences); cheap enough for
    // per-evaluation validation
    bool is_member() const;
    bool integrability_check(int n, int j) const;
    ZonalDensity center_project(int n) const;

    // canonical weight for (n, j)
    static double weight_for(int n, int j) { return 0.5 * (n - j - 1); }

private:
    ZonalDensity() = default;

    double a_ = 1.0;
    DensityKind kind_ = DensityKind::Poly;
    double tail_minus_ = 1.0, tail_plus_ = 1.0;
    std::string label_;

    double beta_ = 0.0;
    std::vector<double> coeffs_;
    SampledData sampled_;
    std::vector<double> pchip_slopes_;  // in theta = arcsin(s) coordinates
    std::function<double(double)> eval_;
    std::function<double(double)> exact_partial_;

    double interp_g(double s) const;
    void build_interp();
};

// Fit of tail exponents from weighted samples near the endpoints.
std::pair<double, double> fit_tail_exponents(const SampledData& d, double fallback);

}  // namespace zonalval::dspace
