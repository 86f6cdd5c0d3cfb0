#pragma once

#include <functional>
#include <vector>

#include "zonalval/dspace.hpp"

namespace zonalval::transforms {

// Element of the space C: continuous on [-1,1]\{0}, u(1) = u(-1),
// lim_{s->0} |s| u(s) exists and is finite.
class ConeProfile {
public:
    static ConeProfile from_callable(std::function<double(double)> u, double u_at_1,
                                     double u_at_m1, double limit0, int parity = 0,
                                     std::string label = "profile");
    // rows (s_i, u_i), strictly increasing, must include s = -1 and s = 1;
    // limit0 = lim |s| u(s) (estimated by the caller for sampled data).
    static ConeProfile from_samples(std::vector<double> s, std::vector<double> u, double limit0);

    double eval(double s) const;  // s in [-1,1]\{0}
    double endpoint() const { return u1_; }           // u(1)
    double endpoint_minus() const { return um1_; }    // u(-1)
    double limit0() const { return limit0_; }         // lim |s| u(s)
    int parity() const { return parity_; }
    bool is_sampled() const { return !snodes_.empty(); }
    const std::vector<double>& sample_nodes() const { return snodes_; }
    const std::vector<double>& sample_values() const { return uvals_; }
    const std::string& label() const { return label_; }

    // |s| * u(s), continuously extended through 0 by limit0.
    double v_eval(double s) const;

    double norm_C() const;

    struct CMembership {
        bool endpoints_equal = false;
        bool limit_exists = false;
        double limit_plus = 0.0, limit_minus = 0.0;
    };
    CMembership check_membership(double tol = 1e-9) const;

private:
    std::function<double(double)> u_;
    double u1_ = 0.0, um1_ = 0.0, limit0_ = 0.0;
    int parity_ = 0;
    std::string label_;
    std::vector<double> snodes_, uvals_;  // raw samples when present
};

// I_a(f)[s] = sign(s) [ s^{-1}(1-s^2)^a f(s) + 2a \int_{-sign(s)}^s f(t)(1-t^2)^{a-1} dt ],
// endpoint value I_a(f)[+-1] = 2a \int_{-1}^1 f(t)(1-t^2)^{a-1} dt.
ConeProfile transform_I(const dspace::ZonalDensity& f);
double transform_I_at(const dspace::ZonalDensity& f, double s);

// J_a(u)[s] = |s|(-u(1)/2) + |s|(1-s^2)^{-a} u(s) - 2a|s| \int_0^s t(1-t^2)^{-(a+1)} u(t) dt,
// J_a(u)[0] = lim |t| u(t). Carries the exact partial-integral identity so that
// downstream quadrature never interpolates the output.
dspace::ZonalDensity transform_J(const ConeProfile& u, double a);

double norm_C(const ConeProfile& u);

struct RoundtripReport {
    double residual = 0.0;        // sup deviation (weighted where applicable)
    double linear_correction = 0.0;  // odd-route constant (JI only)
};

// sup over grid of |s| * |I_a(J_a(u))[s] - u(s)| (endpoints included).
RoundtripReport roundtrip_IJ(const ConeProfile& u, double a, int grid_size = 41);

// weighted sup of J_a(I_a(f)) - f after removing the odd-route linear term
// f_odd correction s * 2a \int_0^1 f_odd (1-t^2)^{a-1} dt.
RoundtripReport roundtrip_JI(const dspace::ZonalDensity& f, int grid_size = 41);

// Evaluation grid for profiles: sin of Chebyshev nodes in theta, exclusion
// zone |s| < s_min, symmetric; endpoints excluded (handled separately).
std::vector<double> profile_grid(int n_nodes, double s_min = 1e-3);

}  // namespace zonalval::transforms
