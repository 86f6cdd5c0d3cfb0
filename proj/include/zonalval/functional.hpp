#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zonalval/common.hpp"

namespace zonalval::fnal {

// Element of D^n_j: continuous on (0, infinity), support bounded above by
// support_radius, with t^{n-j} zeta(t) -> 0 and convergent weighted tails.
class ZetaDensity {
public:
    static ZetaDensity callable(std::function<double(double)> f, double support_radius,
                                double near0_delta = 1.0);
    static ZetaDensity sampled(std::vector<double> t, std::vector<double> values);

    double eval(double t) const;                 // t > 0
    double support_radius() const { return R_; }
    bool is_sampled() const { return !tnodes_.empty(); }
    const std::vector<double>& nodes() const { return tnodes_; }
    const std::vector<double>& values() const { return vals_; }

    struct Membership {
        bool limit_ok = false;
        bool tail_ok = false;
        std::vector<double> t_seq, tpow_seq, tail_seq;
    };
    Membership membership_check(int n, int j) const;

private:
    std::function<double(double)> f_;
    double R_ = 1.0;
    double delta_ = 1.0;  // zeta(t) = O(t^{-(n-j)+delta}) near 0
    std::vector<double> tnodes_, vals_;
};

// R^{n-j}(zeta)[t] = t^{n-j} zeta(t) + (n-j) \int_t^inf zeta(s) s^{n-j-1} ds.
double r_transform(const ZetaDensity& zeta, int n, int j, double t);

struct RInverseResult {
    ZetaDensity zeta;
    bool noisy_derivative = false;  // oscillation diagnostic on sampled input
    double oscillation = 0.0;
};

// Inverse on compactly supported phi; evaluated through the equivalent
// integration-by-parts form zeta(t) = t^{-(n-j)} phi(t)
//                                     - (n-j) \int_t^inf phi(s) s^{-(n-j+1)} ds.
RInverseResult r_inverse(const std::function<double(double)>& phi, double support_radius, int n,
                         int j, const std::vector<double>& out_grid);
RInverseResult r_inverse_sampled(const std::vector<double>& t, const std::vector<double>& phi,
                                 int n, int j);

double u_t_eval(double t, const Vec& x);

// V*_{j,zeta}(u_t) = omega_n binom(n,j) R^{n-j}(zeta)[t]
double v_star_on_ut(const ZetaDensity& zeta, int n, int j, double t);

// max over sample points of |h_{C_h}(x,-1) - (u_{-h}(x) - h)| for h <= 0,
// with the cone C_h living in R^{n+1}.
double cone_bridge_residual(int n, double h, const std::vector<Vec>& points);
std::vector<Vec> bridge_sample_points(int n, int count, std::uint64_t seed);

struct ZetaReconstruction {
    ZetaDensity zeta;
    double roundtrip_residual = 0.0;  // sup |v_star_on_ut(zeta)(t_i) - phi_i|
    bool compact_support_warning = false;
};

// zeta = (omega_n binom(n,j))^{-1} (R^{n-j})^{-1}(phi) from samples of
// t -> mu(u_t) on a grid covering [0, R].
ZetaReconstruction reconstruct_zeta(const std::vector<double>& t, const std::vector<double>& phi,
                                    int n, int j);

}  // namespace zonalval::fnal
