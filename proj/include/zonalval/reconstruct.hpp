#pragma once

#include "zonalval/valuations.hpp"

namespace zonalval::recon {

using dspace::ZonalDensity;
using transforms::ConeProfile;
using val::ValuationHandle;

struct GridConfig {
    int nodes = 64;
    double s_min = 1e-3;
};

struct ConeProfileSample {
    std::vector<double> s;      // includes -1 and 1
    std::vector<double> phi;    // mu(C_{sqrt(1-s^2)/s}); disk at s = +-1
    double limit0_plus = 0.0;   // lim_{s->0+} |s| phi(s) via the truncated-cone route
    double limit0_minus = 0.0;
    // per-node truncated-cone estimates used for the limits (5 smallest |s| per side)
    std::vector<std::pair<double, double>> limit_route;  // (s, |s| phi estimate)

    std::string to_csv() const;  // rows (s, phi(s), |s| phi(s))
};

// Body constructions shared with tests/CLI.
geom::ConvexBody cone_for_s(int n, double s);
// D_{h,eps} = {x in C_h : |x_n| <= eps|h|} as a revolution body.
geom::ConvexBody truncated_cone_body(int n, double h, double eps);

ConeProfileSample sample_cone_profile(const ValuationHandle& mu, const GridConfig& grid = {});

// f = (1/omega_{n-1}) J_{(n-j-1)/2}(phi_mu), center-projected; the returned
// Sampled density carries the transform-backed evaluator.
ZonalDensity reconstruct_density(const ValuationHandle& mu, const GridConfig& grid = {});

// |mu(D_{h,eps}) - [1-(1-eps)^j] mu(C_h) - (1-eps)^j mu(D)|
double frustum_identity_residual(const ValuationHandle& mu, double h, double eps);

// (mu(D x [0,1]) - mu(D)) / j  ==  lim_{s->0} |s| phi_mu(s)
double cylinder_limit(const ValuationHandle& mu);

// External valuation input CSV: rows (body-spec JSON, value); the JSON field may
// contain commas, so the value is the LAST cell and the body spec the rest.
ValuationHandle handle_from_csv(int n, int j, const std::string& csv_text);
// Bodies an external table must cover for the grid (cones, disk, truncated cones).
std::vector<geom::ConvexBody> required_grid_bodies(int n, const GridConfig& grid = {});

}  // namespace zonalval::recon
