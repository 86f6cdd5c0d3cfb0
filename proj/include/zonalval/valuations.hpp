#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "zonalval/measures.hpp"
#include "zonalval/transforms.hpp"

namespace zonalval::val {

using dspace::ZonalDensity;
using geom::ConvexBody;

struct EvalResult {
    double value = 0.0;
    double error = 0.0;
    std::string backend;  // "closed-form" | "mc"
};

struct McOptions {
    long long samples = 1000000;
    std::uint64_t seed = 1;
    double tol = 1e-3;
    int threads = 0;
};

// Phi_j(f)[C_h] = omega_{n-1} I_{(n-j-1)/2}(f)[s], s = sign(h)(1+h^2)^{-1/2};
// h = 0 routes to the s = 1 endpoint (the disk).
double phi_cone(int n, int j, const ZonalDensity& f, double h);
double phi_disk(int n, int j, const ZonalDensity& f, double r);
double phi_cylinder(int n, int j, const ZonalDensity& f, double r, double L);
// Phi_j(f) of the degree-0 component (S_0 is spherical Lebesgue for every body).
double phi_degree0(int n, const ZonalDensity& f);

enum class Orientation { Up, Down };
// Frustum with wide radius R, narrow radius rho, length L. Up = narrowing
// toward +e_n.
double phi_frustum(int n, int j, const ZonalDensity& f, double R, double rho, double L,
                   Orientation orient);

double phi_revolution(int n, int j, const ZonalDensity& f,
                      const std::vector<std::pair<double, double>>& profile);

// Principal-value evaluation on arbitrary bodies via banded, weighted MC
// Steiner estimates with a Firey-type tail estimate (non-certified constant).
EvalResult phi_general(int n, int j, const ZonalDensity& f, const geom::BodyView& K,
                       const McOptions& opt);

class ValuationHandle {
public:
    static ValuationHandle builtin_phi(int n, int j, ZonalDensity f);
    static ValuationHandle external(int n, int j,
                                    std::function<double(const ConvexBody&)> fn,
                                    std::string name = "external");
    static ValuationHandle external_table(int n, int j, std::map<std::string, double> rows);

    int degree() const { return j_; }
    int dim() const { return n_; }
    bool is_builtin() const { return static_cast<bool>(density_); }
    bool is_table() const { return table_.has_value(); }
    const ZonalDensity& density() const;

    EvalResult evaluate(const ConvexBody& K, const McOptions& opt = {}) const;

private:
    int n_ = 3, j_ = 1;
    std::optional<ZonalDensity> density_;
    std::function<double(const ConvexBody&)> fn_;
    std::optional<std::map<std::string, double>> table_;
    std::string name_;
};

// Lefschetz operator: derivative at 0 of the degree-<=n polynomial
// t -> mu(K + t B), from n+1 Chebyshev-Lobatto nodes on [0,1].
double lefschetz(const ValuationHandle& mu, const ConvexBody& K);

// Phi_j(f)[g_y^{-1} K] for any rotation g_y with g_y e_n = y.
EvalResult zonal_convolution_eval(int n, int j, const ZonalDensity& f, const ConvexBody& K,
                                  const Vec& y, const McOptions& opt = {},
                                  std::uint64_t frame_seed = 0);

struct SupportCandidate {
    std::vector<Vec> directions;
    std::vector<double> h;
    int subadditivity_violations = 0;
    double worst_margin = 0.0;  // most negative slack of h(y1+y2) <= h(y1)+h(y2)
};

SupportCandidate minkowski_support_candidate(double c0, double cn,
                                             const std::vector<ZonalDensity>& densities,
                                             const ConvexBody& K,
                                             const std::vector<Vec>& grid,
                                             const McOptions& opt = {});

struct RatioSweepEntry {
    std::string body;
    std::string density;
    double ratio = 0.0;
};

struct RatioSweep {
    std::vector<RatioSweepEntry> entries;
    double supremum = 0.0;
};

// Empirical Theorem-3.1 ratio |Phi_j(f)[K]| / (sup|h_K|^j * ||f||_{D^a}).
RatioSweep continuity_ratio_sweep(int n, int j, int norm_scan_grid = 8192,
                                  std::uint64_t seed = 2024);

}  // namespace zonalval::val
