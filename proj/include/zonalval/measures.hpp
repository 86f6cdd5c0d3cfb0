#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zonalval/dspace.hpp"
#include "zonalval/geometry.hpp"

namespace zonalval::measures {

// Pushforward of S_j(K) under v -> v_n: atoms plus weighted density pieces.
struct Atom {
    double s;
    double mass;
};

struct Piece {
    double lo, hi;     // interval in [-1,1]
    double coef;       // density coef * (1-t^2)^{expnt}
    double expnt;
};

struct ZonalMeasure {
    int n = 3, j = 1;
    std::vector<Atom> atoms;
    std::vector<Piece> pieces;

    double total_mass() const;
    double first_moment() const;  // \int t d(mu)
    ZonalMeasure restricted(double lo, double hi) const;  // open at clipped edges
    double mass_above(double r) const;  // mu({t > r}), strict
};

// Closed forms. j ranges: cone/disk 0..n-1 (density parts only when j <= n-2),
// ball/cylinder 0..n-1.
ZonalMeasure cone_measure(int n, int j, double h);
ZonalMeasure disk_measure(int n, int j, double r);
ZonalMeasure ball_measure(int n, int j, double R);
ZonalMeasure cylinder_measure(int n, int j, double r, double L);

// Closed-form zonal measure of a canonical body (cone/disk/ball/cylinder, any
// scale/translation); nullopt when only the MC backend applies.
std::optional<ZonalMeasure> zonal_measure_of(const geom::ConvexBody& K, int j);

double integrate(const dspace::ZonalDensity& f, const ZonalMeasure& mu);
double integrate(const std::function<double(double)>& f, const ZonalMeasure& mu);

// ---- Monte-Carlo local-Steiner estimator ---------------------------------

struct SteinerConfig {
    std::vector<double> band_edges;  // partition of [-1,1]
    std::vector<double> rho;         // >= n distinct positive values
    long long samples = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;                          // 0 = hardware concurrency
    std::function<double(double)> weight;     // optional f(v_n) weight; default 1
};

std::vector<double> default_bands(int refine_pole_k = 12);
std::vector<double> default_rho(const geom::BodyView& K, int n);

struct AreaMeasureEstimate {
    int n = 3;
    std::vector<double> band_edges;
    std::vector<double> rho;
    long long samples = 0;
    std::uint64_t seed = 0;
    // mass[j][band], stderr[j][band]; for weighted runs these estimate
    // \int_band f dS_j instead of the band mass.
    std::vector<std::vector<double>> mass;
    std::vector<std::vector<double>> stderr_;

    double total(int j) const;
    double total_stderr(int j) const;
    std::string to_json() const;
};

AreaMeasureEstimate mc_steiner_estimate(const geom::BodyView& K, const SteinerConfig& cfg);

// Cap C_r(e_n) mass of S_j(K); closed form where available, MC otherwise.
struct CapMass {
    double mass = 0.0;
    double stderr_ = 0.0;
    std::string backend;
};
CapMass cap_mass(const geom::ConvexBody& K, int j, double r,
                 const std::optional<SteinerConfig>& cfg = std::nullopt);

double firey_ratio(const geom::ConvexBody& K, int j, double r,
                   const std::optional<SteinerConfig>& cfg = std::nullopt);

}  // namespace zonalval::measures
