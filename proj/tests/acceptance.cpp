// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdio>
#include <random>
#include <functional>
#include <vector>

#include "zonalval/functional.hpp"
#include "zonalval/io.hpp"
#include "zonalval/reconstruct.hpp"

using namespace zonalval;
using dspace::ZonalDensity;
using val::ValuationHandle;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int k, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", k, what.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<ZonalDensity> density_matrix(double a) {
    std::vector<ZonalDensity> fs;
    fs.push_back(ZonalDensity::poly(a, {1.0}));
    fs.push_back(ZonalDensity::poly(a, {0.0, 1.0}));
    fs.push_back(ZonalDensity::poly(a, {0.0, 0.0, 1.0}));
    fs.push_back(ZonalDensity::poly(a, {0.0, 0.0, 0.0, 1.0}));
    fs.push_back(ZonalDensity::poly(a, {2.0, 1.0, -1.0}));
    fs.push_back(ZonalDensity::poly(a, {-0.5, 0.0, 0.0, 0.0, 1.0}));
    fs.push_back(ZonalDensity::power(a, a / 4));
    fs.push_back(ZonalDensity::power(a, a / 2));
    fs.push_back(ZonalDensity::power(a, 3 * a / 4));
    fs.push_back(ZonalDensity::power(a, a / 2).plus_linear(1.0));
    fs.push_back(ZonalDensity::power(a, a / 4).plus_linear(-2.0));
    fs.push_back(ZonalDensity::poly(a, {1.0, 0.0, -1.0}));
    return fs;
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto t0 = Clock::now();
    double worst = 0.0;
    for (double a : {0.5, 1.0, 1.5}) {
        for (const auto& f : density_matrix(a)) {
            worst = std::max(worst, transforms::roundtrip_JI(f, 41).residual);
            auto u = transforms::transform_I(f);
            worst = std::max(worst, transforms::roundtrip_IJ(u, a, 41).residual);
        }
    }
    double secs = seconds_since(t0);
    bool pass = worst <= 1e-8 && secs < 10.0;
    report(1, pass, "transform identities I.J = Id and even/odd J.I on 12x3 matrix",
           "worst residual " + fmt17(worst) + ", " + fmt17(secs) + " s");
}

void criterion2() {
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
        for (int j = 1; j <= n - 1; ++j) {
            auto lin = ZonalDensity::poly(j <= n - 2 ? ZonalDensity::weight_for(n, j) : 0.5,
                                          {0.0, 1.0});
            for (double h : {-2.0, -0.5, 0.5, 1.0, 2.0})
                worst = std::max(worst, std::abs(val::phi_cone(n, j, lin, h)));
            worst = std::max(worst, std::abs(val::phi_disk(n, j, lin, 1.0)));
            worst = std::max(worst, std::abs(val::phi_cylinder(n, j, lin, 1.0, 2.0)));
            worst = std::max(
                worst, std::abs(val::phi_revolution(
                           n, j, lin, {{0.0, 1.0}, {0.5, 1.1}, {1.0, 0.6}, {1.5, 0.0}})));
        }
    }
    report(2, worst <= 1e-12, "linear densities are in the kernel of Phi_j (exact paths)",
           "worst |Phi_j(linear)| = " + fmt17(worst));
}

void criterion3() {
    auto one = ZonalDensity::constant(0.5, 1.0);
    double e1 = std::abs(val::phi_cone(3, 1, one, 1.0) - M_PI * (1 + 3 * M_PI / 4));
    double e2 = std::abs(val::phi_disk(3, 1, one, 1.0) - M_PI * M_PI);
    double e3 = 0.0;
    for (double L : {0.5, 1.0, 2.0})
        e3 = std::max(e3, std::abs(val::phi_cylinder(3, 1, one, 1.0, L) - (M_PI * M_PI + M_PI * L)));
    double worst = std::max({e1, e2, e3});
    report(3, worst <= 1e-10,
           "cone/disk/cylinder closed forms pi(1+3pi/4), pi^2, pi^2 + pi L",
           "worst deviation " + fmt17(worst));
}

void criterion4() {
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
        for (int j = 1; j <= n - 2; ++j) {
            double a = ZonalDensity::weight_for(n, j);
            for (const auto& f : {ZonalDensity::constant(a, 1.0), ZonalDensity::power(a, a / 2)}) {
                auto mu = ValuationHandle::builtin_phi(n, j, f);
                for (double h : {0.5, 1.0, 2.0})
                    for (double eps : {0.25, 0.5})
                        worst = std::max(worst, recon::frustum_identity_residual(mu, h, eps));
            }
        }
    }
    report(4, worst <= 1e-9, "valuation identity on truncated cones (all n in 3..5)",
           "worst residual " + fmt17(worst));
}

measures::SteinerConfig accept_cfg(const geom::BodyView& view, std::uint64_t seed,
                                   long long N) {
    measures::SteinerConfig cfg;
    cfg.band_edges = measures::default_bands();
    double diam = view.diameter();
    for (int k = 0; k < 24; ++k)
        cfg.rho.push_back(diam * 0.03 * std::pow(0.5 / 0.03, k / 23.0));
    cfg.samples = N;
    cfg.seed = seed;
    return cfg;
}

void criterion5() {
    auto t0 = Clock::now();
    const long long N = 1000000;
    const std::uint64_t seed = 20240817;

    auto cube = geom::make_cube(3, 1.0);
    geom::BodyView vc(cube);
    auto ec = measures::mc_steiner_estimate(vc, accept_cfg(vc, seed, N));
    double r1 = std::abs(ec.total(1) - 3 * M_PI) / (3 * M_PI);
    double r2 = std::abs(ec.total(2) - 6.0) / 6.0;

    auto ball = geom::make_ball(3, 1.0);
    geom::BodyView vb(ball);
    auto eb = measures::mc_steiner_estimate(vb, accept_cfg(vb, seed, N));
    double rb = std::abs(eb.total(1) - 4 * M_PI) / (4 * M_PI);

    // cone band masses against the closed form, 3 sigma per band
    auto cone = geom::make_cone(3, 1.0);
    geom::BodyView vk(cone);
    auto ek = measures::mc_steiner_estimate(vk, accept_cfg(vk, seed, N));
    auto mu = measures::cone_measure(3, 1, 1.0);
    int bad_bands = 0;
    for (std::size_t b = 0; b + 1 < ek.band_edges.size(); ++b) {
        double ref = mu.mass_above(ek.band_edges[b]) - mu.mass_above(ek.band_edges[b + 1]);
        double dev = std::abs(ek.mass[1][b] - ref);
        if (dev > 3 * ek.stderr_[1][b] && dev > 2e-3) ++bad_bands;
    }
    double secs = seconds_since(t0);
    bool pass = r1 <= 0.03 && r2 <= 0.03 && rb <= 0.03 && bad_bands == 0 && secs < 60.0;
    report(5, pass, "MC local-Steiner oracle (cube, ball, cone bands; N = 1e6)",
           "cube S1 err " + fmt17(100 * r1) + "%, S2 err " + fmt17(100 * r2) + "%, ball S1 err " +
               fmt17(100 * rb) + "%, bands>3sigma " + std::to_string(bad_bands) + ", " +
               fmt17(secs) + " s");
}

void criterion6() {
    double worst_rel = 0.0;
    for (auto [n, j] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}}) {
        double a = ZonalDensity::weight_for(n, j);
        auto f = ZonalDensity::power(a, a / 2);
        auto mu = measures::cone_measure(n, j, 1.0);
        double full = measures::integrate(f, mu);
        // log-log fit of |Phi - T(r_k)| against (1 - r_k^2)
        std::vector<double> xs, ys;
        for (int k = 3; k <= 12; ++k) {
            double r = 1.0 - std::pow(2.0, -k);
            double trunc = measures::integrate(f, mu.restricted(-r, r));
            double tail = std::abs(full - trunc);
            if (tail <= 0) continue;
            xs.push_back(std::log(1.0 - r * r));
            ys.push_back(std::log(tail));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double m = static_cast<double>(xs.size());
        double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        double expect = a - a / 2;  // (n-j-1)/2 - beta
        worst_rel = std::max(worst_rel, std::abs(slope - expect) / expect);
    }
    report(6, worst_rel <= 0.15, "principal-value truncation rate on cones (log-log fit)",
           "worst relative slope deviation " + fmt17(100 * worst_rel) + "%");
}

void criterion7() {
    // ball closed form at three cap parameters
    auto ball = geom::make_ball(3, 1.0);
    double worst_ball = 0.0;
    for (double r : {0.0, 0.5, 0.99}) {
        double want = M_PI * std::sqrt((1 - r) / (1 + r));
        worst_ball = std::max(worst_ball, std::abs(measures::firey_ratio(ball, 1, r) - want));
    }
    // family supremum stays finite (sanity ceiling 1e3)
    double family_sup = 0.0;
    std::vector<geom::ConvexBody> family = {geom::make_cone(3, 0.25), geom::make_cone(3, 1.0),
                                            geom::make_cone(3, 4.0), ball};
    for (const auto& K : family) {
        for (int k = 0; k <= 12; ++k) {
            double r = 1.0 - std::pow(2.0, -k);
            family_sup = std::max(family_sup, measures::firey_ratio(K, 1, r));
        }
    }
    // cube and two random polytopes via the MC backend at a few r values
    std::mt19937_64 rng(404);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<geom::ConvexBody> hard = {geom::make_cube(3, 1.0)};
    for (int t = 0; t < 2; ++t) {
        std::vector<Vec> verts;
        for (int i = 0; i < 12; ++i) verts.push_back({g(rng), g(rng), g(rng)});
        hard.push_back(geom::make_polytope(3, verts));
    }
    measures::SteinerConfig mc;
    mc.samples = 200000;
    mc.seed = 2718;
    for (const auto& K : hard) {
        geom::BodyView view(K);
        mc.rho = measures::default_rho(view, 3);
        for (double r : {0.0, 0.75, 1.0 - std::pow(2.0, -12.0)}) {
            measures::SteinerConfig use = mc;
            use.band_edges = {-1.0, r >= 1.0 ? 0.999999 : r, 1.0};
            double ratio = measures::firey_ratio(K, 1, r, use);
            family_sup = std::max(family_sup, ratio);
        }
    }
    bool pass = worst_ball <= 1e-9 && std::isfinite(family_sup) && family_sup < 1e3;
    report(7, pass, "Firey cap bound: ball closed form and family supremum",
           "ball dev " + fmt17(worst_ball) + ", family sup " + fmt17(family_sup));
}

void criterion8() {
    double worst64 = 0.0, worst256 = 0.0, worst_rev = 0.0;
    std::vector<std::pair<double, double>> revprof = {
        {0.0, 0.8}, {0.4, 1.0}, {1.0, 0.7}, {1.5, 0.0}};
    for (auto [n, j] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}}) {
        double a = ZonalDensity::weight_for(n, j);
        std::vector<ZonalDensity> fams = {
            ZonalDensity::constant(a, 1.0), ZonalDensity::poly(a, {0.0, 0.0, 1.0}),
            ZonalDensity::power(a, a / 2), ZonalDensity::power(a, a / 2).plus_linear(1.0)};
        for (const auto& f : fams) {
            auto mu = ValuationHandle::builtin_phi(n, j, f);
            auto want = f.center_project(n);
            for (int nodes : {64, 256}) {
                auto fr = recon::reconstruct_density(mu, {nodes, 1e-3});
                double err = 0.0;
                for (double s : transforms::profile_grid(nodes)) {
                    double w = std::pow(1 - s * s, a);
                    err = std::max(err, std::abs(w * (fr.eval_f(s) - want.eval_f(s))));
                }
                (nodes == 64 ? worst64 : worst256) = std::max(nodes == 64 ? worst64 : worst256,
                                                              err);
                if (nodes == 64) {
                    double direct = mu.evaluate(geom::make_revolution(n, revprof)).value;
                    double via = val::phi_revolution(n, j, fr, revprof);
                    worst_rev = std::max(worst_rev, std::abs(via - direct));
                }
            }
        }
    }
    bool pass = worst64 <= 1e-3 && worst256 <= 1e-5 && worst_rev <= 1e-6;
    report(8, pass, "reconstruction round trip and revolution-body agreement",
           "weighted sup err " + fmt17(worst64) + " @64, " + fmt17(worst256) + " @256, rev dev " +
               fmt17(worst_rev));
}

void criterion9() {
    double worst = 0.0;
    bool valid = true;
    for (const auto& f :
         {ZonalDensity::constant(0.5, 1.0), ZonalDensity::power(0.5, 0.25)}) {
        // re-validate the density as a member of D^{(n-j)/2} for the target degree
        auto lowered = f.with_weight(1.0);
        auto mem = lowered.membership_check();
        valid = valid && mem.limit_ok && mem.integral_ok;
        auto mu = ValuationHandle::builtin_phi(4, 2, f);
        for (double h : {0.5, 1.0, 2.0}) {
            double lhs = val::lefschetz(mu, geom::make_cone(4, h));
            double rhs = 2.0 * val::phi_cone(4, 1, lowered, h);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    report(9, valid && worst <= 1e-6, "Lefschetz consistency Lambda Phi_2 = 2 Phi_1 (n = 4)",
           "worst deviation " + fmt17(worst));
}

void criterion10() {
    // (a) closed-form R example
    auto z = fnal::ZetaDensity::callable([](double s) { return std::max(0.0, 1.0 - s); }, 1.0);
    double e1 = 0.0;
    for (double t : {0.0, 0.2, 0.5, 0.8, 0.99})
        e1 = std::max(e1, std::abs(fnal::r_transform(z, 3, 1, t) - (1 - t * t * t) / 3.0));
    // (b) r-inverse round trip
    auto phi = [](double t) { return t <= 1.0 ? (1 - t * t * t) / 3.0 : 0.0; };
    std::vector<double> grid;
    for (int i = 1; i <= 128; ++i) grid.push_back(i / 128.0);
    auto inv = fnal::r_inverse(phi, 1.0, 3, 1, grid);
    double e2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); i += 8)
        e2 = std::max(e2, std::abs(fnal::r_transform(inv.zeta, 3, 1, grid[i]) - phi(grid[i])));
    // (c) bridge residual
    auto pts = fnal::bridge_sample_points(3, 1000, 31337);
    double e3 = 0.0;
    for (double h : {-2.0, -1.0, -0.5}) e3 = std::max(e3, fnal::cone_bridge_residual(3, h, pts));
    // (d) zeta reconstruction on a 256-point grid
    std::vector<double> t, ph;
    for (int i = 1; i <= 256; ++i) {
        t.push_back(1.3 * i / 256.0);
        ph.push_back(fnal::v_star_on_ut(z, 3, 1, t.back()));
    }
    double e4 = fnal::reconstruct_zeta(t, ph, 3, 1).roundtrip_residual;
    bool pass = e1 <= 1e-10 && e2 <= 1e-6 && e3 <= 1e-12 && e4 <= 1e-4;
    report(10, pass, "functional bridge: R example, inverse, cone identity, zeta round trip",
           "R " + fmt17(e1) + ", inv " + fmt17(e2) + ", bridge " + fmt17(e3) + ", zeta " +
               fmt17(e4));
}

void criterion11() {
    double sup1 = 0.0, sup2 = 0.0;
    for (auto [n, j] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}}) {
        sup1 = std::max(sup1, val::continuity_ratio_sweep(n, j, 4096, 2024).supremum);
        sup2 = std::max(sup2, val::continuity_ratio_sweep(n, j, 8192, 2024).supremum);
    }
    double rel = std::abs(sup1 - sup2) / std::max(sup1, sup2);
    bool pass = std::isfinite(sup2) && sup2 > 0 && rel <= 0.10;
    report(11, pass, "norm-estimate ratio sweep is finite and grid-stable",
           "sup " + fmt17(sup2) + ", change under doubling " + fmt17(100 * rel) + "%");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
