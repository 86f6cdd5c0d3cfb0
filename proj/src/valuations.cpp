#include "zonalval/valuations.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <random>

#include "zonalval/io.hpp"

namespace zonalval::val {

using geom::BodyKind;

namespace {

void require_degree(int n, int j) {
    if (n < 2) throw ValidationError("phi: dimension must be >= 2");
    if (j < 1 || j > n - 1) throw ValidationError("phi: need 1 <= j <= n-1");
}

void require_density(int n, int j, const ZonalDensity& f) {
    require_degree(n, j);
    if (j <= n - 2) {
        double a = ZonalDensity::weight_for(n, j);
        if (std::abs(f.a() - a) > 1e-12)
            throw ValidationError("phi: density weight a=" + fmt17(f.a()) +
                                  " does not match (n-j-1)/2=" + fmt17(a));
        if (!f.is_member())
            throw ValidationError("phi: density is not a member of D^{(n-j-1)/2}");
    } else {
        if (f.kind() != dspace::DensityKind::Poly)
            throw CapabilityError(
                "phi: degree j = n-1 supports bounded continuous densities only "
                "(polynomial representation)");
    }
}

double poly_at(const ZonalDensity& f, double s) {
    double v = 0.0, t = 1.0;
    for (double c : f.poly_coeffs()) {
        v += c * t;
        t *= s;
    }
    return v;
}

}  // namespace

double phi_disk(int n, int j, const ZonalDensity& f, double r) {
    require_density(n, j, f);
    if (!(r > 0)) throw ValidationError("phi_disk: radius must be > 0");
    const double w = unit_ball_volume(n - 1);
    if (j == n - 1) return std::pow(r, j) * w * (poly_at(f, 1.0) + poly_at(f, -1.0));
    double a = ZonalDensity::weight_for(n, j);
    return std::pow(r, j) * w * 2.0 * a *
           (f.partial_integral(1.0) - f.partial_integral(-1.0));
}

double phi_cone(int n, int j, const ZonalDensity& f, double h) {
    require_density(n, j, f);
    const double w = unit_ball_volume(n - 1);
    if (h == 0.0) return phi_disk(n, j, f, 1.0);
    const double s = (h > 0 ? 1.0 : -1.0) / std::sqrt(1.0 + h * h);
    if (j == n - 1) {
        double lateral = w * std::sqrt(1.0 + h * h);
        return lateral * poly_at(f, s) + w * poly_at(f, h > 0 ? -1.0 : 1.0);
    }
    return w * transforms::transform_I_at(f, s);
}

double phi_cylinder(int n, int j, const ZonalDensity& f, double r, double L) {
    require_density(n, j, f);
    if (r < 0 || L < 0) throw ValidationError("phi_cylinder: bad radius/height");
    const double w = unit_ball_volume(n - 1);
    double lateral = j * std::pow(r, j - 1) * L * w * f.eval_f(0.0);
    double disks = 0.0;
    if (r > 0) {
        if (j == n - 1)
            disks = std::pow(r, j) * w * (poly_at(f, 1.0) + poly_at(f, -1.0));
        else
            disks = std::pow(r, j) * phi_disk(n, j, f, 1.0);
    }
    return disks + lateral;
}

double phi_degree0(int n, const ZonalDensity& f) {
    // \int f(v_n) dH^{n-1} = (n-1) omega_{n-1} \int f (1-t^2)^{(n-3)/2} dt
    return (n - 1) * unit_ball_volume(n - 1) * f.kernel_integral(0.5 * (n - 1), 0, -1.0, 1.0);
}

double phi_frustum(int n, int j, const ZonalDensity& f, double R, double rho, double L,
                   Orientation orient) {
    require_density(n, j, f);
    if (!(R > 0) || rho < 0 || !(L > 0))
        throw ValidationError("phi_frustum: need R > 0, rho >= 0, L > 0");
    if (rho > R)
        throw ValidationError("phi_frustum: need rho <= R (swap ends and flip orientation)");
    if (rho == R) return phi_cylinder(n, j, f, R, L);
    double eps = 1.0 - rho / R;
    double h = L / (R - rho);
    double signed_h = orient == Orientation::Up ? h : -h;
    double one_minus = std::pow(1.0 - eps, j);
    return std::pow(R, j) * ((1.0 - one_minus) * phi_cone(n, j, f, signed_h) +
                             one_minus * phi_disk(n, j, f, 1.0));
}

double phi_revolution(int n, int j, const ZonalDensity& f,
                      const std::vector<std::pair<double, double>>& profile) {
    // validates the profile
    geom::ConvexBody body = geom::make_revolution(n, profile);
    (void)body;
    require_density(n, j, f);
    if (profile.size() == 1) return phi_disk(n, j, f, profile[0].second);
    double total = 0.0;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        double t0 = profile[i - 1].first, t1 = profile[i].first;
        double r0 = profile[i - 1].second, r1 = profile[i].second;
        double L = t1 - t0;
        if (r0 == r1) {
            total += phi_cylinder(n, j, f, r0, L);
        } else if (r1 < r0) {
            total += phi_frustum(n, j, f, r0, r1, L, Orientation::Up);
        } else {
            total += phi_frustum(n, j, f, r1, r0, L, Orientation::Down);
        }
    }
    for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
        double r = profile[i].second;
        if (r > 0) total -= std::pow(r, j) * phi_disk(n, j, f, 1.0);
    }
    return total;
}

EvalResult phi_general(int n, int j, const ZonalDensity& f, const geom::BodyView& K,
                       const McOptions& opt) {
    require_density(n, j, f);
    const double a = ZonalDensity::weight_for(n, j);

    measures::SteinerConfig cfg;
    cfg.band_edges = measures::default_bands(12);
    cfg.rho = measures::default_rho(K, n);
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    ZonalDensity fc = f;
    cfg.weight = [fc](double t) {
        double tt = std::clamp(t, -1.0 + 1e-15, 1.0 - 1e-15);
        return fc.eval_f(tt);
    };
    auto est = measures::mc_steiner_estimate(K, cfg);

    // truncations at r_k = 1 - 2^{-k}: partial sums over bands inside |t| <= r_k
    const auto& e = est.band_edges;
    double diam = K.diameter();
    // empirical Firey constant from the unweighted family bound on this body:
    // sup over pole bands of band-mass estimates is not available here (weighted),
    // so use the sanity ceiling times safety factor, clearly non-certified.
    const double firey_A = 4.0 * 16.0;

    double best = 0.0, best_err = 1e300;
    double prev = 0.0;
    bool have_prev = false;
    for (int k = 5; k <= 12; ++k) {
        double r = 1.0 - std::pow(2.0, -k);
        double sum = 0.0, var = 0.0;
        for (std::size_t b = 0; b + 1 < e.size(); ++b) {
            if (e[b] >= -r && e[b + 1] <= r) {
                sum += est.mass[j][b];
                var += sq(est.stderr_[j][b]);
            }
        }
        auto wtail = [&fc, a](double s) { return std::pow(1.0 - s * s, a) * std::abs(fc.eval_f(s)); };
        double sup_tail = 0.0;
        for (int m = 0; m < 32; ++m) {
            double s = r + (1.0 - r) * m / 32.0;
            s = std::min(s, 1.0 - 1e-14);
            sup_tail = std::max(sup_tail, wtail(s));
        }
        double tail = 2.0 * firey_A * std::pow(diam, j) * sup_tail;
        double err = std::sqrt(var) + tail;
        if (have_prev) err = std::max(err, std::abs(sum - prev));
        if (err < best_err) {
            best = sum;
            best_err = err;
        }
        if (have_prev && std::abs(sum - prev) < opt.tol && tail < opt.tol) break;
        prev = sum;
        have_prev = true;
    }
    return {best, best_err, "mc"};
}

ValuationHandle ValuationHandle::builtin_phi(int n, int j, ZonalDensity f) {
    require_density(n, j, f);
    if (j <= n - 2) {
        auto mem = f.membership_check();
        if (!mem.limit_ok || !mem.integral_ok)
            throw ValidationError("builtin phi: membership diagnostics failed for the density");
    }
    ValuationHandle h;
    h.n_ = n;
    h.j_ = j;
    h.density_ = std::move(f);
    h.name_ = "builtin-phi";
    return h;
}

ValuationHandle ValuationHandle::external(int n, int j,
                                          std::function<double(const ConvexBody&)> fn,
                                          std::string name) {
    require_degree(n, j);
    ValuationHandle h;
    h.n_ = n;
    h.j_ = j;
    h.fn_ = std::move(fn);
    h.name_ = std::move(name);
    return h;
}

ValuationHandle ValuationHandle::external_table(int n, int j,
                                                std::map<std::string, double> rows) {
    require_degree(n, j);
    ValuationHandle h;
    h.n_ = n;
    h.j_ = j;
    h.table_ = std::move(rows);
    h.name_ = "external-table";
    return h;
}

const ZonalDensity& ValuationHandle::density() const {
    if (!density_) throw CapabilityError("valuation handle has no density backend");
    return *density_;
}

EvalResult ValuationHandle::evaluate(const ConvexBody& K, const McOptions& opt) const {
    if (K.n != n_) throw ValidationError("valuation: body dimension mismatch");
    if (table_) {
        auto key = io::body_key(K);
        auto it = table_->find(key);
        if (it == table_->end())
            throw CapabilityError("external table has no row for body " + key);
        return {it->second, 0.0, "table"};
    }
    if (fn_) return {fn_(K), 0.0, "external"};

    const ZonalDensity& f = *density_;
    const int j = j_;
    switch (K.kind) {
        case BodyKind::Cone:
            return {std::pow(K.scale, j) * phi_cone(n_, j, f, K.h), 0.0, "closed-form"};
        case BodyKind::Disk:
            return {phi_disk(n_, j, f, K.scale * K.radius), 0.0, "closed-form"};
        case BodyKind::Ball:
            return {measures::integrate(f, measures::ball_measure(n_, j, K.scale * K.radius)),
                    0.0, "closed-form"};
        case BodyKind::Cylinder:
            return {phi_cylinder(n_, j, f, K.scale * K.radius, K.scale * K.height), 0.0,
                    "closed-form"};
        case BodyKind::Revolution: {
            std::vector<std::pair<double, double>> prof;
            for (auto [t, r] : K.profile) prof.emplace_back(K.scale * t, K.scale * r);
            return {phi_revolution(n_, j, f, prof), 0.0, "closed-form"};
        }
        case BodyKind::BallSum: {
            // S_j(K0 + tB) = sum_i binom(j,i) t^{j-i} S_i(K0)
            double t = K.scale * K.ball_t;
            ConvexBody base = geom::scaled(*K.base, K.scale);
            double total = 0.0;
            std::string backend = "closed-form";
            double err = 0.0;
            for (int i = 0; i <= j; ++i) {
                double coef = binomial(j, i) * std::pow(t, j - i);
                if (coef == 0.0) continue;
                double term;
                if (i == 0) {
                    term = phi_degree0(n_, f);
                } else {
                    auto hi = ValuationHandle::builtin_phi(
                        n_, i, f.with_weight(ZonalDensity::weight_for(n_, i)));
                    auto r = hi.evaluate(base, opt);
                    term = r.value;
                    err += coef * r.error;
                    if (r.backend == "mc") backend = "mc";
                }
                total += coef * term;
            }
            return {total, err, backend};
        }
        case BodyKind::Polytope: {
            geom::BodyView view(K);
            return phi_general(n_, j, f, view, opt);
        }
    }
    throw ValidationError("valuation: unknown body kind");
}

double lefschetz(const ValuationHandle& mu, const ConvexBody& K) {
    const int n = mu.dim();
    const int m = n + 1;  // nodes; mu(K+tB) is a polynomial of degree <= n
    std::vector<double> ts(m), vals(m);
    for (int i = 0; i < m; ++i) {
        ts[i] = 0.5 * (1.0 - std::cos(M_PI * i / (m - 1)));
        ConvexBody Kt = ts[i] == 0.0 ? K : geom::minkowski_ball(K, ts[i]);
        vals[i] = mu.evaluate(Kt).value;
    }
    Eigen::MatrixXd V(m, m);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        double p = 1.0;
        for (int c = 0; c < m; ++c) {
            V(i, c) = p;
            p *= ts[i];
        }
        y(i) = vals[i];
    }
    Eigen::VectorXd coef = V.fullPivLu().solve(y);
    return coef(1);
}

EvalResult zonal_convolution_eval(int n, int j, const ZonalDensity& f, const ConvexBody& K,
                                  const Vec& y, const McOptions& opt, std::uint64_t frame_seed) {
    require_density(n, j, f);
    double ny = norm2(y);
    if (!(ny > 0)) throw ValidationError("zonal_convolution_eval: zero direction");
    Vec yn = (1.0 / ny) * y;
    bool is_en = true;
    for (int i = 0; i < n; ++i)
        if (std::abs(yn[i] - (i == n - 1 ? 1.0 : 0.0)) > 1e-14) is_en = false;
    if (is_en) {
        auto h = ValuationHandle::builtin_phi(n, j, f);
        return h.evaluate(K, opt);
    }
    auto g = geom::rotation_taking_en_to(yn);
    if (frame_seed != 0) {
        // compose with an SO(n-1) element: value must be frame-independent
        double angle = 2.0 * M_PI * (static_cast<double>(frame_seed % 360) / 360.0);
        g = geom::compose_rotation(g, geom::so_nminus1_rotation(n, angle));
    }
    // body g^{-1} K: view with rotation Q = g^T (columns of Q are rows of g)
    std::vector<Vec> qcols(n, Vec(n));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) qcols[c][r] = g[r][c];
    geom::BodyView view(K, qcols);
    return phi_general(n, j, f, view, opt);
}

SupportCandidate minkowski_support_candidate(double c0, double cn,
                                             const std::vector<ZonalDensity>& densities,
                                             const ConvexBody& K, const std::vector<Vec>& grid,
                                             const McOptions& opt) {
    const int n = K.n;
    if (static_cast<int>(densities.size()) != n - 1)
        throw ValidationError("support candidate: need densities f_1..f_{n-1}");
    double vol;
    if (geom::has_closed_form_volume(K)) {
        vol = geom::volume(K);
    } else {
        // MC volume: fraction of box points inside K
        measures::SteinerConfig cfg;
        cfg.band_edges = {-1.0, 1.0};
        geom::BodyView view(K);
        cfg.rho = measures::default_rho(view, n);
        cfg.samples = opt.samples;
        cfg.seed = opt.seed;
        cfg.threads = opt.threads;
        // reuse Steiner totals: vol(K+rho B) - vol(K) known, but simplest is the
        // Steiner fit at rho -> 0; use direct hit counting instead
        auto [lo, hi] = view.bounding_box(0.0);
        double boxvol = 1.0;
        for (int i = 0; i < n; ++i) boxvol *= (hi[i] - lo[i]);
        std::uint64_t seed = opt.seed;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        long long hits = 0, N = std::max<long long>(opt.samples, 100000);
        Vec x(n);
        for (long long i = 0; i < N; ++i) {
            for (int d = 0; d < n; ++d) x[d] = lo[d] + (hi[d] - lo[d]) * U(rng);
            if (view.nearest(x).distance <= 0.0) ++hits;
        }
        vol = boxvol * static_cast<double>(hits) / static_cast<double>(N);
    }

    SupportCandidate out;
    out.directions = grid;
    out.h.reserve(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double hv = c0 + cn * vol;
        for (int j = 1; j <= n - 1; ++j) {
            McOptions o = opt;
            o.seed = opt.seed + 977 * gi + j;
            hv += zonal_convolution_eval(n, j, densities[j - 1], K, grid[gi], o).value;
        }
        out.h.push_back(hv);
    }

    // subadditivity sampling on grid pairs, 1-homogeneous extension
    auto h_of = [&](const Vec& y) {
        // nearest grid direction (diagnostic only)
        double best = -2.0;
        std::size_t bi = 0;
        double ny = norm2(y);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double c = dot(grid[i], y) / ny;
            if (c > best) {
                best = c;
                bi = i;
            }
        }
        return ny * out.h[bi];
    };
    std::mt19937_64 rng(opt.seed + 5);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (int trial = 0; trial < 256; ++trial) {
        const Vec& y1 = grid[pick(rng)];
        const Vec& y2 = grid[pick(rng)];
        Vec ysum = y1 + y2;
        if (norm2(ysum) < 1e-9) continue;
        double slack = h_of(y1) + h_of(y2) - h_of(ysum);
        if (slack < out.worst_margin) out.worst_margin = slack;
        if (slack < -1e-9) ++out.subadditivity_violations;
    }
    return out;
}

RatioSweep continuity_ratio_sweep(int n, int j, int norm_scan_grid, std::uint64_t seed) {
    require_degree(n, j);
    if (j > n - 2) throw ValidationError("ratio sweep: needs 1 <= j <= n-2");
    const double a = ZonalDensity::weight_for(n, j);

    struct BodyCase {
        std::string name;
        ConvexBody body;
    };
    std::vector<BodyCase> bodies;
    for (double h : {0.25, 1.0, 2.0, 4.0})
        bodies.push_back({"cone:" + fmt17(h), geom::make_cone(n, h)});
    bodies.push_back({"disk:1", geom::make_disk(n, 1.0)});
    bodies.push_back({"cylinder:1:1", geom::make_cylinder(n, 1.0, 1.0)});
    bodies.push_back({"cylinder:1:4", geom::make_cylinder(n, 1.0, 4.0)});
    bodies.push_back({"cube:1", geom::make_cube(n, 1.0)});

    RatioSweep sweep;
    for (double frac : {0.25, 0.5, 0.75}) {
        ZonalDensity f = ZonalDensity::power(a, frac * a);
        auto gabs = [&f](double s) { return std::abs(f.eval_weighted(s)); };
        auto pabs = [&f](double s) { return std::abs(f.partial_integral(s)); };
        double nf = max_scan(gabs, -1.0, 1.0, norm_scan_grid) +
                    max_scan(pabs, -1.0, 1.0, norm_scan_grid / 2);
        for (const auto& bc : bodies) {
            double v;
            if (bc.body.kind == BodyKind::Polytope) {
                McOptions opt;
                opt.samples = 400000;
                opt.seed = seed;
                v = phi_general(n, j, f, geom::BodyView(bc.body), opt).value;
            } else {
                v = ValuationHandle::builtin_phi(n, j, f).evaluate(bc.body).value;
            }
            double denom = std::pow(geom::sup_norm_h(bc.body), j) * nf;
            double ratio = std::abs(v) / denom;
            sweep.entries.push_back({bc.name, "power(" + fmt17(frac) + "a)", ratio});
            sweep.supremum = std::max(sweep.supremum, ratio);
        }
    }
    return sweep;
}

}  // namespace zonalval::val
