#include "zonalval/reconstruct.hpp"

#include <algorithm>
#include <sstream>

#include "zonalval/io.hpp"

namespace zonalval::recon {

geom::ConvexBody cone_for_s(int n, double s) {
    if (s == 0.0 || std::abs(s) > 1.0)
        throw ValidationError("cone_for_s: need s in [-1,1] \\ {0}");
    if (std::abs(s) == 1.0) return geom::make_disk(n, 1.0);
    double h = std::sqrt(1.0 - s * s) / s;
    return geom::make_cone(n, h);
}

geom::ConvexBody truncated_cone_body(int n, double h, double eps) {
    if (h == 0.0) throw ValidationError("truncated_cone_body: h must be nonzero");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw ValidationError("truncated_cone_body: eps must lie in (0,1)");
    double top = eps * h;  // height of the cut, signed like h
    if (h > 0) return geom::make_revolution(n, {{0.0, 1.0}, {top, 1.0 - eps}});
    return geom::make_revolution(n, {{top, 1.0 - eps}, {0.0, 1.0}});
}

std::string ConeProfileSample::to_csv() const {
    std::ostringstream os;
    os << "s,phi,abs_s_phi\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        os << fmt17(s[i]) << "," << fmt17(phi[i]) << "," << fmt17(std::abs(s[i]) * phi[i])
           << "\n";
    return os.str();
}

namespace {

// |s| phi_mu(s) via eq:formulaNormPhiMu with eps = |s|: evaluates mu on the
// explicit truncated-cone body rather than on the (large) cone.
double limit_route_value(const ValuationHandle& mu, double s) {
    const int n = mu.dim();
    const int j = mu.degree();
    double h = std::sqrt(1.0 - s * s) / s;
    double eps = std::abs(s);
    double md = mu.evaluate(truncated_cone_body(n, h, eps)).value;
    double mdisk = mu.evaluate(geom::make_disk(n, 1.0)).value;
    double one_minus = std::pow(1.0 - eps, j);
    double denom = (1.0 - one_minus) / eps;
    return (md - one_minus * mdisk) / denom;
}

// polynomial extrapolation to s = 0 through (s_i, v_i) (Neville)
double extrapolate_to_zero(std::vector<std::pair<double, double>> pts) {
    const std::size_t m = pts.size();
    if (m == 0) throw ValidationError("extrapolation: no points");
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = pts[i].second;
    for (std::size_t k = 1; k < m; ++k)
        for (std::size_t i = 0; i + k < m; ++i) {
            double xi = pts[i].first, xk = pts[i + k].first;
            v[i] = (xi * v[i + 1] - xk * v[i]) / (xi - xk);
        }
    return v[0];
}

}  // namespace

ConeProfileSample sample_cone_profile(const ValuationHandle& mu, const GridConfig& grid) {
    const int n = mu.dim();
    ConeProfileSample out;
    auto s_grid = transforms::profile_grid(grid.nodes, grid.s_min);
    out.s.push_back(-1.0);
    out.phi.push_back(mu.evaluate(geom::make_disk(n, 1.0)).value);
    for (double s : s_grid) {
        out.s.push_back(s);
        out.phi.push_back(mu.evaluate(cone_for_s(n, s)).value);
    }
    out.s.push_back(1.0);
    out.phi.push_back(out.phi.front());

    // 0-limit via the truncated-cone route at the 5 smallest |s| nodes per side
    std::vector<double> pos, neg;
    for (double s : s_grid) (s > 0 ? pos : neg).push_back(s);
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    auto side_limit = [&](const std::vector<double>& side) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < std::min<std::size_t>(5, side.size()); ++i) {
            double v = limit_route_value(mu, side[i]);
            pts.emplace_back(side[i], v);
            out.limit_route.emplace_back(side[i], v);
        }
        return extrapolate_to_zero(pts);
    };
    out.limit0_plus = side_limit(pos);
    out.limit0_minus = side_limit(neg);
    return out;
}

namespace {

ConeProfile profile_of_handle(const ValuationHandle& mu, const GridConfig& grid,
                              double* limit0_out) {
    const int n = mu.dim();
    auto sample = sample_cone_profile(mu, grid);
    double limit0 = 0.5 * (sample.limit0_plus + sample.limit0_minus);
    if (limit0_out) *limit0_out = limit0;
    double scale = std::max({1.0, std::abs(sample.phi.front()), std::abs(limit0)});
    if (std::abs(sample.limit0_plus - sample.limit0_minus) > 1e-5 * scale)
        throw ValidationError(
            "reconstruct: one-sided limits of |s| phi_mu disagree (" +
            fmt17(sample.limit0_plus) + " vs " + fmt17(sample.limit0_minus) +
            "); the handle is not consistent with a translation-invariant zonal valuation");
    if (mu.is_table()) {
        return ConeProfile::from_samples(sample.s, sample.phi, limit0);
    }
    // callable handles: evaluate on demand (quadrature-grade accuracy)
    ValuationHandle muc = mu;
    double udisk = sample.phi.front();
    auto u = [muc, n, udisk](double s) {
        if (std::abs(s) >= 1.0) return udisk;
        return muc.evaluate(cone_for_s(n, s)).value;
    };
    return ConeProfile::from_callable(u, udisk, udisk, limit0, 0, "phi_mu");
}

}  // namespace

ZonalDensity reconstruct_density(const ValuationHandle& mu, const GridConfig& grid) {
    const int n = mu.dim();
    const int j = mu.degree();
    if (j > n - 2)
        throw ValidationError("reconstruct_density: needs 1 <= j <= n-2");
    const double a = ZonalDensity::weight_for(n, j);
    const double w = unit_ball_volume(n - 1);

    double limit0 = 0.0;
    ConeProfile phi_mu = profile_of_handle(mu, grid, &limit0);
    ZonalDensity raw = transforms::transform_J(phi_mu, a).scaled_by(1.0 / w);
    ZonalDensity centered = raw.center_project(n);

    // sample onto the canonical grid, fit tails, attach the evaluator
    dspace::SampledData data;
    for (double s : transforms::profile_grid(grid.nodes, grid.s_min)) {
        data.nodes.push_back(s);
        data.gvals.push_back(centered.eval_weighted(s));
    }
    auto tails = dspace::fit_tail_exponents(data, a);
    // samples stay the data of record, the evaluator carries quadrature-grade
    // accuracy (see the module notes on fractional endpoint behavior)
    ZonalDensity cc = centered;
    auto f_eval = [cc](double s) { return cc.eval_f(s); };
    auto partial = [cc](double s) { return cc.partial_integral(s); };
    return ZonalDensity::sampled_with_evaluator(a, std::move(data), tails, f_eval, partial);
}

double frustum_identity_residual(const ValuationHandle& mu, double h, double eps) {
    const int n = mu.dim();
    const int j = mu.degree();
    double md = mu.evaluate(truncated_cone_body(n, h, eps)).value;
    double mc = mu.evaluate(geom::make_cone(n, h)).value;
    double mdisk = mu.evaluate(geom::make_disk(n, 1.0)).value;
    double one_minus = std::pow(1.0 - eps, j);
    return std::abs(md - (1.0 - one_minus) * mc - one_minus * mdisk);
}

double cylinder_limit(const ValuationHandle& mu) {
    const int n = mu.dim();
    const int j = mu.degree();
    double mcyl = mu.evaluate(geom::make_cylinder(n, 1.0, 1.0)).value;
    double mdisk = mu.evaluate(geom::make_disk(n, 1.0)).value;
    return (mcyl - mdisk) / j;
}

ValuationHandle handle_from_csv(int n, int j, const std::string& csv_text) {
    auto table = io::parse_csv(csv_text);
    std::map<std::string, double> rows;
    for (const auto& row : table.rows) {
        if (row.size() < 2) continue;
        // value is the last cell; the body JSON may contain commas
        std::string body_text;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) {
            if (i) body_text += ",";
            body_text += row[i];
        }
        if (body_text.find('{') == std::string::npos) continue;  // header line
        double value = std::stod(row.back());
        auto K = io::body_from_json(body_text);
        rows[io::body_key(K)] = value;
    }
    return ValuationHandle::external_table(n, j, std::move(rows));
}

std::vector<geom::ConvexBody> required_grid_bodies(int n, const GridConfig& grid) {
    std::vector<geom::ConvexBody> bodies;
    bodies.push_back(geom::make_disk(n, 1.0));
    auto s_grid = transforms::profile_grid(grid.nodes, grid.s_min);
    for (double s : s_grid) bodies.push_back(cone_for_s(n, s));
    std::vector<double> pos, neg;
    for (double s : s_grid) (s > 0 ? pos : neg).push_back(s);
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (std::size_t i = 0; i < std::min<std::size_t>(5, pos.size()); ++i) {
        double s = pos[i];
        bodies.push_back(truncated_cone_body(n, std::sqrt(1 - s * s) / s, s));
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(5, neg.size()); ++i) {
        double s = neg[i];
        bodies.push_back(truncated_cone_body(n, std::sqrt(1 - s * s) / s, std::abs(s)));
    }
    bodies.push_back(geom::make_cylinder(n, 1.0, 1.0));
    return bodies;
}

}  // namespace zonalval::recon
