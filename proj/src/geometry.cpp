#include "zonalval/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <random>

namespace zonalval::geom {

namespace {

double tail_norm(const Vec& y) {
    // |y'| for y in R^n (all but last coordinate)
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) s += y[i] * y[i];
    return std::sqrt(s);
}

// Canonical (scale=1, translation=0) support of the variant.
double support_canonical(const ConvexBody& K, const Vec& y) {
    switch (K.kind) {
        case BodyKind::Polytope: {
            double best = -1e300;
            for (const auto& v : K.vertices) best = std::max(best, dot(v, y));
            return best;
        }
        case BodyKind::Revolution: {
            double yp = tail_norm(y), yn = y.back();
            double best = -1e300;
            for (const auto& [t, r] : K.profile) best = std::max(best, r * yp + t * yn);
            return best;
        }
        case BodyKind::Cone:
            return std::max(K.h * y.back(), tail_norm(y));
        case BodyKind::Disk:
            return K.radius * tail_norm(y);
        case BodyKind::Ball:
            return K.radius * norm2(y);
        case BodyKind::Cylinder:
            return K.radius * tail_norm(y) + K.height * std::max(y.back(), 0.0);
        case BodyKind::BallSum:
            return support(*K.base, y) + K.ball_t * norm2(y);
    }
    throw ValidationError("support: unknown body kind");
}

std::vector<std::pair<double, double>> profile_of(const ConvexBody& K) {
    switch (K.kind) {
        case BodyKind::Revolution:
            return K.profile;
        case BodyKind::Cone:
            if (K.h > 0) return {{0.0, 1.0}, {K.h, 0.0}};
            if (K.h < 0) return {{K.h, 0.0}, {0.0, 1.0}};
            return {{0.0, 1.0}};
        case BodyKind::Disk:
            return {{0.0, K.radius}};
        case BodyKind::Cylinder:
            if (K.height > 0) return {{0.0, K.radius}, {K.height, K.radius}};
            return {{0.0, K.radius}};
        default:
            throw CapabilityError("profile_of: body has no e_n profile");
    }
}

void check_profile(const std::vector<std::pair<double, double>>& p) {
    if (p.empty()) throw ValidationError("revolution profile empty");
    bool positive = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].second < 0)
            throw ValidationError("revolution profile radius negative at breakpoint " +
                                  std::to_string(i));
        if (p[i].second > 0) positive = true;
        if (i > 0 && !(p[i].first > p[i - 1].first))
            throw ValidationError("revolution profile heights not strictly increasing at "
                                  "breakpoint " + std::to_string(i));
    }
    if (!positive) throw ValidationError("revolution profile has no positive radius");
    // concavity: slopes non-increasing (small slack so collinear refinements validate)
    double scale = 0.0;
    for (const auto& [t, r] : p) scale = std::max({scale, std::abs(t), r});
    for (std::size_t i = 2; i < p.size(); ++i) {
        double s1 = (p[i - 1].second - p[i - 2].second) / (p[i - 1].first - p[i - 2].first);
        double s2 = (p[i].second - p[i - 1].second) / (p[i].first - p[i - 1].first);
        if (s2 > s1 + 1e-9 * std::max(1.0, scale))
            throw ValidationError("revolution profile not concave at breakpoint " +
                                  std::to_string(i - 1) + " (t=" + fmt17(p[i - 1].first) + ")");
    }
}

// --- Wolfe's min-norm-point algorithm over conv{a_i} -----------------------

constexpr int kWolfeCap = 10000;
constexpr double kWolfeTol = 1e-12;

Vec wolfe_min_norm(const std::vector<Vec>& pts, double* residual_out) {
    const int n = static_cast<int>(pts[0].size());
    const int m = static_cast<int>(pts.size());
    double scale2 = 0.0;
    for (const auto& a : pts) scale2 = std::max(scale2, dot(a, a));
    if (scale2 == 0.0) {
        if (residual_out) *residual_out = 0.0;
        return Vec(n, 0.0);
    }
    int start = 0;
    for (int i = 1; i < m; ++i)
        if (dot(pts[i], pts[i]) < dot(pts[start], pts[start])) start = i;

    std::vector<int> corral = {start};
    std::vector<double> lambda = {1.0};
    Vec w = pts[start];

    auto affine_min_norm = [&](const std::vector<int>& S, std::vector<double>& alpha) {
        const int k = static_cast<int>(S.size());
        Eigen::MatrixXd M(k + 1, k + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M(i, j) = dot(pts[S[i]], pts[S[j]]);
        for (int i = 0; i < k; ++i) {
            M(i, k) = 1.0;
            M(k, i) = 1.0;
        }
        M(k, k) = 0.0;
        rhs(k) = 1.0;
        Eigen::VectorXd sol = M.fullPivLu().solve(rhs);
        alpha.resize(k);
        for (int i = 0; i < k; ++i) alpha[i] = sol(i);
    };

    double resid = 0.0;
    for (int iter = 0; iter < kWolfeCap; ++iter) {
        // linear minimization oracle
        int j = 0;
        double bestv = dot(w, pts[0]);
        for (int i = 1; i < m; ++i) {
            double v = dot(w, pts[i]);
            if (v < bestv) {
                bestv = v;
                j = i;
            }
        }
        resid = dot(w, w) - bestv;
        if (resid <= kWolfeTol * std::max(scale2, 1.0)) {
            if (residual_out) *residual_out = resid;
            return w;
        }
        if (std::find(corral.begin(), corral.end(), j) != corral.end()) {
            // numerically stuck; w is the best available answer
            if (residual_out) *residual_out = resid;
            return w;
        }
        corral.push_back(j);
        lambda.push_back(0.0);

        // minor cycle
        for (int minor = 0; minor < kWolfeCap; ++minor) {
            std::vector<double> alpha;
            affine_min_norm(corral, alpha);
            bool interior = true;
            for (double a : alpha)
                if (a <= 1e-13) interior = false;
            if (interior) {
                lambda = alpha;
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] <= 1e-13) {
                    double denom = lambda[i] - alpha[i];
                    if (denom > 0) theta = std::min(theta, lambda[i] / denom);
                }
            }
            for (std::size_t i = 0; i < alpha.size(); ++i)
                lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
            // drop zeroed points
            std::vector<int> nc;
            std::vector<double> nl;
            for (std::size_t i = 0; i < corral.size(); ++i) {
                if (lambda[i] > 1e-12) {
                    nc.push_back(corral[i]);
                    nl.push_back(lambda[i]);
                }
            }
            if (nc.empty()) {
                nc.push_back(corral[0]);
                nl.push_back(1.0);
            }
            corral = nc;
            lambda = nl;
        }
        double wsum = 0.0;
        for (double l : lambda) wsum += l;
        w.assign(n, 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i)
            for (int d = 0; d < n; ++d) w[d] += lambda[i] / wsum * pts[corral[i]][d];
    }
    throw NumericalError("nearest_point: Wolfe projector did not converge, residual " +
                         fmt17(resid / std::max(scale2, 1.0)));
}

// 2-D projection onto the symmetric profile region {(rho, t): |rho| <= r(t)}.
std::pair<Vec, double> project_profile_2d(const std::vector<std::pair<double, double>>& prof,
                                          double rho, double tn) {
    auto radius_at = [&prof](double t) -> double {
        if (t < prof.front().first || t > prof.back().first) return -1.0;
        for (std::size_t i = 1; i < prof.size(); ++i) {
            if (t <= prof[i].first) {
                double u = (t - prof[i - 1].first) / (prof[i].first - prof[i - 1].first);
                return (1 - u) * prof[i - 1].second + u * prof[i].second;
            }
        }
        return prof.back().second;
    };
    if (prof.size() == 1) {
        // flat disk at height t0
        double t0 = prof[0].first, r0 = prof[0].second;
        double cr = std::clamp(rho, 0.0, r0);
        double d = std::hypot(rho - cr, tn - t0);
        return {{cr, t0}, d};
    }
    double r_here = radius_at(tn);
    if (r_here >= 0.0 && rho <= r_here) return {{rho, tn}, 0.0};

    // project onto boundary segments in the rho >= 0 half
    std::vector<std::pair<Vec, Vec>> segs;
    for (std::size_t i = 1; i < prof.size(); ++i)
        segs.push_back({{prof[i - 1].second, prof[i - 1].first}, {prof[i].second, prof[i].first}});
    segs.push_back({{0.0, prof.front().first}, {prof.front().second, prof.front().first}});
    segs.push_back({{0.0, prof.back().first}, {prof.back().second, prof.back().first}});

    double best_d = 1e300;
    Vec best_p = {0.0, 0.0};
    for (const auto& [a, b] : segs) {
        Vec ab = {b[0] - a[0], b[1] - a[1]};
        double len2 = dot(ab, ab);
        double u = len2 > 0 ? std::clamp(((rho - a[0]) * ab[0] + (tn - a[1]) * ab[1]) / len2, 0.0, 1.0)
                            : 0.0;
        Vec p = {a[0] + u * ab[0], a[1] + u * ab[1]};
        double d = std::hypot(rho - p[0], tn - p[1]);
        if (d < best_d) {
            best_d = d;
            best_p = p;
        }
    }
    return {best_p, best_d};
}

Projection nearest_canonical(const ConvexBody& K, const Vec& x) {
    const int n = K.n;
    switch (K.kind) {
        case BodyKind::Ball: {
            double r = K.radius, nx = norm2(x);
            if (nx <= r) return {x, 0.0};
            return {(r / nx) * x, nx - r};
        }
        case BodyKind::Polytope: {
            std::vector<Vec> shifted;
            shifted.reserve(K.vertices.size());
            for (const auto& v : K.vertices) shifted.push_back(v - x);
            double resid = 0.0;
            Vec w = wolfe_min_norm(shifted, &resid);
            double d = norm2(w);
            if (d <= 1e-12) return {x, 0.0};
            return {x + w, d};
        }
        case BodyKind::BallSum: {
            Projection pb = nearest_point(*K.base, x);
            if (pb.distance <= K.ball_t) return {x, 0.0};
            Vec dir = (1.0 / pb.distance) * (x - pb.point);
            return {pb.point + K.ball_t * dir, pb.distance - K.ball_t};
        }
        default: {
            auto prof = profile_of(K);
            Vec xp(x.begin(), x.end() - 1);
            double rho = norm2(xp), tn = x.back();
            auto [p2, d] = project_profile_2d(prof, rho, tn);
            Vec p(n, 0.0);
            if (rho > 0) {
                for (int i = 0; i < n - 1; ++i) p[i] = p2[0] / rho * xp[i];
            } else if (p2[0] > 0) {
                p[0] = p2[0];  // arbitrary azimuth (cannot occur for convex regions)
            }
            p[n - 1] = p2[1];
            return {p, d};
        }
    }
}

// max_{x in c*K + w} |x|, recursing through BallSum.
// c*(scale*K0 + tau) + w = (c*scale)*K0 + (c*tau + w).
double far_norm(const ConvexBody& K, double c, Vec w) {
    for (int i = 0; i < K.n; ++i) w[i] += c * K.translation[i];
    c *= K.scale;
    switch (K.kind) {
        case BodyKind::Polytope: {
            double best = 0.0;
            for (const auto& v : K.vertices) {
                double s = 0.0;
                for (int i = 0; i < K.n; ++i) s += sq(c * v[i] + w[i]);
                best = std::max(best, std::sqrt(s));
            }
            return best;
        }
        case BodyKind::Ball: {
            return norm2(w) + c * K.radius;
        }
        case BodyKind::BallSum: {
            return far_norm(*K.base, c, w) + c * K.ball_t;
        }
        default: {
            auto prof = profile_of(K);
            double wp = tail_norm(w), wn = w.back();
            double best = 0.0;
            for (const auto& [t, r] : prof)
                best = std::max(best, std::hypot(c * r + wp, c * t + wn));
            return best;
        }
    }
}

double diameter_canonical(const ConvexBody& K) {
    switch (K.kind) {
        case BodyKind::Polytope: {
            double best = 0.0;
            for (std::size_t i = 0; i < K.vertices.size(); ++i)
                for (std::size_t k = i + 1; k < K.vertices.size(); ++k)
                    best = std::max(best, norm2(K.vertices[i] - K.vertices[k]));
            return best;
        }
        case BodyKind::Ball:
            return 2.0 * K.radius;
        case BodyKind::BallSum:
            return diameter(*K.base) + 2.0 * K.ball_t;
        default: {
            auto prof = profile_of(K);
            double best = 0.0;
            for (std::size_t i = 0; i < prof.size(); ++i)
                for (std::size_t k = i; k < prof.size(); ++k)
                    best = std::max(best, std::hypot(prof[i].second + prof[k].second,
                                                     prof[i].first - prof[k].first));
            return best;
        }
    }
}

}  // namespace

void ConvexBody::validate() const {
    if (n < 2) throw ValidationError("body dimension must be >= 2");
    if (!(scale > 0)) throw ValidationError("body scale must be > 0");
    if (static_cast<int>(translation.size()) != n)
        throw ValidationError("translation size must equal the dimension");
    switch (kind) {
        case BodyKind::Polytope:
            if (vertices.empty()) throw ValidationError("polytope vertex list empty");
            for (const auto& v : vertices)
                if (static_cast<int>(v.size()) != n)
                    throw ValidationError("polytope vertex dimension mismatch");
            break;
        case BodyKind::Revolution:
            check_profile(profile);
            break;
        case BodyKind::Disk:
        case BodyKind::Ball:
            if (!(radius > 0)) throw ValidationError("radius must be > 0");
            break;
        case BodyKind::Cylinder:
            if (!(radius > 0)) throw ValidationError("radius must be > 0");
            if (height < 0) throw ValidationError("cylinder height must be >= 0");
            break;
        case BodyKind::Cone:
            break;
        case BodyKind::BallSum:
            if (!base) throw ValidationError("ball-sum base missing");
            if (ball_t < 0) throw ValidationError("ball-sum t must be >= 0");
            base->validate();
            break;
    }
}

static ConvexBody blank(BodyKind k, int n) {
    ConvexBody b;
    b.kind = k;
    b.n = n;
    b.translation.assign(n, 0.0);
    return b;
}

ConvexBody make_polytope(int n, std::vector<Vec> vertices) {
    auto b = blank(BodyKind::Polytope, n);
    b.vertices = std::move(vertices);
    b.validate();
    return b;
}

ConvexBody make_revolution(int n, std::vector<std::pair<double, double>> profile) {
    auto b = blank(BodyKind::Revolution, n);
    b.profile = std::move(profile);
    b.validate();
    return b;
}

ConvexBody make_cone(int n, double h) {
    auto b = blank(BodyKind::Cone, n);
    b.h = h;
    b.validate();
    return b;
}

ConvexBody make_disk(int n, double radius) {
    auto b = blank(BodyKind::Disk, n);
    b.radius = radius;
    b.validate();
    return b;
}

ConvexBody make_ball(int n, double radius) {
    auto b = blank(BodyKind::Ball, n);
    b.radius = radius;
    b.validate();
    return b;
}

ConvexBody make_cylinder(int n, double radius, double height) {
    auto b = blank(BodyKind::Cylinder, n);
    b.radius = radius;
    b.height = height;
    b.validate();
    return b;
}

ConvexBody make_cube(int n, double side) {
    std::vector<Vec> verts;
    int m = 1 << n;
    for (int mask = 0; mask < m; ++mask) {
        Vec v(n, 0.0);
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) v[i] = side;
        verts.push_back(std::move(v));
    }
    return make_polytope(n, std::move(verts));
}

ConvexBody translated(ConvexBody K, const Vec& x) {
    for (int i = 0; i < K.n; ++i) K.translation[i] += x[i];
    return K;
}

ConvexBody scaled(ConvexBody K, double lambda) {
    if (!(lambda > 0)) throw ValidationError("scale factor must be > 0");
    K.scale *= lambda;
    for (auto& t : K.translation) t *= lambda;
    return K;
}

ConvexBody make_revolution_from_function(int n, const std::function<double(double)>& r, double t0,
                                         double t1, int segments) {
    if (segments < 1) throw ValidationError("discretization needs >= 1 segment");
    std::vector<std::pair<double, double>> prof;
    for (int i = 0; i <= segments; ++i) {
        double t = t0 + (t1 - t0) * i / segments;
        prof.emplace_back(t, std::max(0.0, r(t)));
    }
    return make_revolution(n, std::move(prof));
}

double support(const ConvexBody& K, const Vec& y) {
    if (static_cast<int>(y.size()) != K.n)
        throw ValidationError("support: direction dimension mismatch");
    return K.scale * support_canonical(K, y) + dot(K.translation, y);
}

Projection nearest_point(const ConvexBody& K, const Vec& x) {
    K.validate();
    Vec x0(K.n);
    for (int i = 0; i < K.n; ++i) x0[i] = (x[i] - K.translation[i]) / K.scale;
    Projection p0 = nearest_canonical(K, x0);
    Projection p;
    p.point.resize(K.n);
    for (int i = 0; i < K.n; ++i) p.point[i] = K.scale * p0.point[i] + K.translation[i];
    p.distance = K.scale * p0.distance;
    return p;
}

ConvexBody minkowski_ball(const ConvexBody& K, double t) {
    if (t < 0) throw ValidationError("minkowski_ball: t must be >= 0");
    if (t == 0) return K;
    if (K.kind == BodyKind::Ball) {
        auto b = make_ball(K.n, K.scale * K.radius + t);
        b.translation = K.translation;
        return b;
    }
    auto b = blank(BodyKind::BallSum, K.n);
    b.base = std::make_shared<ConvexBody>(K);
    b.ball_t = t;
    return b;
}

double diameter(const ConvexBody& K) { return K.scale * diameter_canonical(K); }

double sup_norm_h(const ConvexBody& K) { return far_norm(K, 1.0, Vec(K.n, 0.0)); }

bool has_closed_form_volume(const ConvexBody& K) {
    switch (K.kind) {
        case BodyKind::Polytope:
            return false;
        case BodyKind::BallSum:
            return has_closed_form_volume(*K.base);
        default:
            return true;
    }
}

double volume(const ConvexBody& K) {
    const int n = K.n;
    double v = 0.0;
    switch (K.kind) {
        case BodyKind::Ball:
            v = unit_ball_volume(n) * std::pow(K.radius, n);
            break;
        case BodyKind::Disk:
            v = 0.0;
            break;
        case BodyKind::Cylinder:
            v = unit_ball_volume(n - 1) * std::pow(K.radius, n - 1) * K.height;
            break;
        case BodyKind::Cone:
            v = unit_ball_volume(n - 1) * std::abs(K.h) / n;
            break;
        case BodyKind::Revolution: {
            // integral of omega_{n-1} r(t)^{n-1} dt, exact per linear segment
            double w = unit_ball_volume(n - 1);
            for (std::size_t i = 1; i < K.profile.size(); ++i) {
                double t0 = K.profile[i - 1].first, t1 = K.profile[i].first;
                double r0 = K.profile[i - 1].second, r1 = K.profile[i].second;
                double L = t1 - t0;
                if (std::abs(r1 - r0) < 1e-15 * std::max(1.0, std::abs(r0))) {
                    v += w * std::pow(r0, n - 1) * L;
                } else {
                    // \int_0^L (r0 + (r1-r0) u/L)^{n-1} du
                    v += w * L * (std::pow(r1, n) - std::pow(r0, n)) / (n * (r1 - r0));
                }
            }
            break;
        }
        default:
            throw CapabilityError("volume: no closed form for this body (use the MC estimator)");
    }
    return std::pow(K.scale, n) * v;
}

std::vector<Vec> sphere_grid(int n, int count, std::uint64_t seed) {
    std::vector<Vec> out;
    out.reserve(count);
    if (n == 3) {
        // product grid: azimuth blocks x polar angle
        int na = std::max(4, static_cast<int>(std::sqrt(2.0 * count)));
        int np = std::max(2, count / na);
        for (int ip = 0; ip < np; ++ip) {
            double z = -1.0 + 2.0 * (ip + 0.5) / np;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int ia = 0; ia < na; ++ia) {
                double phi = 2.0 * M_PI * ia / na;
                out.push_back({r * std::cos(phi), r * std::sin(phi), z});
            }
        }
    } else {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        while (static_cast<int>(out.size()) < count) {
            Vec v(n);
            for (auto& x : v) x = g(rng);
            double nv = norm2(v);
            if (nv < 1e-8) continue;
            out.push_back((1.0 / nv) * v);
        }
    }
    // axis directions included for exactness of axis-aligned comparisons
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(e);
    }
    return out;
}

double hausdorff_on_grid(const ConvexBody& K, const ConvexBody& L, const std::vector<Vec>& grid) {
    double d = 0.0;
    for (const auto& v : grid) d = std::max(d, std::abs(support(K, v) - support(L, v)));
    return d;
}

double BodyView::support(const Vec& y) const {
    if (rot_cols_.empty()) return geom::support(*body_, y);
    // h_{QK}(y) = h_K(Q^T y); (Q^T y)_i = <col_i, y>
    Vec yt(body_->n);
    for (int i = 0; i < body_->n; ++i) yt[i] = dot(rot_cols_[i], y);
    return geom::support(*body_, yt);
}

Projection BodyView::nearest(const Vec& x) const {
    if (rot_cols_.empty()) return nearest_point(*body_, x);
    Vec xt(body_->n);
    for (int i = 0; i < body_->n; ++i) xt[i] = dot(rot_cols_[i], x);
    Projection p0 = nearest_point(*body_, xt);
    Projection p;
    p.distance = p0.distance;
    p.point.assign(body_->n, 0.0);
    for (int i = 0; i < body_->n; ++i)
        for (int k = 0; k < body_->n; ++k) p.point[k] += rot_cols_[i][k] * p0.point[i];
    return p;
}

std::pair<Vec, Vec> BodyView::bounding_box(double margin) const {
    int n = body_->n;
    Vec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        hi[i] = support(e) + margin;
        e[i] = -1.0;
        lo[i] = -support(e) - margin;
    }
    return {lo, hi};
}

std::vector<Vec> rotation_taking_en_to(const Vec& y) {
    const int n = static_cast<int>(y.size());
    double ny = norm2(y);
    if (ny < 1e-14) throw ValidationError("rotation: zero direction");
    Eigen::MatrixXd Q(n, n);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = y[i] / ny;
    // Gram-Schmidt a basis whose last column is v
    Q.col(n - 1) = v;
    int filled = 1;
    for (int i = 0; i < n && filled < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(i) = 1.0;
        for (int k = n - filled; k < n; ++k) e -= Q.col(k).dot(e) * Q.col(k);
        double nn = e.norm();
        if (nn > 1e-8) {
            Q.col(n - 1 - filled) = e / nn;
            ++filled;
        }
    }
    if (Q.determinant() < 0) Q.col(0) = -Q.col(0);
    std::vector<Vec> cols(n, Vec(n));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) cols[c][r] = Q(r, c);
    return cols;
}

std::vector<Vec> compose_rotation(const std::vector<Vec>& A, const std::vector<Vec>& B) {
    // columns of A*B
    const int n = static_cast<int>(A.size());
    std::vector<Vec> out(n, Vec(n, 0.0));
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k)
            for (int r = 0; r < n; ++r) out[c][r] += A[k][r] * B[c][k];
    return out;
}

std::vector<Vec> so_nminus1_rotation(int n, double angle, int axis_i, int axis_j) {
    std::vector<Vec> cols(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) cols[i][i] = 1.0;
    cols[axis_i][axis_i] = std::cos(angle);
    cols[axis_i][axis_j] = std::sin(angle);
    cols[axis_j][axis_i] = -std::sin(angle);
    cols[axis_j][axis_j] = std::cos(angle);
    return cols;
}

}  // namespace zonalval::geom
