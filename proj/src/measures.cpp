#include "zonalval/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "zonalval/quadrature.hpp"

namespace zonalval::measures {

using geom::BodyKind;
using geom::ConvexBody;

namespace {

double piece_kernel_integral(const Piece& p, double lo, double hi) {
    // \int coef (1-t^2)^{expnt} dt
    double c = p.expnt + 1.0;
    if (!(c > 0)) throw NumericalError("zonal measure piece: non-integrable exponent");
    return p.coef * (partial_even_weight(c, hi) - partial_even_weight(c, lo));
}

}  // namespace

double ZonalMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    for (const auto& p : pieces) m += piece_kernel_integral(p, p.lo, p.hi);
    return m;
}

double ZonalMeasure::first_moment() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.s * a.mass;
    for (const auto& p : pieces) {
        double c = p.expnt + 1.0;
        m += p.coef * (partial_monomial_weight(c, 1, p.hi) - partial_monomial_weight(c, 1, p.lo));
    }
    return m;
}

ZonalMeasure ZonalMeasure::restricted(double lo, double hi) const {
    ZonalMeasure out;
    out.n = n;
    out.j = j;
    for (const auto& a : atoms)
        if (a.s > lo && a.s < hi) out.atoms.push_back(a);
    for (const auto& p : pieces) {
        double l = std::max(lo, p.lo), h = std::min(hi, p.hi);
        if (l < h) out.pieces.push_back({l, h, p.coef, p.expnt});
    }
    return out;
}

double ZonalMeasure::mass_above(double r) const {
    double m = 0.0;
    for (const auto& a : atoms)
        if (a.s > r) m += a.mass;
    for (const auto& p : pieces)
        if (p.hi > r) m += piece_kernel_integral(p, std::max(r, p.lo), p.hi);
    return m;
}

ZonalMeasure cone_measure(int n, int j, double h) {
    if (j < 0 || j > n - 1) throw ValidationError("cone_measure: need 0 <= j <= n-1");
    const double w = unit_ball_volume(n - 1);
    ZonalMeasure mu;
    mu.n = n;
    mu.j = j;
    if (j == 0) {
        // S_0(K) is the spherical Lebesgue measure for every body
        mu.pieces.push_back({-1.0, 1.0, (n - 1) * w, 0.5 * (n - 3)});
        return mu;
    }
    if (h == 0.0) {
        if (j <= n - 2) {
            mu.pieces.push_back({-1.0, 1.0, w * (n - j - 1), 0.5 * (n - j - 3)});
        } else {
            mu.atoms.push_back({1.0, w});
            mu.atoms.push_back({-1.0, w});
        }
        return mu;
    }
    const double s = (h > 0 ? 1.0 : -1.0) / std::sqrt(1.0 + h * h);
    const double lateral = w * std::sqrt(1.0 + h * h) *
                           std::pow(std::abs(h) / std::sqrt(1.0 + h * h), n - j - 1);
    mu.atoms.push_back({s, lateral});
    if (j <= n - 2) {
        if (s > 0)
            mu.pieces.push_back({-1.0, s, w * (n - j - 1), 0.5 * (n - j - 3)});
        else
            mu.pieces.push_back({s, 1.0, w * (n - j - 1), 0.5 * (n - j - 3)});
    } else {
        mu.atoms.push_back({h > 0 ? -1.0 : 1.0, w});  // base face
    }
    return mu;
}

ZonalMeasure disk_measure(int n, int j, double r) {
    if (!(r > 0)) throw ValidationError("disk_measure: radius must be > 0");
    ZonalMeasure mu = cone_measure(n, j, 0.0);
    double f = std::pow(r, j);
    for (auto& a : mu.atoms) a.mass *= f;
    for (auto& p : mu.pieces) p.coef *= f;
    return mu;
}

ZonalMeasure ball_measure(int n, int j, double R) {
    if (j < 0 || j > n - 1) throw ValidationError("ball_measure: need 0 <= j <= n-1");
    if (!(R > 0)) throw ValidationError("ball_measure: radius must be > 0");
    ZonalMeasure mu;
    mu.n = n;
    mu.j = j;
    mu.pieces.push_back({-1.0, 1.0, std::pow(R, j) * (n - 1) * unit_ball_volume(n - 1),
                         0.5 * (n - 3)});
    return mu;
}

ZonalMeasure cylinder_measure(int n, int j, double r, double L) {
    if (j < 0 || j > n - 1) throw ValidationError("cylinder_measure: need 0 <= j <= n-1");
    if (!(r >= 0) || L < 0) throw ValidationError("cylinder_measure: bad radius/height");
    const double w = unit_ball_volume(n - 1);
    ZonalMeasure mu;
    mu.n = n;
    mu.j = j;
    if (j == 0) {
        mu.pieces.push_back({-1.0, 1.0, (n - 1) * w, 0.5 * (n - 3)});
        return mu;
    }
    double lateral = j * std::pow(r, j - 1) * L * w;
    if (lateral > 0) mu.atoms.push_back({0.0, lateral});
    if (r > 0) {
        if (j <= n - 2) {
            mu.pieces.push_back({-1.0, 1.0, std::pow(r, j) * w * (n - j - 1),
                                 0.5 * (n - j - 3)});
        } else {
            mu.atoms.push_back({1.0, std::pow(r, n - 1) * w});
            mu.atoms.push_back({-1.0, std::pow(r, n - 1) * w});
        }
    }
    return mu;
}

std::optional<ZonalMeasure> zonal_measure_of(const ConvexBody& K, int j) {
    ZonalMeasure mu;
    switch (K.kind) {
        case BodyKind::Cone:
            mu = cone_measure(K.n, j, K.h);
            break;
        case BodyKind::Disk:
            mu = disk_measure(K.n, j, K.radius);
            break;
        case BodyKind::Ball:
            mu = ball_measure(K.n, j, K.radius);
            break;
        case BodyKind::Cylinder:
            mu = cylinder_measure(K.n, j, K.radius, K.height);
            break;
        default:
            return std::nullopt;
    }
    double f = std::pow(K.scale, j);
    for (auto& a : mu.atoms) a.mass *= f;
    for (auto& p : mu.pieces) p.coef *= f;
    return mu;
}

double integrate(const dspace::ZonalDensity& f, const ZonalMeasure& mu) {
    double v = 0.0;
    for (const auto& a : mu.atoms) {
        if (std::abs(a.s) >= 1.0) {
            // boundedness at the pole required (polynomial densities only)
            if (f.kind() != dspace::DensityKind::Poly)
                throw NumericalError("integrate: measure atom at endpoint " +
                                     std::string(a.s > 0 ? "+1" : "-1") +
                                     " requires a bounded (polynomial) density");
            double val = 0.0, t = 1.0;
            for (double c : f.poly_coeffs()) {
                val += c * t;
                t *= a.s;
            }
            v += a.mass * val;
        } else {
            v += a.mass * f.eval_f(a.s);
        }
    }
    for (const auto& p : mu.pieces) v += p.coef * f.kernel_integral(p.expnt + 1.0, 0, p.lo, p.hi);
    return v;
}

double integrate(const std::function<double(double)>& f, const ZonalMeasure& mu) {
    double v = 0.0;
    for (const auto& a : mu.atoms) v += a.mass * f(a.s);
    for (const auto& p : mu.pieces) {
        auto g = [&f, &p](double t) {
            return f(t) * std::pow(1.0 - t * t, p.expnt + 1.0);  // weighted for tanh rule
        };
        v += p.coef * integrate_weighted_tanh(g, p.lo, p.hi).value;
    }
    return v;
}

std::vector<double> default_bands(int refine_pole_k) {
    std::vector<double> edges;
    for (int i = 0; i <= 64; ++i) edges.push_back(-1.0 + 2.0 * i / 64.0);
    for (int k = 7; k <= refine_pole_k; ++k) {
        edges.push_back(1.0 - std::pow(2.0, -k));
        edges.push_back(-1.0 + std::pow(2.0, -k));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<double> default_rho(const geom::BodyView& K, int n) {
    double rho0 = 0.05 * K.diameter();
    std::vector<double> rho;
    for (int k = 0; k <= n; ++k) rho.push_back(rho0 * std::pow(2.0, k));
    return rho;
}

double AreaMeasureEstimate::total(int j) const {
    double m = 0.0;
    for (double x : mass[j]) m += x;
    return m;
}

double AreaMeasureEstimate::total_stderr(int j) const {
    double v = 0.0;
    for (double x : stderr_[j]) v += x * x;
    return std::sqrt(v);
}

std::string AreaMeasureEstimate::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"N\":" << samples << ",\"seed\":" << seed << ",\"bands\":[";
    for (std::size_t i = 0; i < band_edges.size(); ++i)
        os << (i ? "," : "") << fmt17(band_edges[i]);
    os << "],\"rho\":[";
    for (std::size_t i = 0; i < rho.size(); ++i) os << (i ? "," : "") << fmt17(rho[i]);
    os << "],\"S\":[";
    for (std::size_t j = 0; j < mass.size(); ++j) {
        os << (j ? "," : "") << "[";
        for (std::size_t b = 0; b < mass[j].size(); ++b) {
            // negative estimates are clipped to 0 in reporting only
            os << (b ? "," : "") << "{\"mass\":" << fmt17(std::max(0.0, mass[j][b]))
               << ",\"stderr\":" << fmt17(stderr_[j][b]) << "}";
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Xoshiro {
    std::uint64_t s[4];
    explicit Xoshiro(std::uint64_t seed) {
        for (int i = 0; i < 4; ++i) {
            seed = splitmix64(seed);
            s[i] = seed;
        }
    }
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t next() {
        std::uint64_t r = rotl(s[1] * 5, 7) * 9;
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return r;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

constexpr long long kBlockSize = 16384;

}  // namespace

AreaMeasureEstimate mc_steiner_estimate(const geom::BodyView& K, const SteinerConfig& cfg) {
    const int n = K.dim();
    if (static_cast<int>(cfg.rho.size()) < n)
        throw ValidationError("mc_steiner_estimate: need at least n distinct rho values");
    if (cfg.samples < 10000)
        throw ValidationError("mc_steiner_estimate: need at least 1e4 samples");
    for (double r : cfg.rho)
        if (!(r > 0)) throw ValidationError("mc_steiner_estimate: rho values must be positive");

    const auto& edges = cfg.band_edges;
    if (edges.size() < 2 || edges.front() != -1.0 || edges.back() != 1.0)
        throw ValidationError("mc_steiner_estimate: band edges must partition [-1,1]");
    const int nbands = static_cast<int>(edges.size()) - 1;
    const int nrho = static_cast<int>(cfg.rho.size());
    std::vector<double> rho_sorted = cfg.rho;
    std::sort(rho_sorted.begin(), rho_sorted.end());
    const double rho_max = rho_sorted.back();

    auto [lo, hi] = K.bounding_box(rho_max);
    double boxvol = 1.0;
    for (int i = 0; i < n; ++i) boxvol *= (hi[i] - lo[i]);

    // condition check on the Steiner design matrix
    Eigen::MatrixXd A(nrho, n);
    for (int k = 0; k < nrho; ++k)
        for (int j = 0; j < n; ++j)
            A(k, j) = (1.0 / n) * std::pow(rho_sorted[k], n - j) * binomial(n, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (cond > 1e10)
        throw ValidationError("mc_steiner_estimate: rho design matrix condition " + fmt17(cond) +
                              " > 1e10; use a geometric rho grid");

    const long long nblocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
    // per-block accumulators, reduced sequentially by block index for
    // thread-count-independent results
    std::vector<std::vector<double>> block_w(nblocks), block_w2(nblocks);

    auto run_block = [&](long long b) {
        std::vector<double> w(static_cast<std::size_t>(nbands) * nrho, 0.0);
        std::vector<double> w2(static_cast<std::size_t>(nbands) * nrho, 0.0);
        Xoshiro rng(splitmix64(cfg.seed) ^ splitmix64(static_cast<std::uint64_t>(b) + 0x1234567ULL));
        long long count = std::min(kBlockSize, cfg.samples - b * kBlockSize);
        Vec x(n);
        for (long long i = 0; i < count; ++i) {
            for (int d = 0; d < n; ++d) x[d] = lo[d] + (hi[d] - lo[d]) * rng.uniform();
            auto pr = K.nearest(x);
            if (pr.distance <= 0.0 || pr.distance > rho_max) continue;
            double un = (x[n - 1] - pr.point[n - 1]) / pr.distance;
            un = std::clamp(un, -1.0, 1.0);
            auto it = std::upper_bound(edges.begin(), edges.end(), un);
            int band = static_cast<int>(it - edges.begin()) - 1;
            band = std::clamp(band, 0, nbands - 1);
            double wt = cfg.weight ? cfg.weight(un) : 1.0;
            for (int k = 0; k < nrho; ++k) {
                if (pr.distance <= rho_sorted[k]) {
                    w[band * nrho + k] += wt;
                    w2[band * nrho + k] += wt * wt;
                }
            }
        }
        block_w[b] = std::move(w);
        block_w2[b] = std::move(w2);
    };

    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, 64));
    {
        std::vector<std::thread> pool;
        std::atomic<long long> next{0};
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&]() {
                for (;;) {
                    long long b = next.fetch_add(1);
                    if (b >= nblocks) return;
                    run_block(b);
                }
            });
        for (auto& th : pool) th.join();
    }

    std::vector<double> sw(static_cast<std::size_t>(nbands) * nrho, 0.0);
    std::vector<double> sw2(static_cast<std::size_t>(nbands) * nrho, 0.0);
    for (long long b = 0; b < nblocks; ++b) {
        for (std::size_t i = 0; i < sw.size(); ++i) {
            sw[i] += block_w[b][i];
            sw2[i] += block_w2[b][i];
        }
    }

    const double N = static_cast<double>(cfg.samples);
    AreaMeasureEstimate est;
    est.n = n;
    est.band_edges = edges;
    est.rho = rho_sorted;
    est.samples = cfg.samples;
    est.seed = cfg.seed;
    est.mass.assign(n, std::vector<double>(nbands, 0.0));
    est.stderr_.assign(n, std::vector<double>(nbands, 0.0));

    Eigen::MatrixXd pinv =
        (A.transpose() * A).ldlt().solve(Eigen::MatrixXd::Identity(n, n)) * A.transpose();
    for (int b = 0; b < nbands; ++b) {
        Eigen::VectorXd vol(nrho), var(nrho);
        for (int k = 0; k < nrho; ++k) {
            double mean = sw[b * nrho + k] / N;
            double mean2 = sw2[b * nrho + k] / N;
            vol(k) = boxvol * mean;
            var(k) = boxvol * boxvol * std::max(0.0, mean2 - mean * mean) / N;
        }
        Eigen::VectorXd S = pinv * vol;
        for (int j = 0; j < n; ++j) {
            est.mass[j][b] = S(j);
            double v = 0.0;
            for (int k = 0; k < nrho; ++k) v += sq(pinv(j, k)) * var(k);
            est.stderr_[j][b] = std::sqrt(v);
        }
    }
    return est;
}

CapMass cap_mass(const geom::ConvexBody& K, int j, double r,
                 const std::optional<SteinerConfig>& cfg) {
    if (r < 0.0 || r > 1.0) throw ValidationError("cap_mass: r must lie in [0,1]");
    if (auto mu = zonal_measure_of(K, j)) return {mu->mass_above(r), 0.0, "closed-form"};
    geom::BodyView view(K);
    SteinerConfig c = cfg ? *cfg : SteinerConfig{};
    if (c.band_edges.empty()) c.band_edges = {-1.0, r, 1.0};
    else {
        c.band_edges.push_back(r);
        std::sort(c.band_edges.begin(), c.band_edges.end());
        c.band_edges.erase(std::unique(c.band_edges.begin(), c.band_edges.end()),
                           c.band_edges.end());
    }
    if (c.rho.empty()) c.rho = default_rho(view, K.n);
    auto est = mc_steiner_estimate(view, c);
    double m = 0.0, v = 0.0;
    for (std::size_t b = 0; b + 1 < est.band_edges.size(); ++b) {
        if (est.band_edges[b] >= r) {
            m += est.mass[j][b];
            v += sq(est.stderr_[j][b]);
        }
    }
    return {m, std::sqrt(v), "mc"};
}

double firey_ratio(const geom::ConvexBody& K, int j, double r,
                   const std::optional<SteinerConfig>& cfg) {
    auto cm = cap_mass(K, j, r, cfg);
    double denom = std::pow(geom::diameter(K), j) * std::pow(1.0 - r * r, 0.5 * (K.n - j - 1));
    return cm.mass / denom;
}

}  // namespace zonalval::measures
