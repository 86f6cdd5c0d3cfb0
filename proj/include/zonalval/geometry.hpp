#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zonalval/common.hpp"

namespace zonalval::geom {

enum class BodyKind { Polytope, Revolution, Cone, Disk, Ball, Cylinder, BallSum };

// Canonical convex-body families. All bodies are immutable after construction;
// scale/translation are stored separately so homogeneity and translation
// invariance are exact in tests.
struct ConvexBody {
    BodyKind kind;
    int n = 3;            // ambient dimension
    double scale = 1.0;   // > 0
    Vec translation;      // size n

    std::vector<Vec> vertices;                        // Polytope
    std::vector<std::pair<double, double>> profile;   // Revolution: (height t, radius r)
    double h = 0.0;                                   // Cone apex height
    double radius = 0.0;                              // Disk / Ball / Cylinder
    double height = 0.0;                              // Cylinder
    std::shared_ptr<const ConvexBody> base;           // BallSum
    double ball_t = 0.0;                              // BallSum

    void validate() const;
};

ConvexBody make_polytope(int n, std::vector<Vec> vertices);
ConvexBody make_revolution(int n, std::vector<std::pair<double, double>> profile);
ConvexBody make_cone(int n, double h);
ConvexBody make_disk(int n, double radius);
ConvexBody make_ball(int n, double radius);
ConvexBody make_cylinder(int n, double radius, double height);
ConvexBody make_cube(int n, double side);  // [0, side]^n
ConvexBody translated(ConvexBody K, const Vec& x);
ConvexBody scaled(ConvexBody K, double lambda);

// Uniform-in-height discretization of a smooth concave radius profile.
ConvexBody make_revolution_from_function(int n, const std::function<double(double)>& r,
                                         double t0, double t1, int segments);

// h_K(y) = sup_{x in K} <y, x>; exact for every variant.
double support(const ConvexBody& K, const Vec& y);

struct Projection {
    Vec point;
    double distance = 0.0;
};

// Metric projection p(K, x) and d(x, K). Polytopes use Wolfe's min-norm-point
// algorithm (cap 1e4 iterations, residual 1e-12); revolution-type bodies reduce
// to a planar projection by rotational symmetry.
Projection nearest_point(const ConvexBody& K, const Vec& x);

// K + t*B_1(0); exact support additivity. Balls stay balls.
ConvexBody minkowski_ball(const ConvexBody& K, double t);

double diameter(const ConvexBody& K);

// sup over S^{n-1} of |h_K| == max_{x in K} |x|.
double sup_norm_h(const ConvexBody& K);

double volume(const ConvexBody& K);           // closed form; throws CapabilityError for polytopes
bool has_closed_form_volume(const ConvexBody& K);

// Direction grids (diagnostics only: Hausdorff distance, support scans).
std::vector<Vec> sphere_grid(int n, int count, std::uint64_t seed = 12345);
double hausdorff_on_grid(const ConvexBody& K, const ConvexBody& L, const std::vector<Vec>& grid);

// View used by Monte-Carlo backends: a body together with an optional rotation.
class BodyView {
public:
    explicit BodyView(const ConvexBody& K) : body_(&K) {}
    BodyView(const ConvexBody& K, std::vector<Vec> rotation_cols)
        : body_(&K), rot_cols_(std::move(rotation_cols)) {}

    int dim() const { return body_->n; }
    double support(const Vec& y) const;
    Projection nearest(const Vec& x) const;
    double diameter() const { return geom::diameter(*body_); }
    // Axis-aligned bounding box of K_margin (from support values).
    std::pair<Vec, Vec> bounding_box(double margin) const;

private:
    const ConvexBody* body_;
    std::vector<Vec> rot_cols_;  // columns of Q; body viewed as Q*K
};

// Orthogonal matrix (as columns) with last column y, det +1; Q*e_n = y.
std::vector<Vec> rotation_taking_en_to(const Vec& y);
std::vector<Vec> compose_rotation(const std::vector<Vec>& A, const std::vector<Vec>& B);
std::vector<Vec> so_nminus1_rotation(int n, double angle, int axis_i = 0, int axis_j = 1);

}  // namespace zonalval::geom
