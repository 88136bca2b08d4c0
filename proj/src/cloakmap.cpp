#include "mimecloak/cloakmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mimecloak {

namespace {

constexpr int kValidationSamples = 3600;

struct RayData {
  Vec2 dir;
  double t_prime;       // |query - vantage|
  double t0, t1, t2;    // boundary distances along the ray
  Vec2 x0, x1, x2;      // boundary points
};

RayData ray_data(const CloakSpec& spec, Vec2 query) {
  Vec2 v = spec.vantage();
  Vec2 d = query - v;
  double tp = d.norm();
  if (tp == 0.0)
    throw Error(ErrorCode::OutsideCoating, "query coincides with the vantage point");
  RayData r;
  r.dir = d / tp;
  r.t_prime = tp;
  r.x0 = ray_intersect(spec.d0(), query);
  r.x1 = ray_intersect(spec.d1(), query);
  r.x2 = ray_intersect(spec.d2(), query);
  r.t0 = (r.x0 - v).norm();
  r.t1 = (r.x1 - v).norm();
  r.t2 = (r.x2 - v).norm();
  return r;
}

void require_in_coating(const RayData& r, double scale) {
  double tol = 1e-9 * scale;
  if (r.t_prime < r.t1 - tol || r.t_prime > r.t2 + tol)
    throw Error(ErrorCode::OutsideCoating, "query not inside the coating D2\\D1");
}

}  // namespace

CloakSpec CloakSpec::make(StarDomain d0, StarDomain d1, StarDomain d2, CloakMode mode) {
  Vec2 v = d1.vantage();
  if (d0.vantage().x != v.x || d0.vantage().y != v.y || d2.vantage().x != v.x ||
      d2.vantage().y != v.y)
    throw Error(ErrorCode::GeometryConflict, "the three domains must share the vantage point");

  auto sectors = sectorize(d0, d1, d2);

  double max_r2 = 0.0, min_r0 = std::numeric_limits<double>::max();
  for (int i = 0; i < kValidationSamples; ++i) {
    double theta = kTwoPi * i / kValidationSamples;
    double r0 = d0.radius(theta), r1 = d1.radius(theta), r2 = d2.radius(theta);
    max_r2 = std::max(max_r2, r2);
    min_r0 = std::min(min_r0, r0);
    if (!std::isfinite(r0) || !std::isfinite(r1) || !std::isfinite(r2) || r0 <= 0.0 ||
        r1 <= 0.0 || r2 <= 0.0)
      throw Error(ErrorCode::NotNested, "non-finite boundary radius at angle " +
                                            std::to_string(theta));
    if (mode == CloakMode::Shrink) {
      // The shrink transform needs t0 < t2 and t1 < t2 along every ray; D0 may
      // poke outside D1 (the squaring-the-circle square does).
      if (!(r1 < r2) || !(r0 < r2))
        throw Error(ErrorCode::NotNested,
                    "shrink ordering r0 < r2, r1 < r2 fails at angle " + std::to_string(theta));
    } else {
      // Space folding: |x0| >= |x2| >= |x1| with strict scale factors.
      if (!(r0 > r2) || !(r2 > r1))
        throw Error(ErrorCode::NotNested,
                    "fold ordering r0 > r2 > r1 fails at angle " + std::to_string(theta));
    }
  }
  if (mode == CloakMode::Shrink && min_r0 < 1e-6 * max_r2)
    throw Error(ErrorCode::NotNested,
                "D0 degenerates to the vantage point (singular cloak, not supported)");

  return CloakSpec(std::move(d0), std::move(d1), std::move(d2), mode, std::move(sectors),
                   max_r2);
}

CloakRegion CloakSpec::classify(Vec2 p) const {
  Vec2 d = p - vantage();
  double t = d.norm();
  if (t == 0.0) return CloakRegion::Inside;
  double theta = d.angle();
  if (t < d1_.radius(theta)) return CloakRegion::Inside;
  if (t > d2_.radius(theta)) return CloakRegion::Outside;
  return CloakRegion::Coating;
}

int CloakSpec::sector_of(Vec2 p) const {
  Vec2 d = p - vantage();
  if (d.norm() == 0.0) return -1;
  return sector_index(sectors_, d.angle());
}

MapJet inverse_map(const CloakSpec& spec, Vec2 query) {
  RayData r = ray_data(spec, query);
  require_in_coating(r, spec.outer_scale());

  double denom = r.t2 - r.t1;
  if (std::abs(denom) < 1e-12 * spec.outer_scale())
    throw Error(ErrorCode::DegenerateRay, "D1 and D2 touch along this ray");

  double alpha_ray = (r.t2 - r.t0) / denom;
  double t_image = r.t0 + alpha_ray * (r.t_prime - r.t1);

  MapJet jet;
  jet.image = spec.vantage() + t_image * r.dir;

  // The paper's coordinate-wise Jacobian, rewritten with ratios of ray
  // parameters; identical wherever the coordinate differences are nonzero and
  // regular on axis-aligned rays.
  Mat2 j0 = ray_intersect_derivatives(spec.d0(), query);
  Mat2 j1 = ray_intersect_derivatives(spec.d1(), query);
  Mat2 j2 = ray_intersect_derivatives(spec.d2(), query);
  double u = (r.t2 - r.t_prime) / denom;
  double w = (r.t1 - r.t0) * (r.t_prime - r.t1) / (denom * denom);
  jet.jacobian = alpha_ray * Mat2::identity() + u * j0 - (alpha_ray * u) * j1 - w * j2;

  double comp_tol = 1e-12 * spec.outer_scale();
  double dx = r.x2.x - r.x1.x;
  double dy = r.x2.y - r.x1.y;
  jet.alpha = std::abs(dx) > comp_tol ? (r.x2.x - r.x0.x) / dx : alpha_ray;
  jet.beta = std::abs(dy) > comp_tol ? (r.x2.y - r.x0.y) / dy : alpha_ray;
  jet.gamma = 1.0;
  return jet;
}

Vec2 inverse_map_componentwise(const CloakSpec& spec, Vec2 query) {
  RayData r = ray_data(spec, query);
  require_in_coating(r, spec.outer_scale());
  double ax = (r.x2.x - r.x0.x) / (r.x2.x - r.x1.x);
  double by = (r.x2.y - r.x0.y) / (r.x2.y - r.x1.y);
  return {r.x0.x + ax * (query.x - r.x1.x), r.x0.y + by * (query.y - r.x1.y)};
}

std::vector<std::pair<Vec2, Vec2>> boundary_images(const CloakSpec& spec, int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "need n >= 3 boundary samples");
  std::vector<std::pair<Vec2, Vec2>> pairs;
  pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    double theta = kTwoPi * i / n;
    Vec2 on_d1 = spec.d1().boundary_point(theta);
    // Limit of the inverse map as t' -> t1+: the image is the D0 boundary
    // point on the same ray.
    Vec2 on_d0 = ray_intersect(spec.d0(), on_d1);
    pairs.emplace_back(on_d1, on_d0);
  }
  return pairs;
}

TensorSample identity_tensor_sample() { return TensorSample{}; }

namespace {

TensorSample tensor_from_jet(const MapJet& jet) {
  const Mat2& j = jet.jacobian;
  TensorSample s;
  s.a11 = j.m01 * j.m01 + j.m11 * j.m11;
  s.a12 = -(j.m00 * j.m01 + j.m10 * j.m11);
  s.a22 = j.m00 * j.m00 + j.m10 * j.m10;
  s.a33 = j.det();
  s.t_inv_11 = s.a11 / s.a33;
  s.t_inv_12 = s.a12 / s.a33;
  s.t_inv_22 = s.a22 / s.a33;
  s.t_inv_33 = s.a33;
  double mean = 0.5 * (s.t_inv_11 + s.t_inv_22);
  double half = 0.5 * (s.t_inv_11 - s.t_inv_22);
  double disc = std::sqrt(std::max(0.0, half * half + s.t_inv_12 * s.t_inv_12));
  s.lambda_inv_1 = mean - disc;
  s.lambda_inv_2 = mean + disc;
  s.lambda_inv_3 = s.t_inv_33;
  return s;
}

}  // namespace

TensorSample tensor(const CloakSpec& spec, Vec2 query) {
  CloakRegion region = spec.classify(query);
  if (region == CloakRegion::Outside) return identity_tensor_sample();
  if (region == CloakRegion::Inside)
    throw Error(ErrorCode::OutsideCoating, "no material is defined inside D1");
  return tensor_from_jet(inverse_map(spec, query));
}

EigenvalueField tensor_field(const CloakSpec& spec, const LatticeSpec& grid, Execution exec) {
  if (grid.nx < 1 || grid.ny < 1)
    throw Error(ErrorCode::InvalidArgument, "lattice must have at least one point per axis");
  EigenvalueField field;
  field.grid = grid;
  std::size_t n = std::size_t(grid.nx) * grid.ny;
  field.lambda_inv_1.resize(n);
  field.lambda_inv_2.resize(n);
  field.lambda_inv_3.resize(n);

  auto eval = [&](std::ptrdiff_t idx) {
    int j = static_cast<int>(idx / grid.nx);
    int i = static_cast<int>(idx % grid.nx);
    Vec2 p = grid.point(i, j);
    double l1, l2, l3;
    switch (spec.classify(p)) {
      case CloakRegion::Inside:
        l1 = l2 = l3 = std::numeric_limits<double>::quiet_NaN();
        break;
      case CloakRegion::Outside:
        l1 = l2 = l3 = 1.0;
        break;
      default: {
        TensorSample s = tensor_from_jet(inverse_map(spec, p));
        l1 = s.lambda_inv_1;
        l2 = s.lambda_inv_2;
        l3 = s.lambda_inv_3;
      }
    }
    field.lambda_inv_1[idx] = l1;
    field.lambda_inv_2[idx] = l2;
    field.lambda_inv_3[idx] = l3;
  };

  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) eval(idx);
  } else {
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) eval(idx);
  }
  return field;
}

}  // namespace mimecloak
