#include "mimecloak/shapes.hpp"

#include <algorithm>
#include <cmath>

namespace mimecloak {
namespace shapes {

namespace {

// Splits [lo, hi) ranges that cross the wrap and emits the pieces sorted.
// Angles within 1e-12 of the wrap are snapped so vertices that land exactly
// on the positive x-axis do not create zero-width slivers.
std::vector<BoundaryPiece> normalize_ranges(std::vector<BoundaryPiece> raw) {
  auto snap = [](double a) {
    if (std::abs(a) < 1e-12 || std::abs(a - kTwoPi) < 1e-12) return 0.0;
    return a;
  };
  std::vector<BoundaryPiece> out;
  for (auto& p : raw) {
    double lo = snap(p.theta_lo), hi = snap(p.theta_hi);
    if (hi <= lo) hi += kTwoPi;
    if (hi > kTwoPi + 1e-15) {
      out.push_back({p.shape, lo, kTwoPi});
      out.push_back({p.shape, 0.0, hi - kTwoPi});
    } else {
      out.push_back({p.shape, lo, std::min(hi, kTwoPi)});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BoundaryPiece& a, const BoundaryPiece& b) { return a.theta_lo < b.theta_lo; });
  return out;
}

PieceShape side_shape(Vec2 a, Vec2 b) {
  double scale = std::max(a.norm(), b.norm());
  if (std::abs(b.x - a.x) < 1e-12 * scale) return VerticalPiece{a.x};
  double slope = (b.y - a.y) / (b.x - a.x);
  return LinePiece{slope, a.y - slope * a.x};
}

}  // namespace

StarDomain circle(Vec2 vantage, double r) { return ellipse(vantage, r, r); }

StarDomain ellipse(Vec2 vantage, double rx, double ry, double rotation) {
  std::vector<BoundaryPiece> pieces{{EllipsePiece{rx, ry, rotation}, 0.0, kTwoPi}};
  return StarDomain(vantage, std::move(pieces));
}

StarDomain polygon(Vec2 vantage, const std::vector<Vec2>& vertices) {
  if (vertices.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  std::vector<BoundaryPiece> raw;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Vec2 a = vertices[i] - vantage;
    Vec2 b = vertices[(i + 1) % vertices.size()] - vantage;
    if (a.cross(b) <= 0.0)
      throw Error(ErrorCode::GeometryConflict,
                  "polygon vertices must be counter-clockwise and star-shaped about the vantage");
    raw.push_back({side_shape(a, b), a.angle(), b.angle()});
  }
  return StarDomain(vantage, normalize_ranges(std::move(raw)));
}

StarDomain square(Vec2 vantage, double half_side, double rotation) {
  std::vector<Vec2> verts;
  for (int i = 0; i < 4; ++i) {
    double a = rotation + kPi / 4.0 + i * kPi / 2.0;
    double r = half_side * std::sqrt(2.0);
    verts.push_back(vantage + Vec2{r * std::cos(a), r * std::sin(a)});
  }
  return polygon(vantage, verts);
}

StarDomain equilateral_triangle(Vec2 vantage, double circumradius, double rotation) {
  std::vector<Vec2> verts;
  for (int i = 0; i < 3; ++i) {
    double a = rotation + kPi / 2.0 + i * 2.0 * kPi / 3.0;
    verts.push_back(vantage + Vec2{circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  return polygon(vantage, verts);
}

StarDomain hexagram(Vec2 vantage, double triangle_side, double rotation) {
  double point_r = triangle_side / std::sqrt(3.0);
  double notch_r = triangle_side / 3.0;
  std::vector<Vec2> verts;
  for (int i = 0; i < 6; ++i) {
    double notch_a = rotation + i * kPi / 3.0;
    double point_a = rotation + kPi / 6.0 + i * kPi / 3.0;
    verts.push_back(vantage + Vec2{notch_r * std::cos(notch_a), notch_r * std::sin(notch_a)});
    verts.push_back(vantage + Vec2{point_r * std::cos(point_a), point_r * std::sin(point_a)});
  }
  return polygon(vantage, verts);
}

StarDomain ellipse_union(Vec2 vantage, double rx, double ry,
                         const std::vector<double>& rotations) {
  if (rotations.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one rotation");
  if (!(rx > ry))
    throw Error(ErrorCode::InvalidArgument, "petal union expects rx > ry (major axis first)");
  // Petal directions: each rotation contributes its axis direction and the
  // opposite one. Junctions between adjacent petals sit on the bisectors.
  std::vector<double> dirs;
  for (double r : rotations) {
    double d = std::fmod(r, kTwoPi);
    if (d < 0) d += kTwoPi;
    dirs.push_back(std::fmod(d, kPi));
    dirs.push_back(std::fmod(d, kPi) + kPi);
  }
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             dirs.end());
  std::vector<BoundaryPiece> raw;
  const std::size_t n = dirs.size();
  for (std::size_t i = 0; i < n; ++i) {
    double d = dirs[i];
    double prev = (i == 0) ? dirs[n - 1] - kTwoPi : dirs[i - 1];
    double next = (i + 1 == n) ? dirs[0] + kTwoPi : dirs[i + 1];
    double lo = 0.5 * (prev + d);
    double hi = 0.5 * (d + next);
    if (lo < 0.0) lo += kTwoPi;
    raw.push_back({EllipsePiece{rx, ry, d}, lo, hi < lo ? hi + kTwoPi : hi});
  }
  return StarDomain(vantage, normalize_ranges(std::move(raw)));
}

StarDomain parallelogram(Vec2 vantage, Vec2 c0, Vec2 c1, Vec2 c2, Vec2 c3) {
  return polygon(vantage, {c0, c1, c2, c3});
}

}  // namespace shapes
}  // namespace mimecloak
