#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mimecloak/core.hpp"

namespace mimecloak {

// Boundary pieces are described in vantage-centered coordinates: a piece
// formula is evaluated after translating the query by the vantage point.

// y = slope*x + intercept, with intercept != 0 so the vantage is off the line.
struct LinePiece {
  double slope = 0.0;
  double intercept = 0.0;
};

// x = c, c != 0.
struct VerticalPiece {
  double c = 0.0;
};

// (x/rx)^2 + (y/ry)^2 = 1, rotated by `rotation` about the vantage point.
struct EllipsePiece {
  double rx = 0.0;
  double ry = 0.0;
  double rotation = 0.0;
};

using PieceShape = std::variant<LinePiece, VerticalPiece, EllipsePiece>;

struct BoundaryPiece {
  PieceShape shape;
  double theta_lo = 0.0;  // angular range [theta_lo, theta_hi) about the vantage
  double theta_hi = 0.0;
};

// A star domain: a vantage point plus boundary pieces whose half-open angular
// ranges partition [0, 2pi). Immutable after construction; all queries are
// pure functions.
class StarDomain {
 public:
  StarDomain(Vec2 vantage, std::vector<BoundaryPiece> pieces);

  const Vec2& vantage() const { return vantage_; }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }

  // Index of the piece covering polar angle theta (any real; reduced mod 2pi).
  std::size_t piece_index(double theta) const;

  // Point where the ray at angle theta meets the boundary.
  Vec2 boundary_point(double theta) const;

  // Distance from the vantage to the boundary at angle theta.
  double radius(double theta) const;

  // Junction angles between consecutive pieces, in [0, 2pi). The wrap angle 0
  // is included only when the pieces meeting there differ.
  std::vector<double> junction_angles() const;

  // Domain scaled about the vantage point by factor s > 0.
  StarDomain scaled(double s) const;

 private:
  Vec2 vantage_;
  std::vector<BoundaryPiece> pieces_;
};

// Boundary point hit by the ray from the vantage through `query`.
Vec2 ray_intersect(const StarDomain& domain, Vec2 query);

// Analytic partial derivatives of ray_intersect with respect to the query,
// rows (dxi/dx', dxi/dy'; dyi/dx', dyi/dy').
Mat2 ray_intersect_derivatives(const StarDomain& domain, Vec2 query);

// Angular wedge [lo, hi). A sector spanning the wrap at 0 is stored whole,
// with hi > 2pi.
struct Sector {
  double lo = 0.0;
  double hi = 0.0;
};

// Common refinement of the angular partitions of three domains sharing a
// vantage point. Within each sector every boundary is a single smooth piece.
std::vector<Sector> sectorize(const StarDomain& d0, const StarDomain& d1, const StarDomain& d2);

bool sector_contains(const Sector& s, double theta);
int sector_index(const std::vector<Sector>& sectors, double theta);

}  // namespace mimecloak
