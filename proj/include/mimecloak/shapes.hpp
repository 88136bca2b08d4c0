#pragma once

#include <vector>

#include "mimecloak/geometry.hpp"

namespace mimecloak {
namespace shapes {

// Circle of radius r centered at the vantage point.
StarDomain circle(Vec2 vantage, double r);

// Axis-aligned ellipse with semi-axes (rx, ry), optionally rotated.
StarDomain ellipse(Vec2 vantage, double rx, double ry, double rotation = 0.0);

// Simple polygon from vertices in counter-clockwise order, star-shaped about
// the vantage point. Sides crossing the angular wrap are split internally.
StarDomain polygon(Vec2 vantage, const std::vector<Vec2>& vertices);

// Square with sides at distance half_side from the vantage, optionally rotated.
StarDomain square(Vec2 vantage, double half_side, double rotation = 0.0);

// Equilateral triangle with given circumradius; `rotation` = 0 puts one
// vertex at angle pi/2.
StarDomain equilateral_triangle(Vec2 vantage, double circumradius, double rotation = 0.0);

// Hexagram (two overlapped equilateral triangles of side `triangle_side`, one
// rotated by pi, common centroid at the vantage).
StarDomain hexagram(Vec2 vantage, double triangle_side, double rotation = 0.0);

// Union outline of one ellipse (rx > ry) replicated at the given rotations
// (petal shapes: a cross for {0, pi/2}, an eight-petal flower for
// {0, pi/4, pi/2, 3pi/4}).
StarDomain ellipse_union(Vec2 vantage, double rx, double ry, const std::vector<double>& rotations);

// Parallelogram |a1*x - y| <= b1 (or vertical |x| <= c) intersected with a
// second strip, given by its four corner points; thin wrapper over polygon().
StarDomain parallelogram(Vec2 vantage, Vec2 corner0, Vec2 corner1, Vec2 corner2, Vec2 corner3);

}  // namespace shapes
}  // namespace mimecloak
