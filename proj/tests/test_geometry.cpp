#include "doctest.h"

#include <cmath>
#include <random>

#include "mimecloak/geometry.hpp"
#include "mimecloak/shapes.hpp"

using namespace mimecloak;

namespace {

// Central finite differences of ray_intersect, the independence oracle for the
// analytic derivative formulas.
Mat2 fd_derivatives(const StarDomain& d, Vec2 q, double step = 1e-6) {
  Vec2 xp = ray_intersect(d, {q.x + step, q.y});
  Vec2 xm = ray_intersect(d, {q.x - step, q.y});
  Vec2 yp = ray_intersect(d, {q.x, q.y + step});
  Vec2 ym = ray_intersect(d, {q.x, q.y - step});
  return {(xp.x - xm.x) / (2 * step), (yp.x - ym.x) / (2 * step),
          (xp.y - xm.y) / (2 * step), (yp.y - ym.y) / (2 * step)};
}

double max_abs(const Mat2& m) {
  return std::max(std::max(std::abs(m.m00), std::abs(m.m01)),
                  std::max(std::abs(m.m10), std::abs(m.m11)));
}

// Upper-right boundary made of y = x + 0.2 and y = -x + 0.2, closed below by
// a circular arc through their outer endpoints.
StarDomain wedge_domain(double arc_radius) {
  std::vector<BoundaryPiece> pieces;
  pieces.push_back({LinePiece{-1.0, 0.2}, 0.0, kPi / 2});
  pieces.push_back({LinePiece{1.0, 0.2}, kPi / 2, kPi});
  pieces.push_back({EllipsePiece{arc_radius, arc_radius, 0.0}, kPi, kTwoPi});
  return StarDomain({0.0, 0.0}, std::move(pieces));
}

}  // namespace

TEST_CASE("ray_intersect on a horizontal line piece") {
  // Line y = 0.2, vantage origin, query (0.1, 0.3): expected (1/15, 0.2).
  auto d = shapes::square({0, 0}, 0.2);
  Vec2 p = ray_intersect(d, {0.1, 0.3});
  CHECK(p.x == doctest::Approx(0.0666667).epsilon(1e-5));
  CHECK(p.y == doctest::Approx(0.2).epsilon(1e-12));
  // Oracle: the output lies on y = 0.2 and on the ray through the query.
  CHECK(std::abs(p.cross({0.1, 0.3})) < 1e-14);
}

TEST_CASE("ray_intersect on an axis-aligned ellipse") {
  auto d = shapes::ellipse({0, 0}, 0.7, 0.2);
  Vec2 p = ray_intersect(d, {0.5, 0.1});
  CHECK(p.x == doctest::Approx(0.573462).epsilon(1e-5));
  CHECK(p.y == doctest::Approx(0.114692).epsilon(1e-5));
  // Oracle: membership in the ellipse to 1e-12.
  CHECK(std::abs(p.x * p.x / 0.49 + p.y * p.y / 0.04 - 1.0) < 1e-12);
}

TEST_CASE("circle point projects to itself") {
  auto d = shapes::circle({0, 0}, 0.43);
  Vec2 on = {0.43 * std::cos(1.1), 0.43 * std::sin(1.1)};
  Vec2 p = ray_intersect(d, on);
  CHECK((p - on).norm() < 1e-15);
}

TEST_CASE("vertical line piece uses the closed form") {
  auto d = shapes::square({0, 0}, 0.2);  // right side is x = 0.2
  Vec2 p = ray_intersect(d, {0.3, 0.06});
  CHECK(p.x == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(0.2 * 0.06 / 0.3).epsilon(1e-12));
}

TEST_CASE("query at the vantage point is rejected") {
  auto d = shapes::circle({0.5, -0.25}, 1.0);
  CHECK_THROWS_AS(ray_intersect(d, {0.5, -0.25}), Error);
}

TEST_CASE("line derivative block matches the worked example") {
  // The square's top side is the line y = 0.2; the query angle falls on it.
  auto d = shapes::square({0, 0}, 0.2);
  Mat2 j = ray_intersect_derivatives(d, {0.1, 0.3});
  CHECK(j.m00 == doctest::Approx(0.666667).epsilon(1e-6));
  CHECK(j.m01 == doctest::Approx(-0.222222).epsilon(1e-6));
  CHECK(j.m10 == doctest::Approx(0.0));
  CHECK(j.m11 == doctest::Approx(0.0));
  Mat2 fd = fd_derivatives(d, {0.1, 0.3});
  CHECK(max_abs(j - fd) < 1e-6 * std::max(1.0, max_abs(j)));
}

TEST_CASE("analytic derivatives match finite differences on random pieces") {
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  for (int trial = 0; trial < 200; ++trial) {
    double kind = uni(rng);
    Vec2 vantage{uni(rng) - 0.5, uni(rng) - 0.5};
    StarDomain d = [&]() -> StarDomain {
      if (kind < 0.35) {
        double half = 0.3 + 0.5 * uni(rng);
        double rot = uni(rng) * kPi;
        return shapes::square(vantage, half, rot);
      }
      if (kind < 0.7) {
        double rx = 0.5 + 0.6 * uni(rng);
        double ry = 0.15 + 0.3 * uni(rng);
        double rot = uni(rng) * kPi;
        return shapes::ellipse(vantage, rx, ry, rot);
      }
      return shapes::hexagram(vantage, 0.9 + 0.6 * uni(rng), uni(rng));
    }();

    // Keep the query away from piece junctions so the finite-difference
    // stencil stays within a single smooth piece.
    double theta = uni(rng) * kTwoPi;
    bool near_junction = false;
    for (double a : d.junction_angles())
      if (std::abs(std::remainder(theta - a, kTwoPi)) < 1e-3) near_junction = true;
    if (near_junction) continue;

    double r = d.radius(theta) * (0.4 + 0.5 * uni(rng));
    Vec2 q = vantage + Vec2{r * std::cos(theta), r * std::sin(theta)};

    Vec2 hit = ray_intersect(d, q);
    // Collinearity property.
    Vec2 a = hit - vantage, b = q - vantage;
    CHECK(std::abs(a.cross(b)) < 1e-10 * a.norm() * b.norm());
    // Scale invariance along the ray.
    Vec2 hit2 = ray_intersect(d, vantage + 2.7 * b);
    CHECK((hit2 - hit).norm() < 1e-12 * std::max(1.0, hit.norm()));

    Mat2 j = ray_intersect_derivatives(d, q);
    Mat2 fd = fd_derivatives(d, q);
    CHECK(max_abs(j - fd) < 1e-6 * std::max(1.0, max_abs(j)));
  }
}

TEST_CASE("radial perturbation of a circle point has vanishing derivative") {
  auto d = shapes::circle({0, 0}, 0.7);
  Vec2 q{0.7 * std::cos(0.4), 0.7 * std::sin(0.4)};
  Mat2 j = ray_intersect_derivatives(d, q);
  // Projection is homogeneous of degree 0: J * q = 0.
  Vec2 radial = j * q;
  CHECK(radial.norm() < 1e-12);
}

TEST_CASE("rotated ellipse derivatives are the conjugated axis-aligned ones") {
  double rot = 0.37;
  auto plain = shapes::ellipse({0, 0}, 0.7, 0.2);
  auto turned = shapes::ellipse({0, 0}, 0.7, 0.2, rot);
  Vec2 q{0.31, 0.12};
  Mat2 jt = ray_intersect_derivatives(turned, q);
  Mat2 r = Mat2::rotation(rot);
  Mat2 jp = ray_intersect_derivatives(plain, r.transposed() * q);
  Mat2 expected = r * jp * r.transposed();
  CHECK(max_abs(jt - expected) < 1e-12);
  // And the intersection stays on the rotated ellipse.
  Vec2 hit = ray_intersect(turned, q);
  Vec2 in_frame = r.transposed() * hit;
  CHECK(std::abs(in_frame.x * in_frame.x / 0.49 + in_frame.y * in_frame.y / 0.04 - 1.0) < 1e-12);
}

TEST_CASE("sectorize: squaring the circle gives the four diagonal sectors") {
  auto d0 = shapes::square({0, 0}, 0.2);
  auto d1 = shapes::circle({0, 0}, 0.2);
  auto d2 = shapes::circle({0, 0}, 0.4);
  auto sectors = sectorize(d0, d1, d2);
  REQUIRE(sectors.size() == 4);
  CHECK(sectors[0].lo == doctest::Approx(kPi / 4));
  CHECK(sectors[1].lo == doctest::Approx(3 * kPi / 4));
  CHECK(sectors[2].lo == doctest::Approx(5 * kPi / 4));
  CHECK(sectors[3].lo == doctest::Approx(7 * kPi / 4));
  CHECK(sectors[3].hi == doctest::Approx(kPi / 4 + kTwoPi));
}

TEST_CASE("sectorize: three concentric circles give one sector") {
  auto s = sectorize(shapes::circle({0, 0}, 0.1), shapes::circle({0, 0}, 0.2),
                     shapes::circle({0, 0}, 0.3));
  REQUIRE(s.size() == 1);
  CHECK(s[0].lo == 0.0);
  CHECK(s[0].hi == doctest::Approx(kTwoPi));
}

TEST_CASE("sectorize: triangle inside circles breaks at the vertices") {
  auto d0 = shapes::equilateral_triangle({0, 0}, 0.15);
  auto s = sectorize(d0, shapes::circle({0, 0}, 0.2), shapes::circle({0, 0}, 0.4));
  REQUIRE(s.size() == 3);
  CHECK(s[0].lo == doctest::Approx(kPi / 2));
  CHECK(s[1].lo == doctest::Approx(kPi / 2 + 2 * kPi / 3));
  CHECK(s[2].lo == doctest::Approx(kPi / 2 + 4 * kPi / 3));
}

TEST_CASE("sector partition covers the circle without gaps") {
  auto d1 = shapes::ellipse_union({0, 0}, 0.7, 0.2, {0.0, kPi / 4, kPi / 2, 3 * kPi / 4});
  auto d2 = shapes::ellipse_union({0, 0}, 0.9, 0.4, {0.0, kPi / 4, kPi / 2, 3 * kPi / 4});
  auto d0 = shapes::circle({0, 0}, 0.195);
  auto s = sectorize(d0, d1, d2);
  CHECK(s.size() == 8);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].hi > s[i].lo);
    total += s[i].hi - s[i].lo;
    double next_lo = (i + 1 < s.size()) ? s[i + 1].lo : s[0].lo + kTwoPi;
    CHECK(std::abs(s[i].hi - next_lo) < 1e-12);
  }
  CHECK(total == doctest::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("boundary piece angular lookup is half-open") {
  auto d = shapes::square({0, 0}, 0.2);
  // Exactly on the diagonal: the piece starting at pi/4 wins.
  std::size_t i = d.piece_index(kPi / 4);
  const auto& piece = d.pieces()[i];
  CHECK(piece.theta_lo == doctest::Approx(kPi / 4));
}

TEST_CASE("hexagram outline has the expected radii") {
  auto d = shapes::hexagram({0, 0}, 1.2);
  CHECK(d.radius(kPi / 6) == doctest::Approx(1.2 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(d.radius(0.0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(d.radius(kPi / 3) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("adjacent pieces must meet") {
  CHECK_NOTHROW(wedge_domain(0.2));   // arc passes through (+-0.2, 0)
  CHECK_THROWS_AS(wedge_domain(0.15), Error);  // gap at the junctions
}

TEST_CASE("scaled domain scales radii exactly") {
  auto d = shapes::hexagram({0.1, -0.2}, 1.2);
  auto s = d.scaled(1.4);
  for (double theta : {0.3, 1.7, 4.4})
    CHECK(s.radius(theta) == doctest::Approx(1.4 * d.radius(theta)).epsilon(1e-12));
}
