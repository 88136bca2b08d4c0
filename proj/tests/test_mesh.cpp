#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "mimecloak/mesh.hpp"
#include "mimecloak/shapes.hpp"

using namespace mimecloak;

namespace {

std::shared_ptr<SceneGeometry> unit_box_scene() {
  auto s = std::make_shared<SceneGeometry>();
  s->box = {0.0, 0.0, 1.0, 1.0};
  s->pml_thickness = 0.0;
  return s;
}

// Edges shared by exactly one triangle, and Euler characteristic V - E + F.
struct Topology {
  std::size_t boundary_edges = 0;
  long long euler = 0;
};

Topology topology(const Mesh& m) {
  std::map<std::pair<int, int>, int> edges;
  for (const auto& tr : m.triangles)
    for (int e = 0; e < 3; ++e) {
      int u = tr[e], v = tr[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      edges[{u, v}]++;
    }
  Topology t;
  for (auto& [e, c] : edges) {
    (void)e;
    REQUIRE(c <= 2);
    if (c == 1) t.boundary_edges++;
  }
  t.euler = (long long)m.nodes.size() - (long long)edges.size() + (long long)m.triangles.size();
  return t;
}

std::shared_ptr<SceneGeometry> cloak_scene() {
  auto s = std::make_shared<SceneGeometry>();
  s->box = {-0.9, -0.9, 0.9, 0.9};
  s->pml_thickness = 0.15;
  s->cloak = CloakSpec::make(shapes::square({0, 0}, 0.2), shapes::circle({0, 0}, 0.2),
                             shapes::circle({0, 0}, 0.4), CloakMode::Shrink);
  return s;
}

}  // namespace

TEST_CASE("unit square box meshes to spec quality") {
  MeshControls c;
  c.h = 0.1;
  Mesh m = triangulate(unit_box_scene(), c);
  CHECK(!m.refinement_stalled);
  CHECK(m.triangles.size() >= 200);
  CHECK(m.triangles.size() <= 400);
  CHECK(m.min_angle_deg() >= 20.0);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) CHECK(m.triangle_area(int(t)) > 0.0);
  Topology topo = topology(m);
  CHECK(topo.euler == 1);  // disc topology: V - E + F = 1
  CHECK(topo.boundary_edges == m.boundary_edges.size());
}

TEST_CASE("mesh generation is deterministic") {
  MeshControls c;
  c.h = 0.07;
  Mesh a = triangulate(unit_box_scene(), c);
  Mesh b = triangulate(unit_box_scene(), c);
  REQUIRE(a.nodes.size() == b.nodes.size());
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].x == b.nodes[i].x);
    CHECK(a.nodes[i].y == b.nodes[i].y);
  }
  for (std::size_t t = 0; t < a.triangles.size(); ++t) CHECK(a.triangles[t] == b.triangles[t]);
}

TEST_CASE("refine shrinks h and grows the element count") {
  MeshControls c;
  c.h = 0.12;
  Mesh m = triangulate(unit_box_scene(), c);
  Mesh fine = refine(m, 2.0);
  CHECK(fine.nodes.size() > m.nodes.size());
  double ratio = double(fine.triangles.size()) / double(m.triangles.size());
  CHECK(ratio > 2.0);   // ~4x, +-50%
  CHECK(ratio < 6.0);
  CHECK_THROWS_AS(refine(m, 1.0), Error);
}

TEST_CASE("neumann disc scene drops the hole and tags its boundary") {
  auto s = unit_box_scene();
  s->box = {-0.6, -0.6, 0.6, 0.6};
  s->obstacles.push_back(shapes::circle({0, 0}, 0.195));
  MeshControls c;
  c.h = 0.05;
  Mesh m = triangulate(s, c);
  CHECK(!m.refinement_stalled);
  CHECK(m.min_angle_deg() >= 20.0);
  Topology topo = topology(m);
  CHECK(topo.euler == 0);  // one hole

  std::size_t obstacle_edges = 0, outer_edges = 0;
  for (const auto& be : m.boundary_edges) {
    if (be.tag == EdgeTag::ObstacleNeumann) ++obstacle_edges;
    if (be.tag == EdgeTag::OuterBox) ++outer_edges;
  }
  CHECK(obstacle_edges > 10);
  CHECK(outer_edges > 10);
  CHECK(obstacle_edges + outer_edges == topo.boundary_edges);

  // Obstacle boundary nodes sit on the exact circle.
  for (const auto& be : m.boundary_edges) {
    if (be.tag != EdgeTag::ObstacleNeumann) continue;
    for (int k = 0; k < 2; ++k) {
      double r = m.nodes[be.nodes[k]].norm();
      CHECK(std::abs(r - 0.195) < 1e-9);
    }
  }
  // No kept triangle centroid inside the chordal hole.
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    CHECK(m.centroid(int(t)).norm() > 0.15);
}

TEST_CASE("cloak scene: regions, sectors, and interface alignment") {
  auto s = cloak_scene();
  MeshControls c;
  c.h = 0.06;
  Mesh m = triangulate(s, c);
  CHECK(!m.refinement_stalled);
  CHECK(m.min_angle_deg() >= 20.0);

  std::size_t coating = 0, vacuum = 0, pml = 0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    switch (m.region[t]) {
      case RegionTag::Coating: {
        ++coating;
        Vec2 cen = m.centroid(int(t));
        double r = cen.norm();
        CHECK(r > 0.19);
        CHECK(r < 0.41);
        CHECK(m.sector[t] >= 0);
        CHECK(m.sector[t] < 4);
        CHECK(m.sector[t] == s->cloak->sector_of(cen));
        break;
      }
      case RegionTag::Vacuum:
        ++vacuum;
        break;
      case RegionTag::Pml: {
        ++pml;
        Vec2 cen = m.centroid(int(t));
        CHECK(s->in_pml(cen));
        break;
      }
      default:
        break;
    }
  }
  CHECK(coating > 0);
  CHECK(vacuum > 0);
  CHECK(pml > 0);

  // Hole inside D1 (Neumann treatment): no triangle centroid there.
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    CHECK(m.centroid(int(t)).norm() > 0.15);

  // Material discontinuities align with edges: no triangle straddles a sector
  // ray (all three vertices within one closed sector).
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    if (m.region[t] != RegionTag::Coating) continue;
    int sec = m.sector[t];
    const Sector& sector = s->cloak->sectors()[sec];
    for (int k = 0; k < 3; ++k) {
      Vec2 p = m.nodes[m.triangles[t][k]];
      double ang = p.angle();
      double lo = sector.lo - 1e-9, hi = sector.hi + 1e-9;
      bool in = (ang >= lo && ang <= hi) || (ang + kTwoPi >= lo && ang + kTwoPi <= hi);
      CHECK(in);
    }
  }
}

TEST_CASE("continuity treatment meshes the interior and tags the interface") {
  auto s = cloak_scene();
  s->inner = InnerTreatment::Continuity;
  MeshControls c;
  c.h = 0.08;
  Mesh m = triangulate(s, c);
  bool interior_present = false;
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    if (m.centroid(int(t)).norm() < 0.15) {
      interior_present = true;
      CHECK(m.region[t] == RegionTag::Vacuum);
    }
  CHECK(interior_present);
  std::size_t continuity_edges = 0;
  for (const auto& be : m.boundary_edges)
    if (be.tag == EdgeTag::InnerContinuity) {
      ++continuity_edges;
      for (int k = 0; k < 2; ++k)
        CHECK(std::abs(m.nodes[be.nodes[k]].norm() - 0.2) < 1e-9);
    }
  CHECK(continuity_edges > 10);
  Topology topo = topology(m);
  CHECK(topo.euler == 1);  // no hole
}

TEST_CASE("constrained diagonal keeps triangles on one side") {
  auto s = std::make_shared<SceneGeometry>();
  s->box = {-1.0, -1.0, 1.0, 1.0};
  s->cloak = CloakSpec::make(shapes::square({0, 0}, 0.1), shapes::square({0, 0}, 0.3),
                             shapes::square({0, 0}, 0.6), CloakMode::Shrink);
  MeshControls c;
  c.h = 0.09;
  Mesh m = triangulate(s, c);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    if (m.region[t] != RegionTag::Coating) continue;
    int pos = 0, neg = 0;
    for (int k = 0; k < 3; ++k) {
      Vec2 p = m.nodes[m.triangles[t][k]];
      double sgn = p.y - p.x;
      if (sgn > 1e-9) ++pos;
      if (sgn < -1e-9) ++neg;
    }
    CHECK((pos == 0 || neg == 0));
  }
}

TEST_CASE("mirror scene: bottom edge tagged Mirror, no bottom PML") {
  auto s = unit_box_scene();
  s->box = {-0.8, -0.5, 0.8, 0.8};
  s->pml_thickness = 0.2;
  s->mirror_bottom = true;
  MeshControls c;
  c.h = 0.08;
  Mesh m = triangulate(s, c);
  std::size_t mirror_edges = 0;
  for (const auto& be : m.boundary_edges) {
    if (be.tag == EdgeTag::Mirror) {
      ++mirror_edges;
      CHECK(m.nodes[be.nodes[0]].y == doctest::Approx(-0.5));
      CHECK(m.nodes[be.nodes[1]].y == doctest::Approx(-0.5));
    }
  }
  CHECK(mirror_edges > 5);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    Vec2 cen = m.centroid(int(t));
    if (m.region[t] == RegionTag::Pml)
      CHECK((cen.x < -0.6 || cen.x > 0.6 || cen.y > 0.6));
  }
}

TEST_CASE("snap points become mesh nodes") {
  auto s = unit_box_scene();
  s->snap_points.push_back({0.313, 0.471});
  MeshControls c;
  c.h = 0.1;
  Mesh m = triangulate(s, c);
  bool found = false;
  for (const Vec2& p : m.nodes)
    if (p.x == 0.313 && p.y == 0.471) found = true;
  CHECK(found);
}

TEST_CASE("mesh text round trip") {
  auto s = cloak_scene();
  MeshControls c;
  c.h = 0.12;
  Mesh m = triangulate(s, c);
  std::stringstream buf;
  write_mesh_text(m, buf);
  Mesh back = read_mesh_text(buf, s);
  REQUIRE(back.nodes.size() == m.nodes.size());
  REQUIRE(back.triangles.size() == m.triangles.size());
  REQUIRE(back.boundary_edges.size() == m.boundary_edges.size());
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    CHECK(back.nodes[i].x == m.nodes[i].x);
    CHECK(back.nodes[i].y == m.nodes[i].y);
  }
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    CHECK(back.triangles[t] == m.triangles[t]);
    CHECK(back.region[t] == m.region[t]);
  }
}

TEST_CASE("locate finds containing triangles") {
  MeshControls c;
  c.h = 0.1;
  Mesh m = triangulate(unit_box_scene(), c);
  double bary[3];
  int t = m.locate({0.4, 0.6}, bary);
  REQUIRE(t >= 0);
  Vec2 rec = bary[0] * m.nodes[m.triangles[t][0]] + bary[1] * m.nodes[m.triangles[t][1]] +
             bary[2] * m.nodes[m.triangles[t][2]];
  CHECK((rec - Vec2{0.4, 0.6}).norm() < 1e-12);
  CHECK(m.locate({1.7, 0.0}, bary) == -1);
}
