#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mimecloak/core.hpp"
#include "mimecloak/scene.hpp"

namespace mimecloak {

enum class RegionTag : std::uint8_t { Vacuum, Coating, Hole, Pml };
enum class EdgeTag : std::uint8_t { ObstacleNeumann, Mirror, OuterBox, InnerContinuity };

struct TaggedEdge {
  std::array<int, 3> nodes;  // a, b and unused pad for alignment clarity
  EdgeTag tag;
};

struct MeshControls {
  double h = 0.1;                  // target edge length in vacuum
  double coating_refine = 2.0;     // vacuum h divided by this inside the coating
  double pml_refine = 2.0;         // and inside the PML
  double min_angle_deg = 20.0;
  std::size_t max_vertices = 2'000'000;
};

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<RegionTag> region;              // per triangle
  std::vector<int> sector;                    // per triangle; -1 unless Coating
  std::vector<TaggedEdge> boundary_edges;

  std::shared_ptr<const SceneGeometry> scene;
  MeshControls controls;
  bool refinement_stalled = false;

  double triangle_area(int t) const;
  Vec2 centroid(int t) const;
  double min_angle_deg() const;

  // Point location with barycentric output; returns -1 if p is outside.
  int locate(Vec2 p, double* bary) const;
  void build_locator() const;

 private:
  mutable std::vector<std::vector<int>> locator_cells_;
  mutable int locator_nx_ = 0, locator_ny_ = 0;
  mutable Box locator_box_;
};

// Delaunay-refined conforming triangulation of the scene. Curved boundaries
// are replaced by chords sampled at the local target length; sector rays and
// PML interfaces are constrained edges. Throws GeometryConflict for crossing
// constraints; a quality stall sets `refinement_stalled` instead of failing.
Mesh triangulate(const std::shared_ptr<const SceneGeometry>& scene, const MeshControls& controls);

// Regenerates the mesh with h / factor. factor must be > 1.
Mesh refine(const Mesh& mesh, double factor);

// Whitespace-delimited text format: node/triangle/tag tables.
void write_mesh_text(const Mesh& mesh, std::ostream& out);
Mesh read_mesh_text(std::istream& in, const std::shared_ptr<const SceneGeometry>& scene);

}  // namespace mimecloak
