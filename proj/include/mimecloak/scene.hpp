#pragma once

#include <optional>
#include <vector>

#include "mimecloak/cloakmap.hpp"
#include "mimecloak/core.hpp"
#include "mimecloak/geometry.hpp"

namespace mimecloak {

struct Box {
  double xlo = 0.0, ylo = 0.0, xhi = 0.0, yhi = 0.0;

  double width() const { return xhi - xlo; }
  double height() const { return yhi - ylo; }
  bool contains(Vec2 p) const { return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi; }
};

// How the inner cloak boundary dD1 is treated.
enum class InnerTreatment {
  NeumannHole,  // obstacle wall: interior of D1 is not meshed
  Continuity,   // interior meshed and coupled (trapped states, clutter runs)
};

// Full geometric description of one computational scene. The box is the outer
// rectangle including the PML frame; with a mirror the bottom edge is a
// Neumann wall and carries no PML strip.
struct SceneGeometry {
  Box box;
  double pml_thickness = 0.0;  // 0 disables the PML (closed-cavity runs)
  bool mirror_bottom = false;
  std::optional<CloakSpec> cloak;
  InnerTreatment inner = InnerTreatment::NeumannHole;
  std::vector<StarDomain> obstacles;  // Neumann holes (benchmark obstacle, clutter)
  std::vector<Vec2> snap_points;      // locations forced to coincide with mesh nodes

  // Interior (non-PML) sub-box.
  Box interior() const {
    double d = pml_thickness;
    return {box.xlo + d, mirror_bottom ? box.ylo : box.ylo + d, box.xhi - d, box.yhi - d};
  }
  bool in_pml(Vec2 p) const {
    if (pml_thickness <= 0.0) return false;
    Box in = interior();
    return p.x < in.xlo || p.x > in.xhi || p.y > in.yhi || (!mirror_bottom && p.y < in.ylo);
  }
};

}  // namespace mimecloak
