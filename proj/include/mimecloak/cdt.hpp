#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "mimecloak/core.hpp"
#include "mimecloak/scene.hpp"

namespace mimecloak {

// Input to the constrained Delaunay refinement kernel. Segments reference the
// point list; `split_point` maps a subsegment split back onto its generating
// curve (fraction measured from endpoint a).
struct CdtInput {
  std::vector<Vec2> points;
  std::vector<std::array<int, 2>> segments;
  std::vector<int> segment_chain;  // chain id per segment, parallel array
  std::vector<char> is_feature;    // per point: chain junctions and corners
  // Split of subsegment (a, b) at `frac` from a. Endpoint coordinates are
  // passed because b may be a kernel-created vertex; the kernel announces the
  // id the new vertex will receive so the caller can track curve parameters.
  std::function<Vec2(int chain, int a, int b, Vec2 pa, Vec2 pb, double frac, int new_id)>
      split_point;
  // Target edge length at a point; <= 0 skips the region (holes, exterior).
  std::function<double(Vec2)> h_at;
  Box keep_box;
  double min_angle_deg = 20.0;
  std::size_t max_vertices = 2'000'000;
};

struct CdtResult {
  std::vector<Vec2> points;
  std::vector<std::array<int, 3>> triangles;  // CCW, interior of keep_box only
  std::vector<std::array<int, 2>> subsegments;
  std::vector<int> subsegment_chain;
  bool stalled = false;
};

CdtResult refine_cdt(const CdtInput& input);

}  // namespace mimecloak
