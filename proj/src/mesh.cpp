#include "mimecloak/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "mimecloak/cdt.hpp"

namespace mimecloak {

namespace {

double splitmix_unit(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  x = x ^ (x >> 31);
  return (double(x >> 11) / 9007199254740992.0) * 2.0 - 1.0;
}

struct PointPool {
  std::vector<Vec2> pts;
  std::vector<char> feature;
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> index;

  static std::pair<std::uint64_t, std::uint64_t> bits(Vec2 p) {
    std::uint64_t a, b;
    std::memcpy(&a, &p.x, 8);
    std::memcpy(&b, &p.y, 8);
    return {a, b};
  }
  int add(Vec2 p, bool is_feature) {
    auto [it, fresh] = index.try_emplace(bits(p), int(pts.size()));
    if (fresh) {
      pts.push_back(p);
      feature.push_back(is_feature ? 1 : 0);
    } else if (is_feature) {
      feature[it->second] = 1;
    }
    return it->second;
  }
};

enum class ChainKind { Straight, StarArc };

struct ChainInfo {
  ChainKind kind = ChainKind::Straight;
  const StarDomain* dom = nullptr;
  // Boundary tag when edges of this chain border the kept mesh.
  bool tagged = false;
  EdgeTag tag = EdgeTag::OuterBox;
  bool closed_hole_candidate = false;  // closed star chain used for classification
};

struct Builder {
  const SceneGeometry& scene;
  const MeshControls& ctl;
  PointPool pool;
  std::vector<std::array<int, 2>> segs;
  std::vector<int> segchain;
  std::vector<ChainInfo> chains;
  std::unordered_map<int, double> theta;  // vertex -> angle about its star chain vantage

  Builder(const SceneGeometry& s, const MeshControls& c) : scene(s), ctl(c) {}

  int new_chain(ChainInfo info) {
    chains.push_back(info);
    return int(chains.size()) - 1;
  }

  void add_seg(int chain, int a, int b) {
    if (a == b) return;
    segs.push_back({a, b});
    segchain.push_back(chain);
  }

  // Straight chain from p0 to p1 sampled at step <= h; endpoints are features.
  void straight_chain(int chain, Vec2 p0, Vec2 p1, double h) {
    double len = (p1 - p0).norm();
    int n = std::max(1, int(std::ceil(len / h)));
    int prev = pool.add(p0, true);
    for (int k = 1; k <= n; ++k) {
      double f = double(k) / n;
      Vec2 p = p0 + f * (p1 - p0);
      if (k < n) {
        double j = splitmix_unit((std::uint64_t(chain) << 32) + k) * 1e-9;
        p = p + (j / std::max(1.0, len)) * (p1 - p0);
      }
      int cur = pool.add(p, k == n);
      add_seg(chain, prev, cur);
      prev = cur;
    }
  }

  // Arc of a star-domain boundary between angles (inclusive); junction
  // endpoints are features. Interior samples carry a deterministic angular
  // jitter and are registered with their curve parameter for later splits.
  void star_arc(int chain, const StarDomain& dom, double lo, double hi, double h) {
    double span = hi - lo;
    double r_mid = dom.radius(0.5 * (lo + hi));
    int n = std::max(1, int(std::ceil(span * r_mid / h)));
    int prev = register_star_vertex(chain, dom, lo, true);
    for (int k = 1; k <= n; ++k) {
      double th = lo + span * k / n;
      if (k < n) th += splitmix_unit((std::uint64_t(chain) << 32) + k) * 1e-7 * span / n;
      int cur = register_star_vertex(chain, dom, th, k == n);
      add_seg(chain, prev, cur);
      prev = cur;
    }
  }

  int register_star_vertex(int chain, const StarDomain& dom, double th, bool feature) {
    (void)chain;
    Vec2 p = dom.boundary_point(th);
    int id = pool.add(p, feature);
    theta.emplace(id, th);
    return id;
  }
};

// Chordal polygon of one closed star chain, for point classification that is
// consistent with the mesh edges.
struct ChordPoly {
  Vec2 vantage;
  std::vector<double> angles;  // sorted
  std::vector<Vec2> points;    // vantage-relative, matching angles

  double radius_at(double th) const {
    if (angles.empty()) return 0.0;
    double t = std::fmod(th, kTwoPi);
    if (t < 0) t += kTwoPi;
    auto it = std::upper_bound(angles.begin(), angles.end(), t);
    std::size_t hi = it - angles.begin();
    std::size_t lo = (hi == 0) ? angles.size() - 1 : hi - 1;
    if (hi == angles.size()) hi = 0;
    Vec2 p = points[lo], q = points[hi];
    Vec2 d{std::cos(t), std::sin(t)};
    // From r*d = P + s(Q-P): crossing both sides with (Q-P) gives
    // r = cross(P, Q-P) / cross(d, Q-P).
    double denom = d.cross(q - p);
    if (std::abs(denom) < 1e-30) return p.norm();
    return p.cross(q - p) / denom;
  }
  bool contains(Vec2 p) const {
    Vec2 rel = p - vantage;
    double r = rel.norm();
    if (r == 0.0) return true;
    return r < radius_at(rel.angle());
  }
};

ChordPoly build_chord_poly(const std::vector<Vec2>& pts, const std::vector<std::array<int, 2>>& subsegs,
                           const std::vector<int>& subchain, int chain, Vec2 vantage) {
  std::vector<std::pair<double, Vec2>> entries;
  std::vector<char> seen(pts.size(), 0);
  for (std::size_t s = 0; s < subsegs.size(); ++s) {
    if (subchain[s] != chain) continue;
    for (int v : subsegs[s]) {
      if (v < int(seen.size()) && !seen[v]) {
        seen[v] = 1;
        Vec2 rel = pts[v] - vantage;
        entries.emplace_back(rel.angle(), rel);
      }
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ChordPoly poly;
  poly.vantage = vantage;
  for (auto& [a, p] : entries) {
    poly.angles.push_back(a);
    poly.points.push_back(p);
  }
  return poly;
}

}  // namespace

double Mesh::triangle_area(int t) const {
  const auto& tr = triangles[t];
  Vec2 a = nodes[tr[0]], b = nodes[tr[1]], c = nodes[tr[2]];
  return 0.5 * (b - a).cross(c - a);
}

Vec2 Mesh::centroid(int t) const {
  const auto& tr = triangles[t];
  return (nodes[tr[0]] + nodes[tr[1]] + nodes[tr[2]]) / 3.0;
}

double Mesh::min_angle_deg() const {
  double worst = 180.0;
  for (const auto& tr : triangles) {
    Vec2 a = nodes[tr[0]], b = nodes[tr[1]], c = nodes[tr[2]];
    double la = (c - b).norm(), lb = (a - c).norm(), lc = (b - a).norm();
    double angs[3] = {
        std::acos(std::clamp(((b - a).dot(c - a)) / (lc * lb), -1.0, 1.0)),
        std::acos(std::clamp(((a - b).dot(c - b)) / (lc * la), -1.0, 1.0)),
        std::acos(std::clamp(((a - c).dot(b - c)) / (lb * la), -1.0, 1.0))};
    for (double ang : angs) worst = std::min(worst, ang * 180.0 / kPi);
  }
  return worst;
}

void Mesh::build_locator() const {
  if (!locator_cells_.empty()) return;
  Box bb{1e300, 1e300, -1e300, -1e300};
  for (const Vec2& p : nodes) {
    bb.xlo = std::min(bb.xlo, p.x);
    bb.ylo = std::min(bb.ylo, p.y);
    bb.xhi = std::max(bb.xhi, p.x);
    bb.yhi = std::max(bb.yhi, p.y);
  }
  locator_box_ = bb;
  int n = std::max(1, int(std::sqrt(double(triangles.size() / 2) + 1.0)));
  locator_nx_ = n;
  locator_ny_ = n;
  locator_cells_.assign(std::size_t(n) * n, {});
  auto cell_of = [&](double x, double lo, double hi, int cnt) {
    int c = int((x - lo) / (hi - lo) * cnt);
    return std::clamp(c, 0, cnt - 1);
  };
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tr = triangles[t];
    double xlo = std::min({nodes[tr[0]].x, nodes[tr[1]].x, nodes[tr[2]].x});
    double xhi = std::max({nodes[tr[0]].x, nodes[tr[1]].x, nodes[tr[2]].x});
    double ylo = std::min({nodes[tr[0]].y, nodes[tr[1]].y, nodes[tr[2]].y});
    double yhi = std::max({nodes[tr[0]].y, nodes[tr[1]].y, nodes[tr[2]].y});
    int cx0 = cell_of(xlo, bb.xlo, bb.xhi, n), cx1 = cell_of(xhi, bb.xlo, bb.xhi, n);
    int cy0 = cell_of(ylo, bb.ylo, bb.yhi, n), cy1 = cell_of(yhi, bb.ylo, bb.yhi, n);
    for (int cy = cy0; cy <= cy1; ++cy)
      for (int cx = cx0; cx <= cx1; ++cx)
        locator_cells_[std::size_t(cy) * n + cx].push_back(int(t));
  }
}

int Mesh::locate(Vec2 p, double* bary) const {
  build_locator();
  if (p.x < locator_box_.xlo || p.x > locator_box_.xhi || p.y < locator_box_.ylo ||
      p.y > locator_box_.yhi)
    return -1;
  auto cell_of = [&](double x, double lo, double hi, int cnt) {
    int c = int((x - lo) / (hi - lo) * cnt);
    return std::clamp(c, 0, cnt - 1);
  };
  int cx = cell_of(p.x, locator_box_.xlo, locator_box_.xhi, locator_nx_);
  int cy = cell_of(p.y, locator_box_.ylo, locator_box_.yhi, locator_ny_);
  const double tol = -1e-12;
  for (int t : locator_cells_[std::size_t(cy) * locator_nx_ + cx]) {
    const auto& tr = triangles[t];
    Vec2 a = nodes[tr[0]], b = nodes[tr[1]], c = nodes[tr[2]];
    double area = (b - a).cross(c - a);
    double w0 = (b - p).cross(c - p) / area;
    double w1 = (c - p).cross(a - p) / area;
    double w2 = 1.0 - w0 - w1;
    if (w0 >= tol && w1 >= tol && w2 >= tol) {
      if (bary) {
        bary[0] = w0;
        bary[1] = w1;
        bary[2] = w2;
      }
      return t;
    }
  }
  return -1;
}

Mesh triangulate(const std::shared_ptr<const SceneGeometry>& scene_ptr,
                 const MeshControls& controls) {
  const SceneGeometry& scene = *scene_ptr;
  if (!(scene.box.width() > 0.0) || !(scene.box.height() > 0.0))
    throw Error(ErrorCode::GeometryConflict, "empty scene box");
  if (scene.pml_thickness < 0.0 ||
      2.0 * scene.pml_thickness >= std::min(scene.box.width(), scene.box.height()))
    throw Error(ErrorCode::GeometryConflict, "PML thickness does not fit the box");

  Builder b(scene, controls);
  const Box& box = scene.box;
  const Box in = scene.interior();
  const double h = controls.h;
  const double h_pml = h / std::max(1.0, controls.pml_refine);
  const double h_coat = h / std::max(1.0, controls.coating_refine);
  const bool pml = scene.pml_thickness > 0.0;

  // Outer rectangle. The bottom edge splits where PML interface verticals
  // land on it (mirror case).
  int chain_outer = b.new_chain({ChainKind::Straight, nullptr, true, EdgeTag::OuterBox, false});
  int chain_mirror = b.new_chain({ChainKind::Straight, nullptr, true, EdgeTag::Mirror, false});
  double hb = pml ? h_pml : h;
  b.straight_chain(chain_outer, {box.xlo, box.ylo}, {box.xlo, box.yhi}, hb);
  b.straight_chain(chain_outer, {box.xlo, box.yhi}, {box.xhi, box.yhi}, hb);
  b.straight_chain(chain_outer, {box.xhi, box.yhi}, {box.xhi, box.ylo}, hb);
  int chain_bottom = scene.mirror_bottom ? chain_mirror : chain_outer;
  if (scene.mirror_bottom && pml) {
    b.straight_chain(chain_bottom, {box.xlo, box.ylo}, {in.xlo, box.ylo}, hb);
    b.straight_chain(chain_bottom, {in.xlo, box.ylo}, {in.xhi, box.ylo}, h);
    b.straight_chain(chain_bottom, {in.xhi, box.ylo}, {box.xhi, box.ylo}, hb);
  } else {
    b.straight_chain(chain_bottom, {box.xlo, box.ylo}, {box.xhi, box.ylo}, hb);
  }

  // PML interface ring (open at the bottom when a mirror is present).
  if (pml) {
    int chain_ifc = b.new_chain({ChainKind::Straight, nullptr, false, EdgeTag::OuterBox, false});
    if (scene.mirror_bottom) {
      b.straight_chain(chain_ifc, {in.xlo, box.ylo}, {in.xlo, in.yhi}, h_pml);
      b.straight_chain(chain_ifc, {in.xlo, in.yhi}, {in.xhi, in.yhi}, h_pml);
      b.straight_chain(chain_ifc, {in.xhi, in.yhi}, {in.xhi, box.ylo}, h_pml);
    } else {
      b.straight_chain(chain_ifc, {in.xlo, in.ylo}, {in.xlo, in.yhi}, h_pml);
      b.straight_chain(chain_ifc, {in.xlo, in.yhi}, {in.xhi, in.yhi}, h_pml);
      b.straight_chain(chain_ifc, {in.xhi, in.yhi}, {in.xhi, in.ylo}, h_pml);
      b.straight_chain(chain_ifc, {in.xhi, in.ylo}, {in.xlo, in.ylo}, h_pml);
    }
  }

  // Cloak boundaries and sector rays.
  int chain_d1 = -1, chain_d2 = -1;
  if (scene.cloak) {
    const CloakSpec& spec = *scene.cloak;
    bool hole = scene.inner == InnerTreatment::NeumannHole;
    chain_d1 = b.new_chain({ChainKind::StarArc, &spec.d1(), true,
                            hole ? EdgeTag::ObstacleNeumann : EdgeTag::InnerContinuity, true});
    chain_d2 = b.new_chain({ChainKind::StarArc, &spec.d2(), false, EdgeTag::OuterBox, true});
    int chain_ray = b.new_chain({ChainKind::Straight, nullptr, false, EdgeTag::OuterBox, false});
    for (const Sector& s : spec.sectors()) {
      b.star_arc(chain_d1, spec.d1(), s.lo, s.hi, h_coat);
      b.star_arc(chain_d2, spec.d2(), s.lo, s.hi, h_coat);
      Vec2 p1 = spec.d1().boundary_point(s.lo);
      Vec2 p2 = spec.d2().boundary_point(s.lo);
      b.straight_chain(chain_ray, p1, p2, h_coat);
    }
  }

  // Obstacles (benchmark scatterers, clutter).
  std::vector<int> obstacle_chains;
  for (const StarDomain& obs : scene.obstacles) {
    int c = b.new_chain({ChainKind::StarArc, &obs, true, EdgeTag::ObstacleNeumann, true});
    obstacle_chains.push_back(c);
    auto junctions = obs.junction_angles();
    if (junctions.empty()) junctions.push_back(0.0);
    for (std::size_t k = 0; k < junctions.size(); ++k) {
      double lo = junctions[k];
      double hi = (k + 1 < junctions.size()) ? junctions[k + 1] : junctions.front() + kTwoPi;
      b.star_arc(c, obs, lo, hi, h);
    }
  }

  for (Vec2 p : scene.snap_points) b.pool.add(p, false);

  // Assemble the kernel input. Classification callbacks see the *initial*
  // chord polygons, which is fine for sizing; final tags use refined ones.
  CdtInput input;
  input.points = b.pool.pts;
  input.segments = b.segs;
  input.segment_chain = b.segchain;
  input.is_feature = b.pool.feature;
  input.keep_box = box;
  input.min_angle_deg = controls.min_angle_deg;
  input.max_vertices = controls.max_vertices;

  std::vector<ChordPoly> obstacle_polys;
  for (int c : obstacle_chains)
    obstacle_polys.push_back(build_chord_poly(input.points, input.segments, input.segment_chain,
                                              c, b.chains[c].dom->vantage()));
  ChordPoly d1_poly, d2_poly;
  if (scene.cloak) {
    d1_poly = build_chord_poly(input.points, input.segments, input.segment_chain, chain_d1,
                               scene.cloak->vantage());
    d2_poly = build_chord_poly(input.points, input.segments, input.segment_chain, chain_d2,
                               scene.cloak->vantage());
  }

  auto region_of = [&](Vec2 p) -> RegionTag {
    for (const ChordPoly& poly : obstacle_polys)
      if (poly.contains(p)) return RegionTag::Hole;
    if (scene.cloak) {
      if (d1_poly.contains(p))
        return scene.inner == InnerTreatment::NeumannHole ? RegionTag::Hole : RegionTag::Vacuum;
      if (d2_poly.contains(p)) return RegionTag::Coating;
    }
    if (scene.in_pml(p)) return RegionTag::Pml;
    return RegionTag::Vacuum;
  };

  input.h_at = [&](Vec2 p) -> double {
    switch (region_of(p)) {
      case RegionTag::Hole: return -1.0;
      case RegionTag::Coating: return h_coat;
      case RegionTag::Pml: return h_pml;
      default: return h;
    }
  };

  // `theta` grows as curve segments split; capture by reference.
  auto& theta = b.theta;
  auto& chains = b.chains;
  input.split_point = [&chains, &theta](int chain, int a, int b2, Vec2 pa, Vec2 pb, double frac,
                                        int new_id) -> Vec2 {
    const ChainInfo& ci = chains[chain];
    if (ci.kind == ChainKind::Straight || ci.dom == nullptr) return pa + frac * (pb - pa);
    auto ita = theta.find(a), itb = theta.find(b2);
    if (ita == theta.end() || itb == theta.end()) return pa + frac * (pb - pa);
    double ta = ita->second, tb = itb->second;
    double d = tb - ta;
    if (d > kPi) d -= kTwoPi;
    if (d < -kPi) d += kTwoPi;
    double th = ta + frac * d;
    theta.emplace(new_id, th);
    return ci.dom->boundary_point(th);
  };

  CdtResult res = refine_cdt(input);
  // Kernel-added points are appended after the inputs; `pts` in the closure
  // referenced input.points, so rebuild theta-aware polys from the result.

  // Refined chord polygons for consistent final classification.
  obstacle_polys.clear();
  for (std::size_t i = 0; i < obstacle_chains.size(); ++i)
    obstacle_polys.push_back(build_chord_poly(res.points, res.subsegments, res.subsegment_chain,
                                              obstacle_chains[i],
                                              b.chains[obstacle_chains[i]].dom->vantage()));
  if (scene.cloak) {
    d1_poly = build_chord_poly(res.points, res.subsegments, res.subsegment_chain, chain_d1,
                               scene.cloak->vantage());
    d2_poly = build_chord_poly(res.points, res.subsegments, res.subsegment_chain, chain_d2,
                               scene.cloak->vantage());
  }

  Mesh mesh;
  mesh.scene = scene_ptr;
  mesh.controls = controls;
  mesh.refinement_stalled = res.stalled;

  std::vector<int> remap(res.points.size(), -1);
  auto keep_node = [&](int v) {
    if (remap[v] == -1) {
      remap[v] = int(mesh.nodes.size());
      mesh.nodes.push_back(res.points[v]);
    }
    return remap[v];
  };

  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tr : res.triangles) {
    Vec2 cen = (res.points[tr[0]] + res.points[tr[1]] + res.points[tr[2]]) / 3.0;
    RegionTag tag = region_of(cen);
    if (tag == RegionTag::Hole) continue;
    std::array<int, 3> mapped{keep_node(tr[0]), keep_node(tr[1]), keep_node(tr[2])};
    mesh.triangles.push_back(mapped);
    mesh.region.push_back(tag);
    int sec = -1;
    if (tag == RegionTag::Coating && scene.cloak)
      sec = scene.cloak->sector_of(cen);
    mesh.sector.push_back(sec);
    for (int e = 0; e < 3; ++e) {
      int u = tr[e], v = tr[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      edge_count[{u, v}]++;
    }
  }

  for (std::size_t s = 0; s < res.subsegments.size(); ++s) {
    int chain = res.subsegment_chain[s];
    const ChainInfo& ci = b.chains[chain];
    if (!ci.tagged) continue;
    int u = res.subsegments[s][0], v = res.subsegments[s][1];
    int cu = u, cv = v;
    if (cu > cv) std::swap(cu, cv);
    auto it = edge_count.find({cu, cv});
    if (it == edge_count.end()) continue;  // entirely inside a dropped region
    int count = it->second;
    if (ci.tag == EdgeTag::InnerContinuity) {
      if (count == 2 && remap[u] >= 0 && remap[v] >= 0)
        mesh.boundary_edges.push_back({{remap[u], remap[v], 0}, EdgeTag::InnerContinuity});
      continue;
    }
    if (count == 1 && remap[u] >= 0 && remap[v] >= 0)
      mesh.boundary_edges.push_back({{remap[u], remap[v], 0}, ci.tag});
  }

  // Conformity check: every mesh edge belongs to at most two triangles and
  // every single-count edge lies on a tagged chain.
  std::size_t boundary_seen = 0;
  for (const auto& [edge, count] : edge_count) {
    (void)edge;
    if (count > 2) throw Error(ErrorCode::GeometryConflict, "non-manifold mesh edge");
    if (count == 1) ++boundary_seen;
  }
  std::size_t tagged_single = 0;
  for (const auto& be : mesh.boundary_edges)
    if (be.tag != EdgeTag::InnerContinuity) ++tagged_single;
  if (tagged_single != boundary_seen)
    throw Error(ErrorCode::GeometryConflict,
                "mesh boundary does not match the constraint chains (" +
                    std::to_string(tagged_single) + " tagged vs " +
                    std::to_string(boundary_seen) + " actual)");

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    if (mesh.triangle_area(int(t)) <= 0.0)
      throw Error(ErrorCode::GeometryConflict, "non-positive triangle area");

  return mesh;
}

Mesh refine(const Mesh& mesh, double factor) {
  if (!(factor > 1.0)) throw Error(ErrorCode::InvalidArgument, "refine factor must be > 1");
  MeshControls c = mesh.controls;
  c.h /= factor;
  return triangulate(mesh.scene, c);
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << "mimecloak-mesh 1\n";
  out << "nodes " << mesh.nodes.size() << "\n";
  out.precision(17);
  for (const Vec2& p : mesh.nodes) out << p.x << " " << p.y << "\n";
  out << "triangles " << mesh.triangles.size() << "\n";
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tr = mesh.triangles[t];
    out << tr[0] << " " << tr[1] << " " << tr[2] << " " << int(mesh.region[t]) << " "
        << mesh.sector[t] << "\n";
  }
  out << "boundary_edges " << mesh.boundary_edges.size() << "\n";
  for (const auto& be : mesh.boundary_edges)
    out << be.nodes[0] << " " << be.nodes[1] << " " << int(be.tag) << "\n";
}

Mesh read_mesh_text(std::istream& in, const std::shared_ptr<const SceneGeometry>& scene) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "mimecloak-mesh" || version != 1)
    throw Error(ErrorCode::IoError, "not a mimecloak mesh file");
  std::string kw;
  std::size_t n = 0;
  in >> kw >> n;
  if (kw != "nodes") throw Error(ErrorCode::IoError, "expected node table");
  Mesh mesh;
  mesh.scene = scene;
  mesh.nodes.resize(n);
  for (auto& p : mesh.nodes) in >> p.x >> p.y;
  in >> kw >> n;
  if (kw != "triangles") throw Error(ErrorCode::IoError, "expected triangle table");
  mesh.triangles.resize(n);
  mesh.region.resize(n);
  mesh.sector.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    int r = 0;
    in >> mesh.triangles[t][0] >> mesh.triangles[t][1] >> mesh.triangles[t][2] >> r >>
        mesh.sector[t];
    mesh.region[t] = RegionTag(r);
  }
  in >> kw >> n;
  if (kw != "boundary_edges") throw Error(ErrorCode::IoError, "expected boundary edge table");
  mesh.boundary_edges.resize(n);
  for (auto& be : mesh.boundary_edges) {
    int tag = 0;
    in >> be.nodes[0] >> be.nodes[1] >> tag;
    be.nodes[2] = 0;
    be.tag = EdgeTag(tag);
  }
  if (!in) throw Error(ErrorCode::IoError, "truncated mesh file");
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
    if (mesh.triangle_area(int(t)) <= 0.0)
      throw Error(ErrorCode::IoError, "imported mesh has non-positive triangle areas");
  return mesh;
}

}  // namespace mimecloak
