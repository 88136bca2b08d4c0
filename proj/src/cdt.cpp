#include "mimecloak/cdt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace mimecloak {

namespace {

constexpr int kNone = -1;

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

struct Tri {
  int v[3];
  int adj[3];  // neighbor across the edge opposite v[i], i.e. edge (v[i+1], v[i+2])
  bool alive = true;
};

long double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  long double abx = (long double)b.x - a.x, aby = (long double)b.y - a.y;
  long double acx = (long double)c.x - a.x, acy = (long double)c.y - a.y;
  return abx * acy - aby * acx;
}

// p strictly inside the circumcircle of CCW triangle (a, b, c).
bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  long double adx = (long double)a.x - p.x, ady = (long double)a.y - p.y;
  long double bdx = (long double)b.x - p.x, bdy = (long double)b.y - p.y;
  long double cdx = (long double)c.x - p.x, cdy = (long double)c.y - p.y;
  long double ad = adx * adx + ady * ady;
  long double bd = bdx * bdx + bdy * bdy;
  long double cd = cdx * cdx + cdy * cdy;
  long double det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
                    ad * (bdx * cdy - bdy * cdx);
  return det > 0.0L;
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  long double abx = (long double)b.x - a.x, aby = (long double)b.y - a.y;
  long double acx = (long double)c.x - a.x, acy = (long double)c.y - a.y;
  long double d = 2.0L * (abx * acy - aby * acx);
  long double ab2 = abx * abx + aby * aby;
  long double ac2 = acx * acx + acy * acy;
  long double ux = (acy * ab2 - aby * ac2) / d;
  long double uy = (abx * ac2 - acx * ab2) / d;
  return {a.x + double(ux), a.y + double(uy)};
}

double splitmix_unit(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  x = x ^ (x >> 31);
  return (double(x >> 11) / 9007199254740992.0) * 2.0 - 1.0;  // [-1, 1)
}

class Kernel {
 public:
  explicit Kernel(const CdtInput& in) : in_(in) {
    pts_ = in.points;
    feature_parent_.assign(pts_.size(), kNone);
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (i < in.is_feature.size() && in.is_feature[i]) feature_parent_[i] = int(i);
    make_super_box();
    for (int i = 0; i < int(pts_.size()) - 3; ++i) insert_point(i);
    for (std::size_t s = 0; s < in.segments.size(); ++s)
      add_segment(in.segments[s][0], in.segments[s][1], in.segment_chain[s]);
  }

  CdtResult run() {
    // Phase 1: recover and protect all constraint segments.
    process_segments(nullptr);
    // Phase 2: size and quality refinement with segment protection.
    std::deque<int> work;
    for (std::size_t t = 0; t < tris_.size(); ++t)
      if (tris_[t].alive) work.push_back(int(t));
    std::size_t guard = 0;
    while (!work.empty()) {
      if (pts_.size() >= in_.max_vertices || ++guard > 60 * in_.max_vertices) {
        stalled_ = true;
        break;
      }
      int t = work.front();
      work.pop_front();
      if (t >= int(tris_.size()) || !tris_[t].alive) continue;
      handle_triangle(t, work);
      if (!seg_queue_.empty()) process_segments(&work);
    }
    return finish();
  }

 private:
  const CdtInput& in_;
  std::vector<Vec2> pts_;
  std::vector<Tri> tris_;
  std::vector<int> vert_tri_;        // some alive triangle per vertex
  std::vector<int> feature_parent_;  // feature ancestry for shell splits
  struct Seg {
    int a, b, chain;
    bool alive = true;
  };
  std::vector<Seg> segs_;
  std::unordered_map<std::uint64_t, int> seg_of_edge_;
  std::deque<int> seg_queue_;
  int hint_ = 0;
  bool stalled_ = false;
  int super_ = 0;  // first super vertex id

  void make_super_box() {
    Box bb = in_.keep_box;
    double cx = 0.5 * (bb.xlo + bb.xhi), cy = 0.5 * (bb.ylo + bb.yhi);
    double r = 40.0 * std::max(bb.width(), bb.height()) + 1.0;
    super_ = int(pts_.size());
    pts_.push_back({cx - 2 * r, cy - r});
    pts_.push_back({cx + 2 * r, cy - r});
    pts_.push_back({cx, cy + 2 * r});
    feature_parent_.insert(feature_parent_.end(), 3, kNone);
    vert_tri_.assign(pts_.size(), 0);
    tris_.push_back({{super_, super_ + 1, super_ + 2}, {kNone, kNone, kNone}, true});
  }

  bool is_super(int v) const { return v >= super_; }

  int locate(Vec2 p) const {
    int t = hint_;
    if (t < 0 || t >= int(tris_.size()) || !tris_[t].alive) t = first_alive();
    int prev = kNone;
    for (int step = 0; step < 20000; ++step) {
      const Tri& tr = tris_[t];
      int move = kNone;
      for (int i = 0; i < 3; ++i) {
        if (tr.adj[i] == prev && prev != kNone) continue;
        Vec2 a = pts_[tr.v[(i + 1) % 3]], b = pts_[tr.v[(i + 2) % 3]];
        if (orient2d(a, b, p) < 0.0L) {
          move = tr.adj[i];
          break;
        }
      }
      if (move == kNone) {
        bool inside = true;
        for (int i = 0; i < 3; ++i)
          if (orient2d(pts_[tr.v[(i + 1) % 3]], pts_[tr.v[(i + 2) % 3]], p) < 0.0L) inside = false;
        if (inside) return t;
        break;  // stuck against a wall; fall through to the scan
      }
      if (move == kNone) break;
      prev = t;
      t = move;
    }
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (!tris_[i].alive) continue;
      const Tri& tr = tris_[i];
      bool inside = true;
      for (int e = 0; e < 3; ++e)
        if (orient2d(pts_[tr.v[(e + 1) % 3]], pts_[tr.v[(e + 2) % 3]], p) < 0.0L) inside = false;
      if (inside) return int(i);
    }
    throw Error(ErrorCode::GeometryConflict, "point location failed");
  }

  int first_alive() const {
    for (std::size_t i = 0; i < tris_.size(); ++i)
      if (tris_[i].alive) return int(i);
    throw Error(ErrorCode::GeometryConflict, "empty triangulation");
  }

  // Bowyer-Watson insertion of point id `pid`. Recovered constraint edges act
  // as cavity walls.
  void insert_point(int pid, std::vector<int>* created = nullptr) {
    Vec2 p = pts_[pid];
    int t0 = locate(p);

    std::vector<int> cavity;
    std::unordered_set<int> in_cavity;
    std::vector<int> stack{t0};
    in_cavity.insert(t0);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      cavity.push_back(t);
      const Tri tr = tris_[t];
      for (int i = 0; i < 3; ++i) {
        int n = tr.adj[i];
        if (n == kNone || in_cavity.count(n)) continue;
        int ea = tr.v[(i + 1) % 3], eb = tr.v[(i + 2) % 3];
        if (seg_of_edge_.count(edge_key(ea, eb))) continue;  // wall
        const Tri& nt = tris_[n];
        if (in_circumcircle(pts_[nt.v[0]], pts_[nt.v[1]], pts_[nt.v[2]], p)) {
          in_cavity.insert(n);
          stack.push_back(n);
        }
      }
    }

    // Boundary edges of the cavity, oriented CCW as seen from inside.
    struct BEdge {
      int a, b, outside;
    };
    std::vector<BEdge> boundary;
    for (int t : cavity) {
      const Tri& tr = tris_[t];
      for (int i = 0; i < 3; ++i) {
        int n = tr.adj[i];
        int ea = tr.v[(i + 1) % 3], eb = tr.v[(i + 2) % 3];
        bool wall = n != kNone && in_cavity.count(n) && seg_of_edge_.count(edge_key(ea, eb));
        if (n == kNone || !in_cavity.count(n) || wall) boundary.push_back({ea, eb, n});
      }
    }

    for (int t : cavity) tris_[t].alive = false;

    std::unordered_map<int, int> fan_by_first;
    fan_by_first.reserve(boundary.size() * 2);
    std::vector<int> fan;
    fan.reserve(boundary.size());
    for (const BEdge& e : boundary) {
      int nt = int(tris_.size());
      tris_.push_back({{e.a, e.b, pid}, {kNone, kNone, kNone}, true});
      tris_.back().adj[2] = e.outside;  // across (a, b)
      if (e.outside != kNone) {
        Tri& out = tris_[e.outside];
        for (int i = 0; i < 3; ++i) {
          int oa = out.v[(i + 1) % 3], ob = out.v[(i + 2) % 3];
          if ((oa == e.a && ob == e.b) || (oa == e.b && ob == e.a)) out.adj[i] = nt;
        }
      }
      if (!fan_by_first.emplace(e.a, nt).second)
        throw Error(ErrorCode::GeometryConflict, "degenerate insertion cavity");
      fan.push_back(nt);
    }
    for (int nt : fan) {
      Tri& tr = tris_[nt];
      auto it = fan_by_first.find(tr.v[1]);
      if (it == fan_by_first.end())
        throw Error(ErrorCode::GeometryConflict, "open insertion cavity");
      tr.adj[0] = it->second;       // across edge (v[1], pid)
      tris_[it->second].adj[1] = nt;  // partner edge (pid, v[1])
    }
    if (vert_tri_.size() < pts_.size()) vert_tri_.resize(pts_.size(), kNone);
    for (int nt : fan) {
      const Tri& tr = tris_[nt];
      vert_tri_[tr.v[0]] = nt;
      vert_tri_[tr.v[1]] = nt;
      vert_tri_[tr.v[2]] = nt;
    }
    hint_ = fan.empty() ? hint_ : fan.front();
    if (created) *created = fan;
  }

  int add_point(Vec2 p, int feature_parent) {
    int id = int(pts_.size());
    pts_.push_back(p);
    feature_parent_.push_back(feature_parent);
    vert_tri_.push_back(kNone);
    return id;
  }

  void add_segment(int a, int b, int chain) {
    int id = int(segs_.size());
    segs_.push_back({a, b, chain, true});
    seg_of_edge_[edge_key(a, b)] = id;
    seg_queue_.push_back(id);
  }

  // Visits triangles incident to vertex a; returns through `visit`, stopping
  // early when it returns true.
  template <class F>
  void around_vertex(int a, F&& visit) const {
    int t0 = vert_tri_[a];
    if (t0 == kNone || !tris_[t0].alive) return;
    std::vector<int> stack{t0};
    std::unordered_set<int> seen{t0};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      if (!tris_[t].alive) continue;
      const Tri& tr = tris_[t];
      int ia = kNone;
      for (int i = 0; i < 3; ++i)
        if (tr.v[i] == a) ia = i;
      if (ia == kNone) continue;
      if (visit(t, tr)) return;
      for (int i = 0; i < 3; ++i) {
        if (i == ia) continue;  // edge opposite a leads away from a
        int n = tr.adj[i];
        if (n != kNone && seen.insert(n).second) stack.push_back(n);
      }
    }
  }

  bool edge_exists(int a, int b) const {
    bool found = false;
    around_vertex(a, [&](int, const Tri& tr) {
      if (tr.v[0] == b || tr.v[1] == b || tr.v[2] == b) {
        found = true;
        return true;
      }
      return false;
    });
    return found;
  }

  void edge_apexes(int a, int b, int out[2]) const {
    out[0] = out[1] = kNone;
    int found = 0;
    around_vertex(a, [&](int, const Tri& tr) {
      int ia = kNone, ib = kNone;
      for (int i = 0; i < 3; ++i) {
        if (tr.v[i] == a) ia = i;
        if (tr.v[i] == b) ib = i;
      }
      if (ia != kNone && ib != kNone) {
        int apex = tr.v[3 - ia - ib];
        if (found == 0 || out[0] != apex) out[found++] = apex;
      }
      return found >= 2;
    });
  }

  bool encroached_by(int a, int b, Vec2 p) const {
    Vec2 pa = pts_[a], pb = pts_[b];
    double d1 = (pa.x - p.x) * (pb.x - p.x) + (pa.y - p.y) * (pb.y - p.y);
    return d1 < 0.0;
  }

  void process_segments(std::deque<int>* tri_work) {
    while (!seg_queue_.empty()) {
      if (pts_.size() >= in_.max_vertices) {
        stalled_ = true;
        return;
      }
      int sid = seg_queue_.front();
      seg_queue_.pop_front();
      if (!segs_[sid].alive) continue;
      Seg s = segs_[sid];
      bool missing = !edge_exists(s.a, s.b);
      bool encroach = false;
      if (!missing) {
        int apex[2];
        edge_apexes(s.a, s.b, apex);
        for (int k = 0; k < 2; ++k)
          if (apex[k] != kNone && !is_super(apex[k]) && encroached_by(s.a, s.b, pts_[apex[k]]))
            encroach = true;
      }
      if (missing || encroach) split_segment(sid, tri_work);
    }
  }

  void split_segment(int sid, std::deque<int>* tri_work) {
    Seg s = segs_[sid];
    double frac = 0.5;
    // Concentric-shell split toward a feature endpoint keeps cascades near
    // small input angles finite.
    double len = (pts_[s.b] - pts_[s.a]).norm();
    bool fa = feature_parent_[s.a] == s.a;
    bool fb = feature_parent_[s.b] == s.b;
    if (fa != fb && len > 0.0) {
      double shell = std::exp2(std::floor(std::log2(len * 0.5)));
      frac = fa ? shell / len : 1.0 - shell / len;
      frac = std::min(0.8, std::max(0.2, frac));
    }
    Vec2 p = in_.split_point(s.chain, s.a, s.b, pts_[s.a], pts_[s.b], frac, int(pts_.size()));

    int parent = kNone;
    if (fa && !fb) parent = s.a;
    if (fb && !fa) parent = s.b;
    if (!fa && !fb && feature_parent_[s.a] != kNone &&
        feature_parent_[s.a] == feature_parent_[s.b])
      parent = feature_parent_[s.a];

    segs_[sid].alive = false;
    seg_of_edge_.erase(edge_key(s.a, s.b));
    int pid = add_point(p, parent);
    std::vector<int> created;
    insert_point(pid, &created);
    add_segment(s.a, pid, s.chain);
    add_segment(pid, s.b, s.chain);
    if (tri_work)
      for (int nt : created) tri_work->push_back(nt);
  }

  void handle_triangle(int t, std::deque<int>& work) {
    const Tri& tr = tris_[t];
    if (is_super(tr.v[0]) || is_super(tr.v[1]) || is_super(tr.v[2])) return;
    Vec2 a = pts_[tr.v[0]], b = pts_[tr.v[1]], c = pts_[tr.v[2]];
    Vec2 cen{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    if (!in_.keep_box.contains(cen)) return;
    double h = in_.h_at(cen);
    if (h <= 0.0) return;

    double lab = (b - a).norm(), lbc = (c - b).norm(), lca = (a - c).norm();
    double longest = std::max({lab, lbc, lca});
    double shortest = std::min({lab, lbc, lca});

    Vec2 cc = circumcenter(a, b, c);
    double r = (cc - a).norm();
    bool too_big = longest > h;
    bool poor = shortest < 2.0 * r * std::sin(in_.min_angle_deg * kPi / 180.0);
    if (!too_big && !poor) return;

    if (poor && !too_big) {
      // Seditious-edge guard: skip when the shortest edge hangs off one
      // feature-vertex cluster; splitting would recurse forever.
      int u, v;
      if (shortest == lab) {
        u = tr.v[0];
        v = tr.v[1];
      } else if (shortest == lbc) {
        u = tr.v[1];
        v = tr.v[2];
      } else {
        u = tr.v[2];
        v = tr.v[0];
      }
      int pu = feature_parent_[u], pv = feature_parent_[v];
      if (pu != kNone && pv != kNone && (pu == pv || pu == v || pv == u)) return;
    }

    std::vector<int> hit;
    for (std::size_t sid = 0; sid < segs_.size(); ++sid) {
      const Seg& s = segs_[sid];
      if (!s.alive) continue;
      if (encroached_by(s.a, s.b, cc)) hit.push_back(int(sid));
    }
    if (!hit.empty()) {
      // The rejected circumcenter splits whatever it encroaches.
      for (int sid : hit)
        if (segs_[sid].alive) split_segment(sid, &work);
      if (t < int(tris_.size()) && tris_[t].alive) work.push_back(t);
      return;
    }
    if (!in_.keep_box.contains(cc)) return;

    // Deterministic sub-tolerance jitter breaks symmetric cocircular sets.
    Vec2 jc{cc.x + splitmix_unit(pts_.size() * 2 + 1) * 1e-10 * r,
            cc.y + splitmix_unit(pts_.size() * 2 + 2) * 1e-10 * r};
    int pid = add_point(jc, kNone);
    std::vector<int> created;
    insert_point(pid, &created);
    for (int nt : created) work.push_back(nt);
  }

  CdtResult finish() {
    CdtResult out;
    out.stalled = stalled_;
    out.points = pts_;
    for (const Tri& tr : tris_) {
      if (!tr.alive) continue;
      if (is_super(tr.v[0]) || is_super(tr.v[1]) || is_super(tr.v[2])) continue;
      Vec2 cen{(pts_[tr.v[0]].x + pts_[tr.v[1]].x + pts_[tr.v[2]].x) / 3.0,
               (pts_[tr.v[0]].y + pts_[tr.v[1]].y + pts_[tr.v[2]].y) / 3.0};
      if (!in_.keep_box.contains(cen)) continue;
      out.triangles.push_back({tr.v[0], tr.v[1], tr.v[2]});
    }
    for (const Seg& s : segs_) {
      if (!s.alive) continue;
      out.subsegments.push_back({s.a, s.b});
      out.subsegment_chain.push_back(s.chain);
    }
    return out;
  }
};

}  // namespace

CdtResult refine_cdt(const CdtInput& input) {
  if (input.points.size() < 3)
    throw Error(ErrorCode::Empty, "triangulation needs at least 3 points");
  Kernel k(input);
  return k.run();
}

}  // namespace mimecloak
