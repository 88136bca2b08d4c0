#include "mimecloak/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mimecloak {

namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kJunctionTol = 1e-9;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can return exactly 2pi after the correction when theta is a tiny
  // negative number.
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

// Intersection of the ray through q (vantage-centered) with a piece.
Vec2 piece_intersect(const PieceShape& shape, Vec2 q, double qnorm) {
  if (std::holds_alternative<LinePiece>(shape)) {
    const auto& ln = std::get<LinePiece>(shape);
    double denom = q.y - ln.slope * q.x;
    if (std::abs(denom) < 1e-12 * qnorm)
      throw Error(ErrorCode::DegeneratePiece, "ray nearly parallel to line piece");
    return {ln.intercept * q.x / denom, ln.intercept * q.y / denom};
  }
  if (std::holds_alternative<VerticalPiece>(shape)) {
    const auto& vl = std::get<VerticalPiece>(shape);
    if (std::abs(q.x) < 1e-12 * qnorm)
      throw Error(ErrorCode::DegeneratePiece, "ray nearly parallel to vertical piece");
    return {vl.c, vl.c * q.y / q.x};
  }
  const auto& el = std::get<EllipsePiece>(shape);
  Vec2 qe = q.rotated(-el.rotation);
  double rho = std::sqrt(qe.x * qe.x / (el.rx * el.rx) + qe.y * qe.y / (el.ry * el.ry));
  Vec2 pe{qe.x / rho, qe.y / rho};
  return pe.rotated(el.rotation);
}

Mat2 piece_derivatives(const PieceShape& shape, Vec2 q, double qnorm) {
  if (std::holds_alternative<LinePiece>(shape)) {
    const auto& ln = std::get<LinePiece>(shape);
    double denom = q.y - ln.slope * q.x;
    if (std::abs(denom) < 1e-12 * qnorm)
      throw Error(ErrorCode::DegeneratePiece, "ray nearly parallel to line piece");
    double d2 = denom * denom;
    return {ln.intercept * q.y / d2, -ln.intercept * q.x / d2,
            ln.slope * ln.intercept * q.y / d2, -ln.slope * ln.intercept * q.x / d2};
  }
  if (std::holds_alternative<VerticalPiece>(shape)) {
    const auto& vl = std::get<VerticalPiece>(shape);
    if (std::abs(q.x) < 1e-12 * qnorm)
      throw Error(ErrorCode::DegeneratePiece, "ray nearly parallel to vertical piece");
    return {0.0, 0.0, -vl.c * q.y / (q.x * q.x), vl.c / q.x};
  }
  const auto& el = std::get<EllipsePiece>(shape);
  Vec2 qe = q.rotated(-el.rotation);
  double c2 = el.rx * el.rx, d2 = el.ry * el.ry;
  double s = qe.x * qe.x / c2 + qe.y * qe.y / d2;
  double rho = std::sqrt(s);
  double rho3 = rho * s;
  Mat2 axis{1.0 / rho - qe.x * qe.x / (rho3 * c2), -qe.x * qe.y / (rho3 * d2),
            -qe.x * qe.y / (rho3 * c2), 1.0 / rho - qe.y * qe.y / (rho3 * d2)};
  if (el.rotation == 0.0) return axis;
  Mat2 rot = Mat2::rotation(el.rotation);
  return rot * axis * rot.transposed();
}

void validate_piece(const PieceShape& shape) {
  if (std::holds_alternative<LinePiece>(shape)) {
    const auto& ln = std::get<LinePiece>(shape);
    if (!std::isfinite(ln.slope) || !std::isfinite(ln.intercept) || ln.intercept == 0.0)
      throw Error(ErrorCode::GeometryConflict, "line piece through the vantage point");
  } else if (std::holds_alternative<VerticalPiece>(shape)) {
    if (std::get<VerticalPiece>(shape).c == 0.0)
      throw Error(ErrorCode::GeometryConflict, "vertical piece through the vantage point");
  } else {
    const auto& el = std::get<EllipsePiece>(shape);
    if (!(el.rx > 0.0) || !(el.ry > 0.0))
      throw Error(ErrorCode::GeometryConflict, "ellipse semi-axes must be positive");
  }
}

PieceShape scaled_shape(const PieceShape& shape, double s) {
  if (std::holds_alternative<LinePiece>(shape)) {
    auto ln = std::get<LinePiece>(shape);
    ln.intercept *= s;
    return ln;
  }
  if (std::holds_alternative<VerticalPiece>(shape)) {
    auto vl = std::get<VerticalPiece>(shape);
    vl.c *= s;
    return vl;
  }
  auto el = std::get<EllipsePiece>(shape);
  el.rx *= s;
  el.ry *= s;
  return el;
}

bool same_shape(const PieceShape& a, const PieceShape& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<LinePiece>(a)) {
    const auto &la = std::get<LinePiece>(a), &lb = std::get<LinePiece>(b);
    return la.slope == lb.slope && la.intercept == lb.intercept;
  }
  if (std::holds_alternative<VerticalPiece>(a))
    return std::get<VerticalPiece>(a).c == std::get<VerticalPiece>(b).c;
  const auto &ea = std::get<EllipsePiece>(a), &eb = std::get<EllipsePiece>(b);
  return ea.rx == eb.rx && ea.ry == eb.ry && ea.rotation == eb.rotation;
}

}  // namespace

StarDomain::StarDomain(Vec2 vantage, std::vector<BoundaryPiece> pieces)
    : vantage_(vantage), pieces_(std::move(pieces)) {
  if (!std::isfinite(vantage_.x) || !std::isfinite(vantage_.y))
    throw Error(ErrorCode::InvalidArgument, "vantage point must be finite");
  if (pieces_.empty()) throw Error(ErrorCode::Empty, "star domain has no boundary pieces");

  std::sort(pieces_.begin(), pieces_.end(),
            [](const BoundaryPiece& a, const BoundaryPiece& b) { return a.theta_lo < b.theta_lo; });

  if (std::abs(pieces_.front().theta_lo) > kAngleTol)
    throw Error(ErrorCode::GeometryConflict, "angular ranges must start at 0");
  if (std::abs(pieces_.back().theta_hi - kTwoPi) > kAngleTol)
    throw Error(ErrorCode::GeometryConflict, "angular ranges must end at 2pi");
  pieces_.front().theta_lo = 0.0;
  pieces_.back().theta_hi = kTwoPi;

  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto& p = pieces_[i];
    validate_piece(p.shape);
    if (!(p.theta_hi > p.theta_lo))
      throw Error(ErrorCode::GeometryConflict, "angular range must have positive width");
    if (i + 1 < pieces_.size()) {
      if (std::abs(p.theta_hi - pieces_[i + 1].theta_lo) > kAngleTol)
        throw Error(ErrorCode::GeometryConflict, "angular ranges must partition [0, 2pi)");
      p.theta_hi = pieces_[i + 1].theta_lo;
    }
  }

  // Adjacent pieces must meet on the shared ray; also probes each piece once
  // strictly inside its range so degenerate configurations fail here, not in
  // later queries.
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const auto& next = pieces_[(i + 1) % pieces_.size()];
    double junction = (i + 1 < pieces_.size()) ? p.theta_hi : kTwoPi;
    Vec2 dir{std::cos(junction), std::sin(junction)};
    Vec2 a = piece_intersect(p.shape, dir, 1.0);
    Vec2 b = piece_intersect(next.shape, dir, 1.0);
    if ((a - b).norm() > kJunctionTol)
      throw Error(ErrorCode::GeometryConflict, "adjacent pieces do not meet at their junction");
    double mid = 0.5 * (p.theta_lo + p.theta_hi);
    Vec2 m = piece_intersect(p.shape, {std::cos(mid), std::sin(mid)}, 1.0);
    double t = m.dot({std::cos(mid), std::sin(mid)});
    if (!(t > 0.0) || !std::isfinite(t))
      throw Error(ErrorCode::GeometryConflict, "boundary not star-shaped about the vantage");
  }
}

std::size_t StarDomain::piece_index(double theta) const {
  double t = wrap_angle(theta);
  // Last piece whose theta_lo <= t; ranges are half-open [lo, hi).
  std::size_t lo = 0, hi = pieces_.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pieces_[mid].theta_lo <= t)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Vec2 StarDomain::boundary_point(double theta) const {
  Vec2 dir{std::cos(theta), std::sin(theta)};
  const auto& p = pieces_[piece_index(theta)];
  return vantage_ + piece_intersect(p.shape, dir, 1.0);
}

double StarDomain::radius(double theta) const { return (boundary_point(theta) - vantage_).norm(); }

std::vector<double> StarDomain::junction_angles() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    std::size_t j = (i + 1) % pieces_.size();
    if (same_shape(pieces_[i].shape, pieces_[j].shape)) continue;  // wrap-split pieces
    out.push_back(j == 0 ? 0.0 : pieces_[j].theta_lo);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StarDomain StarDomain::scaled(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  std::vector<BoundaryPiece> ps = pieces_;
  for (auto& p : ps) p.shape = scaled_shape(p.shape, s);
  return StarDomain(vantage_, std::move(ps));
}

Vec2 ray_intersect(const StarDomain& domain, Vec2 query) {
  Vec2 q = query - domain.vantage();
  double qn = q.norm();
  if (qn == 0.0) throw Error(ErrorCode::QueryAtVantage, "query coincides with the vantage point");
  const auto& piece = domain.pieces()[domain.piece_index(q.angle())];
  return domain.vantage() + piece_intersect(piece.shape, q, qn);
}

Mat2 ray_intersect_derivatives(const StarDomain& domain, Vec2 query) {
  Vec2 q = query - domain.vantage();
  double qn = q.norm();
  if (qn == 0.0) throw Error(ErrorCode::QueryAtVantage, "query coincides with the vantage point");
  const auto& piece = domain.pieces()[domain.piece_index(q.angle())];
  return piece_derivatives(piece.shape, q, qn);
}

std::vector<Sector> sectorize(const StarDomain& d0, const StarDomain& d1, const StarDomain& d2) {
  const StarDomain* doms[3] = {&d0, &d1, &d2};
  std::vector<double> breaks;
  for (const StarDomain* d : doms) {
    if (d->pieces().empty()) throw Error(ErrorCode::Empty, "domain has no pieces");
    auto j = d->junction_angles();
    breaks.insert(breaks.end(), j.begin(), j.end());
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> merged;
  for (double b : breaks)
    if (merged.empty() || b - merged.back() > kJunctionTol) merged.push_back(b);
  if (!merged.empty() && merged.front() > kJunctionTol && kTwoPi - merged.back() <= kJunctionTol) {
    merged.pop_back();
    merged.insert(merged.begin(), 0.0);
  }

  // The sector spanning the 0-wrap stays whole, represented with hi > 2pi.
  std::vector<Sector> sectors;
  if (merged.empty()) {
    sectors.push_back({0.0, kTwoPi});
    return sectors;
  }
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double lo = merged[i];
    double hi = (i + 1 < merged.size()) ? merged[i + 1] : merged.front() + kTwoPi;
    sectors.push_back({lo, hi});
  }
  return sectors;
}

bool sector_contains(const Sector& s, double theta) {
  double t = wrap_angle(theta);
  if (t >= s.lo && t < s.hi) return true;
  return s.hi > kTwoPi && t + kTwoPi < s.hi;
}

int sector_index(const std::vector<Sector>& sectors, double theta) {
  for (std::size_t i = 0; i < sectors.size(); ++i)
    if (sector_contains(sectors[i], theta)) return static_cast<int>(i);
  return -1;
}

}  // namespace mimecloak
