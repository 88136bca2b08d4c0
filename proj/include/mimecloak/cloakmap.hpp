#pragma once

#include <utility>
#include <vector>

#include "mimecloak/core.hpp"
#include "mimecloak/geometry.hpp"

namespace mimecloak {

enum class CloakMode { Shrink, Fold };

// Where a point sits relative to the cloak boundaries.
enum class CloakRegion { Inside, Coating, Outside };

// The nested triple (D0, D1, D2): virtual obstacle, inner and outer cloak
// boundary. Shrink mode maps the coating D2\D1 onto D2\D0 with positive scale
// factors; Fold mode folds it outward over D0 with negative ones.
class CloakSpec {
 public:
  static CloakSpec make(StarDomain d0, StarDomain d1, StarDomain d2, CloakMode mode);

  const StarDomain& d0() const { return d0_; }
  const StarDomain& d1() const { return d1_; }
  const StarDomain& d2() const { return d2_; }
  CloakMode mode() const { return mode_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  const Vec2& vantage() const { return d1_.vantage(); }
  double outer_scale() const { return outer_scale_; }

  CloakRegion classify(Vec2 p) const;
  int sector_of(Vec2 p) const;

 private:
  CloakSpec(StarDomain d0, StarDomain d1, StarDomain d2, CloakMode mode,
            std::vector<Sector> sectors, double outer_scale)
      : d0_(std::move(d0)), d1_(std::move(d1)), d2_(std::move(d2)), mode_(mode),
        sectors_(std::move(sectors)), outer_scale_(outer_scale) {}

  StarDomain d0_, d1_, d2_;
  CloakMode mode_;
  std::vector<Sector> sectors_;
  double outer_scale_;  // max radius of D2, used for degeneracy thresholds
};

// First-order data of the inverse map at one coating point: image, Jacobian
// d(x,y)/d(x',y'), and per-ray scale factors.
struct MapJet {
  Vec2 image;
  Mat2 jacobian;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
};

MapJet inverse_map(const CloakSpec& spec, Vec2 query);

// Per-component evaluation of the map image (the paper's coordinate form).
// 0/0 on axis-aligned rays; kept as a cross-check against the ray-parameter
// path used by inverse_map.
Vec2 inverse_map_componentwise(const CloakSpec& spec, Vec2 query);

// n points on dD1 at uniform angles paired with their images on dD0 under the
// limiting inverse map (t' -> t1+).
std::vector<std::pair<Vec2, Vec2>> boundary_images(const CloakSpec& spec, int n);

// Entries of T^-1, the raw coefficients a_ij, and the in-plane eigenvalues.
struct TensorSample {
  double t_inv_11 = 1.0, t_inv_12 = 0.0, t_inv_22 = 1.0, t_inv_33 = 1.0;
  double a11 = 1.0, a12 = 0.0, a22 = 1.0, a33 = 1.0;
  double lambda_inv_1 = 1.0, lambda_inv_2 = 1.0, lambda_inv_3 = 1.0;
};

// Material tensor at `query`: identity outside D2, transformed inside the
// coating. Throws OutsideCoating for points inside D1 (no material there).
TensorSample tensor(const CloakSpec& spec, Vec2 query);

TensorSample identity_tensor_sample();

struct LatticeSpec {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  int nx = 0, ny = 0;

  Vec2 point(int i, int j) const {
    return {x0 + (x1 - x0) * (nx > 1 ? double(i) / (nx - 1) : 0.0),
            y0 + (y1 - y0) * (ny > 1 ? double(j) / (ny - 1) : 0.0)};
  }
};

// Eigenvalue fields on a rectangular lattice, row-major with x fastest.
// Points inside D1 carry NaN (not-a-material sentinel).
struct EigenvalueField {
  LatticeSpec grid;
  std::vector<double> lambda_inv_1, lambda_inv_2, lambda_inv_3;
};

EigenvalueField tensor_field(const CloakSpec& spec, const LatticeSpec& grid,
                             Execution exec = Execution::Parallel);

}  // namespace mimecloak
