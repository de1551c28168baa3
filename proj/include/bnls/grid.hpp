#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bnls/types.hpp"

namespace bnls {

using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using SparseMatrix = Eigen::SparseMatrix<Real>;

/// Uniform cell-centred mesh r_i = (i + 1/2) h, h = R/n, on [0, R] for radial
/// functions on R^N. Quadrature weights carry the surface measure
/// |S^{N-1}| r^{N-1}; the rule is the midpoint rule with a fourth-order end
/// correction at R (no correction is needed at the origin because
/// r^{N-1} g(r) vanishes there to order N-1). All weights are positive.
///
/// The Laplacian u'' + (N-1)u'/r uses fourth-order centred stencils with even
/// ghost values u(-r) = u(r) at the origin and zeros beyond R.
class RadialGrid {
 public:
  RadialGrid(int dim, std::size_t n, double r_max);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_; }
  double r_max() const noexcept { return r_max_; }
  Real spacing() const noexcept { return h_; }

  const Vector& nodes() const noexcept { return nodes_; }
  const Vector& weights() const noexcept { return weights_; }
  const SparseMatrix& laplacian_matrix() const noexcept { return laplacian_; }

  /// Same dimension, node count and radius.
  bool same_layout(const RadialGrid& other) const noexcept;

 private:
  int dim_;
  std::size_t n_;
  double r_max_;
  Real h_;
  Vector nodes_;
  Vector weights_;
  SparseMatrix laplacian_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Throws Error(InvalidGrid) unless dim >= 5, n >= 64, r_max > 0.
GridPtr build_grid(int dim, std::size_t n, double r_max);

/// Volume of the N-ball of radius R.
Real ball_volume(int dim, Real radius);

/// Area of the unit sphere S^{N-1}.
Real sphere_area(int dim);

/// Real radial field sampled on a grid. Immutable once built.
class RadialField {
 public:
  RadialField(GridPtr grid, Vector values);

  static RadialField zero(GridPtr grid);

  template <class F>
  static RadialField sample(GridPtr grid, F&& profile) {
    Vector v(static_cast<Eigen::Index>(grid->size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = profile(grid->nodes()[i]);
    }
    return RadialField(std::move(grid), std::move(v));
  }

  const RadialGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Vector& values() const noexcept { return values_; }

 private:
  GridPtr grid_;
  Vector values_;
};

/// Weighted radial quadrature of pointwise samples g(r_i) over R^N.
Real integrate(const RadialGrid& grid, std::span<const Real> samples);
Real integrate(const RadialGrid& grid, const Vector& samples);

/// Quadrature inner product <a, b> over R^N; both fields on one grid.
Real inner(const RadialField& a, const RadialField& b);

/// Throws Error(GridMismatch) if the fields live on different layouts.
void require_same_grid(const RadialField& a, const RadialField& b);

RadialField laplacian(const RadialField& field);

/// v(r) = amplitude * u(factor * r), via monotone cubic (PCHIP) interpolation
/// of the even extension of u, zero beyond R.
RadialField dilate(const RadialField& field, Real amplitude, Real factor);

/// Mass-preserving fiber dilation u_s(x) = s^{N/4} u(s^{1/2} x).
RadialField scale_field(const RadialField& field, double s);

/// v(x) = (c_from/c_to)^{(N-4)/8} u((c_from/c_to)^{1/4} x): takes mass c_from
/// to c_to and leaves ||Delta v||_2 unchanged. The input mass must match
/// c_from to 1e-6 relative.
RadialField mass_dilate(const RadialField& field, double c_from, double c_to);

struct FieldHeader {
  int dim;
  std::size_t n;
  double r_max;
};

/// Reads the `# dim=<N> n=<n> r_max=<R>` header line of a field CSV.
FieldHeader read_field_header(const std::filesystem::path& path);

/// Two-column CSV `r,value` preceded by the header line.
void save_field_csv(const RadialField& field,
                    const std::filesystem::path& path);

/// Loads a field CSV onto `target`, rejecting a header or node column that
/// does not match the grid.
RadialField load_field_csv(const std::filesystem::path& path, GridPtr target);

}  // namespace bnls
