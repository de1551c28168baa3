#include "bnls/grid.hpp"

#include <cmath>
// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bnls/error.hpp"

namespace bnls {
namespace {

// Fourth-order centred coefficients for offsets -2..2.
constexpr Real kSecond[5] = {-1.0L / 12, 16.0L / 12, -30.0L / 12, 16.0L / 12,
                             -1.0L / 12};
constexpr Real kFirst[5] = {1.0L / 12, -8.0L / 12, 0.0L, 8.0L / 12,
                            -1.0L / 12};

SparseMatrix build_laplacian(int dim, const Vector& nodes, Real h) {
  const auto n = nodes.size();
  std::vector<Eigen::Triplet<Real>> entries;
  entries.reserve(static_cast<std::size_t>(5 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real drift = (dim - 1) / nodes[i];
    for (int k = 0; k < 5; ++k) {
      Eigen::Index j = i + k - 2;
      if (j < 0) {
        j = -j - 1;  // u(-r_j) = u(r_j) on the cell-centred mesh
      }
      if (j >= n) {
        continue;  // zero extension beyond R
      }
      entries.emplace_back(i, j, kSecond[k] / (h * h) + drift * kFirst[k] / h);
    }
  }
  SparseMatrix lap(n, n);
  lap.setFromTriplets(entries.begin(), entries.end());
  lap.makeCompressed();
  return lap;
}

std::string format_real(Real value) {
  std::ostringstream out;
  out.precision(21);
  out << value;
  return out.str();
}

}  // namespace

Real sphere_area(int dim) {
  const Real half = 0.5L * dim;
  return 2.0L * std::pow(std::numbers::pi_v<Real>, half) / std::tgamma(half);
}

Real ball_volume(int dim, Real radius) {
  return sphere_area(dim) * std::pow(radius, static_cast<Real>(dim)) / dim;
}

RadialGrid::RadialGrid(int dim, std::size_t n, double r_max)
    : dim_(dim), n_(n), r_max_(r_max) {
  if (dim < 5) {
    throw Error(ErrorKind::InvalidGrid,
                "grid dimension must be >= 5, got " + std::to_string(dim));
  }
  if (n < 64) {
    throw Error(ErrorKind::InvalidGrid,
                "grid needs n >= 64 nodes, got " + std::to_string(n));
  }
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw Error(ErrorKind::InvalidGrid, "grid radius must be positive");
  }
  h_ = static_cast<Real>(r_max) / static_cast<Real>(n);
  const auto size = static_cast<Eigen::Index>(n);
  nodes_.resize(size);
  weights_.resize(size);
  const Real area = sphere_area(dim);
  for (Eigen::Index i = 0; i < size; ++i) {
    nodes_[i] = (static_cast<Real>(i) + 0.5L) * h_;
    weights_[i] = area * h_ * std::pow(nodes_[i], static_cast<Real>(dim - 1));
  }
  // Midpoint end correction: h*sum c_j F(R-(j+1/2)h) = (h^2/24) F'(R) + O(h^4).
  weights_[size - 1] *= 1.0L + 1.0L / 12;
  weights_[size - 2] *= 1.0L - 1.0L / 8;
  weights_[size - 3] *= 1.0L + 1.0L / 24;
  laplacian_ = build_laplacian(dim, nodes_, h_);
}

bool RadialGrid::same_layout(const RadialGrid& other) const noexcept {
  return dim_ == other.dim_ && n_ == other.n_ && r_max_ == other.r_max_;
}

GridPtr build_grid(int dim, std::size_t n, double r_max) {
  return std::make_shared<const RadialGrid>(dim, n, r_max);
}

RadialField::RadialField(GridPtr grid, Vector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) {
    throw Error(ErrorKind::InvalidGrid, "field without a grid");
  }
  if (static_cast<std::size_t>(values_.size()) != grid_->size()) {
    throw Error(ErrorKind::LengthMismatch,
                "field has " + std::to_string(values_.size()) +
                    " samples for a grid of " + std::to_string(grid_->size()));
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::ParameterOutOfRange, "field has non-finite samples");
  }
}

RadialField RadialField::zero(GridPtr grid) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(grid->size()));
  return RadialField(std::move(grid), std::move(v));
}

Real integrate(const RadialGrid& grid, std::span<const Real> samples) {
  if (samples.size() != grid.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "integrate: " + std::to_string(samples.size()) +
                    " samples for a grid of " + std::to_string(grid.size()));
  }
  Real sum = 0.0L;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum += grid.weights()[static_cast<Eigen::Index>(i)] * samples[i];
  }
  return sum;
}

Real integrate(const RadialGrid& grid, const Vector& samples) {
  return integrate(grid, std::span<const Real>(samples.data(),
                                               static_cast<std::size_t>(
                                                   samples.size())));
}

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!a.grid().same_layout(b.grid())) {
    throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  }
}

Real inner(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  return (a.grid().weights().array() * a.values().array() *
          b.values().array())
      .sum();
}

RadialField laplacian(const RadialField& field) {
  Vector lap = field.grid().laplacian_matrix() * field.values();
  return RadialField(field.grid_ptr(), std::move(lap));
}

RadialField dilate(const RadialField& field, Real amplitude, Real factor) {
  if (!(factor > 0.0L)) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "dilation factor must be positive");
  }
  const RadialGrid& grid = field.grid();
  const Vector& u = field.values();
  const auto n = u.size();
  // Even extension through two mirrored nodes, zero pinned at r = R.
  std::vector<Real> x;
  std::vector<Real> y;
  x.reserve(static_cast<std::size_t>(n + 3));
  y.reserve(static_cast<std::size_t>(n + 3));
  x.push_back(-grid.nodes()[1]);
  y.push_back(u[1]);
  x.push_back(-grid.nodes()[0]);
  y.push_back(u[0]);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.push_back(grid.nodes()[i]);
    y.push_back(u[i]);
  }
  const Real r_max = grid.r_max();
  x.push_back(r_max);
  y.push_back(0.0L);
  boost::math::interpolators::pchip<std::vector<Real>> spline(std::move(x),
                                                              std::move(y));
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real at = factor * grid.nodes()[i];
    v[i] = at >= r_max ? 0.0L : amplitude * spline(at);
  }
  return RadialField(field.grid_ptr(), std::move(v));
}

RadialField scale_field(const RadialField& field, double s) {
  if (!(s > 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "scale factor s must be positive");
  }
  if (s == 1.0) {
    return field;
  }
  const Real sl = s;
  return dilate(field, std::pow(sl, 0.25L * field.grid().dim()),
                std::sqrt(sl));
}

RadialField mass_dilate(const RadialField& field, double c_from, double c_to) {
  if (!(c_from > 0.0) || !(c_to > 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "masses must be positive");
  }
  const Real mass = inner(field, field);
  if (std::abs(mass - c_from) > 1e-6L * c_from) {
    throw Error(ErrorKind::MassDrift,
                "field mass " + format_real(mass) + " does not match c_from " +
                    format_real(c_from));
  }
  if (c_from == c_to) {
    return field;
  }
  const Real ratio = static_cast<Real>(c_from) / c_to;
  const int dim = field.grid().dim();
  return dilate(field, std::pow(ratio, (dim - 4) / 8.0L),
                std::pow(ratio, 0.25L));
}

FieldHeader read_field_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ConfigNotFound,
                "cannot open field file " + path.string());
  }
  std::string line;
  std::getline(in, line);
  FieldHeader header{};
  char hash = 0;
  std::string dim_tok;
  std::string n_tok;
  std::string r_tok;
  std::istringstream fields(line);
  fields >> hash >> dim_tok >> n_tok >> r_tok;
  auto value_of = [&](const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0) {
      throw Error(ErrorKind::FieldFormat,
                  "bad field header in " + path.string() + ": '" + line + "'");
    }
    return token.substr(key.size() + 1);
  };
  if (hash != '#') {
    throw Error(ErrorKind::FieldFormat,
                "missing header line in " + path.string());
  }
  try {
    header.dim = std::stoi(value_of(dim_tok, "dim"));
    header.n = std::stoul(value_of(n_tok, "n"));
    header.r_max = std::stod(value_of(r_tok, "r_max"));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::FieldFormat,
                "unparsable field header in " + path.string());
  }
  return header;
}

void save_field_csv(const RadialField& field,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::FieldFormat, "cannot write " + path.string());
  }
  const RadialGrid& grid = field.grid();
  std::ostringstream r_max;
  r_max.precision(17);
  r_max << grid.r_max();
  out << "# dim=" << grid.dim() << " n=" << grid.size()
      << " r_max=" << r_max.str() << "\n";
  out << "r,value\n";
  out.precision(21);
  for (Eigen::Index i = 0; i < field.values().size(); ++i) {
    out << grid.nodes()[i] << ',' << field.values()[i] << '\n';
  }
}

RadialField load_field_csv(const std::filesystem::path& path, GridPtr target) {
  const FieldHeader header = read_field_header(path);
  if (header.dim != target->dim() || header.n != target->size() ||
      std::abs(header.r_max - target->r_max()) >
          1e-12 * target->r_max()) {
    throw Error(ErrorKind::GridMismatch,
                "field header of " + path.string() +
                    " does not match the target grid");
  }
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);  // column names
  if (line != "r,value") {
    throw Error(ErrorKind::FieldFormat,
                "expected column header 'r,value' in " + path.string());
  }
  Vector values(static_cast<Eigen::Index>(target->size()));
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || row >= values.size()) {
      throw Error(ErrorKind::FieldFormat,
                  "malformed row " + std::to_string(row) + " in " +
                      path.string());
    }
    Real r = 0.0L;
    Real v = 0.0L;
    try {
      r = std::stold(line.substr(0, comma));
      v = std::stold(line.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::FieldFormat,
                  "unparsable row " + std::to_string(row) + " in " +
                      path.string());
    }
    const Real node = target->nodes()[row];
    if (std::abs(r - node) > 1e-9L * target->r_max()) {
      throw Error(ErrorKind::GridMismatch,
                  "node " + std::to_string(row) + " of " + path.string() +
                      " is off the target grid");
    }
    values[row++] = v;
  }
  if (row != values.size()) {
    throw Error(ErrorKind::FieldFormat,
                path.string() + " has " + std::to_string(row) + " rows, want " +
                    std::to_string(values.size()));
  }
  return RadialField(std::move(target), std::move(values));
}

}  // namespace bnls
