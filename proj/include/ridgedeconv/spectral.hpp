#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ridgedeconv {

//! Uniform spatial grid x_i = x_min + i (x_max - x_min)/(n_x - 1).
class SpatialGrid
{
public:
  SpatialGrid(double x_min, double x_max, std::size_t n_x);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_x_; }
  double spacing() const { return dx_; }
  double x(std::size_t i) const { return i + 1 == n_x_ ? x_max_ : x_min_ + static_cast<double>(i) * dx_; }
  std::vector<double> points() const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

private:
  double x_min_, x_max_;
  std::size_t n_x_;
  double dx_;
};

//! Symmetric frequency grid on [-t_max, t_max] split into `intervals`
//! (even) cells of width 2 t_max / intervals. It holds intervals + 1 points,
//! t = 0 among them, and point k mirrors point intervals - k.
class FreqGrid
{
public:
  FreqGrid(double t_max, std::size_t intervals);

  //! Grid of at least `min_intervals` cells whose spacing also satisfies
  //! dt <= pi / (x_max - x_min), so the implied spatial period covers twice
  //! the evaluation range.
  static FreqGrid for_spatial(double t_max, const SpatialGrid& xs, std::size_t min_intervals = 4096);

  double t_max() const { return t_max_; }
  std::size_t intervals() const { return n_t_; }
  std::size_t size() const { return n_t_ + 1; }
  double spacing() const { return dt_; }
  std::size_t zero_index() const { return n_t_ / 2; }
  std::size_t mirror(std::size_t k) const { return n_t_ - k; }
  double t(std::size_t k) const
  {
    return (static_cast<double>(k) - static_cast<double>(n_t_ / 2)) * dt_;
  }
  //! Composite trapezoid weight of point k.
  double weight(std::size_t k) const { return (k == 0 || k == n_t_) ? 0.5 * dt_ : dt_; }

  friend bool operator==(const FreqGrid&, const FreqGrid&) = default;

private:
  double t_max_;
  std::size_t n_t_;
  double dt_;
};

//! Complex values of a function tabulated on a FreqGrid.
struct FreqTable
{
  FreqGrid grid;
  std::vector<std::complex<double>> values;

  FreqTable(const FreqGrid& g) : grid(g), values(g.size()) {}
  FreqTable(const FreqGrid& g, std::vector<std::complex<double>> v);

  std::complex<double>& operator[](std::size_t k) { return values[k]; }
  const std::complex<double>& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }
};

//! Empirical characteristic function n^-1 sum_j exp(i t W_j).
FreqTable ecf(std::span<const double> sample, const FreqGrid& grid);

//! n^-1 sum_j Y_j exp(i t W_j).
FreqTable weighted_ecf(std::span<const double> w, std::span<const double> y, const FreqGrid& grid);

//! Distance from each point to its nearest other point (0 for duplicates).
std::vector<double> nearest_neighbor_spacings(std::span<const double> x);

//! sum_j D_j Y_j exp(i t X_j) with D_j the nearest-neighbour spacing. No 1/n.
FreqTable spacing_weighted_ecf(std::span<const double> x, std::span<const double> y, const FreqGrid& grid);

//! Re[(1/2pi) trapezoid of G(t) exp(-itx)] at every x. Only the Hermitian
//! part of G contributes, so the sum runs over t >= 0.
std::vector<double> inverse_fourier_real(const FreqTable& table, const SpatialGrid& xs);

//! Full complex (1/2pi) trapezoid of G(t) exp(-itx).
std::vector<std::complex<double>> inverse_fourier_complex(const FreqTable& table, const SpatialGrid& xs);

//! (1/2pi) trapezoid of |G(t)|^2.
double plancherel_l2(const FreqTable& table);

//! (G(t) + conj(G(-t))) / 2, the transform of the real part.
FreqTable hermitian_part(const FreqTable& table);

//! True when G(-t) == conj(G(t)) to within `tol` absolute.
bool is_hermitian(const FreqTable& table, double tol = 0.0);

//! Composite trapezoid of values sampled on xs.
double trapezoid(const SpatialGrid& xs, std::span<const double> values);

//! CSV with header t,re,im.
void write_csv(std::ostream& os, const FreqTable& table);

} // namespace ridgedeconv
