#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amp/core.hpp"

namespace amp {

enum class Method { DFT, DWT, DWPT, EMD };

std::string to_string(Method m);
/// Accepts "dft", "dwt", "dwpt", "emd" (case-insensitive).
Method parse_method(std::string_view name);

/// Signal-domain components of one decomposition, held in descending energy
/// order. `origins` maps each sorted position back to the component's natural
/// index in its family (frequency/quadrature slot, coefficient index, or IMF
/// extraction order).
class ComponentSet {
 public:
  ComponentSet(std::vector<std::vector<double>> components, Method method, double source_energy,
               std::vector<double> residual = {});

  const std::vector<std::vector<double>>& components() const { return components_; }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<std::size_t>& origins() const { return origins_; }
  const std::vector<double>& residual() const { return residual_; }
  Method method() const { return method_; }
  double source_energy() const { return source_energy_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

  /// Cumulative energy of the whole set relative to the source energy.
  double energy_fraction() const;

  /// Copy holding only the first `p` components (sorted order).
  ComponentSet prefix(std::size_t p) const;

 private:
  ComponentSet() = default;

  std::vector<std::vector<double>> components_;
  std::vector<double> energies_;
  std::vector<std::size_t> origins_;
  std::vector<double> residual_;
  Method method_ = Method::DFT;
  double source_energy_ = 0.0;
};

/// n x p matrix of unit-norm columns.
class BasisMatrix {
 public:
  BasisMatrix(Eigen::MatrixXd columns, Method method, double retained_energy_fraction);

  const Eigen::MatrixXd& columns() const { return columns_; }
  Method method() const { return method_; }
  double retained_energy_fraction() const { return retained_energy_fraction_; }
  std::size_t rows() const { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(columns_.cols()); }

 private:
  Eigen::MatrixXd columns_;
  Method method_;
  double retained_energy_fraction_;
};

struct EmdOptions {
  double sift_tolerance = 0.2;
  std::size_t max_sift_iters = 100;
  std::size_t max_imfs = 16;
  /// Stop once the residual energy falls to this fraction of the input
  /// energy (round-off level by default). 0 disables the check.
  double residual_energy_ratio = 1e-20;
};

/// IMFs in extraction order (highest frequency first) plus the residual.
struct EmdResult {
  std::vector<std::vector<double>> imfs;
  std::vector<double> residual;
};

/// Indices of interior local maxima (or minima when `minima`). Plateaus are
/// reported at their midpoint.
std::vector<std::size_t> interior_extrema(std::span<const double> x, bool minima);

/// Natural cubic spline through strictly increasing knots, evaluated at
/// 0, 1, ..., n - 1.
std::vector<double> cubic_spline(std::span<const double> knots_x, std::span<const double> knots_y,
                                 std::size_t n);

/// Mean of the upper and lower spline envelopes, with two extrema mirrored at
/// each boundary. Requires at least two interior maxima and two minima.
std::vector<double> envelope_mean(std::span<const double> x);

EmdResult emd_imfs(std::span<const double> x, const EmdOptions& opts = {});

/// EMD of the mean-centred input as a ComponentSet (residual kept aside).
ComponentSet emd(const TimeSeries& a, const EmdOptions& opts = {});

/// Mean-centres `a` and decomposes it with the given method.
ComponentSet decompose(const TimeSeries& a, Method method, const EmdOptions& emd_opts = {});

/// Shannon entropy of the energy distribution of v; 0 for the zero vector.
double best_basis_cost(std::span<const double> v);

/// Smallest energy-ordered prefix reaching `energy_threshold` of the source
/// energy, or the whole set when it falls short.
ComponentSet select_components(const ComponentSet& cs, double energy_threshold);

BasisMatrix normalize_components(const ComponentSet& cs);

}  // namespace amp
