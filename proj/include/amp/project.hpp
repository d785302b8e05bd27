#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "amp/core.hpp"
#include "amp/decompose.hpp"

namespace amp {

/// Relative singular-value cutoff below which basis directions are treated
/// as rank-deficient (minimum-norm solution).
inline constexpr double kRankTolerance = 1e-10;

struct FeatureMatrix {
  Eigen::MatrixXd values;  // m x p, row i holds the coefficients of series i
  Method method = Method::DFT;
  std::string basis_ref;
};

/// Least-squares projector onto the span of a fixed basis. The SVD of the
/// basis is computed once and reused for every fit.
class Projector {
 public:
  explicit Projector(const BasisMatrix& basis, bool center_individuals = true);

  std::size_t rows() const { return static_cast<std::size_t>(pinv_.cols()); }
  std::size_t cols() const { return static_cast<std::size_t>(pinv_.rows()); }
  std::size_t rank() const { return rank_; }

  Eigen::VectorXd fit(std::span<const double> x) const;

 private:
  Eigen::MatrixXd pinv_;  // p x n minimum-norm pseudo-inverse
  std::size_t rank_ = 0;
  bool center_individuals_;
};

/// argmin_c || x - B c ||_2 (minimum-norm when B is rank-deficient). x is
/// mean-centred first unless `center` is false.
Eigen::VectorXd fit_series(const TimeSeries& x, const BasisMatrix& basis, bool center = true);

struct ExtractOptions {
  double energy_threshold = 0.9;
  bool center_individuals = true;
  EmdOptions emd;
};

/// Basis learnt from the aggregate of `d`: aggregate, centre, decompose,
/// select by energy, normalize.
BasisMatrix learn_basis(const LabeledDataset& d, Method method, const ExtractOptions& opts = {});

/// Fits every series of `d` against `basis`; row order follows `d`.
FeatureMatrix project_dataset(const LabeledDataset& d, const BasisMatrix& basis,
                              bool center_individuals = true);

/// Full AMP pipeline.
FeatureMatrix extract_features(const LabeledDataset& d, Method method,
                               const ExtractOptions& opts = {});

}  // namespace amp
