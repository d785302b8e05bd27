#include "amp/project.hpp"

#include <cmath>
#include <stdexcept>

#include "amp/parallel.hpp"

namespace amp {

Projector::Projector(const BasisMatrix& basis, bool center_individuals)
    : center_individuals_(center_individuals) {
  const auto& b = basis.columns();
  if (b.cols() == 0 || b.rows() == 0) throw std::invalid_argument("Projector: empty basis");
  if (b.norm() == 0.0) throw std::invalid_argument("Projector: all-zero basis");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTolerance * sv(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      inv(i) = 1.0 / sv(i);
      ++rank_;
    }
  }
  pinv_ = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::VectorXd Projector::fit(std::span<const double> x) const {
  if (x.size() != rows()) throw std::invalid_argument("fit_series: dimension mismatch");
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  double mean = 0.0;
  if (center_individuals_) {
    for (double s : x) mean += s;
    mean /= static_cast<double>(x.size());
  }
  for (std::size_t k = 0; k < x.size(); ++k) v(static_cast<Eigen::Index>(k)) = x[k] - mean;
  return pinv_ * v;
}

Eigen::VectorXd fit_series(const TimeSeries& x, const BasisMatrix& basis, bool center) {
  if (x.size() != basis.rows()) throw std::invalid_argument("fit_series: dimension mismatch");
  return Projector(basis, center).fit(x.samples());
}

BasisMatrix learn_basis(const LabeledDataset& d, Method method, const ExtractOptions& opts) {
  const auto agg = mean_center(aggregate(d));
  const auto components = decompose(agg, method, opts.emd);
  return normalize_components(select_components(components, opts.energy_threshold));
}

FeatureMatrix project_dataset(const LabeledDataset& d, const BasisMatrix& basis,
                              bool center_individuals) {
  if (d.empty()) throw std::invalid_argument("project_dataset: empty dataset");
  const Projector projector(basis, center_individuals);
  FeatureMatrix out;
  out.method = basis.method();
  out.basis_ref = to_string(basis.method()) + ":p=" + std::to_string(basis.cols());
  out.values.resize(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(basis.cols()));
  parallel_for(d.size(), [&](std::size_t i) {
    out.values.row(static_cast<Eigen::Index>(i)) = projector.fit(d[i].samples()).transpose();
  });
  if (!out.values.allFinite()) throw std::runtime_error("project_dataset: non-finite coefficients");
  return out;
}

FeatureMatrix extract_features(const LabeledDataset& d, Method method, const ExtractOptions& opts) {
  if (d.empty()) throw std::invalid_argument("extract_features: empty dataset");
  return project_dataset(d, learn_basis(d, method, opts), opts.center_individuals);
}

}  // namespace amp
