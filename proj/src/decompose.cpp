#include "amp/decompose.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amp/transforms.hpp"

namespace amp {

namespace {

// Slack on the cumulative energy comparison so that rounding in long sums
// cannot push an exact decomposition past its zero-energy tail.
constexpr double kEnergySlack = 1e-12;

constexpr double kDegenerateNorm = 1e-12;

std::vector<double> centred_or_throw(const TimeSeries& a) {
  auto centred = mean_center(a.samples());
  double scale = 0.0;
  for (double v : a.samples()) scale = std::max(scale, std::abs(v));
  double peak = 0.0;
  for (double v : centred) peak = std::max(peak, std::abs(v));
  if (peak <= 1e-12 * std::max(scale, 1.0)) {
    throw std::invalid_argument("decompose: degenerate signal");
  }
  return centred;
}

std::vector<std::vector<double>> dft_components(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) throw std::invalid_argument("decompose: DFT needs n >= 4");
  const auto spectrum = transforms::real_dft(x);
  const double two_pi_over_n = 2.0 * M_PI / static_cast<double>(n);
  const double scale = 2.0 / static_cast<double>(n);

  std::vector<std::vector<double>> out;
  out.reserve(2 * (n / 2 - 1));
  for (std::size_t f = 1; f < n / 2; ++f) {
    std::vector<double> cos_part(n), sin_part(n);
    const double re = spectrum[f].real() * scale;
    const double im = -spectrum[f].imag() * scale;
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce the phase index modulo n to keep the argument small.
      const double angle = two_pi_over_n * static_cast<double>((f * k) % n);
      cos_part[k] = re * std::cos(angle);
      sin_part[k] = im * std::sin(angle);
    }
    if (f == n / 2 - 1) {
      const double nyquist = spectrum[n / 2].real() / static_cast<double>(n);
      for (std::size_t k = 0; k < n; ++k) cos_part[k] += (k % 2 == 0) ? nyquist : -nyquist;
    }
    out.push_back(std::move(cos_part));
    out.push_back(std::move(sin_part));
  }
  return out;
}

std::vector<std::vector<double>> dwt_components(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto coeffs = transforms::haar_dwt(x);
  std::vector<std::vector<double>> out;
  out.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    auto atom = transforms::haar_atom(n, i);
    for (auto& v : atom) v *= coeffs[i];
    out.push_back(std::move(atom));
  }
  return out;
}

std::vector<std::vector<double>> dwpt_components(std::span<const double> x) {
  const transforms::PacketTree tree(x);
  std::vector<std::vector<double>> out;
  out.reserve(x.size());
  for (const auto& node : transforms::best_basis(tree)) {
    const auto coeffs = tree.node(node);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      auto atom = tree.atom(node, i);
      for (auto& v : atom) v *= coeffs[i];
      out.push_back(std::move(atom));
    }
  }
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::DFT: return "dft";
    case Method::DWT: return "dwt";
    case Method::DWPT: return "dwpt";
    case Method::EMD: return "emd";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dft") return Method::DFT;
  if (lower == "dwt") return Method::DWT;
  if (lower == "dwpt") return Method::DWPT;
  if (lower == "emd") return Method::EMD;
  throw std::invalid_argument("unknown decomposition method: " + std::string(name));
}

ComponentSet::ComponentSet(std::vector<std::vector<double>> components, Method method,
                           double source_energy, std::vector<double> residual)
    : residual_(std::move(residual)), method_(method), source_energy_(source_energy) {
  std::vector<double> energies(components.size());
  for (std::size_t j = 0; j < components.size(); ++j) energies[j] = squared_norm(components[j]);

  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energies[a] > energies[b]; });

  components_.reserve(order.size());
  for (std::size_t idx : order) {
    components_.push_back(std::move(components[idx]));
    energies_.push_back(energies[idx]);
    origins_.push_back(idx);
  }
}

double ComponentSet::energy_fraction() const {
  if (!(source_energy_ > 0.0)) return 0.0;
  return std::accumulate(energies_.begin(), energies_.end(), 0.0) / source_energy_;
}

ComponentSet ComponentSet::prefix(std::size_t p) const {
  p = std::min(p, components_.size());
  ComponentSet out;
  out.components_.assign(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(p));
  out.energies_.assign(energies_.begin(), energies_.begin() + static_cast<std::ptrdiff_t>(p));
  out.origins_.assign(origins_.begin(), origins_.begin() + static_cast<std::ptrdiff_t>(p));
  out.residual_ = residual_;
  out.method_ = method_;
  out.source_energy_ = source_energy_;
  return out;
}

BasisMatrix::BasisMatrix(Eigen::MatrixXd columns, Method method, double retained_energy_fraction)
    : columns_(std::move(columns)),
      method_(method),
      retained_energy_fraction_(retained_energy_fraction) {
  if (columns_.cols() < 1) throw std::invalid_argument("BasisMatrix: needs at least one column");
  for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
    if (std::abs(columns_.col(j).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("BasisMatrix: columns must have unit norm");
    }
  }
}

ComponentSet decompose(const TimeSeries& a, Method method, const EmdOptions& emd_opts) {
  if (method == Method::EMD) return emd(a, emd_opts);

  if (!is_power_of_two(a.size())) {
    throw std::invalid_argument("decompose: " + to_string(method) +
                                " requires a power-of-two length");
  }
  const auto centred = centred_or_throw(a);
  const double source = squared_norm(centred);
  switch (method) {
    case Method::DFT: return ComponentSet(dft_components(centred), method, source);
    case Method::DWT: return ComponentSet(dwt_components(centred), method, source);
    case Method::DWPT: return ComponentSet(dwpt_components(centred), method, source);
    case Method::EMD: break;
  }
  throw std::logic_error("decompose: unhandled method");
}

ComponentSet emd(const TimeSeries& a, const EmdOptions& opts) {
  const auto centred = centred_or_throw(a);
  const double source = squared_norm(centred);
  auto result = emd_imfs(centred, opts);
  return ComponentSet(std::move(result.imfs), Method::EMD, source, std::move(result.residual));
}

double best_basis_cost(std::span<const double> v) {
  return transforms::entropy_cost(v, squared_norm(v));
}

ComponentSet select_components(const ComponentSet& cs, double energy_threshold) {
  if (cs.empty()) throw std::invalid_argument("select_components: empty component set");
  if (!(energy_threshold > 0.0 && energy_threshold <= 1.0)) {
    throw std::invalid_argument("select_components: threshold must lie in (0, 1]");
  }
  const double source = cs.source_energy();
  double cumulative = 0.0;
  for (std::size_t p = 0; p < cs.size(); ++p) {
    cumulative += cs.energies()[p];
    if (cumulative >= (energy_threshold - kEnergySlack) * source) return cs.prefix(p + 1);
  }
  return cs.prefix(cs.size());
}

BasisMatrix normalize_components(const ComponentSet& cs) {
  if (cs.empty()) throw std::invalid_argument("normalize_components: empty component set");
  const std::size_t n = cs.components().front().size();
  Eigen::MatrixXd columns(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cs.size()));
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const auto& c = cs.components()[j];
    if (c.size() != n) throw std::invalid_argument("normalize_components: ragged components");
    const double norm = std::sqrt(squared_norm(c));
    if (!(norm > kDegenerateNorm)) {
      throw std::invalid_argument("normalize_components: degenerate component");
    }
    for (std::size_t k = 0; k < n; ++k) {
      columns(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = c[k] / norm;
    }
  }
  return BasisMatrix(std::move(columns), cs.method(), std::min(1.0, cs.energy_fraction()));
}

}  // namespace amp
