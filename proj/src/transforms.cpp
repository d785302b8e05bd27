#include "amp/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "amp/core.hpp"

namespace amp::transforms {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::size_t log2_exact(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

void require_power_of_two(std::size_t n, const char* who) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument(std::string(who) + ": length must be a power of two");
  }
}

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("real_dft: empty input");

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);

  std::vector<std::complex<double>> spectrum(n / 2 + 1);
  for (std::size_t f = 0; f <= n / 2; ++f) spectrum[f] = {out.get()[f][0], out.get()[f][1]};
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return spectrum;
}

std::vector<double> haar_dwt(std::span<const double> x) {
  const std::size_t n = x.size();
  require_power_of_two(n, "haar_dwt");
  std::vector<double> work(x.begin(), x.end());
  std::vector<double> tmp(n);
  for (std::size_t len = n; len > 1; len /= 2) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      tmp[i] = (work[2 * i] + work[2 * i + 1]) * kInvSqrt2;
      tmp[half + i] = (work[2 * i] - work[2 * i + 1]) * kInvSqrt2;
    }
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len), work.begin());
  }
  return work;
}

std::vector<double> haar_idwt(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  require_power_of_two(n, "haar_idwt");
  std::vector<double> work(coeffs.begin(), coeffs.end());
  std::vector<double> tmp(n);
  for (std::size_t len = 2; len <= n; len *= 2) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      tmp[2 * i] = (work[i] + work[half + i]) * kInvSqrt2;
      tmp[2 * i + 1] = (work[i] - work[half + i]) * kInvSqrt2;
    }
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len), work.begin());
  }
  return work;
}

std::vector<double> haar_atom(std::size_t n, std::size_t index) {
  require_power_of_two(n, "haar_atom");
  if (index >= n) throw std::out_of_range("haar_atom: index out of range");
  std::vector<double> atom(n, 0.0);
  if (index == 0) {
    std::fill(atom.begin(), atom.end(), 1.0 / std::sqrt(static_cast<double>(n)));
    return atom;
  }
  std::size_t count = 1;  // coefficients at this scale
  while (count * 2 <= index) count *= 2;
  const std::size_t support = n / count;
  const std::size_t start = (index - count) * support;
  const double amp = 1.0 / std::sqrt(static_cast<double>(support));
  for (std::size_t k = 0; k < support / 2; ++k) {
    atom[start + k] = amp;
    atom[start + support / 2 + k] = -amp;
  }
  return atom;
}

PacketTree::PacketTree(std::span<const double> x) : n_(x.size()) {
  require_power_of_two(n_, "PacketTree");
  const std::size_t depth = log2_exact(n_);
  levels_.reserve(depth + 1);
  levels_.emplace_back(x.begin(), x.end());
  for (std::size_t level = 0; level < depth; ++level) {
    const auto& parent = levels_.back();
    std::vector<double> child(n_);
    const std::size_t len = n_ >> level;
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t i = 0; i < half; ++i) {
        const double a = parent[start + 2 * i];
        const double b = parent[start + 2 * i + 1];
        child[start + i] = (a + b) * kInvSqrt2;
        child[start + half + i] = (a - b) * kInvSqrt2;
      }
    }
    levels_.push_back(std::move(child));
  }
}

std::span<const double> PacketTree::node(const PacketNode& node) const {
  if (node.level > depth() || node.index >= (std::size_t{1} << node.level)) {
    throw std::out_of_range("PacketTree: node out of range");
  }
  const std::size_t len = node_length(node.level);
  return std::span<const double>(levels_[node.level]).subspan(node.index * len, len);
}

std::vector<double> PacketTree::atom(const PacketNode& node, std::size_t offset) const {
  std::size_t len = node_length(node.level);
  if (offset >= len) throw std::out_of_range("PacketTree: coefficient offset out of range");

  std::vector<double> v(len, 0.0);
  v[offset] = 1.0;
  std::size_t index = node.index;
  for (std::size_t level = node.level; level > 0; --level) {
    const bool high = (index & 1U) != 0;
    std::vector<double> parent(2 * len);
    for (std::size_t j = 0; j < len; ++j) {
      const double s = v[j] * kInvSqrt2;
      parent[2 * j] = s;
      parent[2 * j + 1] = high ? -s : s;
    }
    v = std::move(parent);
    len *= 2;
    index /= 2;
  }
  return v;
}

double entropy_cost(std::span<const double> v, double energy) {
  if (!(energy > 0.0)) return 0.0;
  double cost = 0.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double p = x * x / energy;
    if (p > 0.0) cost -= p * std::log(p);
  }
  return cost;
}

namespace {

// Returns best cost of the subtree rooted at `node`, appending its chosen
// nodes to `out`.
double best_subtree(const PacketTree& tree, PacketNode node, double energy,
                    std::vector<PacketNode>& out) {
  const double own = entropy_cost(tree.node(node), energy);
  if (node.level == tree.depth()) {
    out.push_back(node);
    return own;
  }
  std::vector<PacketNode> children;
  const double split = best_subtree(tree, {node.level + 1, 2 * node.index}, energy, children) +
                       best_subtree(tree, {node.level + 1, 2 * node.index + 1}, energy, children);
  if (own > split) {
    out.insert(out.end(), children.begin(), children.end());
    return split;
  }
  out.push_back(node);
  return own;
}

}  // namespace

std::vector<PacketNode> best_basis(const PacketTree& tree) {
  const double energy = squared_norm(tree.node({0, 0}));
  std::vector<PacketNode> nodes;
  best_subtree(tree, {0, 0}, energy, nodes);
  return nodes;
}

double basis_cost(const PacketTree& tree, std::span<const PacketNode> nodes) {
  const double energy = squared_norm(tree.node({0, 0}));
  double total = 0.0;
  for (const auto& node : nodes) total += entropy_cost(tree.node(node), energy);
  return total;
}

}  // namespace amp::transforms
