#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace amp::transforms {

/// Non-redundant half spectrum X_0 ... X_{n/2} of a real signal (unnormalized,
/// X_f = sum_k x_k exp(-2 pi i f k / n)).
std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// Full-depth orthonormal Haar DWT. Output layout is scale-major: index 0
/// holds the final approximation, indices [2^j, 2^(j+1)) hold the 2^j detail
/// coefficients of the scale whose atoms span n / 2^j samples. n must be a
/// power of two.
std::vector<double> haar_dwt(std::span<const double> x);
std::vector<double> haar_idwt(std::span<const double> coeffs);

/// Signal-domain atom of coefficient `index` in the haar_dwt layout.
std::vector<double> haar_atom(std::size_t n, std::size_t index);

struct PacketNode {
  std::size_t level = 0;  // 0 is the root
  std::size_t index = 0;  // position within the level, 0 ... 2^level - 1
  friend bool operator==(const PacketNode&, const PacketNode&) = default;
};

/// Full-depth Haar wavelet packet tree. Level L is stored as one length-n
/// array holding its 2^L nodes back to back; node b of level L occupies
/// [b * n / 2^L, (b + 1) * n / 2^L). Children of node b are 2b (low-pass)
/// and 2b + 1 (high-pass).
class PacketTree {
 public:
  explicit PacketTree(std::span<const double> x);

  std::size_t size() const { return n_; }
  std::size_t depth() const { return levels_.size() - 1; }
  std::size_t node_length(std::size_t level) const { return n_ >> level; }
  std::span<const double> node(const PacketNode& node) const;

  /// Atom in the signal domain for coefficient `offset` inside `node`.
  std::vector<double> atom(const PacketNode& node, std::size_t offset) const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> levels_;
};

/// Additive Shannon-entropy cost with an external normalization energy:
/// -sum_{v_k != 0} (v_k^2 / energy) ln(v_k^2 / energy). Zero when energy is 0.
double entropy_cost(std::span<const double> v, double energy);

/// Bottom-up best basis of the packet tree under entropy_cost normalized by
/// the root energy. Children replace a parent only when strictly cheaper.
/// Nodes are returned in tree (pre-)order.
std::vector<PacketNode> best_basis(const PacketTree& tree);

/// Total entropy_cost of a set of nodes (root-energy normalization).
double basis_cost(const PacketTree& tree, std::span<const PacketNode> nodes);

}  // namespace amp::transforms
