#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amp/decompose.hpp"

namespace amp {

namespace {

constexpr std::size_t kMirrored = 2;

struct Knots {
  std::vector<double> x;
  std::vector<double> y;
};

// Mirrors up to kMirrored extrema about a symmetry point at each end of the
// signal. The symmetry point is either the first/last extremum or the
// boundary sample itself, chosen so that the mirrored sequence keeps the
// alternation of maxima and minima.
struct MirroredExtrema {
  Knots upper;
  Knots lower;
};

std::vector<std::size_t> take_front(const std::vector<std::size_t>& v, std::size_t from,
                                    std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i < v.size() && out.size() < count; ++i) out.push_back(v[i]);
  return out;
}

std::vector<std::size_t> take_back(const std::vector<std::size_t>& v, std::size_t skip,
                                   std::size_t count) {
  std::vector<std::size_t> out;
  if (v.size() <= skip) return out;
  const std::size_t end = v.size() - skip;
  for (std::size_t i = end; i-- > 0 && out.size() < count;) out.push_back(v[i]);
  return out;
}

MirroredExtrema mirror_extrema(std::span<const double> x, const std::vector<std::size_t>& maxima,
                               const std::vector<std::size_t>& minima) {
  const std::size_t n = x.size();
  const double last = static_cast<double>(n - 1);

  // Left side. Indices are listed nearest-to-boundary first.
  std::vector<std::size_t> lmax, lmin;
  double lsym = 0.0;
  bool lsym_is_max = false;
  bool lsym_is_min = false;
  if (maxima.front() < minima.front()) {
    if (x[0] > x[minima.front()]) {
      lmax = take_front(maxima, 1, kMirrored);
      lmin = take_front(minima, 0, kMirrored);
      lsym = static_cast<double>(maxima.front());
      lsym_is_max = true;
    } else {
      lmax = take_front(maxima, 0, kMirrored);
      lmin = take_front(minima, 0, kMirrored - 1);
      lmin.insert(lmin.begin(), 0);
    }
  } else {
    if (x[0] < x[maxima.front()]) {
      lmax = take_front(maxima, 0, kMirrored);
      lmin = take_front(minima, 1, kMirrored);
      lsym = static_cast<double>(minima.front());
      lsym_is_min = true;
    } else {
      lmax = take_front(maxima, 0, kMirrored - 1);
      lmax.insert(lmax.begin(), 0);
      lmin = take_front(minima, 0, kMirrored);
    }
  }
  auto farthest_left = [&](const std::vector<std::size_t>& idx) {
    return idx.empty() ? -1.0 : 2.0 * lsym - static_cast<double>(idx.back());
  };
  if (farthest_left(lmax) > 0.0 || farthest_left(lmin) > 0.0) {
    // Mirroring about an extremum did not reach past the boundary.
    if (lsym_is_max) lmax = take_front(maxima, 0, kMirrored);
    if (lsym_is_min) lmin = take_front(minima, 0, kMirrored);
    lsym = 0.0;
  }

  // Right side.
  std::vector<std::size_t> rmax, rmin;
  double rsym = last;
  bool rsym_is_max = false;
  bool rsym_is_min = false;
  if (maxima.back() < minima.back()) {
    if (x[n - 1] < x[maxima.back()]) {
      rmax = take_back(maxima, 0, kMirrored);
      rmin = take_back(minima, 1, kMirrored);
      rsym = static_cast<double>(minima.back());
      rsym_is_min = true;
    } else {
      rmax = take_back(maxima, 0, kMirrored - 1);
      rmax.insert(rmax.begin(), n - 1);
      rmin = take_back(minima, 0, kMirrored);
    }
  } else {
    if (x[n - 1] > x[minima.back()]) {
      rmax = take_back(maxima, 1, kMirrored);
      rmin = take_back(minima, 0, kMirrored);
      rsym = static_cast<double>(maxima.back());
      rsym_is_max = true;
    } else {
      rmax = take_back(maxima, 0, kMirrored);
      rmin = take_back(minima, 0, kMirrored - 1);
      rmin.insert(rmin.begin(), n - 1);
    }
  }
  auto farthest_right = [&](const std::vector<std::size_t>& idx) {
    return idx.empty() ? last + 1.0 : 2.0 * rsym - static_cast<double>(idx.back());
  };
  if (farthest_right(rmax) < last || farthest_right(rmin) < last) {
    if (rsym_is_max) rmax = take_back(maxima, 0, kMirrored);
    if (rsym_is_min) rmin = take_back(minima, 0, kMirrored);
    rsym = last;
  }

  auto assemble = [&](const std::vector<std::size_t>& left, const std::vector<std::size_t>& mid,
                      const std::vector<std::size_t>& right) {
    Knots k;
    for (std::size_t i = left.size(); i-- > 0;) {
      k.x.push_back(2.0 * lsym - static_cast<double>(left[i]));
      k.y.push_back(x[left[i]]);
    }
    for (std::size_t i : mid) {
      k.x.push_back(static_cast<double>(i));
      k.y.push_back(x[i]);
    }
    for (std::size_t i : right) {
      k.x.push_back(2.0 * rsym - static_cast<double>(i));
      k.y.push_back(x[i]);
    }
    // A boundary sample mirrored onto itself can coincide with a neighbouring
    // knot; keep knots strictly increasing.
    Knots clean;
    for (std::size_t i = 0; i < k.x.size(); ++i) {
      if (!clean.x.empty() && k.x[i] <= clean.x.back()) continue;
      clean.x.push_back(k.x[i]);
      clean.y.push_back(k.y[i]);
    }
    return clean;
  };

  return {assemble(lmax, maxima, rmax), assemble(lmin, minima, rmin)};
}

}  // namespace

std::vector<std::size_t> interior_extrema(std::span<const double> x, bool minima) {
  std::vector<std::size_t> out;
  const std::size_t n = x.size();
  if (n < 3) return out;
  auto rises = [&](double from, double to) { return minima ? to < from : to > from; };

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!rises(x[i - 1], x[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 < n && rises(x[j + 1], x[i])) out.push_back((i + j) / 2);
    i = j + 1;
  }
  return out;
}

std::vector<double> cubic_spline(std::span<const double> knots_x, std::span<const double> knots_y,
                                 std::size_t n) {
  const std::size_t k = knots_x.size();
  if (k != knots_y.size() || k < 2) throw std::invalid_argument("cubic_spline: need >= 2 knots");
  for (std::size_t i = 1; i < k; ++i) {
    if (!(knots_x[i] > knots_x[i - 1])) {
      throw std::invalid_argument("cubic_spline: knots must be strictly increasing");
    }
  }

  // Second derivatives with natural end conditions (Thomas algorithm).
  std::vector<double> m(k, 0.0);
  if (k > 2) {
    const std::size_t inner = k - 2;
    std::vector<double> diag(inner), upper(inner), rhs(inner);
    for (std::size_t i = 1; i + 1 < k; ++i) {
      const double h0 = knots_x[i] - knots_x[i - 1];
      const double h1 = knots_x[i + 1] - knots_x[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((knots_y[i + 1] - knots_y[i]) / h1 - (knots_y[i] - knots_y[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < inner; ++i) {
      const double lower = knots_x[i + 1] - knots_x[i];  // h_{i} below the diagonal
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[inner] = rhs[inner - 1] / diag[inner - 1];
    for (std::size_t i = inner - 1; i-- > 0;) {
      m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
  }

  std::vector<double> out(n);
  std::size_t seg = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double xt = static_cast<double>(t);
    while (seg + 2 < k && xt > knots_x[seg + 1]) ++seg;
    const double x0 = knots_x[seg], x1 = knots_x[seg + 1];
    const double h = x1 - x0;
    const double a = (x1 - xt) / h;
    const double b = (xt - x0) / h;
    out[t] = a * knots_y[seg] + b * knots_y[seg + 1] +
             ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * h * h / 6.0;
  }
  return out;
}

std::vector<double> envelope_mean(std::span<const double> x) {
  const auto maxima = interior_extrema(x, false);
  const auto minima = interior_extrema(x, true);
  if (maxima.size() < 2 || minima.size() < 2) {
    throw std::invalid_argument("envelope_mean: too few extrema");
  }
  const auto knots = mirror_extrema(x, maxima, minima);
  const auto upper = cubic_spline(knots.upper.x, knots.upper.y, x.size());
  const auto lower = cubic_spline(knots.lower.x, knots.lower.y, x.size());
  std::vector<double> mean(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) mean[t] = 0.5 * (upper[t] + lower[t]);
  return mean;
}

namespace {

bool siftable(std::span<const double> x) {
  return interior_extrema(x, false).size() >= 2 && interior_extrema(x, true).size() >= 2;
}

}  // namespace

EmdResult emd_imfs(std::span<const double> x, const EmdOptions& opts) {
  for (double v : x) {
    if (std::isnan(v) || std::isinf(v)) throw std::invalid_argument("emd: non-finite input");
  }
  if (!(opts.sift_tolerance > 0.0) || opts.max_sift_iters == 0) {
    throw std::invalid_argument("emd: invalid sifting options");
  }

  EmdResult result;
  result.residual.assign(x.begin(), x.end());
  const double input_energy = squared_norm(x);

  while (result.imfs.size() < opts.max_imfs && siftable(result.residual)) {
    if (opts.residual_energy_ratio > 0.0 &&
        squared_norm(result.residual) <= opts.residual_energy_ratio * input_energy) {
      break;
    }

    std::vector<double> h = result.residual;
    for (std::size_t iter = 0; iter < opts.max_sift_iters; ++iter) {
      if (!siftable(h)) break;
      const auto mean = envelope_mean(h);
      const double before = squared_norm(h);
      double change = 0.0;
      for (std::size_t t = 0; t < h.size(); ++t) {
        h[t] -= mean[t];
        change += mean[t] * mean[t];
      }
      if (!(before > 0.0) || change / before < opts.sift_tolerance) break;
    }

    for (std::size_t t = 0; t < h.size(); ++t) result.residual[t] -= h[t];
    result.imfs.push_back(std::move(h));
  }
  return result;
}

}  // namespace amp
