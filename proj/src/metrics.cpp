#include "stegshape/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace steg {

Dist256 smooth_normalize(const Counts256& counts) {
  std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) {
    throw std::invalid_argument("smooth_normalize: all-zero counts");
  }
  double denom = static_cast<double>(total) + 256.0 * kSmoothingPseudoCount;
  Dist256 dist;
  for (int v = 0; v < 256; ++v) {
    dist[v] = (static_cast<double>(counts[v]) + kSmoothingPseudoCount) / denom;
  }
  return dist;
}

double kl_div(const Dist256& p, const Dist256& q) {
  double sum = 0.0;
  for (int v = 0; v < 256; ++v) {
    if (p[v] > 0.0) {
      sum += p[v] * std::log2(p[v] / q[v]);
    }
  }
  return sum;
}

double js_div(const Dist256& p, const Dist256& q) {
  Dist256 m;
  for (int v = 0; v < 256; ++v) {
    m[v] = 0.5 * (p[v] + q[v]);
  }
  return 0.5 * kl_div(p, m) + 0.5 * kl_div(q, m);
}

double tv_dist(const Dist256& p, const Dist256& q) {
  double sum = 0.0;
  for (int v = 0; v < 256; ++v) {
    sum += std::abs(p[v] - q[v]);
  }
  return 0.5 * sum;
}

double chi2_sym(const Dist256& p, const Dist256& q) {
  double sum = 0.0;
  for (int v = 0; v < 256; ++v) {
    double denom = p[v] + q[v];
    if (denom > 0.0) {  // 0/0 terms carry no evidence
      double diff = p[v] - q[v];
      sum += diff * diff / denom;
    }
  }
  return sum;
}

double cooc_l1(const Cooc256& a, const Cooc256& b) {
  double ta = static_cast<double>(a.total());
  double tb = static_cast<double>(b.total());
  if (ta == 0.0 || tb == 0.0) {
    throw std::invalid_argument("cooc_l1: zero-total matrix");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    sum += std::abs(static_cast<double>(a.counts[i]) / ta -
                    static_cast<double>(b.counts[i]) / tb);
  }
  return sum;
}

double relative_gain(double base, double shaped) {
  if (base <= 0.0) {
    throw std::invalid_argument("relative_gain: degenerate baseline");
  }
  return (base - shaped) / base;
}

}  // namespace steg
