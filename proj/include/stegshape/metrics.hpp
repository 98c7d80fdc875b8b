#pragma once

#include <array>

#include "stegshape/image.hpp"

namespace steg {

// Smoothed, normalized 256-bin intensity distribution. Every bin is strictly
// positive after smoothing and the bins sum to 1.
using Dist256 = std::array<double, 256>;

// Pseudo-count added to every bin before normalizing. Applied identically to
// the cover and to every candidate stego distribution, so the ranking of
// candidates is not distorted.
inline constexpr double kSmoothingPseudoCount = 1e-3;

Dist256 smooth_normalize(const Counts256& counts);

// All divergences are in bits (log base 2).
double kl_div(const Dist256& p, const Dist256& q);
double js_div(const Dist256& p, const Dist256& q);
double tv_dist(const Dist256& p, const Dist256& q);
double chi2_sym(const Dist256& p, const Dist256& q);

// L1 distance between the two co-occurrence matrices after normalizing each
// by its own total.
double cooc_l1(const Cooc256& a, const Cooc256& b);

// (base - shaped) / base. Positive means the shaped embedding disturbed the
// statistic less than the baseline. Throws on base <= 0.
double relative_gain(double base, double shaped);

}  // namespace steg
