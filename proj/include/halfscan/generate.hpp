#pragma once

#include <cstddef>
#include <span>

#include "halfscan/geom.hpp"
#include "halfscan/rng.hpp"

namespace halfscan {

/// n points uniform in the unit square; each Red with probability red_frac.
Dataset uniform_points(std::size_t n, double red_frac, Rng &rng);

/// Halfplane through a uniform point of the unit square, slope angle uniform in
/// (-0.95 pi/2, 0.95 pi/2), side chosen by a fair coin.
Halfplane random_halfplane(Rng &rng);

struct Planted {
  Dataset points;
  Halfplane plant;
};

/// n/2 red and n/2 blue points in the unit square with mu_R(plant) - mu_B(plant) >= gap.
Planted planted_points(std::size_t n, double gap, Rng &rng);

/// Number of unit points of `pts` inside h (brute force).
double exact_count(std::span<const LabeledPoint> pts, const Halfplane &h);

}  // namespace halfscan
