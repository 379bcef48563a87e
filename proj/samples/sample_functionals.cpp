// Walkthrough: build a few star bodies, evaluate the core functionals, and
// form Orlicz radial sums.  Prints one labeled value per line.
#include <cstdio>

#include "starcalc/starcalc.hpp"

int main() {
  using namespace starcalc;

  // A planar setup: disk of radius 2, unit l1 ball, and a wavy trig-poly body.
  const SphereRule rule = build_quadrature(2, 1024);
  const StarBody disk = StarBody::ball(2, 2.0);
  const StarBody diamond = StarBody::lp_ball(2, 1.0, 1.0);
  const StarBody wavy = StarBody::radial_trig_poly(1.0, {0.0, 0.0, 0.3}, {});

  std::printf("volume(disk r=2)        = %.12f\n", volume(disk, rule));
  std::printf("volume(l1 ball)         = %.12f\n", volume(diamond, rule));
  std::printf("volume(wavy)            = %.12f\n", volume(wavy, rule));

  // Dual mixed volumes, classical and Orlicz-weighted.
  std::printf("V_1(disk, wavy)         = %.12f\n",
              dual_mixed_volume_i(disk, wavy, 1, rule));
  std::printf("V_-2(disk, diamond)     = %.12f\n",
              lp_dual_mixed_volume(disk, diamond, 2.0, rule));
  const OrliczFunction1 square = OrliczFunction1::power(2.0);
  std::printf("V_phi(disk, wavy, t^2)  = %.12f\n",
              orlicz_dual_mixed_volume(disk, wavy, square, 1.0, 1.0, rule));

  // Radial additions: an l2-style radial sum and an Orlicz sum with a
  // two-term power gauge, solved per direction.
  const StarBody radial2 = lp_radial_sum(disk, wavy, 2.0);
  std::printf("volume(disk +_2 wavy)   = %.12f\n", volume(radial2, rule));
  const StarBody orlicz = orlicz_linear_comb(disk, wavy, square, square, 1.0, 1.0);
  std::printf("volume(orlicz sum)      = %.12f\n", volume(orlicz, rule));

  // The harmonic Blaschke sum of two disks is again a disk: radii 1 and 2
  // combine to radius 3.
  const StarBody hb = harmonic_blaschke_sum(StarBody::ball(2, 1.0), StarBody::ball(2, 2.0),
                                            rule);
  std::printf("hb sum radius           = %.12f\n",
              hb.radial(Direction::from_angle(0.0)));

  // Projection norm with a power gauge: for dilates the norm is the exact
  // volume-ratio root.
  std::printf("proj norm(disk, wavy)   = %.12f\n",
              orlicz_dual_projection_norm(disk, wavy, square, 1.0, 1.0, rule));
  return 0;
}
