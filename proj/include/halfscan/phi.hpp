#pragma once

#include <string>
#include <string_view>

namespace halfscan {

enum class PhiKind { Disc, Balance, Kulldorff, LineCover };
enum class PhiShape { Convex, Concave, Linear, Other };

// pole clamp for the Kulldorff statistic
inline constexpr double kEpsPhi = 1e-7;

struct PhiCtx {
  double f = 0.0;    // Balance target
  double k = 0.0;    // LineCover: rays to cut
  double n_r = 0.0;  // LineCover: |R|
  double n_b = 0.0;  // LineCover: |B|
};

struct PhiSpec {
  std::string name;
  PhiKind kind = PhiKind::Disc;
  PhiShape shape = PhiShape::Convex;
  double lipschitz_c = 1.0;
  PhiCtx ctx;
  // Lipschitz bound only claimed on [valid_lo, valid_hi]^2
  double valid_lo = 0.0;
  double valid_hi = 1.0;

  double eval(double mu_r, double mu_b) const;
  bool in_valid_region(double mu_r, double mu_b) const;
  // LineCover is defined on counts and tolerates an empty blue class
  bool needs_blue() const { return kind != PhiKind::LineCover; }
};

double phi_eval(const PhiSpec &spec, double mu_r, double mu_b);

PhiSpec phi_disc();
PhiSpec phi_balance(double f);
PhiSpec phi_kulldorff();
PhiSpec phi_line_cover(double k, double n_r, double n_b);

/// "disc", "balance:<f>", "kulldorff". LineCover needs instance context and
/// is built by the reductions module. Throws Error(Guard) on unknown names.
PhiSpec phi_by_name(std::string_view name);

}  // namespace halfscan
