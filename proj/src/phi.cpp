#include "halfscan/phi.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "halfscan/geom.hpp"

namespace halfscan {

double PhiSpec::eval(double mu_r, double mu_b) const {
  if (std::isnan(mu_r) || std::isnan(mu_b)) throw Error(ErrorCode::InvalidMu, "NaN density");
  switch (kind) {
    case PhiKind::Disc:
      return std::abs(mu_r - mu_b);
    case PhiKind::Balance:
      return 1.0 - std::abs((mu_r - mu_b) - ctx.f);
    case PhiKind::Kulldorff: {
      const double r = std::clamp(mu_r, kEpsPhi, 1.0 - kEpsPhi);
      const double b = std::clamp(mu_b, kEpsPhi, 1.0 - kEpsPhi);
      return r * std::log(r / b) + (1.0 - r) * std::log((1.0 - r) / (1.0 - b));
    }
    case PhiKind::LineCover:
      return ctx.n_r - std::abs(mu_r * ctx.n_r - mu_b * ctx.n_b - ctx.k);
  }
  return 0.0;
}

bool PhiSpec::in_valid_region(double mu_r, double mu_b) const {
  return mu_r >= valid_lo && mu_r <= valid_hi && mu_b >= valid_lo && mu_b <= valid_hi;
}

double phi_eval(const PhiSpec &spec, double mu_r, double mu_b) { return spec.eval(mu_r, mu_b); }

PhiSpec phi_disc() {
  PhiSpec s;
  s.name = "disc";
  s.kind = PhiKind::Disc;
  s.shape = PhiShape::Convex;
  s.lipschitz_c = 1.0;
  return s;
}

PhiSpec phi_balance(double f) {
  PhiSpec s;
  s.name = "balance";
  s.kind = PhiKind::Balance;
  s.shape = PhiShape::Concave;
  s.lipschitz_c = 1.0;
  s.ctx.f = f;
  return s;
}

// Gradient bound of the KL form on [0.05, 0.95]^2: |d/dmu_b| peaks at
// 0.95/0.05 - 0.05/0.95 < 19, |d/dmu_r| at 2 ln 19 < 6.
PhiSpec phi_kulldorff() {
  PhiSpec s;
  s.name = "kulldorff";
  s.kind = PhiKind::Kulldorff;
  s.shape = PhiShape::Convex;
  s.lipschitz_c = 19.0;
  s.valid_lo = 0.05;
  s.valid_hi = 0.95;
  return s;
}

PhiSpec phi_line_cover(double k, double n_r, double n_b) {
  PhiSpec s;
  s.name = "line-cover";
  s.kind = PhiKind::LineCover;
  s.shape = PhiShape::Other;
  s.lipschitz_c = std::max(1.0, n_r + n_b);
  s.ctx.k = k;
  s.ctx.n_r = n_r;
  s.ctx.n_b = n_b;
  return s;
}

PhiSpec phi_by_name(std::string_view name) {
  if (name == "disc") return phi_disc();
  if (name == "kulldorff") return phi_kulldorff();
  if (name.starts_with("balance")) {
    double f = 0.0;
    if (name.size() > 8 && name[7] == ':') {
      const auto arg = name.substr(8);
      const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), f);
      if (ec != std::errc{} || end != arg.data() + arg.size()) throw Error(ErrorCode::Guard, "bad balance target");
    } else if (name.size() != 7) {
      throw Error(ErrorCode::Guard, "unknown phi '" + std::string(name) + "'");
    }
    return phi_balance(f);
  }
  throw Error(ErrorCode::Guard, "unknown phi '" + std::string(name) + "' (disc, balance:<f>, kulldorff)");
}

}  // namespace halfscan
