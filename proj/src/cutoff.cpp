#include "fockdiv/cutoff.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/geometry.hpp"

#include <cmath>

namespace fockdiv::potential {

namespace {
double smoothstep(double u) { return u * u * u * (10 - 15 * u + 6 * u * u); }
double smoothstep_prime(double u) { return 30 * u * u * (1 - u) * (1 - u); }
} // namespace

double eta(double s, double C) {
  if (!(C > 0.0)) throw DomainError("cut-off width must be positive");
  if (s <= -C) return 1.0;
  if (s >= 0.0) return 0.0;
  return 1.0 - smoothstep((s + C) / C);
}

double eta_prime(double s, double C) {
  if (!(C > 0.0)) throw DomainError("cut-off width must be positive");
  if (s <= -C || s >= 0.0) return 0.0;
  return -smoothstep_prime((s + C) / C) / C;
}

double eta_prime_sup(double C) {
  if (!(C > 0.0)) throw DomainError("cut-off width must be positive");
  return 15.0 / (8.0 * C);
}

CutoffInterpolant::CutoffInterpolant(Divisor x, std::vector<Eigen::VectorXcd> payload, double C)
    : x_(x.normalized()), p_(std::move(payload)), C_(C) {
  if (!(C > 0.0)) throw DomainError("cut-off width must be positive");
  if (p_.size() != x_.size()) throw ParameterError("one payload per node is required");
  const auto d = disjointness_check(x_, C, CoverMode::Expand);
  if (!d.ok) throw PreconditionError("expanded discs overlap");
}

double CutoffInterpolant::eta_prime_sup() const noexcept { return 15.0 / (8.0 * C_); }

cplx CutoffInterpolant::Q(std::size_t i, cplx z) const {
  const cplx lam = x_[i].center;
  const cplx u = z - lam;
  cplx s = 0.0, uk = 1.0;
  const auto& p = p_[i];
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    s += p[k] * uk;
    uk *= u / std::sqrt(double(k + 1));
  }
  return std::exp(std::conj(lam) * z - 0.5 * std::norm(lam)) * s;
}

CutoffValue CutoffInterpolant::evaluate(cplx z) const {
  CutoffValue out;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const cplx u = z - x_[i].center;
    const double rho = std::abs(u);
    const double s = rho - std::sqrt(double(x_[i].multiplicity)) - C_;
    if (s >= 0.0) continue;  // disjoint supports: at most one node contributes
    const cplx q = Q(i, z);
    out.F += q * eta(s, C_);
    if (s > -C_) {
      out.active = static_cast<int>(i);
      // dbar |u| = u / (2 |u|)
      out.dbar += q * eta_prime(s, C_) * u / (2 * rho);
      out.dbar_bound = eta_prime_sup() * std::abs(q);
    }
  }
  return out;
}

} // namespace fockdiv::potential
