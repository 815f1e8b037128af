#include <doctest.h>

#include "fockdiv/cutoff.hpp"
#include "fockdiv/errors.hpp"
#include "fockdiv/fock.hpp"
#include "fockdiv/potential.hpp"
#include "fockdiv/radial_weight.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fockdiv;
using namespace fockdiv::potential;

namespace {
constexpr double kPi = std::numbers::pi;

// Brute force int_{D(c, r) ∩ D(R)} log(R/|z|) dm: polar about c, clipped by |z| < R.
double disc_log_oracle(cplx c, double r, double R) {
  auto g = [&](cplx z) {
    const double a = std::abs(z);
    return cplx(a < R && a > 0 ? std::log(R / a) : 0.0);
  };
  return (kPi * oracle::polar_integral(c, r, g, 200, 512)).real();
}
} // namespace

TEST_CASE("disc log integral closed form and quadrature") {
  CHECK(disc_log_integral(cplx(5, 1), 2.0, 20.0) ==
        doctest::Approx(kPi * 4 * std::log(20 / std::abs(cplx(5, 1)))).epsilon(1e-14));
  CHECK(disc_log_integral(0.0, 1.0, 7.0) == doctest::Approx(kPi * std::log(7.0) + kPi / 2).epsilon(1e-10));
  CHECK(redistribution_integral(Divisor({}, 1.0), 3.0) == 0.0);
  CHECK_THROWS_AS(redistribution_integral(Divisor({}, 1.0), 0.0), DomainError);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-8, 8), ur(0.3, 3.0);
  for (int i = 0; i < 50; ++i) {
    const cplx c(u(rng), u(rng));
    const double r = ur(rng);
    const double R = std::abs(c) + r + 1.0 + ur(rng);
    if (std::abs(c) <= r) continue;
    const double cf = disc_log_integral(c, r, R);
    const double qd = disc_log_integral(c, r, R, true);
    CHECK(std::abs(cf - qd) <= 1e-6 * std::abs(cf));
  }
  // Straddling discs against the 2-D oracle.
  for (auto [c, r, R] : {std::tuple{cplx(0.5, 0.3), 1.5, 4.0}, {cplx(3, 0), 2.0, 4.0}, {cplx(-1, 2), 3.0, 2.5}}) {
    CHECK(disc_log_integral(c, r, R) == doctest::Approx(disc_log_oracle(c, r, R)).epsilon(1e-5));
  }
}

TEST_CASE("single node stays below the zero-divisor bound") {
  const int m = 25;
  const Divisor x({{0.0, m}}, 1.0);
  const double v0 = 2 * redistribution_integral(x, std::sqrt(m) + 1.0) - kPi * std::pow(std::sqrt(m) + 1, 2);
  for (double R = std::sqrt(m) + 1; R <= 10 * std::sqrt(m); R += 0.5) {
    const double v = 2 * redistribution_integral(x, R) - kPi * R * R;
    CHECK(v <= v0 + 0.05 * std::abs(v0));
  }
}

TEST_CASE("uniqueness certificate") {
  const auto x = generate::square_lattice(2.0, 3, 50.0, 3.0);
  const auto W = Region::disc(0.0, 48.0, 0.1, 2.0);
  std::vector<double> Rs;
  for (double R = 10; R <= 40; R += 2.5) Rs.push_back(R);
  const auto c = uniqueness_certificate(x, W, Rs);
  CHECK(c.area_K > 0.5);
  CHECK(c.area_K < kPi * 9);
  CHECK(c.grows);
  CHECK(c.slope >= c.required_slope);
  for (std::size_t i = 1; i < c.table.size(); ++i) CHECK(c.table[i].I >= c.table[i - 1].I);

  CHECK_THROWS_AS(uniqueness_certificate(Divisor({{0.0, 25}}, 1.0), Region::disc(0.0, 20.0, 0.2, 1.0),
                                         std::vector<double>{5, 10}),
                  PreconditionError);
  // Tangent hexagonal packing leaves curvilinear gaps everywhere.
  const auto hex = generate::hex_lattice(2.0, 1, 30.0);
  CHECK_THROWS_AS(uniqueness_certificate(hex, Region::disc(0.0, 28.0, 0.05, 2.0), std::vector<double>{5, 10}),
                  PreconditionError);
}

TEST_CASE("weight v") {
  const Divisor x({{cplx(1, 1), 4}}, 1.0);
  CHECK(weight_v(x, cplx(3, 1)) == doctest::Approx(0.0).scale(1.0));
  CHECK(weight_v(x, cplx(1, 1) + std::sqrt(2.0)) == doctest::Approx(4 * (-std::log(2.0) + 0.5)).epsilon(1e-14));
  CHECK(weight_v(x, cplx(9, 9)) == 0.0);
  CHECK(std::isinf(weight_v(x, cplx(1, 1))));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5, 5);
  const auto lat = generate::square_lattice(2.5, 4, 6.0);
  for (int i = 0; i < 2000; ++i) CHECK(weight_v(lat, cplx(u(rng), u(rng))) <= 0.0);
}

TEST_CASE("psi laplacian") {
  const Divisor one({{0.0, 9}}, 1.0);
  const auto rep = verify_psi_laplacian(one, Region::box(-6, 6, -6, 6, 0.05));
  CHECK(rep.passes);
  CHECK(rep.inside > 1000);
  CHECK(rep.outside > 1000);
  // Overlapping discs.
  const Divisor two({{0.0, 9}, {cplx(4, 0), 9}}, 1.0);
  const auto r2 = verify_psi_laplacian(two, Region::box(-5, 9, -5, 5, 0.04));
  CHECK(r2.passes);
  const auto lat = generate::square_lattice(2.0, 3, 8.0);
  CHECK(verify_psi_laplacian(lat, Region::box(-6, 6, -6, 6, 0.02)).passes);
  CHECK_THROWS_AS(verify_psi_laplacian(one, Region::box(-6, 6, -6, 6, 1e-7)), ResourceError);
}

TEST_CASE("radial weight") {
  for (double q : {1.0, 4.0, 10.0}) {
    for (double a : {1.0, 3.0, 10.0}) {
      const auto w = build_radial_weight(q, a, 1024);
      const double L = q + a, c = q + 2 * a;
      // Closed form of b.
      const double b_exact = 2 * kPi * a * (L / (c - L) + std::log(1 - L / c));
      CHECK(w.b == doctest::Approx(b_exact).epsilon(1e-12));
      CHECK(w.mass_bound_holds());
      CHECK(w.boundary_value_error <= 1e-8);
      CHECK(w.derivative_mismatch <= 1e-6);
      CHECK(w.ode_residual <= 1e-6);
      CHECK(w.min_laplacian_margin >= -1e-6);
      // Smooth radial functions have slope O(r) and spread O(r^2) at the origin.
      CHECK(w.origin_slope / w.r[0] < 10.0);
      CHECK(w.origin_limit_spread / std::pow(w.r[3], 2) < 10.0);
    }
  }
  CHECK_THROWS_AS(build_radial_weight(0.5, 2.0), DomainError);
  const auto w = build_radial_weight(4, 3);
  CHECK(w.r.size() == 4096);
  for (std::size_t i = 0; i < w.r.size(); ++i) CHECK(w.laplacian_lhs[i] >= 4 * 3 / std::pow(10 - w.r[i], 2) - 1e-6);
}

TEST_CASE("cutoff interpolant") {
  CHECK(eta(-3, 2) == 1.0);
  CHECK(eta(0.5, 2) == 0.0);
  CHECK(eta(-1, 2) == doctest::Approx(0.5));
  CHECK(std::abs(eta_prime(-1, 2)) == doctest::Approx(eta_prime_sup(2)));
  // Numerical sup of |eta'|.
  double mx = 0;
  for (double s = -2; s <= 0; s += 1e-4) mx = std::max(mx, std::abs(eta_prime(s, 2)));
  CHECK(mx == doctest::Approx(eta_prime_sup(2)).epsilon(1e-6));

  const cplx l0(0, 0), l1(12, 0);
  const Divisor x({{l0, 4}, {l1, 9}}, 1.0);
  Eigen::VectorXcd p0(4), p1(9);
  p0 << 1.0, cplx(0, 2), -0.5, 0.25;
  for (int k = 0; k < 9; ++k) p1[k] = cplx(1.0 / (k + 1), -0.1 * k);
  const CutoffInterpolant F(x, {p0, p1}, 2.0);

  const auto deep = F.evaluate(cplx(0.7, 0.3));
  CHECK(std::abs(deep.F - F.Q(0, cplx(0.7, 0.3))) == 0.0);
  CHECK(deep.dbar_bound == 0.0);
  CHECK(F.evaluate(cplx(6, 6)).F == cplx(0.0));
  const cplx zm = l1 + std::polar(3.0 + 1.0, 0.7);
  const auto mid = F.evaluate(zm);
  CHECK(mid.active == 1);
  CHECK(std::abs(mid.F) < std::abs(F.Q(1, zm)));
  CHECK(mid.dbar_bound == doctest::Approx(F.eta_prime_sup() * std::abs(F.Q(1, zm))));
  CHECK(std::abs(mid.dbar) <= mid.dbar_bound);

  // Q_lambda carries the payload as its restriction data at lambda.
  const int n = 400;
  Eigen::VectorXcd pc = Eigen::VectorXcd::Zero(n);
  pc.head(9) = p1;
  const auto D = fock::displacement_matrix(l1, n, n);
  const fock::CoefVec Qc(Eigen::VectorXcd(D.matrix() * pc));
  const auto v = fock::restriction_values(Qc, l1, 9);
  CHECK((v - p1).norm() < 1e-10);
  CHECK(std::abs(Qc.evaluate(cplx(11, 0.5)) - F.Q(1, cplx(11, 0.5))) < 1e-9 * std::abs(F.Q(1, cplx(11, 0.5))));

  CHECK_THROWS_AS(CutoffInterpolant(Divisor({{l0, 4}, {cplx(7, 0), 9}}, 1.0), {p0, p1}, 2.0), PreconditionError);
}
