#include <doctest.h>

#include "fockdiv/errors.hpp"
#include "fockdiv/fock.hpp"
#include "fockdiv/specfun.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fockdiv;
using namespace fockdiv::fock;

namespace {
CoefVec random_coefs(int n, std::mt19937_64& rng, double decay = 0.0) {
  std::normal_distribution<double> g;
  Vec a(n);
  for (int k = 0; k < n; ++k) a[k] = cplx(g(rng), g(rng)) * std::exp(-decay * k);
  a /= a.norm();
  return CoefVec(a);
}
} // namespace

TEST_CASE("displacement matrix against quadrature") {
  for (cplx z : {cplx(0.5, 0), cplx(1, 1), cplx(2, -0.3), cplx(-2.2, 1.9)}) {
    const auto D = displacement_matrix(z, 8);
    double err = 0.0;
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j) err = std::max(err, std::abs(D(k, j) - oracle::displacement_entry(z, k, j)));
    CHECK(err < 1e-9);
  }
}

TEST_CASE("displacement matrix basic structure") {
  const auto I = displacement_matrix(0.0, 6);
  CHECK((I.matrix() - Mat::Identity(6, 6)).norm() == 0.0);
  CHECK_THROWS_AS(displacement_matrix(1.0, 0), ParameterError);

  const cplx z(1.3, -0.7);
  const auto D = displacement_matrix(z, 30);
  const double r = std::abs(z);
  for (int k = 0; k < 30; ++k) {
    const double expect = std::pow(r, k) * std::exp(-0.5 * r * r) * oracle::inv_sqrt_fact(k);
    CHECK(std::abs(D(k, 0)) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(D(k, 0) == (CoefVec::kernel(z, 30)[k]));
  }
  // Column 0 of D(1) truncated to 8 rows.
  const auto D1 = displacement_matrix(1.0, 8);
  CHECK(D1.column_deficit(0) == doctest::Approx(specfun::omega(0, 0) * 0 + specfun::sigma(7, 1.0)).epsilon(1e-12));
}

TEST_CASE("isometry and group property within the tail bound") {
  std::mt19937_64 rng(7);
  for (cplx z : {cplx(0.4, 0.2), cplx(2, 1), cplx(-3, 0.5), cplx(5, 5)}) {
    for (int n : {20, 60, 150}) {
      const auto D = displacement_matrix(z, n);
      const double tau = D.tail_bound();
      const Mat G = D.matrix().adjoint() * D.matrix() - Mat::Identity(n, n);
      CHECK(G.cwiseAbs().maxCoeff() <= tau + 1e-13);
      const auto a = random_coefs(n, rng);
      CHECK(std::abs(D.apply(a).norm_sq() - 1.0) <= tau + 1e-13);
      const auto Dm = displacement_matrix(-z, n);
      const Mat P = D.matrix() * Dm.matrix() - Mat::Identity(n, n);
      CHECK(P.cwiseAbs().maxCoeff() <= 2 * tau + 1e-12);
    }
  }
}

TEST_CASE("displacement stays finite for large arguments") {
  const auto D = displacement_matrix(cplx(30, -12), 2000, 50);
  CHECK(D.matrix().allFinite());
  CHECK(D.max_column_deficit() < 1e-12);
  const Mat G = D.matrix().adjoint() * D.matrix() - Mat::Identity(50, 50);
  CHECK(G.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("basis disc norms") {
  CHECK(basis_disc_norm(2, std::sqrt(2.0)) == doctest::Approx(0.32332358381693654053).epsilon(1e-13));
  CHECK(basis_disc_norm(5, 0.0) == 0.0);
  CHECK(basis_disc_norm(0, INFINITY) == 1.0);
  CHECK(basis_disc_norm(0, 40.0) == 1.0);
  const auto q = oracle::polar_integral(0.0, std::sqrt(2.0), [](cplx w) {
    return std::norm(w * w) / 2.0 * std::exp(-std::norm(w));
  });
  CHECK(q.real() == doctest::Approx(0.32332358381693654053).epsilon(1e-12));
}

TEST_CASE("restriction values and quotient norms") {
  const auto e0 = CoefVec::basis(0, 10);
  CHECK(std::abs(restriction_values(e0, 0.0, 1)[0] - 1.0) < 1e-15);
  CHECK(quotient_norm_sq(e0, 0.0, 1) == doctest::Approx(1.0));
  CHECK(quotient_norm_sq(CoefVec::basis(5, 10), 0.0, 5) == 0.0);
  CHECK_THROWS_AS(restriction_values(e0, 0.0, 11), ParameterError);
  CHECK_THROWS_AS(restriction_values(e0, 0.0, 0), ParameterError);

  const cplx z(0.8, -1.1), lam(-0.6, 0.9);
  const int n = 80, m = 6;
  const auto k = CoefVec::kernel(z, n);
  const auto v = restriction_values(k, lam, m);
  const double rho = std::abs(lam - z);
  for (int j = 0; j < m; ++j) {
    const double expect = std::pow(rho, j) * std::exp(-0.5 * rho * rho) * oracle::inv_sqrt_fact(j);
    CHECK(std::abs(v[j]) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(quotient_norm_sq(k, lam, m) == doctest::Approx(specfun::omega(m - 1, rho * rho)).epsilon(1e-12));

  // Random f: <f, T_lam e_j> by quadrature.
  std::mt19937_64 rng(11);
  const auto f = random_coefs(10, rng);
  const auto rv = restriction_values(f, lam, 3);
  for (int j = 0; j < 3; ++j) {
    auto g = [&](cplx w) {
      const cplx t = std::exp(std::conj(lam) * w - 0.5 * std::norm(lam)) * std::pow(w - lam, j) *
                     oracle::inv_sqrt_fact(j);
      return f.evaluate(w) * std::conj(t) * std::exp(-std::norm(w));
    };
    CHECK(std::abs(rv[j] - oracle::polar_integral(0.0, 14.0, g)) < 1e-9);
  }
}

TEST_CASE("kernel sampling energy two ways") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6, 6);
  std::uniform_int_distribution<int> mult(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Node> nodes;
    for (int i = 0; i < 5; ++i) nodes.push_back({cplx(u(rng), u(rng)), mult(rng)});
    const Divisor x(nodes, 1.0);
    const cplx z(u(rng), u(rng));
    const int n = recommended_truncation(x);
    const auto k = CoefVec::kernel(z, std::max(n, int(std::ceil(std::pow(std::abs(z) + 10, 2)))));
    double direct = 0.0;
    for (const auto& nd : x.nodes()) direct += quotient_norm_sq(k, nd.center, nd.multiplicity);
    CHECK(std::abs(direct - kernel_sampling_energy(z, x)) < 1e-9);
  }
  CHECK(kernel_sampling_energy(0.0, Divisor({{0.0, 1}}, 1.0)) == doctest::Approx(1.0));
  CHECK(kernel_sampling_energy(0.0, Divisor({}, 1.0)) == 0.0);
  const double e = kernel_sampling_energy(cplx(0, 3), Divisor({{0.0, 9}}, 1.0));
  // omega_{m-1}(m) sits just below 1/2; the half bound holds for omega_m(m).
  CHECK(e == doctest::Approx(specfun::omega(8, 9.0)).epsilon(1e-14));
  CHECK(e < 0.5);
  CHECK(kernel_sampling_energy(cplx(0, 3), Divisor({{0.0, 10}}, 1.0)) >= 0.5);
  // Decay away from the union of discs.
  const Divisor one({{0.0, 4}}, 1.0);
  double prev = 2.0;
  for (double r = 2.0; r < 9.0; r += 0.5) {
    const double v = kernel_sampling_energy(r, one);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("disc local norms") {
  CHECK(disc_local_norm_sq(CoefVec::basis(0, 5), 0.0, 30.0) == doctest::Approx(1.0));
  for (int k : {0, 3, 9})
    CHECK(disc_local_norm_sq(CoefVec::basis(k, 12), 0.0, 2.5) ==
          doctest::Approx(specfun::sigma(k, 6.25)).epsilon(1e-14));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_coefs(12, rng, 0.1);
    const cplx c(1, 1);
    const double R = 2.0;
    auto g = [&](cplx w) { return cplx(std::norm(f.evaluate(w)) * std::exp(-std::norm(w))); };
    const double q = oracle::polar_integral(c, R, g).real();
    CHECK(std::abs(disc_local_norm_sq(f, c, R) - q) < 1e-9);
  }
}

TEST_CASE("low-degree mass controlled by the shrunken disc") {
  // sum_{k<n}|a_k|^2 <= C(A) * mass on D(sqrt n - A), C(A) = 1/min(1/2, eps(A)^2).
  std::mt19937_64 rng(9);
  for (double A : {0.5, 1.0, 2.0}) {
    const auto lb = specfun::verify_tail_lower_a(A, 400);
    const double CA = 1.0 / std::min(0.5, lb.epsilon * lb.epsilon);
    for (int n : {16, 36, 64, 100}) {
      if (n < lb.k0 + 1) continue;
      for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_coefs(n + 40, rng, trial * 0.02);
        double low = 0.0;
        for (int k = 0; k < n; ++k) low += std::norm(f[k]);
        const double r = std::sqrt(double(n)) - A;
        CHECK(low <= CA * disc_local_norm_sq(f, 0.0, r));
      }
    }
  }
}

TEST_CASE("local concentration") {
  {
    const double eta = 0.5;
    Vec a = Vec::Zero(20);
    a[0] = std::sqrt(eta / 2);
    const auto r = local_concentration_check(CoefVec(a), 4, eta);
    CHECK(r.passes);
    CHECK(r.a_used == 0.0);
  }
  {
    const int m = 100;
    const double eta = 0.5;
    const int n = 160;
    Vec a = Vec::Zero(n);
    a[m] = 1.0 / std::sqrt(specfun::sigma(m, m));
    const auto r = local_concentration_check(CoefVec(a), m, eta);
    // Independent scan on sigma_m((sqrt m - a)^2) <= eta sigma_m(m).
    double a_ref = -1;
    for (int i = 0; i * 0.05 <= 10.0; ++i) {
      const double aa = i * 0.05, rr = 10.0 - aa;
      if (specfun::sigma(m, rr * rr) <= eta * specfun::sigma(m, m)) {
        a_ref = aa;
        break;
      }
    }
    CHECK(r.a_used == doctest::Approx(a_ref));
    CHECK(!r.inconclusive);
    CHECK(r.passes);
    CHECK(r.a_predicted >= r.a_used);
  }
  {
    std::mt19937_64 rng(21);
    const int m = 64;
    const double eta = 0.6;
    for (int trial = 0; trial < 4; ++trial) {
      Vec a = Vec::Zero(m + 40);
      std::normal_distribution<double> g;
      for (int k = m; k <= m + 10; ++k) a[k] = cplx(g(rng), g(rng));
      a /= std::sqrt(disc_local_norm_sq(CoefVec(a), 0.0, 8.0));
      const auto r = local_concentration_check(CoefVec(a), m, eta);
      CHECK(r.passes);
      CHECK(r.a_used <= r.a_predicted);
    }
  }
  Vec a = Vec::Zero(10);
  a[0] = 1.0;
  CHECK_THROWS_AS(local_concentration_check(CoefVec(a), 4, 0.5), PreconditionError);
}

TEST_CASE("recommended truncation") {
  const Divisor x({{cplx(3, 4), 9}, {0.0, 2}}, 1.0);
  CHECK(recommended_truncation(x) == int(std::ceil(std::pow(5.0 + 3.0 + 6.0, 2))) + 16);
  CHECK(kernel_tail(10, 2.0) == doctest::Approx(specfun::sigma(9, 4.0)));
}
