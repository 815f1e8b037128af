#include "fockdiv/divisor.hpp"

#include "fockdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fockdiv {

Divisor::Divisor(std::vector<Node> nodes, double alpha) : nodes_(std::move(nodes)), alpha_(alpha) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw DomainError("alpha must be positive");
  for (const auto& n : nodes_) {
    if (n.multiplicity < 1) throw DomainError("multiplicities must be at least 1");
    if (!std::isfinite(n.center.real()) || !std::isfinite(n.center.imag()))
      throw DomainError("node centers must be finite");
  }
  std::vector<std::size_t> order(nodes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    return std::pair{nodes_[i].center.real(), nodes_[i].center.imag()};
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (key(order[i]) == key(order[i - 1]))
      throw DomainError("divisor centers must be pairwise distinct");
}

double Divisor::radius(std::size_t i) const { return std::sqrt(nodes_[i].multiplicity / alpha_); }

double Divisor::max_radius() const {
  int m = max_multiplicity();
  return m > 0 ? std::sqrt(m / alpha_) : 0.0;
}

double Divisor::min_radius() const {
  if (nodes_.empty()) return 0.0;
  int m = nodes_.front().multiplicity;
  for (const auto& n : nodes_) m = std::min(m, n.multiplicity);
  return std::sqrt(m / alpha_);
}

long long Divisor::total_multiplicity() const {
  long long s = 0;
  for (const auto& n : nodes_) s += n.multiplicity;
  return s;
}

int Divisor::max_multiplicity() const {
  int m = 0;
  for (const auto& n : nodes_) m = std::max(m, n.multiplicity);
  return m;
}

double Divisor::max_abs_center() const {
  double r = 0.0;
  for (const auto& n : nodes_) r = std::max(r, std::abs(n.center));
  return r;
}

Divisor Divisor::normalized() const {
  if (alpha_ == 1.0) return *this;
  const double s = std::sqrt(alpha_);
  std::vector<Node> out = nodes_;
  for (auto& n : out) n.center *= s;
  return Divisor(std::move(out), 1.0);
}

Divisor Divisor::subset(const std::vector<std::size_t>& keep) const {
  std::vector<Node> out;
  out.reserve(keep.size());
  for (auto i : keep) out.push_back(nodes_.at(i));
  return Divisor(std::move(out), alpha_);
}

Divisor Divisor::without(const std::vector<std::size_t>& drop) const {
  std::vector<char> gone(nodes_.size(), 0);
  for (auto i : drop) gone.at(i) = 1;
  std::vector<Node> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!gone[i]) out.push_back(nodes_[i]);
  return Divisor(std::move(out), alpha_);
}

Divisor Divisor::with_node(Node n) const {
  std::vector<Node> out = nodes_;
  out.push_back(n);
  return Divisor(std::move(out), alpha_);
}

namespace generate {

Divisor square_lattice(double spacing, int multiplicity, double extent, double hole, double alpha,
                       double jitter, std::uint64_t seed) {
  if (!(spacing > 0.0)) throw ParameterError("lattice spacing must be positive");
  if (!(extent >= 0.0)) throw ParameterError("lattice extent must be nonnegative");
  const int n = static_cast<int>(std::floor(extent / spacing));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Node> nodes;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const cplx z(i * spacing, j * spacing);
      const double r = std::abs(z);
      if (r > extent || r < hole) continue;
      cplx c = z;
      if (jitter > 0.0) c += cplx(jitter * u(rng), jitter * u(rng));
      nodes.push_back({c, multiplicity});
    }
  return Divisor(std::move(nodes), alpha);
}

Divisor hex_lattice(double spacing, int multiplicity, double extent, double hole, double alpha) {
  if (!(spacing > 0.0)) throw ParameterError("lattice spacing must be positive");
  const cplx e1(spacing, 0.0), e2(0.5 * spacing, 0.5 * std::sqrt(3.0) * spacing);
  const int n = static_cast<int>(std::ceil(2.0 * extent / spacing)) + 1;
  std::vector<Node> nodes;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j) {
      const cplx z = double(i) * e1 + double(j) * e2;
      const double r = std::abs(z);
      if (r > extent || r < hole) continue;
      nodes.push_back({z, multiplicity});
    }
  return Divisor(std::move(nodes), alpha);
}

Divisor radial_rings(const std::vector<Ring>& rings, const std::vector<Node>& extra, double alpha,
                     double spacing_fraction, double phase) {
  std::vector<Node> nodes;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const Ring& ring = rings[r];
    if (ring.multiplicity < 1) throw ParameterError("ring multiplicity must be at least 1");
    if (ring.radius == 0.0) {
      nodes.push_back({cplx(0.0, 0.0), ring.multiplicity});
      continue;
    }
    int count = ring.count;
    if (count <= 0) {
      const double gap = spacing_fraction * std::sqrt(ring.multiplicity / alpha);
      count = std::max(1, static_cast<int>(std::ceil(2.0 * std::numbers::pi * ring.radius / gap)));
    }
    // Alternate rings are offset by half a step so neighbouring rings interleave.
    const double offset = phase + (r % 2 ? std::numbers::pi / count : 0.0);
    for (int k = 0; k < count; ++k)
      nodes.push_back({std::polar(ring.radius, offset + 2.0 * std::numbers::pi * k / count),
                       ring.multiplicity});
  }
  nodes.insert(nodes.end(), extra.begin(), extra.end());
  return Divisor(std::move(nodes), alpha);
}

} // namespace generate

} // namespace fockdiv
