#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fockdiv {

using cplx = std::complex<double>;

struct Node {
  cplx center;
  int multiplicity = 1;
};

// Finite weighted point set {(lambda, m_lambda)} with weight parameter alpha.
// Immutable after construction.
class Divisor {
public:
  Divisor() = default;
  explicit Divisor(std::vector<Node> nodes, double alpha = 1.0);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  double alpha() const noexcept { return alpha_; }

  // r_lambda = sqrt(m_lambda / alpha)
  double radius(std::size_t i) const;
  double max_radius() const;
  double min_radius() const;
  long long total_multiplicity() const;
  int max_multiplicity() const;
  double max_abs_center() const;

  // Same divisor in coordinates where alpha = 1 (centers scaled by sqrt(alpha)).
  Divisor normalized() const;
  Divisor subset(const std::vector<std::size_t>& keep) const;
  Divisor without(const std::vector<std::size_t>& drop) const;
  Divisor with_node(Node n) const;

private:
  std::vector<Node> nodes_;
  double alpha_ = 1.0;
};

// CSV with header "re,im,multiplicity". Blank lines and lines starting with '#' are
// skipped on input.
Divisor read_divisor_csv(std::istream& in, double alpha = 1.0);
Divisor read_divisor_file(const std::string& path, double alpha = 1.0);
void write_divisor_csv(std::ostream& out, const Divisor& x);

namespace generate {

// Nodes k*spacing + i*l*spacing (+ jitter) with |lambda| <= extent and |lambda| >= hole.
Divisor square_lattice(double spacing, int multiplicity, double extent, double hole = 0.0,
                       double alpha = 1.0, double jitter = 0.0, std::uint64_t seed = 0);
Divisor hex_lattice(double spacing, int multiplicity, double extent, double hole = 0.0,
                    double alpha = 1.0);

struct Ring {
  double radius = 0.0;
  int multiplicity = 1;
  int count = 0;  // 0: choose so that neighbours are spacing_fraction*sqrt(m) apart
};

Divisor radial_rings(const std::vector<Ring>& rings, const std::vector<Node>& extra = {},
                     double alpha = 1.0, double spacing_fraction = 0.5, double phase = 0.0);

} // namespace generate

} // namespace fockdiv
