#pragma once

#include "fockdiv/divisor.hpp"
#include "fockdiv/region.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fockdiv {

enum class CoverMode { Expand, Shrink };

// Absolute tolerance for "covered" and "tangent" verdicts, relative to the largest radius.
inline constexpr double kGeomTol = 1e-12;

// Discs with effective radii, the substrate of every scan. Ineligible nodes (shrink
// mode with m <= alpha C^2) are dropped; `source` maps back to divisor indices.
struct DiscSystem {
  std::vector<double> cx, cy, rho;
  std::vector<std::size_t> source;

  std::size_t size() const noexcept { return rho.size(); }
  bool empty() const noexcept { return rho.empty(); }
  double max_rho() const;

  // rho = r + C (expand) or r - C restricted to m > alpha C^2 (shrink).
  static DiscSystem from(const Divisor& x, double C = 0.0, CoverMode mode = CoverMode::Expand);
};

// Number of open discs containing each grid point of W (flattened row-major order).
std::vector<std::int32_t> count_field(const DiscSystem& d, const Region& w);
// min_i (|z - c_i| - rho_i) at each grid point; +inf when the system is empty.
std::vector<double> gap_field(const DiscSystem& d, const Region& w);

// Grid point i of W as a complex number (same order as the fields).
cplx grid_point(const Region& w, std::size_t flat_index);

int overlap_count(const Divisor& x, cplx z);

struct OverlapEstimate {
  int value = 0;       // max of grid and candidate counts: a certified lower bound for S_X
  cplx argmax{};
  int grid_value = 0;
  int candidate_value = 0;
  std::size_t candidates = 0;
};

OverlapEstimate overlap_constant(const Divisor& x, const Region& w);

struct CoveringMargin {
  cplx worst_z{};
  double margin = -std::numeric_limits<double>::infinity();
  bool empty_system = false;
  std::size_t points = 0;      // interior grid points scanned
  double resolution = 0.0;     // the sup over the interior exceeds margin by at most this
  bool covered() const noexcept { return !empty_system && margin <= kGeomTol; }
};

CoveringMargin covering_margin(const Divisor& x, double C, const Region& w, CoverMode mode);

struct Disjointness {
  bool ok = true;
  std::size_t i = 0, j = 0;    // most violating pair (divisor indices)
  double violation = 0.0;      // rho_i + rho_j - |lambda_i - lambda_j| for that pair
  bool empty_system = false;
};

Disjointness disjointness_check(const Divisor& x, double C, CoverMode mode);

struct Disc {
  cplx center;
  double radius;
};

// Slack constant for the max-slack pair: equal radii, common point on all three
// boundaries, centres 120 degrees apart give 2 - sqrt(3); unequal radii only increase it.
inline constexpr double kTripleSlackConstant = 0.26794919243112270;  // 2 - sqrt(3)
// Lens area / min radius^2 for two unit discs at distance sqrt(3).
inline constexpr double kTripleAreaConstant = 0.18117214741215903;

struct TripleWitness {
  int i = 0, j = 0;
  double slack = 0.0;           // (r_i + r_j - |Z_i - Z_j|) / min(r_i, r_j)
  double overlap_area = 0.0;    // m(D_i cap D_j), by quadrature
  double area_ratio = 0.0;      // overlap_area / min(r_i, r_j)^2
  cplx common_point{};
  double depth = 0.0;           // how far common_point lies inside the thinnest disc
  bool degenerate = false;      // closed discs meet but the open ones (nearly) do not
};

TripleWitness triple_disc_witness(const Disc& d1, const Disc& d2, const Disc& d3);

double lens_area(const Disc& a, const Disc& b);             // closed form
double lens_area_quadrature(const Disc& a, const Disc& b);  // chord-length integral

// Grid points of the interior of W outside every disc of the system.
struct UncoveredSet {
  std::size_t points = 0;
  double area = 0.0;          // points * h^2
  double max_abs = 0.0;       // max |z| over uncovered points (0 if none)
  double inner_radius = 0.0;  // of the interior of W
  bool compact = true;        // max_abs <= kCompactFraction * inner_radius
};

// An uncovered set counts as a compact exception when it stays this deep inside W.
inline constexpr double kCompactFraction = 0.75;

UncoveredSet uncovered_set(const DiscSystem& d, const Region& w);

struct ThinningStep {
  int s = 0;
  double R = 0.0;                 // R_s; +inf when (U_s) is not verified on W
  double threshold = 0.0;         // R_s + s
  std::size_t removed = 0;
  int min_multiplicity_beyond = 0;  // among retained nodes with |lambda| > threshold
};

struct ThinningResult {
  Divisor thinned;
  std::vector<std::size_t> removed;  // indices into the input divisor
  std::vector<ThinningStep> steps;   // s = 1 .. s_max
};

ThinningResult thin_subdivisor(const Divisor& x, const Region& w, std::span<const double> C_list);

} // namespace fockdiv
