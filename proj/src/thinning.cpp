#include "fockdiv/errors.hpp"
#include "fockdiv/geometry.hpp"
#include "fockdiv/csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockdiv {

ThinningResult thin_subdivisor(const Divisor& x, const Region& w, std::span<const double> C_list) {
  if (x.empty()) throw PreconditionError("shrink-covering fails: the divisor is empty");
  for (std::size_t i = 0; i < C_list.size(); ++i) {
    if (!(C_list[i] >= 0.0) || !std::isfinite(C_list[i]))
      throw ParameterError("margins must be finite and nonnegative");
    if (i > 0 && !(C_list[i] > C_list[i - 1])) throw ParameterError("margins must be increasing");
  }
  // All of the construction lives in alpha = 1 coordinates.
  const double scale = std::sqrt(x.alpha());
  const Divisor xn = x.normalized();
  const Region wn = w.scaled(scale);
  constexpr double inf = std::numeric_limits<double>::infinity();

  for (double C : C_list) {
    const DiscSystem d = DiscSystem::from(xn, C, CoverMode::Shrink);
    if (d.empty() || !uncovered_set(d, wn).compact)
      throw PreconditionError("shrink-covering fails on the window for C = " + csv::format(C));
  }

  // Lambda_s collects multiplicities in [(s-1)^2, s^2), so s_max = floor(sqrt(max m)) + 1.
  const int s_max = static_cast<int>(std::floor(std::sqrt(double(xn.max_multiplicity())))) + 1;
  std::vector<double> R(s_max + 1, 0.0);
  double running = 0.0;
  for (int s = 1; s <= s_max; ++s) {
    const DiscSystem d = DiscSystem::from(xn, s, CoverMode::Shrink);
    const UncoveredSet u = uncovered_set(d, wn);
    const double r = (d.empty() || !u.compact) ? inf : u.max_abs;
    running = std::max(running, r);  // the construction wants a nondecreasing sequence
    R[s] = running;
  }

  ThinningResult res;
  std::vector<char> gone(xn.size(), 0);
  for (int s = 1; s <= s_max; ++s) {
    ThinningStep st;
    st.s = s;
    st.R = R[s] / scale;
    st.threshold = (R[s] + s) / scale;
    for (std::size_t i = 0; i < xn.size(); ++i) {
      const int m = xn[i].multiplicity;
      if (gone[i] || m < (s - 1) * (s - 1) || m >= s * s) continue;
      if (std::abs(xn[i].center) > R[s] + s) {
        gone[i] = 1;
        res.removed.push_back(i);
        ++st.removed;
      }
    }
    res.steps.push_back(st);
  }
  std::sort(res.removed.begin(), res.removed.end());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < xn.size(); ++i)
    if (!gone[i]) keep.push_back(i);
  res.thinned = x.subset(keep);

  // Retained nodes beyond R_s + s must have multiplicity at least s^2.
  for (auto& st : res.steps) {
    const double t = st.threshold * scale;
    int mn = 0;
    for (auto i : keep)
      if (std::abs(xn[i].center) > t) mn = mn == 0 ? xn[i].multiplicity : std::min(mn, xn[i].multiplicity);
    st.min_multiplicity_beyond = mn;
    if (std::isfinite(t) && mn != 0 && mn < st.s * st.s)
      throw VerificationError("retained node below multiplicity s^2 beyond R_s + s for s = " +
                              std::to_string(st.s));
  }

  // (U_n) must survive with the same radii; other margins must keep a compact exception.
  const Divisor tn = res.thinned.normalized();
  for (double C : C_list) {
    const DiscSystem d = DiscSystem::from(tn, C, CoverMode::Shrink);
    const UncoveredSet u = uncovered_set(d, wn);
    if (d.empty() || !u.compact)
      throw VerificationError("shrink-covering lost after thinning for C = " + csv::format(C));
    const double n = std::round(C);
    if (n == C && n >= 1 && n <= s_max && std::isfinite(R[int(n)]) &&
        u.max_abs > R[int(n)] + 1e-9 * std::max(1.0, R[int(n)]))
      throw VerificationError("(U_n) radius grew after thinning for n = " + csv::format(C));
  }
  return res;
}

} // namespace fockdiv
