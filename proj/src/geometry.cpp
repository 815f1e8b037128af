#include "fockdiv/geometry.hpp"

#include "fockdiv/errors.hpp"
#include "fockdiv/kernels.hpp"
#include "fockdiv/parallel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace fockdiv {

double DiscSystem::max_rho() const {
  double r = 0.0;
  for (double v : rho) r = std::max(r, v);
  return r;
}

DiscSystem DiscSystem::from(const Divisor& x, double C, CoverMode mode) {
  if (!std::isfinite(C) || C < 0.0) throw ParameterError("margin C must be finite and nonnegative");
  DiscSystem d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x.radius(i);
    double rho;
    if (mode == CoverMode::Expand) {
      rho = r + C;
    } else {
      if (!(x[i].multiplicity > x.alpha() * C * C)) continue;
      rho = r - C;
      if (!(rho > 0.0)) continue;
    }
    d.cx.push_back(x[i].center.real());
    d.cy.push_back(x[i].center.imag());
    d.rho.push_back(rho);
    d.source.push_back(i);
  }
  return d;
}

namespace {

// Uniform bucket grid over disc centres, SoA per cell.
class CellIndex {
public:
  CellIndex(const DiscSystem& d, double x0, double x1, double y0, double y1, double hint) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      x0 = std::min(x0, d.cx[i]);
      x1 = std::max(x1, d.cx[i]);
      y0 = std::min(y0, d.cy[i]);
      y1 = std::max(y1, d.cy[i]);
    }
    const double extent = std::max(x1 - x0, y1 - y0);
    cell_ = std::max({hint, extent / 2000.0, 1e-9});
    x0_ = x0 - cell_;
    y0_ = y0 - cell_;
    nx_ = static_cast<int>(std::floor((x1 - x0_) / cell_)) + 2;
    ny_ = static_cast<int>(std::floor((y1 - y0_) / cell_)) + 2;
    std::vector<int> cell_of(d.size());
    start_.assign(std::size_t(nx_) * ny_ + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      cell_of[i] = ix(d.cx[i]) + nx_ * iy(d.cy[i]);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    cx_.resize(d.size());
    cy_.resize(d.size());
    rho_.resize(d.size());
    id_.resize(d.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const int pos = fill[cell_of[i]]++;
      cx_[pos] = d.cx[i];
      cy_[pos] = d.cy[i];
      rho_[pos] = d.rho[i];
      id_[pos] = i;
    }
  }

  int ix(double x) const { return std::clamp(static_cast<int>(std::floor((x - x0_) / cell_)), 0, nx_ - 1); }
  int iy(double y) const { return std::clamp(static_cast<int>(std::floor((y - y0_) / cell_)), 0, ny_ - 1); }
  double cell() const { return cell_; }
  double cell_x0(int i) const { return x0_ + i * cell_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  template <class F>
  void for_cell(int cx, int cy, F&& f) const {
    if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) return;
    const int c = cx + nx_ * cy;
    for (int k = start_[c]; k < start_[c + 1]; ++k) f(cx_[k], cy_[k], rho_[k], id_[k]);
  }

  // Cells at Chebyshev distance exactly d from (cx, cy).
  template <class F>
  void for_ring(int cx, int cy, int d, F&& f) const {
    if (d == 0) {
      for_cell(cx, cy, f);
      return;
    }
    for (int x = cx - d; x <= cx + d; ++x) {
      for_cell(x, cy - d, f);
      for_cell(x, cy + d, f);
    }
    for (int y = cy - d + 1; y <= cy + d - 1; ++y) {
      for_cell(cx - d, y, f);
      for_cell(cx + d, y, f);
    }
  }

  template <class F>
  void for_near(cplx z, double reach, F&& f) const {
    const int cx = ix(z.real()), cy = iy(z.imag());
    const int k = static_cast<int>(std::ceil(reach / cell_)) + 1;
    for (int d = 0; d <= k; ++d) for_ring(cx, cy, d, f);
  }

private:
  double cell_ = 1.0, x0_ = 0.0, y0_ = 0.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> start_;
  std::vector<double> cx_, cy_, rho_;
  std::vector<std::size_t> id_;
};

CellIndex make_index(const DiscSystem& d, const Region& w) {
  return CellIndex(d, w.xmin(), w.xmax(), w.ymin(), w.ymax(), std::max(d.max_rho(), 16.0 * w.h()));
}

// Calls body(row, i_begin, i_end, cell_x) for each maximal run of a row inside one cell column.
template <class F>
void for_row_segments(const CellIndex& idx, const Region& w, const Region::Row& row, F&& body) {
  std::size_t i = 0;
  while (i < row.n) {
    const int c = idx.ix(w.x(row, i));
    std::size_t j = i + 1;
    while (j < row.n && idx.ix(w.x(row, j)) == c) ++j;
    body(i, j, c);
    i = j;
  }
}

std::vector<double> row_xs(const Region& w, const Region::Row& row) {
  std::vector<double> xs(row.n);
  for (std::size_t i = 0; i < row.n; ++i) xs[i] = w.x(row, i);
  return xs;
}

} // namespace

cplx grid_point(const Region& w, std::size_t flat) {
  const auto& rows = w.rows();
  auto it = std::upper_bound(rows.begin(), rows.end(), flat,
                             [](std::size_t v, const Region::Row& r) { return v < r.offset; });
  const auto& row = *(it - 1);
  return cplx(w.x(row, flat - row.offset), row.y);
}

std::vector<std::int32_t> count_field(const DiscSystem& d, const Region& w) {
  std::vector<std::int32_t> out(w.size(), 0);
  if (d.empty()) return out;
  const CellIndex idx = make_index(d, w);
  const auto& k = kernels::active();
  const int reach = static_cast<int>(std::ceil(d.max_rho() / idx.cell()));
  const auto& rows = w.rows();
  parallel::for_blocks(rows.size(), [&](std::size_t rb, std::size_t re) {
    for (std::size_t r = rb; r < re; ++r) {
      const auto& row = rows[r];
      const auto xs = row_xs(w, row);
      std::int32_t* counts = out.data() + row.offset;
      const int cy = idx.iy(row.y);
      for_row_segments(idx, w, row, [&](std::size_t b, std::size_t e, int cx) {
        for (int dd = 0; dd <= reach; ++dd)
          idx.for_ring(cx, cy, dd, [&](double ccx, double ccy, double rho, std::size_t) {
            if (std::abs(row.y - ccy) >= rho) return;
            k.count_inside(xs.data() + b, e - b, row.y, ccx, ccy, rho * rho, counts + b);
          });
      });
    }
  });
  return out;
}

std::vector<double> gap_field(const DiscSystem& d, const Region& w) {
  std::vector<double> out(w.size(), std::numeric_limits<double>::infinity());
  if (d.empty()) return out;
  const CellIndex idx = make_index(d, w);
  const auto& k = kernels::active();
  const double rho_max = d.max_rho();
  const int max_ring = std::max(idx.nx(), idx.ny());
  const auto& rows = w.rows();
  parallel::for_blocks(rows.size(), [&](std::size_t rb, std::size_t re) {
    for (std::size_t r = rb; r < re; ++r) {
      const auto& row = rows[r];
      const auto xs = row_xs(w, row);
      double* gap = out.data() + row.offset;
      const int cy = idx.iy(row.y);
      for_row_segments(idx, w, row, [&](std::size_t b, std::size_t e, int cx) {
        for (int dd = 0; dd <= max_ring; ++dd) {
          idx.for_ring(cx, cy, dd, [&](double ccx, double ccy, double rho, std::size_t) {
            k.min_gap(xs.data() + b, e - b, row.y, ccx, ccy, rho, gap + b);
          });
          // Centres not yet visited are at least dd cells away from every point here.
          const double bound = dd * idx.cell() - rho_max;
          const double worst = *std::max_element(gap + b, gap + e);
          if (worst <= bound) break;
        }
      });
    }
  });
  return out;
}

int overlap_count(const Divisor& x, cplx z) {
  int c = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::norm(z - x[i].center) < x[i].multiplicity / x.alpha()) ++c;
  return c;
}

namespace {

// Intersection points of two circles (0, 1 or 2), with tangency accepted up to tol.
int circle_crossings(cplx za, double ra, cplx zb, double rb, std::array<cplx, 2>& p, double tol) {
  const cplx dz = zb - za;
  const double d = std::abs(dz);
  if (d == 0.0 || d > ra + rb + tol || d < std::abs(ra - rb) - tol) return 0;
  const double a = (d * d + ra * ra - rb * rb) / (2 * d);
  const double h = std::sqrt(std::max(0.0, ra * ra - a * a));
  const cplx u = dz / d;
  const cplx base = za + a * u;
  p[0] = base + cplx(0, 1) * h * u;
  p[1] = base - cplx(0, 1) * h * u;
  return h == 0.0 ? 1 : 2;
}

} // namespace

OverlapEstimate overlap_constant(const Divisor& x, const Region& w) {
  OverlapEstimate est;
  const DiscSystem d = DiscSystem::from(x);
  const auto field = count_field(d, w);
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field[i] > est.grid_value) {
      est.grid_value = field[i];
      est.argmax = grid_point(w, i);
    }
  est.value = est.grid_value;
  if (d.empty()) return est;

  const CellIndex idx = make_index(d, w);
  const double rho_max = d.max_rho();
  auto count_at = [&](cplx z) {
    int c = 0;
    idx.for_near(z, rho_max, [&](double cx, double cy, double rho, std::size_t) {
      if (std::norm(z - cplx(cx, cy)) < rho * rho) ++c;
    });
    return c;
  };
  std::vector<cplx> cand;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const cplx zi(d.cx[i], d.cy[i]);
    cand.push_back(zi);
    idx.for_near(zi, 2 * rho_max, [&](double cx, double cy, double rho, std::size_t j) {
      if (j <= i) return;
      std::array<cplx, 2> p;
      const cplx zj(cx, cy);
      const int n = circle_crossings(zi, d.rho[i], zj, rho, p, 0.0);
      for (int t = 0; t < n; ++t) {
        // Step just inside the lens along the sum of the inward normals.
        const cplx dir = (zi - p[t]) / std::abs(zi - p[t]) + (zj - p[t]) / std::abs(zj - p[t]);
        const double nd = std::abs(dir);
        if (nd == 0.0) continue;
        cand.push_back(p[t] + 1e-9 * std::min(d.rho[i], rho) * dir / nd);
      }
    });
  }
  est.candidates = cand.size();
  std::vector<int> counts(cand.size());
  parallel::for_each_index(cand.size(), [&](std::size_t i) { counts[i] = count_at(cand[i]); });
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (counts[i] > est.candidate_value) {
      est.candidate_value = counts[i];
      if (counts[i] > est.value) {
        est.value = counts[i];
        est.argmax = cand[i];
      }
    }
  return est;
}

CoveringMargin covering_margin(const Divisor& x, double C, const Region& w, CoverMode mode) {
  CoveringMargin cm;
  const DiscSystem d = DiscSystem::from(x, C, mode);
  cm.resolution = w.h() / std::sqrt(2.0);
  if (d.empty()) {
    cm.empty_system = true;
    cm.margin = std::numeric_limits<double>::infinity();
    return cm;
  }
  const auto gap = gap_field(d, w);
  for (const auto& row : w.rows())
    for (std::size_t i = 0; i < row.n; ++i) {
      const cplx z(w.x(row, i), row.y);
      if (!w.in_interior(z)) continue;
      ++cm.points;
      const double g = gap[row.offset + i];
      if (g > cm.margin) {
        cm.margin = g;
        cm.worst_z = z;
      }
    }
  if (cm.points == 0) throw ParameterError("region interior (outside the collar) has no grid points");
  return cm;
}

Disjointness disjointness_check(const Divisor& x, double C, CoverMode mode) {
  Disjointness res;
  const DiscSystem d = DiscSystem::from(x, C, mode);
  if (d.empty()) {
    res.empty_system = true;
    return res;
  }
  double lo_x = d.cx[0], hi_x = d.cx[0], lo_y = d.cy[0], hi_y = d.cy[0];
  const double rho_max = d.max_rho();
  const CellIndex idx(d, lo_x, hi_x, lo_y, hi_y, 2 * rho_max);
  res.violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const cplx zi(d.cx[i], d.cy[i]);
    idx.for_near(zi, 2 * rho_max, [&](double cx, double cy, double rho, std::size_t j) {
      if (j <= i) return;
      const double v = d.rho[i] + rho - std::abs(zi - cplx(cx, cy));
      if (v > res.violation) {
        res.violation = v;
        res.i = d.source[i];
        res.j = d.source[j];
      }
    });
  }
  res.ok = res.violation <= kGeomTol * std::max(1.0, rho_max);
  return res;
}

double lens_area(const Disc& a, const Disc& b) {
  const double d = std::abs(a.center - b.center);
  const double r1 = a.radius, r2 = b.radius;
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) return std::numbers::pi * std::pow(std::min(r1, r2), 2);
  const double c1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0);
  const double c2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0);
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
}

double lens_area_quadrature(const Disc& a, const Disc& b) {
  const double d = std::abs(a.center - b.center);
  const double r1 = a.radius, r2 = b.radius;
  const double lo = std::max(-r1, d - r2), hi = std::min(r1, d + r2);
  if (!(hi > lo)) return 0.0;
  auto chord = [=](double x) {
    const double h1 = r1 * r1 - x * x, h2 = r2 * r2 - (x - d) * (x - d);
    return 2.0 * std::sqrt(std::max(0.0, std::min(h1, h2)));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  // The two chord branches meet where the circles cross.
  if (d > 0.0) {
    const double xc = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    if (xc > lo && xc < hi) return ts.integrate(chord, lo, xc) + ts.integrate(chord, xc, hi);
  }
  return ts.integrate(chord, lo, hi);
}

TripleWitness triple_disc_witness(const Disc& d1, const Disc& d2, const Disc& d3) {
  const std::array<Disc, 3> D{d1, d2, d3};
  for (const auto& d : D)
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw DomainError("disc radii must be positive");
  const double rmin = std::min({d1.radius, d2.radius, d3.radius});
  const double rmax = std::max({d1.radius, d2.radius, d3.radius});
  auto excess = [&](cplx p) {
    double f = -std::numeric_limits<double>::infinity();
    for (const auto& d : D) f = std::max(f, std::abs(p - d.center) - d.radius);
    return f;
  };
  // A nonempty intersection of three discs contains a centre or a boundary crossing.
  std::vector<cplx> cand{d1.center, d2.center, d3.center};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::array<cplx, 2> p;
      const int n = circle_crossings(D[i].center, D[i].radius, D[j].center, D[j].radius, p,
                                     1e-12 * rmax);
      cand.insert(cand.end(), p.begin(), p.begin() + n);
    }
  cplx best = cand[0];
  double fbest = excess(best);
  for (auto p : cand)
    if (double f = excess(p); f < fbest) {
      fbest = f;
      best = p;
    }
  if (fbest > 1e-12 * rmax) throw PreconditionError("the three discs have no common point");
  // Pattern search on the convex excess to find a point well inside all three.
  for (double step = 0.25 * rmin; step > 1e-13 * rmax; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int k = 0; k < 8; ++k) {
        const cplx p = best + std::polar(step, k * std::numbers::pi / 4);
        if (double f = excess(p); f < fbest) {
          fbest = f;
          best = p;
          moved = true;
        }
      }
    }
  }
  TripleWitness w;
  w.common_point = best;
  w.depth = -fbest;
  w.degenerate = w.depth <= 1e-9 * rmin;
  w.slack = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double m = std::min(D[i].radius, D[j].radius);
      const double s = (D[i].radius + D[j].radius - std::abs(D[i].center - D[j].center)) / m;
      if (s > w.slack) {
        w.slack = s;
        w.i = i;
        w.j = j;
      }
    }
  const double m = std::min(D[w.i].radius, D[w.j].radius);
  w.overlap_area = lens_area_quadrature(D[w.i], D[w.j]);
  w.area_ratio = w.overlap_area / (m * m);
  return w;
}

UncoveredSet uncovered_set(const DiscSystem& d, const Region& w) {
  UncoveredSet u;
  u.inner_radius = w.inner_radius();
  const auto gap = gap_field(d, w);
  const double tol = kGeomTol * std::max(1.0, d.max_rho());
  for (const auto& row : w.rows())
    for (std::size_t i = 0; i < row.n; ++i) {
      const cplx z(w.x(row, i), row.y);
      if (!w.in_interior(z)) continue;
      if (gap[row.offset + i] > tol) {
        ++u.points;
        u.max_abs = std::max(u.max_abs, std::abs(z));
      }
    }
  u.area = double(u.points) * w.h() * w.h();
  u.compact = u.points == 0 || u.max_abs <= kCompactFraction * u.inner_radius;
  return u;
}

} // namespace fockdiv
