#include "fockdiv/region.hpp"

#include "fockdiv/csv.hpp"
#include "fockdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fockdiv {

namespace {
constexpr std::size_t kMaxGridPoints = 400'000'000;
constexpr double kRel = 1e-9;
} // namespace

Region Region::box(double xmin, double xmax, double ymin, double ymax, double h, double collar) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid spacing h must be positive");
  if (!(xmax >= xmin) || !(ymax >= ymin)) throw ParameterError("box region is empty");
  if (!(collar >= 0.0)) throw ParameterError("collar must be nonnegative");
  Region r;
  r.shape_ = Shape::Box;
  r.xmin_ = xmin;
  r.xmax_ = xmax;
  r.ymin_ = ymin;
  r.ymax_ = ymax;
  r.center_ = cplx(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
  r.h_ = h;
  r.collar_ = collar;
  r.build_rows();
  return r;
}

Region Region::disc(cplx center, double radius, double h, double collar) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid spacing h must be positive");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw ParameterError("disc region needs a finite radius");
  if (!(collar >= 0.0)) throw ParameterError("collar must be nonnegative");
  Region r;
  r.shape_ = Shape::Disc;
  r.center_ = center;
  r.radius_ = radius;
  r.xmin_ = center.real() - radius;
  r.xmax_ = center.real() + radius;
  r.ymin_ = center.imag() - radius;
  r.ymax_ = center.imag() + radius;
  r.h_ = h;
  r.collar_ = collar;
  r.build_rows();
  return r;
}

void Region::build_rows() {
  rows_.clear();
  const double nyd = std::floor((ymax_ - ymin_) / h_ * (1 + kRel)) + 1;
  const double nxd = std::floor((xmax_ - xmin_) / h_ * (1 + kRel)) + 1;
  if (nyd * nxd > double(kMaxGridPoints))
    throw ResourceError("region grid would exceed " + std::to_string(kMaxGridPoints) + " points");
  const auto ny = static_cast<std::size_t>(nyd);
  const auto nx = static_cast<std::size_t>(nxd);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = ymin_ + double(j) * h_;
    if (shape_ == Shape::Box) {
      rows_.push_back({y, xmin_, nx, offset});
      offset += nx;
      continue;
    }
    const double dy = y - center_.imag();
    const double w2 = radius_ * radius_ * (1 + 2 * kRel) - dy * dy;
    if (w2 < 0) continue;
    const double w = std::sqrt(w2);
    // first and last grid column (on the box lattice) within the chord
    const double i0 = std::ceil((center_.real() - w - xmin_) / h_ - kRel);
    const double i1 = std::floor((center_.real() + w - xmin_) / h_ + kRel);
    if (i1 < i0) continue;
    const auto n = static_cast<std::size_t>(i1 - i0) + 1;
    rows_.push_back({y, xmin_ + i0 * h_, n, offset});
    offset += n;
  }
  size_ = offset;
  if (size_ == 0) throw ParameterError("region contains no grid points");
}

Region Region::with_collar(double collar) const {
  return shape_ == Shape::Box ? box(xmin_, xmax_, ymin_, ymax_, h_, collar)
                              : disc(center_, radius_, h_, collar);
}

Region Region::with_h(double h) const {
  return shape_ == Shape::Box ? box(xmin_, xmax_, ymin_, ymax_, h, collar_)
                              : disc(center_, radius_, h, collar_);
}

Region Region::scaled(double s) const {
  if (!(s > 0.0)) throw ParameterError("region scale must be positive");
  return shape_ == Shape::Box ? box(s * xmin_, s * xmax_, s * ymin_, s * ymax_, s * h_, s * collar_)
                              : disc(s * center_, s * radius_, s * h_, s * collar_);
}

bool Region::contains(cplx z) const { return boundary_distance(z) >= -kRel * std::max(1.0, h_); }

double Region::boundary_distance(cplx z) const {
  if (shape_ == Shape::Disc) return radius_ - std::abs(z - center_);
  const double dx = std::min(z.real() - xmin_, xmax_ - z.real());
  const double dy = std::min(z.imag() - ymin_, ymax_ - z.imag());
  if (dx >= 0 && dy >= 0) return std::min(dx, dy);
  const double ox = std::max(0.0, -dx), oy = std::max(0.0, -dy);
  return -std::hypot(ox, oy);
}

double Region::inner_radius() const { return std::max(0.0, boundary_distance(cplx(0, 0)) - collar_); }

double Region::outer_radius() const {
  if (shape_ == Shape::Disc) return std::abs(center_) + radius_;
  const double x = std::max(std::abs(xmin_), std::abs(xmax_));
  const double y = std::max(std::abs(ymin_), std::abs(ymax_));
  return std::hypot(x, y);
}

double Region::area() const {
  if (shape_ == Shape::Disc) return std::numbers::pi * radius_ * radius_;
  return (xmax_ - xmin_) * (ymax_ - ymin_);
}

std::string Region::describe() const {
  using csv::format;
  std::string s;
  if (shape_ == Shape::Disc)
    s = "disc(center=" + format(center_.real()) + "+" + format(center_.imag()) + "i, radius=" +
        format(radius_);
  else
    s = "box(x=[" + format(xmin_) + "," + format(xmax_) + "], y=[" + format(ymin_) + "," +
        format(ymax_) + "]";
  return s + ", h=" + format(h_) + ", collar=" + format(collar_) + ")";
}

} // namespace fockdiv
