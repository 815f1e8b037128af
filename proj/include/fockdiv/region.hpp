#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace fockdiv {

using cplx = std::complex<double>;

// Finite window standing in for the plane: a rectangle or a disc, sampled on the
// square grid of spacing h. Points closer than `collar` to the outer boundary form
// the exclusion collar; verdicts are reported on the rest (the interior).
class Region {
public:
  enum class Shape { Box, Disc };

  struct Row {
    double y;
    double x0;
    std::size_t n;
    std::size_t offset;  // index of the row's first point in the flattened grid
  };

  static Region box(double xmin, double xmax, double ymin, double ymax, double h, double collar = 0.0);
  static Region disc(cplx center, double radius, double h, double collar = 0.0);

  Shape shape() const noexcept { return shape_; }
  double h() const noexcept { return h_; }
  double collar() const noexcept { return collar_; }
  cplx center() const noexcept { return center_; }
  double disc_radius() const noexcept { return radius_; }
  double xmin() const noexcept { return xmin_; }
  double xmax() const noexcept { return xmax_; }
  double ymin() const noexcept { return ymin_; }
  double ymax() const noexcept { return ymax_; }

  Region with_collar(double collar) const;
  Region with_h(double h) const;
  // Coordinates multiplied by s (used to pass to alpha = 1 normalization).
  Region scaled(double s) const;

  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return size_; }
  double x(const Row& r, std::size_t i) const noexcept { return r.x0 + double(i) * h_; }

  bool contains(cplx z) const;
  // Distance from z to the outer boundary, negative outside.
  double boundary_distance(cplx z) const;
  bool in_interior(cplx z) const { return boundary_distance(z) >= collar_ - 1e-12 * h_; }

  // Radius of the largest origin-centred disc inside the interior (0 if none).
  double inner_radius() const;
  double outer_radius() const;  // max |z| over the region
  double area() const;

  std::string describe() const;

private:
  Region() = default;
  void build_rows();

  Shape shape_ = Shape::Box;
  double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
  cplx center_{};
  double radius_ = 0;
  double h_ = 1;
  double collar_ = 0;
  std::vector<Row> rows_;
  std::size_t size_ = 0;
};

} // namespace fockdiv
