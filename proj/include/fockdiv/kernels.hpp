#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Inner loops of the grid scans. Each routine processes one row segment of grid
// points (xs[i], y) against a single disc. The scalar versions are the reference;
// vector versions must produce bitwise identical output.
namespace fockdiv::kernels {

enum class Backend { Scalar, Avx2, Neon };

// counts[i] += 1 if (xs[i]-cx)^2 + (y-cy)^2 < r2
using CountInsideFn = void (*)(const double* xs, std::size_t n, double y, double cx, double cy,
                               double r2, std::int32_t* counts);
// gap[i] = min(gap[i], sqrt((xs[i]-cx)^2 + (y-cy)^2) - rho)
using MinGapFn = void (*)(const double* xs, std::size_t n, double y, double cx, double cy,
                          double rho, double* gap);

struct Table {
  Backend backend;
  const char* name;
  CountInsideFn count_inside;
  MinGapFn min_gap;
};

const Table& scalar_table();
// nullptr when the backend is not compiled in or the CPU lacks it.
const Table* avx2_table();
const Table* neon_table();

// Chosen once: FOCKDIV_SIMD=scalar|avx2|neon if set and available, else the widest
// supported backend.
const Table& active();
// Returns false (and keeps the current table) when b is unavailable.
bool set_active(Backend b);

std::string_view backend_name(Backend b);

} // namespace fockdiv::kernels
