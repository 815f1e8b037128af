#pragma once

#include <cstddef>
#include <functional>

namespace fockdiv::parallel {

// Worker count used by every parallel loop in the library. 0 restores the default
// (hardware concurrency).
void set_workers(unsigned n);
unsigned workers();

// Splits [0, n) into contiguous static blocks, one per worker, and calls
// body(begin, end) for each. Block boundaries depend only on n and the worker count,
// so reductions done per index are reproducible.
void for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

template <class F>
void for_each_index(std::size_t n, F&& f) {
  for_blocks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) f(i);
  });
}

} // namespace fockdiv::parallel
