#pragma once

#include "lsf/evolution.hpp"

#include <cstddef>

namespace lsf {

// Runs body(i) for i in [0, n). The serial path is the reference the
// OpenMP path is tested against; bodies write only to slot i.
template <class Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
  const long count = static_cast<long>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
}

// Caps the OpenMP team size; 0 leaves the runtime default.
void set_thread_limit(int threads);
int thread_limit();

}  // namespace lsf
