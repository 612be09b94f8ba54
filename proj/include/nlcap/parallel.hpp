#pragma once

// OpenMP helpers. Every parallel loop in the library writes results into
// index-addressed slots, so output never depends on thread count or
// scheduling; with OpenMP disabled the loops degrade to plain serial code.

#include <cstddef>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlcap {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs body(i) for i in [0, n). Exceptions are captured and rethrown on the
/// calling thread (the first one wins).
template <class Body>
void parallel_for(std::size_t n, Body&& body, bool parallel = true) {
  if (!parallel || n <= 1 || max_threads() == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    if (err) continue;
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(nlcap_parallel_for_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

/// splitmix64 finalizer; used to derive independent, reproducible RNG
/// streams from a user seed and a stream index.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// splitmix64 generator: one instance per (seed, stream) pair. Sample
/// assignment is fixed by the stream index, never by the thread, so Monte
/// Carlo results are bitwise reproducible at any thread count.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
               mix64(0x5851f42d4c957f2dULL * (stream + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }
  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nlcap
