#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace copos {

struct MinLoc {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
};

namespace detail {
// Total order on (value, index); the index tie-break makes parallel merges
// agree bitwise with the serial scan regardless of merge order.
inline bool better(const MinLoc& a, const MinLoc& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.index < b.index;
}
}  // namespace detail

template <class F>
MinLoc min_sweep_serial(std::size_t n, F&& f) {
  MinLoc best;
  for (std::size_t i = 0; i < n; ++i) {
    MinLoc cur{f(i), i};
    if (detail::better(cur, best)) best = cur;
  }
  return best;
}

// f must be safe to call concurrently for distinct indices.
template <class F>
MinLoc min_sweep_parallel(std::size_t n, F&& f) {
#ifdef _OPENMP
  MinLoc best;
#pragma omp parallel
  {
    MinLoc local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      MinLoc cur{f(static_cast<std::size_t>(i)), static_cast<std::size_t>(i)};
      if (detail::better(cur, local)) local = cur;
    }
#pragma omp critical(copos_min_sweep)
    {
      if (detail::better(local, best)) best = local;
    }
  }
  return best;
#else
  return min_sweep_serial(n, f);
#endif
}

// Parallel when the trip count is worth the fork; result identical either way.
template <class F>
MinLoc min_sweep(std::size_t n, F&& f) {
  if (n >= 256) return min_sweep_parallel(n, f);
  return min_sweep_serial(n, f);
}

template <class F>
void fill_serial(std::size_t n, double* out, F&& f) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

template <class F>
void fill_parallel(std::size_t n, double* out, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
#else
  fill_serial(n, out, f);
#endif
}

template <class F>
std::vector<double> fill(std::size_t n, F&& f) {
  std::vector<double> out(n);
  if (n >= 256)
    fill_parallel(n, out.data(), f);
  else
    fill_serial(n, out.data(), f);
  return out;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace copos
