#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace shiftlab {

// Evaluates f(0..n-1) into a vector. The parallel version uses OpenMP with
// dynamic scheduling; both produce identical output because every slot is
// written by exactly one call. The first exception, by index, is rethrown.
template <class R>
std::vector<R> map_serial(std::size_t n, const std::function<R(std::size_t)>& f) {
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

template <class R>
std::vector<R> map_parallel(std::size_t n, const std::function<R(std::size_t)>& f) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errs(n);
  const long len = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < len; ++i) {
    try {
      out[i] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class R>
std::vector<R> map_points(std::size_t n, const std::function<R(std::size_t)>& f, bool parallel) {
  return parallel ? map_parallel<R>(n, f) : map_serial<R>(n, f);
}

}  // namespace shiftlab
