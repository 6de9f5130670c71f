#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <type_traits>
#include <vector>

namespace oplab {

/// Applies `fn` to every element of `items` and returns the results in order.
/// Work is split across up to hardware_concurrency() threads; `fn` must be
/// free of shared mutable state. Exceptions propagate to the caller.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn) -> std::vector<std::invoke_result_t<Fn, const T&>> {
  using R = std::invoke_result_t<Fn, const T&>;
  const std::size_t n = items.size();
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    std::vector<R> out;
    out.reserve(n);
    for (const T& item : items) out.push_back(fn(item));
    return out;
  }
  std::vector<std::future<std::vector<R>>> chunks;
  const std::size_t per = (n + workers - 1) / workers;
  for (std::size_t begin = 0; begin < n; begin += per) {
    const std::size_t end = std::min(n, begin + per);
    chunks.push_back(std::async(std::launch::async, [&items, &fn, begin, end] {
      std::vector<R> part;
      part.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) part.push_back(fn(items[i]));
      return part;
    }));
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& c : chunks) {
    for (auto& r : c.get()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace oplab
