#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fanokit {

/// Worker count: FANOKIT_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("FANOKIT_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(in[i]). Results land in input order whatever the schedule;
/// the first exception (by index) is rethrown after all workers finish.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, unsigned threads = thread_count()) {
  using R = decltype(fn(in.front()));
  std::vector<std::optional<R>> slots(in.size());
  std::vector<std::exception_ptr> errors(in.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < in.size(); i = next++) {
      try {
        slots[i].emplace(fn(in[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(in.size(), 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(in.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fanokit
