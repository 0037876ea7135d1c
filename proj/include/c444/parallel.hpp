#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace c444 {

inline std::atomic<unsigned> g_threads{0}; // 0: hardware concurrency

inline void     set_threads(unsigned n) { g_threads = n; }
inline unsigned threads()
{
  unsigned n = g_threads;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

// fn(i) for i in [0, n), work stolen through a shared counter; the first exception is rethrown
template <class Fn> void parallel_for(std::size_t n, Fn &&fn)
{
  unsigned const nt = static_cast<unsigned>(std::min<std::size_t>(threads(), n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr       err;
  std::atomic<bool>        failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
        }
      }
    });
  for (auto &th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

} // namespace c444
