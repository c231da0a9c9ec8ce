#ifndef CUBINC_PARALLEL_HPP_
#define CUBINC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cubinc {

// Splits [0, n) into `threads` contiguous chunks and runs fn(begin, end) on
// each. Chunk boundaries depend only on (n, threads). The first exception
// thrown by a worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(threads, n);
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(chunks);
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks, end = n * (c + 1) / chunks;
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cubinc

#endif  // CUBINC_PARALLEL_HPP_
