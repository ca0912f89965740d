#include "fda/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace fda {
namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("FDA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0)
        return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& threads_setting() {
  static std::atomic<std::size_t> value{default_threads()};
  return value;
}

} // namespace

std::size_t thread_count() { return threads_setting().load(); }

void set_thread_count(std::size_t n) { threads_setting().store(std::max<std::size_t>(1, n)); }

std::size_t parallel_chunks(std::size_t n, std::size_t min_chunk,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0)
    return 0;
  min_chunk = std::max<std::size_t>(1, min_chunk);
  const std::size_t chunks = std::clamp<std::size_t>(n / min_chunk, 1, thread_count());
  if (chunks == 1) {
    body(0, 0, n);
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      workers.emplace_back([&, c, begin, end] {
        try {
          body(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return chunks;
}

} // namespace fda
