#pragma once

#include <cstddef>
#include <functional>

namespace fda {

/// Number of worker threads used by the expansion kernels. Defaults to the
/// FDA_THREADS environment variable, else std::thread::hardware_concurrency().
/// Results never depend on this value.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, n) into at most thread_count() contiguous chunks and runs
/// body(chunk_index, begin, end) for each, on separate threads when more than
/// one chunk is used. Returns the number of chunks. Chunks are numbered in
/// index order so callers can merge per-chunk results deterministically.
std::size_t parallel_chunks(std::size_t n, std::size_t min_chunk,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// RAII override of the thread count, restoring the previous value on exit.
class ThreadCountScope {
public:
  explicit ThreadCountScope(std::size_t n) : previous_(thread_count()) { set_thread_count(n); }
  ~ThreadCountScope() { set_thread_count(previous_); }
  ThreadCountScope(const ThreadCountScope&) = delete;
  ThreadCountScope& operator=(const ThreadCountScope&) = delete;

private:
  std::size_t previous_;
};

} // namespace fda
