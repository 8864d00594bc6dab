#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace eqdist {

/// Splits [0, count) into at most `jobs` contiguous chunks and runs
/// fn(begin, end, chunk_index) on each, one thread per chunk. Chunk
/// boundaries depend only on (count, jobs), so any per-chunk results merged
/// in chunk order are identical at every parallelism degree.
template <typename Fn>
void parallel_chunks(std::uint64_t count, int jobs, Fn&& fn) {
  if (jobs < 1) jobs = 1;
  const std::uint64_t chunks = std::min<std::uint64_t>(jobs, count ? count : 1);
  if (chunks <= 1) {
    fn(std::uint64_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  const std::uint64_t step = count / chunks;
  const std::uint64_t extra = count % chunks;
  std::uint64_t begin = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t end = begin + step + (c < extra ? 1 : 0);
    workers.emplace_back([&fn, begin, end, c] { fn(begin, end, static_cast<std::size_t>(c)); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

}  // namespace eqdist
