#pragma once

#include <cstddef>
#include <functional>

namespace cevmc {

// Fixed decomposition into blocks of kBlockSize consecutive items. Workers
// claim whole blocks; each block's items are processed sequentially in index
// order and per-block results are merged in block order by the caller, so
// the set and order of floating-point operations never depends on the thread
// count or the schedule.
inline constexpr std::size_t kBlockSize = 4096;

inline std::size_t block_count(std::size_t n_items, std::size_t block_size = kBlockSize) {
    return (n_items + block_size - 1) / block_size;
}

// Resolves a requested thread count: values <= 0 mean hardware concurrency.
unsigned resolve_threads(int requested);

// Invokes body(block_index, begin, end) once per block, possibly from
// different threads. The block size must be a per-call-site constant, never
// derived from the thread count. The first exception thrown by any body is
// rethrown on the calling thread after all workers have stopped.
void run_blocks(std::size_t n_items, std::size_t block_size, unsigned threads,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline void run_blocks(std::size_t n_items, unsigned threads,
                       const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    run_blocks(n_items, kBlockSize, threads, body);
}

} // namespace cevmc
