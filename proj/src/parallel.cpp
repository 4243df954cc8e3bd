#include "cevmc/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cevmc {

unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void run_blocks(std::size_t n_items, std::size_t block_size, unsigned threads,
                const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    const std::size_t n_blocks = block_count(n_items, block_size);
    if (n_blocks == 0) return;

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            const std::size_t begin = b * block_size;
            const std::size_t end = begin + block_size < n_items ? begin + block_size : n_items;
            try {
                body(b, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n_blocks, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::size_t n_workers = threads == 0 ? 1 : threads;
    if (n_workers > n_blocks) n_workers = n_blocks;
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cevmc
