#include "critflow/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace critflow {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_threads(unsigned n) { g_threads.store(n == 0 ? 1 : n); }
unsigned configured_threads() { return g_threads.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned nthreads = std::min<std::size_t>(configured_threads(), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    static std::mutex err_mu;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace critflow
