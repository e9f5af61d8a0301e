#include "boundedflow/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace boundedflow {

int thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* cap = std::getenv("BOUNDEDFLOW_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit >= 1) n = std::min(n, limit);
    }
    return n;
}

void parallel_for(Index begin, Index end, const std::function<void(Index)>& body) {
    const Index count = end - begin;
    if (count <= 0) return;
    const int workers = std::min<Index>(thread_count(), count);
    if (workers <= 1) {
        for (Index i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const Index chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const Index lo = begin + chunk * w;
        const Index hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (Index i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace boundedflow
