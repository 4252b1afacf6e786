// Deterministic fan-out over independent work items: results land in input
// order regardless of scheduling, so parallel runs are byte-identical to
// serial ones.
#ifndef POLYGAP_PARALLEL_HPP
#define POLYGAP_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace polygap {

inline int worker_count() {
    if (const char* env = std::getenv("POLYGAP_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

template <typename R>
std::vector<R> ordered_parallel_map(std::size_t count,
                                    const std::function<R(std::size_t)>& fn,
                                    int workers = worker_count()) {
    std::vector<R> results(count);
    if (count == 0) return results;
    workers = std::min<std::size_t>(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e); // first failure in input order
    return results;
}

} // namespace polygap

#endif
