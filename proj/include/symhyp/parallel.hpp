#ifndef SYMHYP_PARALLEL_HPP
#define SYMHYP_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace symhyp {

/// Worker count: explicit value if nonzero, else SYMHYP_THREADS, else 1.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested) return requested;
    if (const char* env = std::getenv("SYMHYP_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return 1;
}

/// Runs task(i) for i in [0, n) on `threads` workers and returns the results
/// indexed by i, so merged output does not depend on scheduling. The first
/// exception thrown by any task is rethrown after all workers stop.
template <class R, class Task>
std::vector<R> parallel_map(std::size_t n, unsigned threads, Task&& task) {
    std::vector<R> out(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = task(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    {
        std::vector<std::jthread> pool;
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; !failed && (i = next.fetch_add(1)) < n;) {
                    try {
                        out[i] = task(i);
                    } catch (...) {
                        std::lock_guard lock(error_mu);
                        if (!error) error = std::current_exception();
                        failed = true;
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace symhyp

#endif  // SYMHYP_PARALLEL_HPP
