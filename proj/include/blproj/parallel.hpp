#pragma once

#include <Eigen/Core>
#include <exception>
#include <thread>
#include <vector>

namespace blproj {

/// Runs body(i) for i in [0, count) on up to `threads` workers, each worker
/// owning one contiguous index range. Work items must be independent; with
/// that guarantee results do not depend on the thread count, which the
/// determinism tests assert. threads <= 1 runs inline.
template <class Body>
void parallel_for(Eigen::Index count, int threads, Body&& body) {
    if (threads <= 1 || count <= 1) {
        for (Eigen::Index i = 0; i < count; ++i)
            body(i);
        return;
    }
    const Eigen::Index workers =
        std::min<Eigen::Index>(threads, count);
    const Eigen::Index chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    pool.reserve(static_cast<std::size_t>(workers - 1));
    auto run = [&](Eigen::Index w) {
        const Eigen::Index lo = w * chunk;
        const Eigen::Index hi = std::min(count, lo + chunk);
        try {
            for (Eigen::Index i = lo; i < hi; ++i)
                body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    for (Eigen::Index w = 1; w < workers; ++w)
        pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

/// Thread count for non-benchmark commands when the user gives none.
inline int default_thread_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace blproj
