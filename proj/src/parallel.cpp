#include "rootflow/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace rootflow {

void parallel_for(std::size_t begin, std::size_t end, std::size_t min_per_thread,
                  const std::function<void(std::size_t, std::size_t)>& chunk) {
    if (begin >= end) return;
    const std::size_t count = end - begin;
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t threads =
        std::min(hw, std::max<std::size_t>(1, count / std::max<std::size_t>(1, min_per_thread)));
    if (threads == 1) {
        chunk(begin, end);
        return;
    }
    const std::size_t per = (count + threads - 1) / threads;
    std::vector<std::thread> workers;
    workers.reserve(threads - 1);
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 1; t < threads; ++t) {
        const std::size_t b = begin + t * per;
        const std::size_t e = std::min(end, b + per);
        if (b >= e) break;
        workers.emplace_back([&, t, b, e] {
            try {
                chunk(b, e);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    try {
        chunk(begin, std::min(end, begin + per));
    } catch (...) {
        errors[0] = std::current_exception();
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace rootflow
