#pragma once

#include <cstddef>
#include <functional>

namespace rootflow {

// Runs chunk(begin, end) over disjoint slices of [begin, end) on up to
// hardware_concurrency threads; the caller participates. Falls back to a
// single inline call for small ranges. Results must be written to
// index-addressed slots so scheduling cannot affect the outcome.
void parallel_for(std::size_t begin, std::size_t end, std::size_t min_per_thread,
                  const std::function<void(std::size_t, std::size_t)>& chunk);

} // namespace rootflow
