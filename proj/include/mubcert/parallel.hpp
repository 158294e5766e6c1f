#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace mubcert {

/// splitmix64 finaliser applied to (master, index); per-sample seeds are a pure function of both.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Worker count: MUBCERT_THREADS if set to a positive integer, otherwise hardware concurrency.
unsigned worker_count();

/// Calls body(i) for every i in [0, count). Work is split into contiguous
/// blocks across worker_count() threads; callers write results into
/// per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mubcert
