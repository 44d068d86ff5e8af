#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace keyforge {

/// Explicit value, else KEYFORGE_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work items are
/// handed out dynamically, so body must not depend on the order.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace keyforge
