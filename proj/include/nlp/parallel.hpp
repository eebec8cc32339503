#pragma once

#include <cstddef>
#include <functional>

namespace nlp {

// Worker count: NLP_THREADS when set (>= 1), otherwise hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
// write results into per-index slots so reductions stay order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nlp
