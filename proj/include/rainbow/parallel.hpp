#pragma once

// Worker cap shared by the enumeration routines. Results never depend on
// the cap: work is split into fixed chunks and reduced in chunk order.

#include <cstddef>
#include <functional>

namespace rainbow {

// 0 restores the default (hardware concurrency).
void set_thread_count(int n);
int thread_count();

// Runs body(chunk) for chunk = 0..chunks-1 on up to thread_count() workers.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace rainbow
