#pragma once

#include <cstddef>
#include <functional>

namespace salem {

// Worker count used by the parallel helpers; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(chunk, begin, end) on contiguous chunks covering [0, n). Chunk
// boundaries depend only on n and the chunk count, never on timing, so
// reductions that combine chunk results in index order are deterministic.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Number of chunks parallel_chunks will use for n items.
std::size_t chunk_count(std::size_t n);

}  // namespace salem
