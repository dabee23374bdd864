#pragma once

#include <cstddef>
#include <functional>

namespace mimd {

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; Parallel uses OpenMP when compiled in. Both produce
// bit-identical results: work is split into fixed-size blocks whose partial
// results are combined in block order, independent of thread count.
enum class Exec { Serial, Parallel };

// Thread cap for parallel regions. 0 = library default (all hardware threads).
void set_threads(int n);
int effective_threads();

// Runs body(block_begin, block_end) over [0, n) split into blocks of
// block_size. Blocks may run concurrently under Exec::Parallel; the body must
// only touch state owned by its block.
void for_blocks(std::size_t n, std::size_t block_size, Exec exec,
                const std::function<void(std::size_t, std::size_t)>& body);

// Deterministic reduction: partial(block_begin, block_end) is evaluated per
// block (sequentially inside a block) and the partials are added in block
// order, so the result does not depend on scheduling.
double block_sum(std::size_t n, std::size_t block_size, Exec exec,
                 const std::function<double(std::size_t, std::size_t)>& partial);

}  // namespace mimd
