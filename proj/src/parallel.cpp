#include "mimdetect/parallel.hpp"

#include <atomic>
#include <vector>

#ifdef MIMDETECT_HAVE_OPENMP
#include <omp.h>
#endif

namespace mimd {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int effective_threads() {
  int n = g_threads.load();
#ifdef MIMDETECT_HAVE_OPENMP
  if (n <= 0) n = omp_get_max_threads();
#else
  if (n <= 0) n = 1;
#endif
  return n;
}

void for_blocks(std::size_t n, std::size_t block_size, Exec exec,
                const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t blocks = (n + block_size - 1) / block_size;

#ifdef MIMDETECT_HAVE_OPENMP
  if (exec == Exec::Parallel && blocks > 1) {
    const int nt = effective_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * block_size;
      const std::size_t end = begin + block_size < n ? begin + block_size : n;
      body(begin, end);
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = b * block_size;
    const std::size_t end = begin + block_size < n ? begin + block_size : n;
    body(begin, end);
  }
}

double block_sum(std::size_t n, std::size_t block_size, Exec exec,
                 const std::function<double(std::size_t, std::size_t)>& partial) {
  if (n == 0) return 0.0;
  if (block_size == 0) block_size = 1;
  const std::size_t blocks = (n + block_size - 1) / block_size;
  std::vector<double> parts(blocks, 0.0);
  for_blocks(n, block_size, exec, [&](std::size_t begin, std::size_t end) {
    parts[begin / block_size] = partial(begin, end);
  });
  double total = 0.0;
  for (double p : parts) total += p;  // fixed order: bit-stable vs threading
  return total;
}

}  // namespace mimd
