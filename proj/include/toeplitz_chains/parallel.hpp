#ifndef TOEPLITZ_CHAINS_PARALLEL_HPP
#define TOEPLITZ_CHAINS_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace toeplitz_chains {

// Number of worker threads: TOEPLITZ_CHAINS_THREADS caps it, default is the
// hardware count. Never zero.
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("TOEPLITZ_CHAINS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    if (v >= 1 && static_cast<unsigned>(v) >= hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

// Deterministic chunked reduction: the index range is cut into fixed-size
// chunks, each chunk is accumulated serially in index order, and chunk
// results are combined in chunk order. Thread scheduling cannot change the
// rounding, so results are bit-reproducible for a fixed input.
template <typename Acc>
Acc parallel_reduce(std::int64_t n, Acc init,
                    const std::function<void(std::int64_t, std::int64_t, Acc&)>& body,
                    const std::function<void(Acc&, const Acc&)>& combine,
                    std::int64_t chunk = 4096) {
  if (n <= 0) return init;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<Acc> partial(static_cast<std::size_t>(nchunks), init);

  const unsigned workers =
      static_cast<unsigned>(std::min<std::int64_t>(thread_budget(), nchunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c)
      body(c * chunk, std::min(n, (c + 1) * chunk), partial[static_cast<std::size_t>(c)]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::int64_t c = w; c < nchunks; c += workers)
          body(c * chunk, std::min(n, (c + 1) * chunk), partial[static_cast<std::size_t>(c)]);
      });
    }
    for (auto& t : pool) t.join();
  }

  Acc total = init;
  for (const Acc& p : partial) combine(total, p);
  return total;
}

}  // namespace toeplitz_chains

#endif
