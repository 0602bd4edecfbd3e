#include "ftopos/guard.hpp"

#include <atomic>

#include "ftopos/errors.hpp"

namespace ftopos {

namespace {
std::atomic<std::size_t> g_bound{kDefaultSizeBound};
std::atomic<unsigned> g_workers{1};
}  // namespace

std::size_t size_bound() noexcept { return g_bound.load(); }
void set_size_bound(std::size_t bound) noexcept { g_bound.store(bound); }

void check_size(const std::string& what, std::size_t size) {
  const std::size_t bound = size_bound();
  if (size > bound) throw ResourceError(what, size, bound);
}

unsigned parallelism() noexcept { return g_workers.load(); }
void set_parallelism(unsigned workers) noexcept {
  g_workers.store(workers == 0 ? 1 : workers);
}

}  // namespace ftopos
