#pragma once

#include <cstddef>
#include <string>

namespace ftopos {

inline constexpr std::size_t kDefaultSizeBound = 1'000'000;

/// Process-wide bound on the size of any intermediate set.
std::size_t size_bound() noexcept;
void set_size_bound(std::size_t bound) noexcept;

/// Throws ResourceError when `size` exceeds the current bound.
void check_size(const std::string& what, std::size_t size);

class ScopedSizeBound {
 public:
  explicit ScopedSizeBound(std::size_t bound) noexcept
      : previous_(size_bound()) {
    set_size_bound(bound);
  }
  ~ScopedSizeBound() { set_size_bound(previous_); }
  ScopedSizeBound(const ScopedSizeBound&) = delete;
  ScopedSizeBound& operator=(const ScopedSizeBound&) = delete;

 private:
  std::size_t previous_;
};

/// Worker count used by sweeps that partition their search space.
unsigned parallelism() noexcept;
void set_parallelism(unsigned workers) noexcept;

}  // namespace ftopos
