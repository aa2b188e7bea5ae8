#pragma once

#include <cstdint>

namespace qtrace {

/// Scalar operation tally for an instrumented call. A multiplication,
/// division or square root counts as a mop; an addition or subtraction as
/// a sop. Owned by the caller; operations reset it on entry.
struct OpCounter {
  std::uint64_t mops = 0;
  std::uint64_t sops = 0;

  void reset() noexcept { mops = sops = 0; }

  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

namespace detail {
inline void reset(OpCounter* c) noexcept {
  if (c) c->reset();
}
}  // namespace detail

}  // namespace qtrace
