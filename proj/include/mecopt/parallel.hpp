#pragma once

#include <thread>

namespace mecopt {

// Map a user-facing --threads value to a concrete worker count.
// 0 (or negative) means "use whatever the hardware reports".
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace mecopt
