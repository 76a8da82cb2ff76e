#include "cicc/parallel.hpp"

#include <algorithm>

namespace cicc {

int resolve_thread_count(int requested) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int cap = hw == 0 ? 1 : static_cast<int>(hw);
  return std::clamp(requested, 1, cap);
}

}  // namespace cicc
