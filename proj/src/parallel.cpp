#include "reachlab/detail/parallel.hpp"

#include <cstdlib>
#include <string>

namespace reachlab::detail {

int max_threads() {
  static const int cached = [] {
    const char* env = std::getenv("REACHLAB_THREADS");
    if (env != nullptr) {
      try {
        const int n = std::stoi(env);
        if (n > 0) return n;
      } catch (...) {
        // fall through to auto
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

}  // namespace reachlab::detail
