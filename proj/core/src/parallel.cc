#include "firmml/parallel.h"

#include <cstdlib>
#include <string>
#include <thread>

namespace firmml {

std::size_t thread_budget() {
  if (const char* env = std::getenv("FIRMML_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace firmml
