#include "mhd2d/threads.hpp"

#include <cstdlib>
#include <thread>

namespace mhd2d {

int worker_count() {
  if (const char* env = std::getenv("MHD2D_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace mhd2d
