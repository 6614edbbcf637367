#include "stbc/parallel.hpp"

namespace stbc {

int default_workers() {
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

int resolve_workers(int requested) { return requested > 0 ? requested : default_workers(); }

}  // namespace stbc
