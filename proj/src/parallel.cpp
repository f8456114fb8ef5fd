#include "fluctlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fluctlab {

int resolve_workers(int requested) {
  if (const char* env = std::getenv("FLUCTLAB_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
      // unparsable override is ignored
    }
  }
  return requested >= 1 ? requested : 1;
}

}  // namespace fluctlab
