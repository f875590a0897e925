#include <cstdio>
#include <cstdlib>

#include "swindex/types.hpp"

namespace swindex::detail {

void check_failed(const char* expr, const char* file, int line) {
  std::fprintf(stderr, "swindex: check failed: %s (%s:%d)\n", expr, file, line);
  std::abort();
}

}  // namespace swindex::detail
