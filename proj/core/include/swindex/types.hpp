#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swindex {

/// A stream character. Any integer alphabet fits in a machine word.
using Symbol = std::uint64_t;

/// Absolute 0-based position in the stream.
using Position = std::int64_t;

/// Rank-space symbol; 0 is reserved for the terminator.
using Rank = std::uint32_t;

/// Raised when the line protocol or the engine call sequence is violated.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swindex

#define SWINDEX_CHECK(cond)                                                   \
  do {                                                                        \
    if (!(cond)) ::swindex::detail::check_failed(#cond, __FILE__, __LINE__);  \
  } while (0)

namespace swindex::detail {
[[noreturn]] void check_failed(const char* expr, const char* file, int line);
}  // namespace swindex::detail
