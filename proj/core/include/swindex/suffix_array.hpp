#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swindex/types.hpp"

namespace swindex {

/// Suffix array by induced sorting. Symbols must lie in [0, upper].
std::vector<std::int32_t> suffix_array_sais(std::span<const Rank> text, Rank upper);

/// lcp[i] = longest common prefix of the suffixes at sa[i-1] and sa[i];
/// lcp[0] = 0. Kasai's algorithm.
std::vector<std::int32_t> lcp_kasai(std::span<const Rank> text,
                                    std::span<const std::int32_t> sa);

}  // namespace swindex
