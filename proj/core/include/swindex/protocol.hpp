#pragma once

#include <iosfwd>

#include "swindex/engine.hpp"

namespace swindex {

/// Reads whitespace-separated commands (U, UTEXT, QBEGIN, QC, QTEXT, QEND,
/// STATS, QUIT) from in and writes RES / stat / ERR lines to out. Returns the
/// process exit code: 0, or 1 after a protocol error.
int run_protocol(Engine& engine, std::istream& in, std::ostream& out, bool stats_at_end = false);

void write_result(const QueryResult& r, std::ostream& out);
void write_stats(const Engine& engine, std::ostream& out);

}  // namespace swindex
