#include "swindex/protocol.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

namespace swindex {

namespace {

Symbol parse_symbol(const std::string& tok) {
  Symbol v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ProtocolError("bad symbol '" + tok + "'");
  return v;
}

void drain(Engine& engine, std::ostream& out) {
  for (const QueryResult& r : engine.take_results()) write_result(r, out);
}

}  // namespace

void write_result(const QueryResult& r, std::ostream& out) {
  out << "RES " << r.qid << ' ' << r.positions.size();
  for (Position p : r.positions) out << ' ' << p;
  out << '\n';
}

void write_stats(const Engine& engine, std::ostream& out) {
  out << "stat engine " << engine.name() << '\n';
  for (const auto& [name, value] : engine.stats()) out << "stat " << name << ' ' << value << '\n';
}

int run_protocol(Engine& engine, std::istream& in, std::ostream& out, bool stats_at_end) {
  std::string tok;
  bool in_query = false;
  auto argument = [&](const std::string& cmd) {
    std::string arg;
    if (!(in >> arg)) throw ProtocolError("missing argument to " + cmd);
    return arg;
  };
  auto need_query = [&](const std::string& cmd) {
    if (!in_query) throw ProtocolError(cmd + " outside query");
  };
  try {
    while (in >> tok) {
      if (tok == "U") {
        engine.update(parse_symbol(argument(tok)));
      } else if (tok == "UTEXT") {
        for (unsigned char ch : argument(tok)) engine.update(ch);
      } else if (tok == "QBEGIN") {
        if (in_query) throw ProtocolError("nested query");
        engine.begin_query();
        in_query = true;
      } else if (tok == "QC") {
        need_query(tok);
        engine.query_symbol(parse_symbol(argument(tok)));
      } else if (tok == "QTEXT") {
        need_query(tok);
        for (unsigned char ch : argument(tok)) engine.query_symbol(ch);
      } else if (tok == "QEND") {
        need_query(tok);
        engine.end_query();
        in_query = false;
      } else if (tok == "STATS") {
        drain(engine, out);
        write_stats(engine, out);
      } else if (tok == "QUIT") {
        break;
      } else {
        throw ProtocolError("unknown command '" + tok + "'");
      }
      drain(engine, out);
    }
    engine.finish();
    drain(engine, out);
  } catch (const ProtocolError& e) {
    drain(engine, out);
    out << "ERR " << e.what() << '\n';
    out.flush();
    return 1;
  }
  if (stats_at_end) write_stats(engine, out);
  out.flush();
  return 0;
}

}  // namespace swindex
