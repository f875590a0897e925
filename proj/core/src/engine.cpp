#include "swindex/engine.hpp"

#include <bit>
#include <stdexcept>

#include "swindex/delayed_engine.hpp"
#include "swindex/naive_window.hpp"
#include "swindex/timely_engine.hpp"

namespace swindex {

EngineKind parse_engine_kind(const std::string& name) {
  if (name == "auto") return EngineKind::kAuto;
  if (name == "timely") return EngineKind::kTimely;
  if (name == "delayed") return EngineKind::kDelayed;
  if (name == "oracle") return EngineKind::kOracle;
  throw std::invalid_argument("unknown engine: " + name);
}

const char* engine_kind_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::kAuto: return "auto";
    case EngineKind::kTimely: return "timely";
    case EngineKind::kDelayed: return "delayed";
    case EngineKind::kOracle: return "oracle";
  }
  return "?";
}

std::uint64_t effective_delay(std::uint64_t w, std::uint64_t delta) {
  const std::uint64_t d = std::min(delta, w);
  return d == 0 ? 0 : std::bit_floor(d);
}

EngineKind resolve_kind(const EngineConfig& config) {
  switch (config.kind) {
    case EngineKind::kOracle: return EngineKind::kOracle;
    case EngineKind::kTimely: return EngineKind::kTimely;
    case EngineKind::kAuto:
    case EngineKind::kDelayed:
      // Below 8 the flush schedule degenerates; answering at once is always within the delay.
      return effective_delay(config.w, config.delta) >= 8 ? EngineKind::kDelayed : EngineKind::kTimely;
  }
  return EngineKind::kTimely;
}

std::unique_ptr<Engine> make_engine(const EngineConfig& config) {
  if (config.w == 0) throw std::invalid_argument("window must be at least 1");
  if (config.boost == 0) throw std::invalid_argument("boost must be at least 1");
  switch (resolve_kind(config)) {
    case EngineKind::kOracle: return std::make_unique<OracleEngine>(config);
    case EngineKind::kDelayed: return std::make_unique<DelayedEngine>(config);
    default: return std::make_unique<TimelyEngine>(config);
  }
}

}  // namespace swindex
