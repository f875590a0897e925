#include "swindex/selftest.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "swindex/naive_window.hpp"

namespace swindex {

namespace {

constexpr std::uint64_t kAlphabets[] = {1, 2, 4, 256, std::uint64_t{1} << 31};

std::vector<Symbol> make_pattern(std::mt19937_64& rng, const NaiveWindow& oracle, std::uint64_t w,
                                 std::uint64_t alphabet) {
  auto below = [&](std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); };
  auto symbol = [&] { return static_cast<Symbol>(below(alphabet)); };
  const auto n = static_cast<Position>(oracle.arrivals());
  const std::uint64_t mode = below(10);
  std::vector<Symbol> pattern;

  if (mode < 6 && n > 0) {
    // Substring of the retained text, possibly starting left of the window.
    const Position lo = std::max(oracle.first_retained(), n - static_cast<Position>(w) - 4);
    const auto avail = static_cast<std::uint64_t>(n - lo);
    std::uint64_t len = 1 + below(std::min<std::uint64_t>(avail, 2 * w));
    if (below(3) == 0) len = 1 + below(std::min<std::uint64_t>(avail, 4));
    const Position start = lo + static_cast<Position>(below(avail - len + 1));
    for (Position p = start; p < start + static_cast<Position>(len); ++p) pattern.push_back(oracle.at(p));
    if (mode == 5) pattern[below(pattern.size())] = symbol();
    return pattern;
  }
  std::uint64_t len = mode < 8 ? 1 + below(std::min<std::uint64_t>(2 * w, 8)) : 1 + below(2 * w);
  for (std::uint64_t i = 0; i < len; ++i) pattern.push_back(symbol());
  return pattern;
}

std::string describe(const EngineConfig& cfg, std::uint64_t alphabet, std::uint64_t seed, std::uint64_t qid,
                     const std::string& what) {
  std::ostringstream os;
  os << what << " (w=" << cfg.w << " delta=" << cfg.delta << " engine=" << engine_kind_name(cfg.kind)
     << " alphabet=" << alphabet << " seed=" << seed << " qid=" << qid << ")";
  return os.str();
}

}  // namespace

void TrialReport::merge(const TrialReport& o) {
  trials += o.trials;
  queries += o.queries;
  mismatches += o.mismatches;
  delay_violations += o.delay_violations;
  ledger_violations += o.ledger_violations;
  duplicates += o.duplicates;
  structure_violations += o.structure_violations;
  max_units = std::max(max_units, o.max_units);
  hash_attempts += o.hash_attempts;
  hash_fallbacks += o.hash_fallbacks;
  max_delay = std::max(max_delay, o.max_delay);
  if (first_failure.empty()) first_failure = o.first_failure;
}

std::uint64_t stat_value(const StatList& stats, const std::string& name) {
  for (const auto& [k, v] : stats)
    if (k == name) return v;
  return 0;
}

TrialReport run_trial(const TrialOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const EngineConfig& cfg = opt.engine;
  std::uint64_t alphabet = opt.alphabet;
  if (alphabet == 0) alphabet = kAlphabets[rng() % std::size(kAlphabets)];
  auto below = [&](std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); };

  auto engine = make_engine(cfg);
  NaiveWindow oracle(cfg.w, cfg.w + cfg.delta + 1);
  TrialReport rep;
  rep.trials = 1;

  const std::uint64_t max_updates = opt.max_updates ? opt.max_updates : 3 * cfg.w + 16;
  const std::uint64_t updates = below(max_updates + 1);
  std::vector<std::uint64_t> query_at(opt.queries);
  for (auto& q : query_at) q = below(updates + 1);
  std::sort(query_at.begin(), query_at.end());

  std::map<std::uint64_t, QueryResult> expected;
  auto fail = [&](std::uint64_t qid, const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = describe(cfg, alphabet, opt.seed, qid, what);
  };
  auto drain = [&] {
    for (QueryResult& r : engine->take_results()) {
      auto it = expected.find(r.qid);
      if (it == expected.end()) {
        ++rep.mismatches;
        fail(r.qid, "unexpected result");
        continue;
      }
      if (r.positions != it->second.positions || r.rb != it->second.rb) {
        ++rep.mismatches;
        fail(r.qid, "occurrence mismatch");
      }
      const std::uint64_t delay = r.answered_tick - it->second.asked_tick;
      rep.max_delay = std::max(rep.max_delay, delay);
      if (r.answered_tick < it->second.asked_tick || delay > cfg.delta) {
        ++rep.delay_violations;
        fail(r.qid, "late answer");
      }
      expected.erase(it);
    }
  };

  std::size_t next_query = 0;
  for (std::uint64_t u = 0; u <= updates; ++u) {
    while (next_query < query_at.size() && query_at[next_query] == u) {
      ++next_query;
      const std::vector<Symbol> pattern = make_pattern(rng, oracle, cfg.w, alphabet);
      const std::uint64_t qid = engine->begin_query();
      for (Symbol c : pattern) engine->query_symbol(c);
      const std::uint64_t asked = engine->chars();
      const Position rb = static_cast<Position>(oracle.arrivals()) - 1;
      expected[qid] = QueryResult{qid, rb, oracle.answer(pattern, rb), asked, 0};
      ++rep.queries;
      engine->end_query();
      drain();
    }
    if (u == updates) break;
    const auto c = static_cast<Symbol>(below(alphabet));
    engine->update(c);
    oracle.push(c);
    drain();
  }
  engine->finish();
  drain();
  if (!expected.empty()) {
    rep.mismatches += expected.size();
    fail(expected.begin()->first, "query never answered");
  }

  const StatList stats = engine->stats();
  rep.ledger_violations = engine->ledger_violations();
  rep.max_units = engine->ledger().max_per_tick();
  rep.duplicates = stat_value(stats, "duplicate_reports");
  rep.structure_violations = stat_value(stats, "lemma_violations") + stat_value(stats, "overlapping_flushes");
  rep.hash_attempts = stat_value(stats, "hash_attempts");
  rep.hash_fallbacks = stat_value(stats, "hash_fallbacks");
  if (rep.ledger_violations) fail(0, "ledger bound exceeded");
  if (rep.duplicates) fail(0, "duplicate report");
  if (rep.structure_violations)
    fail(0, "structure violation: lemma " + std::to_string(stat_value(stats, "lemma_violations")) +
                ", overlapping flushes " + std::to_string(stat_value(stats, "overlapping_flushes")));
  return rep;
}

TrialReport run_selftest(const EngineConfig& base, std::uint64_t trials, std::uint64_t alphabet) {
  TrialReport total;
  for (std::uint64_t i = 0; i < trials; ++i) {
    TrialOptions opt;
    opt.engine = base;
    opt.engine.seed = base.seed + i;
    opt.alphabet = alphabet;
    opt.seed = base.seed + i;
    total.merge(run_trial(opt));
  }
  return total;
}

void print_report(const TrialReport& r, std::ostream& out) {
  out << "selftest trials " << r.trials << '\n'
      << "selftest queries " << r.queries << '\n'
      << "selftest mismatches " << r.mismatches << '\n'
      << "selftest delay_violations " << r.delay_violations << '\n'
      << "selftest max_delay " << r.max_delay << '\n'
      << "selftest ledger_violations " << r.ledger_violations << '\n'
      << "selftest max_units_per_char " << r.max_units << '\n'
      << "selftest duplicate_reports " << r.duplicates << '\n'
      << "selftest structure_violations " << r.structure_violations << '\n'
      << "selftest hash_attempts " << r.hash_attempts << '\n'
      << "selftest hash_fallbacks " << r.hash_fallbacks << '\n';
  if (!r.first_failure.empty()) out << "selftest first_failure " << r.first_failure << '\n';
  out << "selftest " << (r.ok() ? "PASS" : "FAIL") << '\n';
}

}  // namespace swindex
