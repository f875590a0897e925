#include <gtest/gtest.h>

#include <sstream>

#include "swindex/protocol.hpp"
#include "swindex/selftest.hpp"

using namespace swindex;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& input, std::uint64_t w, std::uint64_t delta = 0,
        EngineKind kind = EngineKind::kAuto, bool stats = false) {
  EngineConfig c;
  c.w = w;
  c.delta = delta;
  c.kind = kind;
  auto e = make_engine(c);
  std::istringstream in(input);
  std::ostringstream out;
  const int code = run_protocol(*e, in, out, stats);
  return {code, out.str()};
}

}  // namespace

TEST(Protocol, MississippiExample) {
  const Outcome r = run("UTEXT mississippi\nQBEGIN QTEXT si QEND\n", 8);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "RES 1 2 3 6\n");
}

TEST(Protocol, NumericSymbols) {
  const Outcome r = run("U 18446744073709551615 U 5 U 18446744073709551615\nQBEGIN QC 18446744073709551615 QEND", 3);
  EXPECT_EQ(r.out, "RES 1 2 0 2\n");
}

TEST(Protocol, Errors) {
  EXPECT_EQ(run("QBEGIN QEND", 4).out, "ERR empty pattern\n");
  EXPECT_EQ(run("QBEGIN QEND", 4).code, 1);
  EXPECT_EQ(run("QBEGIN QBEGIN", 4).out, "ERR nested query\n");
  EXPECT_EQ(run("QC 5", 4).out, "ERR QC outside query\n");
  EXPECT_EQ(run("QBEGIN U 3", 4).out, "ERR update inside query\n");
  EXPECT_EQ(run("U x", 4).out, "ERR bad symbol 'x'\n");
  EXPECT_EQ(run("U -1", 4).code, 1);
  EXPECT_EQ(run("FOO", 4).out, "ERR unknown command 'FOO'\n");
  EXPECT_EQ(run("U", 4).out, "ERR missing argument to U\n");
  EXPECT_EQ(run("QBEGIN QC 1", 4).out, "ERR unterminated query\n");
}

TEST(Protocol, ResultsBeforeErrorAreKept) {
  const Outcome r = run("UTEXT aaaa QBEGIN QTEXT a QEND QEND", 4);
  EXPECT_EQ(r.out, "RES 1 4 0 1 2 3\nERR QEND outside query\n");
}

TEST(Protocol, QuitStopsReading) {
  const Outcome r = run("UTEXT ab QUIT QBEGIN", 4);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Protocol, StatsLines) {
  const Outcome r = run("UTEXT abcabc STATS", 4, 0, EngineKind::kAuto);
  for (const char* name : {"max_units_per_char", "stored_symbols", "live_nodes", "hash_attempts", "flushes",
                           "segments"})
    EXPECT_NE(r.out.find(std::string("stat ") + name + " "), std::string::npos) << name;
}

TEST(Protocol, DelayedResultsComeLater) {
  const Outcome r = run("UTEXT abababab QBEGIN QTEXT ab QEND UTEXT ab", 64, 16);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "RES 1 4 0 2 4 6\n");
}

TEST(Protocol, DeterministicOutput) {
  const std::string input = "UTEXT the_quick_brown_fox_jumps QBEGIN QTEXT o QEND UTEXT over QBEGIN QTEXT u QEND STATS";
  EXPECT_EQ(run(input, 16, 8).out, run(input, 16, 8).out);
  EXPECT_EQ(run(input, 16, 0).out, run(input, 16, 0).out);
}

TEST(Selftest, Examples) {
  EngineConfig c;
  c.w = 32;
  c.delta = 8;
  c.seed = 17;
  const TrialReport r = run_selftest(c, 100, 0);
  EXPECT_EQ(r.mismatches, 0u);
  EXPECT_EQ(r.delay_violations, 0u);
  EXPECT_TRUE(r.ok()) << r.first_failure;

  c.kind = EngineKind::kOracle;
  EXPECT_TRUE(run_selftest(c, 20, 0).ok());

  c.kind = EngineKind::kAuto;
  const TrialReport single = run_selftest(c, 100, 1);
  EXPECT_EQ(single.mismatches, 0u);
  EXPECT_TRUE(single.ok()) << single.first_failure;
}
