#include <gtest/gtest.h>

#include "expertvote/errors.hpp"
#include "expertvote/run_file.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

TEST(RunFile, RoundTripIsExact) {
  std::vector<RunRecord> run;
  run.push_back({"cluster analysis",
                 {{{"A1", 2.870113, {{"P1", 0.5, 1.0}, {"P2", 0.2, 1.0}}}, {"A2", 1.0 / 3.0, {{"P1", 0.5, 0.25}}}}}});
  run.push_back({"empty", {}});
  testing::TempDir dir;
  write_run(run, dir / "r.jsonl");
  EXPECT_EQ(read_run(dir / "r.jsonl"), run);
  // Writing again yields identical bytes.
  write_run(read_run(dir / "r.jsonl"), dir / "r2.jsonl");
  EXPECT_EQ(testing::read_file(dir / "r.jsonl"), testing::read_file(dir / "r2.jsonl"));
}

TEST(RunFile, RecordSchema) {
  const RunRecord r{"q", {{{"A", 1.5, {{"P", 0.25, 0.5}}}}}};
  EXPECT_EQ(run_record_json(r),
            "{\"experts\":[{\"evidence\":[{\"doc_score\":0.25,\"paper\":\"P\",\"weight\":0.5}],\"id\":\"A\","
            "\"score\":1.5}],\"query\":\"q\"}");
}

TEST(RunFile, MalformedLineIsParseError) {
  testing::TempDir dir;
  testing::write_file(dir / "r.jsonl", "{\"query\": \"q\", \"experts\": []}\n{\"query\": 1}\n");
  try {
    read_run(dir / "r.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace expertvote
