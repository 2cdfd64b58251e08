#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "expertvote/voting.hpp"

namespace expertvote {

/// One line of a run file: the ranking produced for one query.
struct RunRecord {
  std::string query;
  ExpertRanking ranking;

  bool operator==(const RunRecord&) const = default;
};

/// JSONL: {"query", "experts": [{"id", "score", "evidence": [{"paper", "doc_score", "weight"}]}]}
std::string run_record_json(const RunRecord& record);
void write_run(const std::vector<RunRecord>& run, const std::filesystem::path& path);
std::vector<RunRecord> read_run(const std::filesystem::path& path);

}  // namespace expertvote
