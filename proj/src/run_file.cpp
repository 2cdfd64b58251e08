#include "expertvote/run_file.hpp"

#include <fstream>

#include <json.hpp>

#include "expertvote/errors.hpp"

namespace expertvote {

using nlohmann::json;

std::string run_record_json(const RunRecord& record) {
  json experts = json::array();
  for (const auto& e : record.ranking.entries) {
    json evidence = json::array();
    for (const auto& ev : e.evidence)
      evidence.push_back({{"paper", ev.paper_id}, {"doc_score", ev.doc_score}, {"weight", ev.weight}});
    experts.push_back({{"id", e.author_id}, {"score", e.score}, {"evidence", std::move(evidence)}});
  }
  return json{{"query", record.query}, {"experts", std::move(experts)}}.dump();
}

void write_run(const std::vector<RunRecord>& run, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write run file " + path.string());
  for (const auto& r : run) out << run_record_json(r) << '\n';
}

std::vector<RunRecord> read_run(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open run file " + path.string());
  std::vector<RunRecord> run;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = json::parse(line);
      RunRecord r;
      r.query = obj.at("query").get<std::string>();
      for (const auto& e : obj.at("experts")) {
        ExpertEntry entry;
        entry.author_id = e.at("id").get<std::string>();
        entry.score = e.at("score").get<double>();
        for (const auto& ev : e.value("evidence", json::array()))
          entry.evidence.push_back(
              {ev.at("paper").get<std::string>(), ev.at("doc_score").get<double>(), ev.at("weight").get<double>()});
        r.ranking.entries.push_back(std::move(entry));
      }
      run.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return run;
}

}  // namespace expertvote
