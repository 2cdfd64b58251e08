// expertvote: command-line entry points for the expert-search pipeline.
//
// Every subcommand prints one machine-parseable summary line
// ("summary command=<name> key=value ...") as its last line of output; with
// `search --json` the summary goes to stderr so stdout stays pure JSON.
// Exit status: 0 success, 2 usage error or missing input, 1 any other error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "expertvote/config.hpp"
#include "expertvote/engine.hpp"
#include "expertvote/errors.hpp"
#include "expertvote/service.hpp"

namespace fs = std::filesystem;
using namespace expertvote;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

/// Bad invocation or missing input file: exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const fs::path& path, const std::string& what) {
  if (path.empty()) throw UsageError(what + " is required");
  if (!fs::exists(path)) throw UsageError(what + " not found: " + path.string());
}

struct CommonOptions {
  std::string config;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "JSON config file (EXPERTVOTE_* env vars override)");
  cmd->add_option("--out", opts.out, "artifacts directory (default: config 'artifacts')");
}

EngineConfig config_for(const CommonOptions& opts) {
  if (!opts.config.empty()) require_file(opts.config, "config");
  auto config = load_config(opts.config);
  if (!opts.out.empty()) config.artifacts = opts.out;
  return config;
}

void validate(const EngineConfig& config) {
  try {
    config.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

fs::path default_embeddings(const EngineConfig& config) {
  return config.artifacts / (config.retrofit ? kRetrofittedFile : kPaperEmbeddingsFile);
}

void print_table(std::ostream& os, const ExpertRanking& ranking, const Corpus& corpus) {
  fmt::print(os, "{:>4}  {:<20} {:>12}  {}\n", "rank", "author", "score", "name");
  std::size_t rank = 0;
  for (const auto& e : ranking.entries) {
    const auto* author = corpus.find_author(e.author_id);
    fmt::print(os, "{:>4}  {:<20} {:>12.6f}  {}\n", ++rank, e.author_id, e.score, author ? author->name : "");
  }
}

std::string quote_value(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

ExpertService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expertvote: expert search by weighted voting over paper embeddings"};
  app.require_subcommand(1);

  // ingest
  CommonOptions ingest_opts;
  std::int64_t sample_size = 0;
  std::uint64_t sample_seed = 0;
  auto* ingest = app.add_subcommand("ingest", "validate the corpus, write stopwords and an optional author sample");
  add_common(ingest, ingest_opts);
  ingest->add_option("--sample", sample_size, "stratified author sample size (0: none)")->check(CLI::NonNegativeNumber);
  ingest->add_option("--seed", sample_seed, "sampling seed");

  // embed
  CommonOptions embed_opts;
  std::string embedder_name;
  auto* embed = app.add_subcommand("embed", "embed papers into paper_embeddings.emb1");
  add_common(embed, embed_opts);
  embed->add_option("--embedder", embedder_name, "merge | separate | pooled | lsi");

  // retrofit
  CommonOptions retrofit_opts;
  int iterations = 0;
  auto* retro = app.add_subcommand("retrofit", "retrofit paper embeddings to the citation graph");
  add_common(retro, retrofit_opts);
  retro->add_option("--iterations", iterations, "number of iterations")->check(CLI::PositiveNumber);

  // index
  CommonOptions index_opts;
  std::string backend_name;
  std::string embeddings_path;
  auto* index = app.add_subcommand("index", "build the vector index");
  add_common(index, index_opts);
  index->add_option("--backend", backend_name, "exact | hnsw");
  index->add_option("--embeddings", embeddings_path, "EMB1 vector file (default: latest embedding artifact)");

  // search
  CommonOptions search_opts;
  std::string query;
  std::string queries_path;
  std::string run_out;
  std::optional<std::size_t> n_experts;
  bool as_json = false;
  auto* search = app.add_subcommand("search", "rank experts for a query or a query file");
  add_common(search, search_opts);
  auto* query_opt = search->add_option("--query", query, "query text");
  auto* queries_opt = search->add_option("--queries", queries_path, "query file (one per line) -> run file");
  query_opt->excludes(queries_opt);
  search->add_option("--experts", n_experts, "number of experts to return");
  search->add_option("--run-out", run_out, "run file path for --queries (default: <out>/run.jsonl)");
  search->add_flag("--json", as_json, "print the JSON response instead of a table");

  // eval
  CommonOptions eval_opts;
  std::string run_path;
  std::string judgments_path;
  std::string eval_queries;
  auto* eval = app.add_subcommand("eval", "score a run file against judgments");
  add_common(eval, eval_opts);
  eval->add_option("--run", run_path, "run file (default: <out>/run.jsonl)");
  eval->add_option("--judgments", judgments_path, "judgments file; built from --config when absent");
  eval->add_option("--queries", eval_queries, "query file used to build judgments");

  // serve
  CommonOptions serve_opts;
  std::string host;
  std::optional<int> port;
  auto* serve = app.add_subcommand("serve", "serve GET /experts and GET /healthz");
  add_common(serve, serve_opts);
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) {
      auto config = config_for(ingest_opts);
      validate(config);
      const auto s = run_ingest(config, config.artifacts, sample_size, sample_seed);
      fmt::print("summary command=ingest papers={} authors={} stopwords={} dropped_author_links={} "
                 "dropped_self_references={} sampled_authors={} out={}\n",
                 s.papers, s.authors, s.stopwords, s.report.dropped_author_links, s.report.dropped_self_references,
                 s.sampled_authors, quote_value(config.artifacts.string()));
    } else if (*embed) {
      auto config = config_for(embed_opts);
      if (!embedder_name.empty()) config.embedder = parse_embedder(embedder_name);
      validate(config);
      const auto s = run_embed(config, config.artifacts);
      fmt::print("summary command=embed embedder={} embedded={} skipped={} dim={}\n", to_string(config.embedder),
                 s.embedded, s.skipped, s.dim);
    } else if (*retro) {
      auto config = config_for(retrofit_opts);
      if (iterations > 0) config.retrofit_iterations = iterations;
      validate(config);
      require_file(config.artifacts / kPaperEmbeddingsFile, "paper embeddings (run embed first)");
      const auto s = run_retrofit(config, config.artifacts);
      fmt::print("summary command=retrofit papers={} changed={} iterations={} mean_residual={:.6g} "
                 "max_residual={:.6g}\n",
                 s.papers, s.changed, config.retrofit_iterations, s.mean_residual, s.max_residual);
    } else if (*index) {
      auto config = config_for(index_opts);
      if (!backend_name.empty()) config.backend = parse_backend(backend_name);
      const fs::path source = embeddings_path.empty() ? default_embeddings(config) : fs::path(embeddings_path);
      require_file(source, "embeddings file");
      const auto built = run_index(config, source, config.artifacts);
      fmt::print("summary command=index backend={} papers={} dim={} out={}\n", to_string(built.backend()),
                 built.count(), built.dim(), quote_value((config.artifacts / kIndexFile).string()));
    } else if (*search) {
      auto config = config_for(search_opts);
      validate(config);
      if (query_opt->count() == 0 && queries_opt->count() == 0) throw UsageError("--query or --queries is required");
      require_file(config.artifacts / kIndexFile, "index (run index first)");
      const std::size_t n = n_experts.value_or(config.experts);
      if (n > config.max_experts) throw UsageError(fmt::format("--experts exceeds max_experts ({})", config.max_experts));
      const auto engine = Engine::open(config, config.artifacts);
      if (query_opt->count() > 0) {
        const auto ranking = engine->search(query, n);
        if (as_json) {
          fmt::print("{}\n", experts_json(query, ranking, engine->corpus()));
        } else {
          print_table(std::cout, ranking, engine->corpus());
        }
        fmt::print(as_json ? std::cerr : std::cout, "summary command=search query={} experts={}\n", quote_value(query),
                   ranking.entries.size());
      } else {
        require_file(queries_path, "queries file");
        const auto run = run_queries(*engine, read_queries(queries_path), n);
        const fs::path out = run_out.empty() ? config.artifacts / kRunFile : fs::path(run_out);
        write_run(run, out);
        fmt::print("summary command=search queries={} run={}\n", run.size(), quote_value(out.string()));
      }
    } else if (*eval) {
      const bool have_config = !eval_opts.config.empty();
      auto config = config_for(eval_opts);
      const fs::path run_file = run_path.empty() ? config.artifacts / kRunFile : fs::path(run_path);
      require_file(run_file, "run file");
      const auto run = read_run(run_file);

      std::vector<QueryJudgment> judgments;
      if (!judgments_path.empty()) {
        require_file(judgments_path, "judgments file");
        judgments = read_judgments(judgments_path);
      } else {
        if (!have_config) throw UsageError("--judgments or --config with --queries is required");
        require_file(eval_queries, "queries file (--queries)");
        validate(config);
        const auto engine = Engine::open(config, config.artifacts);
        judgments = build_judgments(*engine, read_queries(eval_queries));
        fs::create_directories(config.artifacts);
        write_judgments(judgments, config.artifacts / kJudgmentsFile);
      }

      auto report = evaluate_run(run, judgments);
      if (have_config) report.header = report_header(config);
      std::cout << report.to_table();
      if (!eval_opts.out.empty() || have_config) {
        fs::create_directories(config.artifacts);
        std::ofstream(config.artifacts / kReportJsonFile, std::ios::binary | std::ios::trunc) << report.to_json() << '\n';
        std::ofstream(config.artifacts / kReportTableFile, std::ios::binary | std::ios::trunc) << report.to_table();
      }
      fmt::print("summary command=eval queries={} queries_without_relevant={} MAP@10_exact={:.6f} nDCG@10={:.6f}\n",
                 report.per_query.size(), report.queries_without_relevant, report.means.at("MAP@10_exact"),
                 report.means.at("nDCG@10"));
    } else if (*serve) {
      auto config = config_for(serve_opts);
      if (!host.empty()) config.host = host;
      if (port) config.port = *port;
      validate(config);
      require_file(config.artifacts / kIndexFile, "index (run index first)");
      ExpertService service(config.max_experts);
      service.set_engine(Engine::open(config, config.artifacts));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      fmt::print("summary command=serve host={} port={}\n", config.host, config.port);
      std::fflush(stdout);
      if (!service.listen(config.host, config.port)) throw std::runtime_error("cannot listen on the configured port");
      g_service = nullptr;
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const ArgumentError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
  return 0;
}
