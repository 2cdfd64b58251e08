#include "expertvote/service.hpp"

#include <charconv>

#include <httplib.h>
#include <json.hpp>

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

using nlohmann::json;

HttpResponse error_response(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

}  // namespace

std::string experts_json(std::string_view query, const ExpertRanking& ranking, const Corpus& corpus) {
  json experts = json::array();
  for (const auto& e : ranking.entries) {
    json papers = json::array();
    for (const auto& ev : e.evidence) {
      const auto* paper = corpus.find_paper(ev.paper_id);
      papers.push_back({{"id", ev.paper_id}, {"title", paper ? paper->title : ""}, {"doc_score", ev.doc_score}});
    }
    const auto* author = corpus.find_author(e.author_id);
    experts.push_back(
        {{"id", e.author_id}, {"name", author ? author->name : ""}, {"score", e.score}, {"papers", std::move(papers)}});
  }
  return json{{"query", std::string(query)}, {"experts", std::move(experts)}}.dump();
}

ExpertService::ExpertService(std::size_t max_experts) : max_experts_(max_experts) {}

ExpertService::~ExpertService() { stop(); }

void ExpertService::set_engine(std::shared_ptr<const Engine> engine) {
  std::lock_guard lock(mutex_);
  engine_ = std::move(engine);
}

std::shared_ptr<const Engine> ExpertService::engine() const {
  std::lock_guard lock(mutex_);
  return engine_;
}

HttpResponse ExpertService::handle_experts(const std::optional<std::string>& q,
                                           const std::optional<std::string>& n) const {
  if (!q) return error_response(400, "missing query parameter 'q'");
  const auto eng = engine();
  std::size_t count = eng ? eng->config().experts : 10;
  if (n) {
    long long parsed = 0;
    const auto* end = n->data() + n->size();
    const auto [ptr, ec] = std::from_chars(n->data(), end, parsed);
    if (ec != std::errc() || ptr != end || parsed < 0) return error_response(400, "'n' must be a non-negative integer");
    if (static_cast<unsigned long long>(parsed) > max_experts_)
      return error_response(400, "'n' exceeds the maximum of " + std::to_string(max_experts_));
    count = static_cast<std::size_t>(parsed);
  }
  if (!eng) return error_response(503, "index not ready");
  try {
    return {200, experts_json(*q, eng->search(*q, count), eng->corpus())};
  } catch (const ArgumentError& e) {
    return error_response(400, e.what());
  }
}

HttpResponse ExpertService::handle_healthz() const { return {200, "ok", "text/plain"}; }

void ExpertService::install_routes() {
  server_ = std::make_unique<httplib::Server>();
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server_->Get("/experts", [this, reply](const httplib::Request& req, httplib::Response& res) {
    auto param = [&req](const char* key) -> std::optional<std::string> {
      if (!req.has_param(key)) return std::nullopt;
      return req.get_param_value(key);
    };
    reply(res, handle_experts(param("q"), param("n")));
  });
  server_->Get("/healthz", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_healthz());
  });
}

bool ExpertService::listen(const std::string& host, int port) {
  install_routes();
  return server_->listen(host, port);
}

int ExpertService::start_background(const std::string& host) {
  install_routes();
  const int port = server_->bind_to_any_port(host);
  if (port < 0) throw std::runtime_error("cannot bind " + host);
  thread_ = std::make_unique<std::thread>([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void ExpertService::stop() {
  if (server_) server_->stop();
  if (thread_ && thread_->joinable()) thread_->join();
  thread_.reset();
}

}  // namespace expertvote
