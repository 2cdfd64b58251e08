#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "expertvote/engine.hpp"

namespace httplib {
class Server;
}

namespace expertvote {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// JSON-over-HTTP expert search. Request handling is pure over an immutable
/// engine snapshot, so the handlers are usable (and tested) without sockets.
class ExpertService {
 public:
  explicit ExpertService(std::size_t max_experts);
  ~ExpertService();

  ExpertService(const ExpertService&) = delete;
  ExpertService& operator=(const ExpertService&) = delete;

  /// Swaps in the engine; until called, /experts answers 503.
  void set_engine(std::shared_ptr<const Engine> engine);

  /// GET /experts?q=&n= ; `n` is the raw query-string value (nullopt when
  /// absent, meaning the engine's configured default).
  HttpResponse handle_experts(const std::optional<std::string>& q, const std::optional<std::string>& n) const;
  HttpResponse handle_healthz() const;

  /// Blocks serving requests until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and serves on a background thread; returns the port.
  int start_background(const std::string& host);
  void stop();

 private:
  std::shared_ptr<const Engine> engine() const;
  void install_routes();

  std::size_t max_experts_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Engine> engine_;
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<std::thread> thread_;
};

/// The JSON body served for a ranking (shared by the CLI's --json output).
std::string experts_json(std::string_view query, const ExpertRanking& ranking, const Corpus& corpus);

}  // namespace expertvote
