#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace maniscope::service {

// Responses are built with single-precision numbers so that every score is
// printed as the shortest decimal that round-trips its 32-bit value.
using WireJson = nlohmann::basic_json<std::map, std::vector, std::string, bool,
                                      std::int64_t, std::uint64_t, float>;

inline constexpr std::size_t kMaxCandidates = 1000;
inline constexpr std::size_t kDefaultMaxBodyBytes = 8 * 1024 * 1024;

struct Response {
  int status = 200;
  WireJson body;

  std::string dump() const { return body.dump(); }
};

/// POST /v1/rerank. Request:
///   {"query_vector": [f32...], "candidates": [{"id": str, "vector": [f32...]}...],
///    "k": int?, "alpha": num?, "variant": "maxnorm" | "inverse"?}
/// Response:
///   {"ranked": [{"id", "index", "score", "cos", "geo"}...], "latency_ms": num,
///    "config_echo": {"k", "alpha", "variant", "candidates"}}
/// Validation failures return 400 with {"error": "invalid request",
/// "details": [{"field", "message"}...]}.
Response handle_rerank(std::string_view body);

/// GET /healthz: {"status": "ok", "ready": true, "version": str}.
Response handle_health();

std::string_view version();

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::size_t max_body_bytes = kDefaultMaxBodyBytes;
};

/// HTTP front end over handle_rerank / handle_health.
class Server {
 public:
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the listening socket and returns the bound port.
  int bind();
  /// Serves until stop() is called. bind() must have succeeded.
  void serve();
  /// Stops accepting connections; requests already running complete first.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace maniscope::service
