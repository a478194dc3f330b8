#include "maniscope/service.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "httplib.h"
#include "maniscope/error.hpp"
#include "maniscope/rerank.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope::service {
namespace {

using nlohmann::json;

struct FieldError {
  std::string field;
  std::string message;
};

class ValidationError : public std::exception {
 public:
  explicit ValidationError(std::vector<FieldError> errors) : errors_(std::move(errors)) {}
  const char* what() const noexcept override { return "invalid request"; }
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

struct ParsedRequest {
  QueryEmbedding query;
  std::vector<std::string> ids;
  std::vector<float> vectors;
  RerankConfig cfg;
};

std::optional<std::vector<float>> parse_vector(const json& node, const std::string& field,
                                               std::vector<FieldError>& errors) {
  if (!node.is_array() || node.empty()) {
    errors.push_back({field, "expected a nonempty array of numbers"});
    return std::nullopt;
  }
  std::vector<float> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      errors.push_back({field, "element " + std::to_string(i) + " is not a number"});
      return std::nullopt;
    }
    const auto v = static_cast<float>(node[i].get<double>());
    if (!std::isfinite(v)) {
      errors.push_back({field, "element " + std::to_string(i) + " is not finite in 32-bit range"});
      return std::nullopt;
    }
    out.push_back(v);
  }
  return out;
}

bool all_zero(const std::vector<float>& v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

ParsedRequest parse_request(std::string_view body) {
  const json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ValidationError(std::vector<FieldError>{{"body", "request body must be a JSON object"}});
  }
  std::vector<FieldError> errors;
  ParsedRequest req;

  if (!doc.contains("query_vector")) {
    errors.push_back({"query_vector", "missing"});
  } else if (auto v = parse_vector(doc["query_vector"], "query_vector", errors)) {
    if (all_zero(*v)) {
      errors.push_back({"query_vector", "zero norm"});
    } else {
      req.query.vector = std::move(*v);
    }
  }

  if (!doc.contains("candidates") || !doc["candidates"].is_array()) {
    errors.push_back({"candidates", "expected an array of {id, vector} objects"});
  } else {
    const auto& cands = doc["candidates"];
    if (cands.empty() || cands.size() > kMaxCandidates) {
      errors.push_back({"candidates", "expected between 1 and " + std::to_string(kMaxCandidates) +
                                          " candidates, got " + std::to_string(cands.size())});
    } else {
      const std::size_t dim = req.query.dim();
      for (std::size_t i = 0; i < cands.size(); ++i) {
        const std::string field = "candidates[" + std::to_string(i) + "]";
        const auto& c = cands[i];
        if (!c.is_object()) {
          errors.push_back({field, "expected an object"});
          continue;
        }
        if (!c.contains("id") || !c["id"].is_string()) {
          errors.push_back({field + ".id", "expected a string"});
          continue;
        }
        if (!c.contains("vector")) {
          errors.push_back({field + ".vector", "missing"});
          continue;
        }
        auto v = parse_vector(c["vector"], field + ".vector", errors);
        if (!v) continue;
        if (dim != 0 && v->size() != dim) {
          errors.push_back({field + ".vector", "dimension mismatch: expected " +
                                                   std::to_string(dim) + ", got " +
                                                   std::to_string(v->size())});
          continue;
        }
        if (all_zero(*v)) {
          errors.push_back({field + ".vector", "zero norm"});
          continue;
        }
        req.ids.push_back(c["id"].get<std::string>());
        req.vectors.insert(req.vectors.end(), v->begin(), v->end());
      }
    }
  }

  if (doc.contains("k") && !doc["k"].is_null()) {
    if (!doc["k"].is_number_integer() || doc["k"].get<std::int64_t>() < 1) {
      errors.push_back({"k", "expected a positive integer"});
    } else {
      req.cfg.k = doc["k"].get<std::size_t>();
    }
  }
  if (doc.contains("alpha") && !doc["alpha"].is_null()) {
    const auto& a = doc["alpha"];
    if (!a.is_number() || !(a.get<double>() >= 0.0 && a.get<double>() <= 1.0)) {
      errors.push_back({"alpha", "expected a number in [0, 1]"});
    } else {
      req.cfg.alpha = a.get<double>();
    }
  }
  if (doc.contains("variant") && !doc["variant"].is_null()) {
    try {
      if (!doc["variant"].is_string()) throw InvalidArgument("not a string");
      req.cfg.variant = parse_geodesic_variant(doc["variant"].get<std::string>());
    } catch (const InvalidArgument&) {
      errors.push_back({"variant", "expected \"maxnorm\" or \"inverse\""});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return req;
}

Response error_response(int status, const std::string& error,
                        const std::vector<FieldError>& details) {
  WireJson body = {{"error", error}};
  body["details"] = WireJson::array();
  for (const auto& e : details) {
    body["details"].push_back({{"field", e.field}, {"message", e.message}});
  }
  return {status, std::move(body)};
}

}  // namespace

std::string_view version() { return MANISCOPE_VERSION; }

Response handle_rerank(std::string_view body) {
  try {
    const auto req = parse_request(body);
    const auto pool = pool_from_candidates(req.query, req.vectors, req.ids);
    const auto result = rerank(pool, req.cfg);

    WireJson ranked = WireJson::array();
    for (std::size_t r = 0; r < result.order.size(); ++r) {
      const auto pos = result.order[r];
      ranked.push_back({{"id", pool.ids[pos]},
                        {"index", pool.corpus_indices[pos]},
                        {"score", static_cast<float>(result.scores[r])},
                        {"cos", static_cast<float>(result.components[r].cos)},
                        {"geo", static_cast<float>(result.components[r].geo)}});
    }
    WireJson out = {
        {"ranked", std::move(ranked)},
        {"latency_ms", static_cast<float>(result.latency_ms)},
        {"config_echo",
         {{"k", req.cfg.k},
          {"alpha", static_cast<float>(req.cfg.alpha)},
          {"variant", std::string(to_string(req.cfg.variant))},
          {"candidates", pool.size()}}},
    };
    return {200, std::move(out)};
  } catch (const ValidationError& e) {
    return error_response(400, "invalid request", e.errors());
  } catch (const InvalidArgument& e) {
    return error_response(400, "invalid request", {{"body", e.what()}});
  } catch (const std::exception& e) {
    return error_response(500, "internal error", {{"", e.what()}});
  }
}

Response handle_health() {
  return {200, {{"status", "ok"}, {"ready", true}, {"version", std::string(version())}}};
}

struct Server::Impl {
  ServerOptions options;
  httplib::Server http;
  int port = -1;
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  auto& http = impl_->http;
  http.set_payload_max_length(impl_->options.max_body_bytes);

  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.dump(), "application/json");
  };
  http.Post("/v1/rerank", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_rerank(req.body));
  });
  http.Get("/healthz", [send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_health());
  });
  http.set_exception_handler(
      [send](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        send(res, error_response(500, "internal error", {}));
      });
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) {
    throw IoError("cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return impl_->port;
}

void Server::serve() {
  if (impl_->port < 0) throw Error("serve() called before bind()");
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

}  // namespace maniscope::service
