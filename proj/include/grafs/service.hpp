// Copyright 2026 The GRAFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstddef>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "grafs/facet.hpp"
#include "grafs/index.hpp"
#include "grafs/provenance.hpp"
#include "grafs/wire.hpp"
#include "httplib.h"
#include "json.hpp"

namespace grafs {

// Stateless JSON API over one immutable index. Requests arriving before
// set_index() get 503 so a server can start listening while it loads.
class Service {
 public:
  Service() { routes(); }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  void set_index(std::shared_ptr<const Index> index) {
    std::lock_guard lock(mu_);
    index_ = std::move(index);
  }

  std::shared_ptr<const Index> index() const {
    std::lock_guard lock(mu_);
    return index_;
  }

  // Serves a built UI under "/". Returns false when dir does not exist.
  bool set_static_dir(const std::string& dir) {
    return server_.set_mount_point("/", dir);
  }

  httplib::Server& server() { return server_; }

  bool listen(const std::string& host, int port) {
    return server_.listen(host, port);
  }

  // Binds an ephemeral port and returns it (or -1).
  int bind_any(const std::string& host) {
    return server_.bind_to_any_port(host);
  }
  bool listen_after_bind() { return server_.listen_after_bind(); }

  void stop() { server_.stop(); }

 private:
  using json = nlohmann::json;

  static void cors(httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    cors(res);
    res.set_content(body.dump(), "application/json");
  }

  static void fail(httplib::Response& res, const wire::ApiError& err) {
    reply(res, err.status(), err.to_json());
  }

  // Runs fn with the loaded index, translating exceptions into ApiErrors.
  template <typename Fn>
  void with_index(httplib::Response& res, Fn&& fn) {
    auto idx = index();
    if (!idx) {
      fail(res, {"unavailable", "index is loading", std::nullopt});
      return;
    }
    try {
      fn(*idx);
    } catch (const std::exception& e) {
      fail(res, wire::to_api_error(e));
    }
  }

  static std::size_t positive_param(const httplib::Request& req,
                                     const char* key, std::size_t fallback) {
    if (!req.has_param(key)) return fallback;
    const std::string v = req.get_param_value(key);
    std::size_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || out < 1)
      throw Error(Error::Kind::kInvalidArgument,
                  std::string("parameter ") + key +
                      " must be a positive integer");
    return out;
  }

  void routes() {
    server_.Options(R"(.*)", [](const httplib::Request&,
                                httplib::Response& res) {
      cors(res);
      res.status = 204;
    });

    server_.Get("/api/health", [this](const httplib::Request&,
                                      httplib::Response& res) {
      auto idx = index();
      if (!idx) {
        json body = wire::ApiError{"unavailable", "index is loading",
                                   std::nullopt}
                        .to_json();
        body["status"] = "loading";
        reply(res, 503, body);
        return;
      }
      reply(res, 200, json{{"status", "ok"}, {"doc_count", idx->doc_count()}});
    });

    server_.Post("/api/explore", [this](const httplib::Request& req,
                                        httplib::Response& res) {
      with_index(res, [&](const Index& idx) {
        const FacetRequest fr =
            wire::parse_explore_request(json::parse(req.body));
        reply(res, 200, wire::view_to_json(explore(idx, fr), idx));
      });
    });

    server_.Get("/api/documents/:id", [this](const httplib::Request& req,
                                             httplib::Response& res) {
      with_index(res, [&](const Index& idx) {
        const std::string& id = req.path_params.at("id");
        const auto d = idx.find_doc(id);
        if (!d) {
          fail(res, {"not_found", "unknown document " + id, std::nullopt});
          return;
        }
        reply(res, 200, wire::document_to_json(idx.doc(*d)));
      });
    });

    server_.Get("/api/provenance", [this](const httplib::Request& req,
                                          httplib::Response& res) {
      with_index(res, [&](const Index& idx) {
        if (!req.has_param("query") || !req.has_param("concept"))
          throw Error(Error::Kind::kInvalidArgument,
                      "query and concept parameters are required");
        const std::string concept_id = req.get_param_value("concept");
        const std::size_t n = positive_param(req, "n", kDefaultResultLimit);
        const std::size_t m =
            positive_param(req, "m", kDefaultProvenanceCount);
        const QueryAst ast = parse_query(req.get_param_value("query"));
        idx.vocabulary().ordinal(concept_id);
        const auto dq = hit_ordinals(idx.search(ast, n));
        const auto terms = positive_terms(ast);
        reply(res, 200,
              json{{"concept_id", concept_id},
                   {"m", m},
                   {"index_fingerprint", idx.fingerprint()},
                   {"sentences", wire::sentences_to_json(select_sentences(
                                     idx, concept_id, terms, dq, m))}});
      });
    });

    server_.set_exception_handler([](const httplib::Request&,
                                     httplib::Response& res,
                                     std::exception_ptr ep) {
      wire::ApiError err{"internal", "unexpected failure", std::nullopt};
      try {
        if (ep) std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        err.message = e.what();
      } catch (...) {
      }
      fail(res, err);
    });

    // Unmatched routes and other bare statuses get an ApiError body.
    server_.set_error_handler([](const httplib::Request&,
                                 httplib::Response& res) {
      if (!res.body.empty()) return;
      const int status = res.status;
      wire::ApiError err{status == 404 ? "not_found" : "internal",
                         "HTTP " + std::to_string(status), std::nullopt};
      reply(res, status, err.to_json());
    });
  }

  httplib::Server server_;
  mutable std::mutex mu_;
  std::shared_ptr<const Index> index_;
};

}  // namespace grafs
