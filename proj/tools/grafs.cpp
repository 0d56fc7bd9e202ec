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

// grafs: build indexes and run the exploration pipeline from the shell.
//
// Exit codes: 0 ok, 1 usage, 2 parse, 3 io, 4 empty result.

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "grafs/grafs.hpp"
#include "grafs/service.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kIo = 3, kEmpty = 4 };

int exit_code_for(const grafs::Error& e) {
  using K = grafs::Error::Kind;
  switch (e.kind()) {
    case K::kParse:
    case K::kDuplicateId:
    case K::kAmbiguousSurface:
    case K::kQuerySyntax:
    case K::kIndexFormat:
      return kParse;
    case K::kIo:
      return kIo;
    case K::kEmptyResult:
      return kEmpty;
    default:
      return kUsage;
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

constexpr const char* kPalette[] = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string to_dot(const grafs::KnowledgeView& view, const grafs::Index& idx) {
  std::ostringstream out;
  const auto& g = view.subgraph;
  out << "graph subgraph {\n  node [style=filled];\n";
  for (const auto& id : view.leaf_order) {
    const auto& c = g.concepts[*g.position(id)];
    const std::size_t group = view.group_of(id);
    out << "  \"" << dot_escape(id) << "\" [label=\""
        << dot_escape(idx.vocabulary().entry(c.ordinal).preferred_name) << " ("
        << c.relevance << ")\", fillcolor=\""
        << kPalette[group % std::size(kPalette)] << "\", group=" << group
        << "];\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g.cooccurrence[i][j] > 0)
        out << "  \"" << dot_escape(g.concepts[i].concept_id) << "\" -- \""
            << dot_escape(g.concepts[j].concept_id) << "\" [label=\""
            << g.cooccurrence[i][j] << "\"];\n";
  out << "}\n";
  return out.str();
}

struct Options {
  std::string corpus, vocab, out, index, query, concept_id, format = "json";
  std::string host = "0.0.0.0", static_dir;
  unsigned threads = 1;
  std::size_t n = grafs::kDefaultResultLimit;
  std::size_t k = grafs::kDefaultSubgraphSize;
  std::size_t m = grafs::kDefaultProvenanceCount;
  double lambda = grafs::kDefaultLambda;
  int port = 8080;
  bool json = false;
  std::vector<std::string> include, exclude;
};

int run_index(const Options& o) {
  auto docs = grafs::load_corpus(o.corpus);
  auto vocab = grafs::load_vocabulary(o.vocab);
  const std::size_t concepts = vocab.size();
  const auto idx = grafs::build_index(std::move(docs), std::move(vocab),
                                      o.threads);
  idx.save(o.out);
  std::cout << idx.doc_count() << " documents, " << concepts << " concepts\n";
  return kOk;
}

int run_search(const Options& o) {
  const auto idx = grafs::load_index(o.index);
  const auto hits = idx.search(grafs::parse_query(o.query), o.n);
  if (o.json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& h : hits)
      out.push_back({{"rank", h.rank},
                     {"doc_id", h.doc_id},
                     {"score", h.score},
                     {"title", idx.doc(h.doc).doc.title}});
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& h : hits)
      std::cout << h.rank << '\t' << h.doc_id << '\t' << h.score << '\t'
                << idx.doc(h.doc).doc.title << '\n';
  }
  if (hits.empty()) {
    std::cerr << "no documents matched\n";
    return kEmpty;
  }
  return kOk;
}

int run_subgraph(const Options& o) {
  const auto idx = grafs::load_index(o.index);
  grafs::FacetRequest req;
  req.query = o.query;
  req.n = o.n;
  req.k = o.k;
  req.lambda = grafs::clamp_lambda(o.lambda);
  req.added = o.include;
  req.deleted = o.exclude;
  const grafs::ViewModel view = grafs::explore(idx, req);
  if (view.total_results == 0) {
    std::cerr << "no documents matched\n";
    return kEmpty;
  }
  if (o.format == "dot") {
    std::cout << to_dot(view.knowledge, idx);
  } else {
    std::cout << grafs::wire::subgraph_to_json(view.knowledge, idx,
                                               view.total_results)
                     .dump()
              << "\n";
  }
  return kOk;
}

int run_provenance(const Options& o) {
  const auto idx = grafs::load_index(o.index);
  const auto ast = grafs::parse_query(o.query);
  idx.vocabulary().ordinal(o.concept_id);
  const auto dq = grafs::hit_ordinals(idx.search(ast, o.n));
  if (dq.empty()) {
    std::cerr << "no documents matched\n";
    return kEmpty;
  }
  const auto picked = grafs::select_sentences(
      idx, o.concept_id, grafs::positive_terms(ast), dq, o.m);
  if (o.json) {
    std::cout << grafs::wire::sentences_to_json(picked).dump() << "\n";
  } else {
    for (const auto& s : picked)
      std::cout << s.doc_id << '\t' << s.relevance_score << '\t' << s.text
                << '\n';
  }
  return kOk;
}

int run_serve(const Options& o) {
  grafs::Service service;
  if (!o.static_dir.empty() && !service.set_static_dir(o.static_dir)) {
    std::cerr << "static directory not found: " << o.static_dir << "\n";
    return kIo;
  }
  if (!service.server().bind_to_port(o.host, o.port)) {
    std::cerr << "cannot bind " << o.host << ":" << o.port << "\n";
    return kIo;
  }
  std::thread listener([&] { service.listen_after_bind(); });
  std::cerr << "listening on " << o.host << ":" << o.port << "\n";
  try {
    service.set_index(std::make_shared<const grafs::Index>(
        grafs::load_index(o.index)));
  } catch (...) {
    service.stop();
    listener.join();
    throw;
  }
  std::cerr << "index loaded\n";
  listener.join();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploratory search over a concept-annotated corpus"};
  app.require_subcommand(1);
  Options o;

  auto* index = app.add_subcommand("index", "Annotate a corpus and write an index");
  index->add_option("--corpus", o.corpus, "Corpus JSON-Lines file")->required();
  index->add_option("--vocab", o.vocab, "Vocabulary JSON-Lines file")->required();
  index->add_option("--out", o.out, "Index file to write")->required();
  index->add_option("--threads", o.threads, "Annotation threads")
      ->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Run a Boolean query");
  search->add_option("--index", o.index)->required();
  search->add_option("--query", o.query)->required();
  search->add_option("--n", o.n, "Maximum number of hits")
      ->check(CLI::PositiveNumber);
  search->add_flag("--json", o.json, "Print JSON instead of TSV");

  auto* subgraph = app.add_subcommand("subgraph", "Print the knowledge subgraph");
  subgraph->add_option("--index", o.index)->required();
  subgraph->add_option("--query", o.query)->required();
  subgraph->add_option("--n", o.n, "Retrieved documents |D_q|")
      ->check(CLI::PositiveNumber);
  subgraph->add_option("--k", o.k, "Subgraph size")->check(CLI::PositiveNumber);
  subgraph->add_option("--lambda", o.lambda, "Relevance/coverage balance");
  subgraph->add_option("--exclude", o.exclude, "Concept ids to drop")
      ->delimiter(',');
  subgraph->add_option("--include", o.include, "Concept ids to force in")
      ->delimiter(',');
  subgraph->add_option("--format", o.format)
      ->check(CLI::IsMember({"json", "dot"}));

  auto* provenance =
      app.add_subcommand("provenance", "Representative sentences for a concept");
  provenance->add_option("--index", o.index)->required();
  provenance->add_option("--query", o.query)->required();
  provenance->add_option("--concept", o.concept_id)->required();
  provenance->add_option("--n", o.n)->check(CLI::PositiveNumber);
  provenance->add_option("--m", o.m, "Sentences to select")
      ->check(CLI::PositiveNumber);
  provenance->add_flag("--json", o.json);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--index", o.index)->required();
  serve->add_option("--port", o.port)->check(CLI::Range(1, 65535));
  serve->add_option("--host", o.host);
  serve->add_option("--static", o.static_dir, "Directory served under /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*index) return run_index(o);
    if (*search) return run_search(o);
    if (*subgraph) return run_subgraph(o);
    if (*provenance) return run_provenance(o);
    if (*serve) return run_serve(o);
  } catch (const grafs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
