// Copyright 2026 The SocialRank Authors. All Rights Reserved.
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

// Command-line front end: synthetic data, training, evaluation, trait probes
// and the onboarding HTTP service.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/error.hpp"
#include "socialrank/eval.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/graphgen.hpp"
#include "socialrank/io_util.hpp"
#include "socialrank/service.hpp"
#include "socialrank/session_store.hpp"
#include "socialrank/traits.hpp"

namespace sr = socialrank;
using nlohmann::json;

namespace {

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const unsigned long v = std::stoul(item, &pos);
    if (pos != item.size() || v == 0) throw sr::InvalidParameter("bad list element '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw sr::InvalidParameter("empty list");
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  sr::write_text_file(path, text);
}

sr::FollowGraph load_graph(const std::string& path) { return sr::read_edge_list(path); }

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string out;
  std::string catalog;
  std::size_t users = 5000;
  double strength = 3.0;
  double spread = 0.5;
  double rho = 0.5;
  std::size_t background = 0;
  std::optional<double> background_logit;
  std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& a) {
  sr::Catalog base = a.catalog.empty() ? sr::reference_catalog() : sr::load_catalog(a.catalog);
  sr::DatasetConfig config;
  config.users = a.users;
  config.correlation_strength = a.strength;
  config.popularity_spread = a.spread;
  config.model.within_category_correlation = a.rho;
  if (a.background > 0) config.model.background_entities = a.background;
  if (a.background_logit) config.model.background_base_logit = *a.background_logit;
  config.seed = a.seed;
  const sr::SyntheticDataset data = sr::generate_dataset(base, config);
  sr::write_dataset(data, a.out);
  std::cerr << "wrote " << data.graph.users().size() << " users, " << data.graph.edge_count() << " edges to "
            << a.out << "\n";
  return 0;
}

// train ---------------------------------------------------------------------

struct TrainArgs {
  std::string edges;
  std::string out;
  std::string format = "binary";
  std::string emit = "input";
  sr::TrainConfig config;
};

int run_train(TrainArgs a) {
  const sr::FollowGraph graph = load_graph(a.edges);
  sr::TrainStats stats;
  const sr::EmbeddingTable table = sr::train(graph, a.config, &stats);
  const sr::EmitMode emit = a.emit == "mean" ? sr::EmitMode::Mean : sr::EmitMode::Input;
  const sr::TableFormat format = a.format == "text" ? sr::TableFormat::Text : sr::TableFormat::Binary;
  sr::save_embeddings(sr::emit_vectors(table, emit), a.out, format);
  for (std::size_t e = 0; e < stats.epoch_mean_loss.size(); ++e) {
    std::fprintf(stderr, "epoch %zu  mean loss %.6f\n", e + 1, stats.epoch_mean_loss[e]);
  }
  std::cerr << "vocabulary " << table.size() << ", " << stats.pairs << " pairs, wrote " << a.out << "\n";
  return 0;
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string edges;
  std::string catalog;
  std::string embeddings;
  std::string mode = "open";
  std::string out;
  std::string csv;
  std::size_t users_per_entity = 50;
  std::size_t bootstrap = 1000;
  std::size_t workers = 1;
  bool timestamp = false;
  std::uint64_t seed = 1;
  std::string ks = "1,2,5,10,20,50,100";
  std::string grid_k = "1,2,3,4,5";
  std::string grid_n = "1,2,3,4,5,6,7";
};

int run_eval(const std::string& experiment, const EvalArgs& a) {
  const sr::FollowGraph graph = load_graph(a.edges);
  const sr::Catalog catalog = sr::with_follower_counts(sr::load_catalog(a.catalog), graph);
  const sr::EmbeddingTable table = sr::load_embeddings(a.embeddings);
  const sr::CaseSet cases = sr::build_all_eval_cases(graph, catalog, a.users_per_entity, a.seed);
  for (const auto& s : cases.shortfalls) {
    std::cerr << "shortfall: " << s.entity << " has " << s.available << " of " << s.requested << " users\n";
  }

  sr::EvalOptions options;
  options.seed = a.seed;
  options.bootstrap_resamples = a.bootstrap;
  options.workers = a.workers;
  options.include_timestamp = a.timestamp;
  options.extra_metadata = {{"edges", a.edges},
                            {"catalog", a.catalog},
                            {"embeddings", a.embeddings},
                            {"users_per_entity", a.users_per_entity}};
  const sr::WorldMode mode = sr::parse_world_mode(a.mode);

  json doc;
  std::string csv;
  if (experiment == "linkpred") {
    const auto report = sr::run_linkpred(cases.cases, table, catalog, mode, options);
    doc = sr::to_json(report);
    csv = sr::to_csv(report);
    std::fprintf(stderr, "overall MAP  popularity %.3f  social %.3f  (%+.1f%%)\n", report.overall.popularity.map,
                 report.overall.social.map, report.overall.delta_percent);
  } else if (experiment == "vary-k") {
    const auto ks = parse_list(a.ks);
    const auto report = sr::vary_k_experiment(cases.cases, table, catalog, ks, mode, options);
    doc = sr::to_json(report);
    csv = sr::to_csv(report);
  } else {
    const auto k = parse_list(a.grid_k);
    const auto n = parse_list(a.grid_n);
    const auto report = sr::grid_experiment(cases.cases, table, catalog, k, n, options);
    doc = sr::to_json(report);
    csv = sr::to_csv(report);
  }
  write_output(doc.dump(2) + "\n", a.out);
  if (!a.csv.empty()) sr::write_text_file(a.csv, csv);
  return 0;
}

// traits --------------------------------------------------------------------

struct TraitsArgs {
  std::string edges;
  std::string embeddings;
  std::string traits;
  std::string probes;
  std::string catalog;
  std::string out;
  std::vector<std::string> entities;
  double l2 = 1e-2;
  double heldout = 0.2;
  std::uint64_t seed = 1;
};

int run_traits_train(const TraitsArgs& a) {
  const sr::FollowGraph graph = load_graph(a.edges);
  const sr::EmbeddingTable table = sr::load_embeddings(a.embeddings);
  const auto traits = sr::load_traits(a.traits);
  sr::ProbeConfig config;
  config.l2 = a.l2;
  config.seed = a.seed;
  const auto results = sr::train_trait_probes(graph, table, traits, config, a.heldout);
  std::vector<sr::LinearProbe> probes;
  for (const auto& r : results) {
    std::fprintf(stderr, "%-20s held-out accuracy %.3f  (training majority %.3f, n=%zu)\n",
                 r.probe.trait.c_str(), r.heldout_accuracy, r.train_majority_rate, r.heldout_size);
    probes.push_back(r.probe);
  }
  sr::save_probes(probes, a.out);
  return 0;
}

int run_traits_profile(const TraitsArgs& a) {
  const sr::FollowGraph graph = load_graph(a.edges);
  std::vector<std::string> ids = a.entities;
  if (ids.empty()) {
    if (a.catalog.empty()) throw sr::InvalidParameter("give --entity or --catalog");
    for (const auto& e : sr::load_catalog(a.catalog).entities()) ids.push_back(e.id);
  }

  json out = json::array();
  auto emit = [&](const std::string& id, auto&& compute) {
    try {
      out.push_back(sr::to_json(compute(id)));
    } catch (const sr::NoFollowers& e) {
      std::cerr << "skipped: " << e.what() << "\n";
    }
  };
  if (!a.traits.empty()) {
    const auto traits = sr::load_traits(a.traits);
    for (const auto& id : ids) emit(id, [&](const std::string& e) { return sr::entity_trait_profile(e, graph, traits); });
  } else {
    if (a.probes.empty() || a.embeddings.empty()) {
      throw sr::InvalidParameter("predicted profiles need --probes and --embeddings (or give --traits)");
    }
    const auto probes = sr::probes_in_trait_order(sr::load_probes(a.probes));
    const sr::EmbeddingTable table = sr::load_embeddings(a.embeddings);
    for (const auto& id : ids) {
      emit(id, [&](const std::string& e) { return sr::entity_trait_profile(e, graph, probes, table); });
    }
  }
  write_output(out.dump(2) + "\n", a.out);
  return 0;
}

// serve ---------------------------------------------------------------------

struct ServeArgs {
  std::string catalog;
  std::string embeddings;
  std::string probes;
  std::string edges;
  std::string addr = "127.0.0.1:8080";
  std::string state = "socialrank-sessions.db";
  std::string static_dir;
};

std::shared_ptr<const sr::ServiceState> load_state(const ServeArgs& a) {
  std::optional<sr::FollowGraph> graph;
  if (!a.edges.empty()) graph = load_graph(a.edges);
  sr::Catalog catalog = sr::load_catalog(a.catalog);
  if (graph) catalog = sr::with_follower_counts(catalog, *graph);
  std::vector<sr::LinearProbe> probes;
  if (!a.probes.empty()) probes = sr::probes_in_trait_order(sr::load_probes(a.probes));
  return std::make_shared<const sr::ServiceState>(
      sr::ServiceState{std::move(catalog), sr::load_embeddings(a.embeddings), std::move(probes), std::move(graph)});
}

httplib::Server* g_server = nullptr;

int run_serve(const ServeArgs& a) {
  const auto colon = a.addr.rfind(':');
  if (colon == std::string::npos) throw sr::InvalidParameter("--addr must be host:port");
  const std::string host = a.addr.substr(0, colon);
  const int port = std::stoi(a.addr.substr(colon + 1));

  sr::SessionStore store(a.state);
  sr::OnboardingService service(store);
  httplib::Server server;
  service.register_routes(server);
  if (!a.static_dir.empty() && !server.set_mount_point("/", a.static_dir)) {
    throw sr::IoError("cannot mount static directory " + a.static_dir);
  }

  // Bind first so clients see 503 rather than connection refused while loading.
  std::jthread loader([&] {
    try {
      service.set_state(load_state(a));
      std::cerr << "state loaded\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      server.stop();
    }
  });
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    loader.join();
    if (!service.ready()) return 1;
    std::cerr << "error: cannot listen on " << a.addr << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Social-embedding recommendation toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic planted dataset");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--catalog", gen.catalog, "Catalog JSON (default: built-in 14x20 catalog)");
  generate->add_option("--users", gen.users, "Number of users")->capture_default_str();
  generate->add_option("--strength", gen.strength, "Trait/follow correlation strength")->capture_default_str();
  generate->add_option("--spread", gen.spread, "Popularity spread of entity biases")->capture_default_str();
  generate->add_option("--rho", gen.rho, "Within-category direction correlation")->capture_default_str();
  generate->add_option("--background", gen.background, "Background entities (default 4x catalog)");
  generate->add_option("--background-logit", gen.background_logit, "Mean follow logit of background entities (default -3.5)");
  generate->add_option("--seed", gen.seed)->capture_default_str();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train entity embeddings on a follow graph");
  train->add_option("--edges", tr.edges, "user<TAB>entity edge list")->required()->check(CLI::ExistingFile);
  train->add_option("--out", tr.out, "Output embeddings file")->required();
  train->add_option("--dim", tr.config.dim)->capture_default_str();
  train->add_option("--epochs", tr.config.epochs)->capture_default_str();
  train->add_option("--negatives", tr.config.negatives)->capture_default_str();
  train->add_option("--min-count", tr.config.min_count)->capture_default_str();
  train->add_option("--contexts", tr.config.max_contexts, "Contexts sampled per focus")->capture_default_str();
  train->add_option("--alpha", tr.config.alpha)->capture_default_str();
  train->add_option("--workers", tr.config.workers)->capture_default_str();
  train->add_option("--seed", tr.config.seed)->capture_default_str();
  train->add_option("--format", tr.format)->check(CLI::IsMember({"binary", "text"}))->capture_default_str();
  train->add_option("--emit", tr.emit)->check(CLI::IsMember({"input", "mean"}))->capture_default_str();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Link-prediction experiments");
  eval->require_subcommand(1);
  auto add_eval_options = [&ev](CLI::App* cmd) {
    cmd->add_option("--edges", ev.edges)->required()->check(CLI::ExistingFile);
    cmd->add_option("--catalog", ev.catalog)->required()->check(CLI::ExistingFile);
    cmd->add_option("--embeddings", ev.embeddings)->required()->check(CLI::ExistingFile);
    cmd->add_option("--mode", ev.mode, "open|closed")->check(CLI::IsMember({"open", "closed"}))->capture_default_str();
    cmd->add_option("--seed", ev.seed)->capture_default_str();
    cmd->add_option("--out", ev.out, "JSON report (default stdout)");
    cmd->add_option("--csv", ev.csv, "Also write a CSV report");
    cmd->add_option("--users-per-entity", ev.users_per_entity)->capture_default_str();
    cmd->add_option("--bootstrap", ev.bootstrap, "Bootstrap resamples")->capture_default_str();
    cmd->add_option("--workers", ev.workers)->capture_default_str();
    cmd->add_flag("--timestamp", ev.timestamp, "Record wall-clock time in the report");
  };
  auto* linkpred = eval->add_subcommand("linkpred", "Per-category MAP against the popularity baseline");
  auto* vary_k = eval->add_subcommand("vary-k", "MAP as a function of profile size");
  auto* grid = eval->add_subcommand("grid", "Cold-start grid over categories x entities per category");
  for (auto* cmd : {linkpred, vary_k, grid}) add_eval_options(cmd);
  vary_k->add_option("--ks", ev.ks, "Comma-separated profile sizes")->capture_default_str();
  grid->add_option("--k", ev.grid_k, "Comma-separated category counts")->capture_default_str();
  grid->add_option("--n", ev.grid_n, "Comma-separated entities per category")->capture_default_str();

  TraitsArgs ta;
  auto* traits = app.add_subcommand("traits", "Socio-demographic probes");
  traits->require_subcommand(1);
  auto* traits_train = traits->add_subcommand("train", "Fit one logistic probe per trait");
  traits_train->add_option("--edges", ta.edges)->required()->check(CLI::ExistingFile);
  traits_train->add_option("--embeddings", ta.embeddings)->required()->check(CLI::ExistingFile);
  traits_train->add_option("--traits", ta.traits, "User trait labels")->required()->check(CLI::ExistingFile);
  traits_train->add_option("--out", ta.out, "Probe file (JSON array)")->required();
  traits_train->add_option("--l2", ta.l2)->capture_default_str();
  traits_train->add_option("--heldout", ta.heldout, "Held-out fraction")->capture_default_str();
  traits_train->add_option("--seed", ta.seed)->capture_default_str();
  auto* traits_profile = traits->add_subcommand("profile", "Follower trait profiles of entities");
  traits_profile->add_option("--edges", ta.edges)->required()->check(CLI::ExistingFile);
  traits_profile->add_option("--embeddings", ta.embeddings)->check(CLI::ExistingFile);
  traits_profile->add_option("--probes", ta.probes, "Predicted mode")->check(CLI::ExistingFile);
  traits_profile->add_option("--traits", ta.traits, "Ground-truth mode")->check(CLI::ExistingFile);
  traits_profile->add_option("--catalog", ta.catalog, "Profile every catalog entity")->check(CLI::ExistingFile);
  traits_profile->add_option("--entity", ta.entities, "Entity id (repeatable)");
  traits_profile->add_option("--out", ta.out, "Output JSON (default stdout)");

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "Run the onboarding HTTP service");
  auto env = [](const char* name) { return std::string("SOCIALRANK_") + name; };
  serve->add_option("--catalog", sv.catalog)->envname(env("CATALOG"))->required();
  serve->add_option("--embeddings", sv.embeddings)->envname(env("EMBEDDINGS"))->required();
  serve->add_option("--probes", sv.probes)->envname(env("PROBES"));
  serve->add_option("--edges", sv.edges, "Follow graph for follower-based trait profiles")->envname(env("EDGES"));
  serve->add_option("--addr", sv.addr)->envname(env("ADDR"))->capture_default_str();
  serve->add_option("--state", sv.state, "Session store file")->envname(env("STATE"))->capture_default_str();
  serve->add_option("--static", sv.static_dir, "Directory served at /")->envname(env("STATIC"));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*train) return run_train(tr);
    if (*linkpred) return run_eval("linkpred", ev);
    if (*vary_k) return run_eval("vary-k", ev);
    if (*grid) return run_eval("grid", ev);
    if (*traits_train) return run_traits_train(ta);
    if (*traits_profile) return run_traits_profile(ta);
    if (*serve) return run_serve(sv);
  } catch (const sr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
