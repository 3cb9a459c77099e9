#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>

#include "wargraph/classic_game.hpp"
#include "wargraph/cycle_search.hpp"
#include "wargraph/graph_engine.hpp"
#include "wargraph/markov_analysis.hpp"
#include "wargraph/reports.hpp"

namespace wargraph::cli {

namespace {

// A claim the user asked to be checked did not hold.
constexpr int kClaimFailed = 2;
constexpr int kUsageError = 1;

struct Options {
  int n = 0;
  std::string rule = "standard";
  std::string edges = "both";
  std::string policy = "seat-left";
  double pl1 = 0.5;
  double pr1 = 0.5;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = 1'000'000;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  bool expect = false;
  bool no_timing = false;
  bool all_states = false;
  double tolerance = 1e-10;
  std::int64_t max_iterations = 1'000'000;
  std::string solver = "auto";
  std::string ks;
  std::int64_t k_max = -1;
  int horizon = 200;
  int face_down = 1;
  std::string deal;
  std::string deal_file;
  std::string cert_file;
  std::string from_deal;
  std::size_t limit = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuleError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string deal_text(const Options& o) {
  if (!o.deal_file.empty()) return read_file(o.deal_file);
  return o.deal;
}

std::vector<std::int64_t> parse_ks(const Options& o) {
  std::vector<std::int64_t> ks;
  if (o.k_max >= 0) {
    for (std::int64_t k = 0; k <= o.k_max; ++k) ks.push_back(k);
    return ks;
  }
  std::stringstream ss(o.ks);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      ks.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw RuleError("bad step count '" + item + "' in --ks");
    }
  }
  return ks;
}

PlacementProbabilities probs_of(const Options& o) { return PlacementProbabilities::from_own_first(o.pl1, o.pr1); }

int model_n(const Options& o) {
  DeckSpec{o.n, parse_rule(o.rule)}.validate();
  return o.n;
}

Json config_json(const std::string& command, const Options& o) {
  return {{"command", command},
          {"n", o.n},
          {"rule", o.rule},
          {"edges", o.edges},
          {"policy", o.policy},
          {"pl1", o.pl1},
          {"pr1", o.pr1},
          {"trials", o.trials},
          {"seed", o.seed},
          {"max_steps", o.max_steps},
          {"tolerance", o.tolerance},
          {"max_iterations", o.max_iterations},
          {"solver", o.solver},
          {"horizon", o.horizon},
          {"face_down", o.face_down}};
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw RuleError("cannot write '" + o.out + "'");
  file << text;
}

void emit_json(const Options& o, const Json& j, std::ostream& out) { emit(o, j.dump(2) + "\n", out); }

int cmd_analyze(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto rule = parse_rule(o.rule);
  const auto filter = parse_edge_filter(o.edges);
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = attaining_set(GameGraph(n, rule, filter));
  const auto audit = degree_audit(n, rule);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = o.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(t1 - t0).count();
  Json j = analysis_report(report, audit, ms);
  j["wandering_closed"] = wandering_closure_check(report);
  j["config"] = config_json("analyze", o);
  emit_json(o, j, out);
  if (o.expect && (!report.absorbing() || !audit.clean())) return kClaimFailed;
  return 0;
}

int cmd_expected_length(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto rule = parse_rule(o.rule);
  const auto probs = probs_of(o);
  SolveOptions so;
  so.tolerance = o.tolerance;
  so.max_iterations = o.max_iterations;
  so.method = parse_solver(o.solver);
  const auto sol = expected_absorption(n, rule, probs, so);
  Json j = solution_summary(sol);
  if (o.trials > 0) {
    j["monte_carlo"] = to_json(monte_carlo_length(n, rule, probs, o.trials, o.seed, o.max_steps, o.threads));
  }
  j["config"] = config_json("expected-length", o);
  emit_json(o, j, out);
  return 0;
}

int cmd_tail_curve(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto rule = parse_rule(o.rule);
  const auto ks = parse_ks(o);
  Eigen::VectorXd initial;
  std::string description = "equal-split";
  if (o.from_deal.empty()) {
    initial = equal_split_distribution(n);
  } else {
    const auto s = parse_deal(o.from_deal);
    if (s.deck_size() != n) throw RuleError("--from-deal deck size does not match --n");
    initial = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(state_count(n)));
    initial[static_cast<Eigen::Index>(encode(s))] = 1.0;
    description = to_string(s);
  }
  const auto curve = tail_probability(n, rule, probs_of(o), initial, ks, description);
  if (o.format == "csv") {
    emit(o, tail_csv(curve), out);
  } else {
    Json j = to_json(curve);
    j["config"] = config_json("tail-curve", o);
    emit_json(o, j, out);
  }
  return 0;
}

int cmd_decay_cert(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto cert = decay_certificate(n, parse_rule(o.rule), probs_of(o), o.horizon);
  Json j = to_json(cert);
  j["config"] = config_json("decay-cert", o);
  emit_json(o, j, out);
  return cert.holds ? 0 : kClaimFailed;
}

int cmd_find_cycle(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto rule = parse_rule(o.rule);
  const auto policy = parse_policy(o.policy);
  const auto certs = find_cycles(n, policy, rule, o.all_states);
  Json list = Json::array();
  for (std::size_t i = 0; i < certs.size() && (o.limit == 0 || i < o.limit); ++i) list.push_back(to_json(certs[i]));
  Json j{{"count", certs.size()}, {"certificates", list}, {"config", config_json("find-cycle", o)}};
  emit_json(o, j, out);
  if (o.expect && certs.empty()) return kClaimFailed;
  return 0;
}

int cmd_verify_cycle(const Options& o, std::ostream& out) {
  if (o.cert_file.empty()) throw RuleError("verify-cycle needs --cert");
  Json doc;
  try {
    doc = Json::parse(read_file(o.cert_file));
  } catch (const nlohmann::json::parse_error& e) {
    throw RuleError(std::string("certificate file is not JSON: ") + e.what());
  }
  std::vector<Json> items;
  if (doc.is_array()) {
    items.assign(doc.begin(), doc.end());
  } else if (doc.contains("certificates")) {
    items.assign(doc["certificates"].begin(), doc["certificates"].end());
  } else {
    items.push_back(doc);
  }
  if (items.empty()) throw RuleError("no certificate found in '" + o.cert_file + "'");
  bool all_valid = true;
  Json results = Json::array();
  for (const auto& item : items) {
    const auto cert = cycle_certificate_from_json(item);
    const bool valid = verify_cycle(cert);
    all_valid = all_valid && valid;
    Json r = to_json(cert);
    r["valid"] = valid;
    results.push_back(r);
  }
  emit_json(o, Json{{"valid", all_valid}, {"results", results}}, out);
  return all_valid ? 0 : kClaimFailed;
}

int cmd_two_outcome(const Options& o, std::ostream& out) {
  const int n = model_n(o);
  const auto certs = two_outcome_deals(n, parse_rule(o.rule));
  Json list = Json::array();
  for (std::size_t i = 0; i < certs.size() && (o.limit == 0 || i < o.limit); ++i) list.push_back(to_json(certs[i]));
  emit_json(o, Json{{"count", certs.size()}, {"certificates", list}, {"config", config_json("two-outcome", o)}}, out);
  if (o.expect && certs.empty()) return kClaimFailed;
  return 0;
}

WarConfig war_config(const Options& o) {
  WarConfig c;
  c.face_down_count = o.face_down;
  c.validate();
  return c;
}

int cmd_simulate_classic(const Options& o, std::ostream& out) {
  const auto text = deal_text(o);
  const ClassicState deal = text.empty() ? random_classic_deal(o.seed) : parse_classic_deal(text);
  const auto record = simulate_classic(deal, probs_of(o), war_config(o), o.seed, o.max_steps);
  Json j = to_json(record);
  j["config"] = config_json("simulate-classic", o);
  emit_json(o, j, out);
  return 0;
}

int cmd_mc_classic(const Options& o, std::ostream& out) {
  if (o.trials == 0) throw RuleError("mc-classic needs --trials >= 1");
  Options with_ks = o;
  if (with_ks.ks.empty() && with_ks.k_max < 0) with_ks.ks = "0,100,1000,10000,100000";
  const auto ks = parse_ks(with_ks);
  const auto summary = monte_carlo_classic(o.trials, probs_of(o), war_config(o), o.seed, o.max_steps, ks, o.threads);
  Json j = to_json(summary);
  j["config"] = config_json("mc-classic", o);
  emit_json(o, j, out);
  if (o.expect && summary.moves.truncated > 0) return kClaimFailed;
  return 0;
}

int cmd_verify_deal(const Options& o, std::ostream& out) {
  const auto text = deal_text(o);
  if (text.empty()) throw RuleError("verify-deal needs --deal or --deal-file");
  const auto deal = parse_classic_deal(text);
  const auto check = verify_value_cycle(deal, parse_policy(o.policy), war_config(o));
  Json j = to_json(check);
  j["deal"] = to_string(deal);
  j["config"] = config_json("verify-deal", o);
  emit_json(o, j, out);
  return check.ok ? 0 : kClaimFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exhaustive and probabilistic analysis of the card game War"};
  app.require_subcommand(1);
  Options o;

  auto add_model = [&](CLI::App* c) {
    c->add_option("--n", o.n, "model deck size (even, 2..12)")->required();
    c->add_option("--rule", o.rule, "standard | cyclic")->capture_default_str();
  };
  auto add_probs = [&](CLI::App* c) {
    c->add_option("--pl1", o.pl1, "P(left winner places own card first)")->capture_default_str();
    c->add_option("--pr1", o.pr1, "P(right winner places own card first)")->capture_default_str();
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write the report to this file"); };
  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "attaining/wandering classification and degree audit");
  add_model(analyze);
  analyze->add_option("--edges", o.edges, "both | own-first | rival-first | seat-left | seat-right")
      ->capture_default_str();
  analyze->add_flag("--expect-absorbing", o.expect, "exit 2 unless every state is attaining");
  analyze->add_flag("--no-timing", o.no_timing, "report elapsed_ms as 0");
  add_threads(analyze);
  add_out(analyze);

  auto* expected = app.add_subcommand("expected-length", "exact expected game length");
  add_model(expected);
  add_probs(expected);
  expected->add_option("--tolerance", o.tolerance)->capture_default_str();
  expected->add_option("--max-iterations", o.max_iterations)->capture_default_str();
  expected->add_option("--solver", o.solver, "auto | dense | gauss-seidel")->capture_default_str();
  expected->add_option("--mc-trials", o.trials, "also run a Monte Carlo cross-check")->capture_default_str();
  expected->add_option("--seed", o.seed)->capture_default_str();
  expected->add_option("--max-steps", o.max_steps)->capture_default_str();
  add_threads(expected);
  add_out(expected);

  auto* tail = app.add_subcommand("tail-curve", "probability that the game is still running after k moves");
  add_model(tail);
  add_probs(tail);
  tail->add_option("--ks", o.ks, "comma-separated step counts");
  tail->add_option("--k-max", o.k_max, "every k in 0..k-max");
  tail->add_option("--from-deal", o.from_deal, "start from one state instead of the equal-split mix");
  tail->add_option("--format", o.format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  add_out(tail);

  auto* decay = app.add_subcommand("decay-cert", "geometric tail bound p_alive(kN) <= (1-q)^k");
  add_model(decay);
  add_probs(decay);
  decay->add_option("--horizon", o.horizon)->capture_default_str();
  add_out(decay);

  auto* find = app.add_subcommand("find-cycle", "deals that never end under a fixed return policy");
  add_model(find);
  find->add_option("--policy", o.policy, "own-first | rival-first | seat-left | seat-right")->capture_default_str();
  find->add_flag("--all-states", o.all_states, "scan every state, not only equal splits");
  find->add_flag("--expect-cycle", o.expect, "exit 2 if no cycling deal exists");
  find->add_option("--limit", o.limit, "print at most this many certificates (0 = all)");
  add_out(find);

  auto* verify = app.add_subcommand("verify-cycle", "re-check cycle certificates from a JSON file");
  verify->add_option("--cert", o.cert_file, "certificate JSON file")->required();
  add_out(verify);

  auto* two = app.add_subcommand("two-outcome", "deals from which either player can win");
  add_model(two);
  two->add_flag("--expect-found", o.expect, "exit 2 if no such deal exists");
  two->add_option("--limit", o.limit, "print at most this many certificates (0 = all)");
  add_out(two);

  auto add_classic = [&](CLI::App* c) {
    c->add_option("--face-down", o.face_down, "cards laid face down per war round")->capture_default_str();
    c->add_option("--seed", o.seed)->capture_default_str();
    c->add_option("--max-steps", o.max_steps)->capture_default_str();
  };

  auto* sim = app.add_subcommand("simulate-classic", "one seeded 52-card game");
  sim->add_option("--deal", o.deal, "deal text; random from --seed when omitted");
  sim->add_option("--deal-file", o.deal_file);
  add_probs(sim);
  add_classic(sim);
  add_out(sim);

  auto* mc = app.add_subcommand("mc-classic", "Monte Carlo over shuffled 52-card deals");
  mc->add_option("--trials", o.trials)->required();
  mc->add_option("--ks", o.ks, "survival curve step counts");
  mc->add_flag("--expect-no-truncation", o.expect, "exit 2 if any game hits --max-steps");
  add_probs(mc);
  add_classic(mc);
  add_threads(mc);
  add_out(mc);

  auto* vdeal = app.add_subcommand("verify-deal", "check a 52-card deal for the 26-move value cycle");
  vdeal->add_option("--deal", o.deal);
  vdeal->add_option("--deal-file", o.deal_file);
  vdeal->add_option("--policy", o.policy)->capture_default_str();
  vdeal->add_option("--face-down", o.face_down)->capture_default_str();
  add_out(vdeal);

  std::vector<const char*> argv{"wargraph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "analyze") return cmd_analyze(o, out);
    if (name == "expected-length") return cmd_expected_length(o, out);
    if (name == "tail-curve") return cmd_tail_curve(o, out);
    if (name == "decay-cert") return cmd_decay_cert(o, out);
    if (name == "find-cycle") return cmd_find_cycle(o, out);
    if (name == "verify-cycle") return cmd_verify_cycle(o, out);
    if (name == "two-outcome") return cmd_two_outcome(o, out);
    if (name == "simulate-classic") return cmd_simulate_classic(o, out);
    if (name == "mc-classic") return cmd_mc_classic(o, out);
    if (name == "verify-deal") return cmd_verify_deal(o, out);
  } catch (const RuleError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NonAbsorbingError& e) {
    err << "error: " << e.what() << "\n";
    return kClaimFailed;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kClaimFailed;
  }
  return kUsageError;
}

}  // namespace wargraph::cli
