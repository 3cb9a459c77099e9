#include "wargraph/markov_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wargraph/graph_engine.hpp"
#include "wargraph/parallel.hpp"

namespace wargraph {

PlacementProbabilities PlacementProbabilities::from_own_first(double left, double right) {
  PlacementProbabilities p{left, 1.0 - left, right, 1.0 - right};
  p.validate();
  return p;
}

void PlacementProbabilities::validate() const {
  const double all[] = {left_own_first, left_rival_first, right_own_first, right_rival_first};
  for (double v : all) {
    if (!(v > 0.0 && v < 1.0)) {
      throw RuleError("placement probabilities must lie strictly between 0 and 1, got " + std::to_string(v));
    }
  }
  if (std::abs(left_own_first + left_rival_first - 1.0) > kSumTolerance ||
      std::abs(right_own_first + right_rival_first - 1.0) > kSumTolerance) {
    throw RuleError("each player's placement probabilities must sum to 1");
  }
}

double PlacementProbabilities::operator()(Side winner, PlacementOrder order) const {
  if (winner == Side::Left) return order == PlacementOrder::OwnFirst ? left_own_first : left_rival_first;
  return order == PlacementOrder::OwnFirst ? right_own_first : right_rival_first;
}

double transition_probability(const GameState& state, const GameState& successor,
                              const PlacementProbabilities& probs, ComparisonRule rule) {
  const Side winner = trick_winner(state, rule);
  const auto succ = successors(state, rule);
  if (succ[0] == successor) return probs(winner, PlacementOrder::OwnFirst);
  if (succ[1] == successor) return probs(winner, PlacementOrder::RivalFirst);
  throw RuleError("transition_probability: " + to_string(successor) + " is not a successor of " +
                  to_string(state));
}

namespace {

void check_model(int n, const PlacementProbabilities& probs) {
  DeckSpec{n, ComparisonRule::Standard}.validate();
  probs.validate();
}

void require_absorbing(int n, ComparisonRule rule) {
  const auto report = attaining_set(GameGraph(n, rule, EdgeFilter::BothOrders));
  if (!report.absorbing()) {
    throw NonAbsorbingError("game graph for n = " + std::to_string(n) + " has " +
                            std::to_string(report.wandering_count) +
                            " wandering states; expected absorption time is infinite");
  }
}

bool is_equal_split_rank(StateRank r, int n) {
  return r % static_cast<StateRank>(n + 1) == static_cast<StateRank>(n / 2);
}

}  // namespace

SparseRowMatrix transition_matrix(int n, ComparisonRule rule, const PlacementProbabilities& probs) {
  check_model(n, probs);
  const auto total = static_cast<Eigen::Index>(state_count(n));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * total));
  for (Eigen::Index r = 0; r < total; ++r) {
    const GameState s = decode(static_cast<StateRank>(r), n);
    if (s.is_final()) {
      triplets.emplace_back(r, r, 1.0);
      continue;
    }
    const Side winner = trick_winner(s, rule);
    const auto succ = successors(s, rule);
    triplets.emplace_back(r, static_cast<Eigen::Index>(encode(succ[0])), probs(winner, PlacementOrder::OwnFirst));
    triplets.emplace_back(r, static_cast<Eigen::Index>(encode(succ[1])), probs(winner, PlacementOrder::RivalFirst));
  }
  SparseRowMatrix p(total, total);
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

TransientChain build_transient_chain(int n, ComparisonRule rule, const PlacementProbabilities& probs) {
  check_model(n, probs);
  const std::uint64_t total = state_count(n);
  TransientChain chain;
  chain.n = n;
  chain.index_of.assign(total, -1);
  for (StateRank r = 0; r < total; ++r) {
    const auto split = r % static_cast<StateRank>(n + 1);
    if (split != 0 && split != static_cast<StateRank>(n)) {
      chain.index_of[r] = static_cast<std::int64_t>(chain.ranks.size());
      chain.ranks.push_back(r);
    }
  }
  const auto m = static_cast<Eigen::Index>(chain.ranks.size());
  chain.exit = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const GameState s = decode(chain.ranks[i], n);
    const Side winner = trick_winner(s, rule);
    const auto succ = successors(s, rule);
    for (auto order : {PlacementOrder::OwnFirst, PlacementOrder::RivalFirst}) {
      const auto& t = succ[order == PlacementOrder::OwnFirst ? 0 : 1];
      const double p = probs(winner, order);
      const auto j = chain.index_of[encode(t)];
      if (j < 0) {
        chain.exit[i] += p;
      } else {
        triplets.emplace_back(i, static_cast<Eigen::Index>(j), p);
      }
    }
  }
  chain.transient.resize(m, m);
  chain.transient.setFromTriplets(triplets.begin(), triplets.end());
  return chain;
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Auto:
      return "auto";
    case SolverKind::Dense:
      return "dense";
    case SolverKind::GaussSeidel:
      return "gauss-seidel";
  }
  return "?";
}

SolverKind parse_solver(std::string_view text) {
  for (auto k : {SolverKind::Auto, SolverKind::Dense, SolverKind::GaussSeidel}) {
    if (text == to_string(k)) return k;
  }
  throw RuleError("unknown solver '" + std::string(text) + "' (expected auto|dense|gauss-seidel)");
}

ConvergenceError::ConvergenceError(double res, std::int64_t iters)
    : std::runtime_error("solver did not converge after " + std::to_string(iters) +
                         " iterations, residual " + std::to_string(res)),
      residual(res),
      iterations(iters) {}

double fixed_point_residual(const TransientChain& chain, const Eigen::VectorXd& t) {
  if (t.size() == 0) return 0.0;
  const Eigen::VectorXd r = t - Eigen::VectorXd::Ones(t.size()) - chain.transient * t;
  return r.cwiseAbs().maxCoeff();
}

namespace {

Eigen::VectorXd solve_dense(const TransientChain& chain) {
  const auto m = chain.transient.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd(chain.transient);
  return a.partialPivLu().solve(Eigen::VectorXd::Ones(m));
}

// Sweeps states closest to absorption first: larger max hand size first.
Eigen::VectorXd solve_gauss_seidel(const TransientChain& chain, const SolveOptions& options,
                                   std::int64_t& iterations, double& residual) {
  const auto m = chain.transient.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto width = static_cast<StateRank>(chain.n + 1);
  auto larger_hand = [&](Eigen::Index i) {
    const auto split = static_cast<int>(chain.ranks[i] % width);
    return std::max(split, chain.n - split);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return larger_hand(a) > larger_hand(b); });

  Eigen::VectorXd t = Eigen::VectorXd::Zero(m);
  residual = std::numeric_limits<double>::infinity();
  for (iterations = 0; iterations < options.max_iterations;) {
    for (Eigen::Index i : order) {
      double acc = 1.0;
      for (SparseRowMatrix::InnerIterator it(chain.transient, i); it; ++it) acc += it.value() * t[it.col()];
      t[i] = acc;
    }
    ++iterations;
    residual = fixed_point_residual(chain, t);
    if (residual <= options.tolerance) return t;
  }
  throw ConvergenceError(residual, iterations);
}

}  // namespace

AbsorptionSolution expected_absorption(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                                       const SolveOptions& options) {
  check_model(n, probs);
  if (!(options.tolerance > 0.0)) throw RuleError("solver tolerance must be positive");
  require_absorbing(n, rule);

  const TransientChain chain = build_transient_chain(n, rule, probs);
  AbsorptionSolution sol;
  sol.n = n;
  sol.rule = rule;
  sol.probs = probs;
  sol.method = options.method;
  if (sol.method == SolverKind::Auto) {
    sol.method = state_count(n) <= options.dense_limit ? SolverKind::Dense : SolverKind::GaussSeidel;
  }

  Eigen::VectorXd t;
  if (sol.method == SolverKind::Dense) {
    t = solve_dense(chain);
    sol.iterations = 1;
    sol.residual = fixed_point_residual(chain, t);
    if (sol.residual > options.tolerance) throw ConvergenceError(sol.residual, 1);
  } else {
    t = solve_gauss_seidel(chain, options, sol.iterations, sol.residual);
  }

  const auto total = static_cast<Eigen::Index>(state_count(n));
  sol.expected_steps = Eigen::VectorXd::Zero(total);
  for (Eigen::Index i = 0; i < t.size(); ++i) sol.expected_steps[static_cast<Eigen::Index>(chain.ranks[i])] = t[i];

  double sum = 0.0;
  std::uint64_t count = 0;
  for (Eigen::Index r = 0; r < total; ++r) {
    if (is_equal_split_rank(static_cast<StateRank>(r), n)) {
      sum += sol.expected_steps[r];
      ++count;
    }
  }
  sol.mean_equal_split = sum / static_cast<double>(count);
  sol.max_state_expectation = t.size() ? t.maxCoeff() : 0.0;
  return sol;
}

Eigen::VectorXd equal_split_distribution(int n) {
  DeckSpec{n, ComparisonRule::Standard}.validate();
  const auto total = static_cast<Eigen::Index>(state_count(n));
  Eigen::VectorXd d = Eigen::VectorXd::Zero(total);
  const double w = 1.0 / static_cast<double>(factorial(n));
  for (Eigen::Index r = 0; r < total; ++r) {
    if (is_equal_split_rank(static_cast<StateRank>(r), n)) d[r] = w;
  }
  return d;
}

namespace {

Eigen::VectorXd nonfinal_mask(int n) {
  const auto total = static_cast<Eigen::Index>(state_count(n));
  Eigen::VectorXd mask = Eigen::VectorXd::Ones(total);
  const auto width = static_cast<StateRank>(n + 1);
  for (Eigen::Index r = 0; r < total; ++r) {
    const auto split = static_cast<StateRank>(r) % width;
    if (split == 0 || split == static_cast<StateRank>(n)) mask[r] = 0.0;
  }
  return mask;
}

}  // namespace

TailCurve tail_probability(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                           const Eigen::VectorXd& initial, std::span<const std::int64_t> ks,
                           std::string description) {
  check_model(n, probs);
  require_absorbing(n, rule);
  const auto total = static_cast<Eigen::Index>(state_count(n));
  if (initial.size() != total) throw RuleError("initial distribution has the wrong length");
  if ((initial.array() < 0.0).any() || std::abs(initial.sum() - 1.0) > 1e-12) {
    throw RuleError("initial distribution must be non-negative and sum to 1");
  }
  for (auto k : ks) {
    if (k < 0) throw RuleError("step counts must be non-negative");
  }

  const SparseRowMatrix p = transition_matrix(n, rule, probs);
  const Eigen::VectorXd alive = nonfinal_mask(n);
  const std::int64_t k_max = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());

  // Per-state mass leaving to a final state in one move.
  Eigen::VectorXd exit = Eigen::VectorXd::Zero(total);
  for (Eigen::Index r = 0; r < total; ++r) {
    if (alive[r] == 0.0) continue;
    for (SparseRowMatrix::InnerIterator it(p, r); it; ++it) {
      if (alive[it.col()] == 0.0) exit[r] += it.value();
    }
  }

  // p_alive is carried as a running difference rather than re-summed from x:
  // the absorbed flow is non-negative, so the curve cannot tick upwards by an
  // ulp, and k = 0 is exactly 1 for an all-non-final start.
  std::vector<double> alive_at(static_cast<std::size_t>(k_max + 1));
  TailCurve curve;
  curve.initial_distribution = std::move(description);
  Eigen::VectorXd x = initial;
  double running = 1.0 - (Eigen::VectorXd::Ones(total) - alive).dot(initial);
  for (std::int64_t k = 0; k <= k_max; ++k) {
    if (k > 0) {
      running -= exit.dot(x);
      x = p.transpose() * x;
    }
    curve.max_mass_error = std::max(curve.max_mass_error, std::abs(x.sum() - 1.0));
    alive_at[static_cast<std::size_t>(k)] = std::max(running, 0.0);
  }
  for (auto k : ks) curve.points.push_back({k, alive_at[static_cast<std::size_t>(k)]});
  return curve;
}

DecayCertificate decay_certificate(int n, ComparisonRule rule, const PlacementProbabilities& probs, int horizon) {
  check_model(n, probs);
  if (horizon < 0) throw RuleError("horizon must be non-negative");
  const auto report = attaining_set(GameGraph(n, rule, EdgeFilter::BothOrders));
  if (!report.absorbing()) throw NonAbsorbingError("decay certificate requires an absorbing graph");

  DecayCertificate cert;
  cert.window = report.max_distance();
  const int window = cert.window;

  const SparseRowMatrix p = transition_matrix(n, rule, probs);
  const Eigen::VectorXd alive = nonfinal_mask(n);

  // survival(s) = P(still playing after m moves | start at s)
  Eigen::VectorXd survival = alive;
  for (int m = 0; m < window; ++m) survival = p * survival;
  double q = 1.0;
  for (Eigen::Index r = 0; r < survival.size(); ++r) {
    if (alive[r] > 0.0) q = std::min(q, 1.0 - survival[r]);
  }
  cert.q = q;

  const int blocks = window > 0 ? horizon / window : 0;
  cert.verified_up_to = blocks;

  survival = alive;
  Eigen::VectorXd x = equal_split_distribution(n);
  cert.holds = q > 0.0;
  for (int k = 0; k <= blocks; ++k) {
    if (k > 0) {
      for (int m = 0; m < window; ++m) {
        survival = p * survival;
        x = p.transpose() * x;
      }
    }
    const double worst = survival.maxCoeff();
    const double from_equal = alive.dot(x);
    cert.worst_case_alive.push_back(worst);
    cert.equal_split_alive.push_back(from_equal);
    const double bound = std::pow(1.0 - q, k);
    const double limit = bound * (1.0 + kDecayBoundSlack);
    if (worst > limit || from_equal > limit) cert.holds = false;
  }
  return cert;
}

LengthSummary summarize_lengths(std::uint64_t trials, std::uint64_t completed, std::uint64_t sum,
                                unsigned __int128 sum_squares) {
  LengthSummary s;
  s.trials = trials;
  s.completed = completed;
  s.truncated = trials - completed;
  if (completed == 0) return s;
  const double c = static_cast<double>(completed);
  s.mean = static_cast<double>(sum) / c;
  if (completed > 1) {
    const unsigned __int128 spread = static_cast<unsigned __int128>(completed) * sum_squares -
                                     static_cast<unsigned __int128>(sum) * sum;
    s.variance = static_cast<double>(spread) / (c * (c - 1.0));
  }
  s.standard_error = std::sqrt(s.variance / c);
  s.ci95_half_width = 1.96 * s.standard_error;
  return s;
}

LengthSummary monte_carlo_length(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                                 std::uint64_t trials, std::uint64_t seed, std::uint64_t max_steps,
                                 unsigned threads) {
  check_model(n, probs);
  if (trials == 0) throw RuleError("monte_carlo_length needs at least one trial");
  constexpr auto kTruncated = std::numeric_limits<std::uint64_t>::max();

  std::vector<std::uint64_t> lengths(trials);
  parallel_for(trials, threads, [&](std::uint64_t i) {
    auto engine = trial_engine(seed, i);
    std::array<Card, kMaxModelDeck> deck{};
    std::iota(deck.begin(), deck.begin() + n, Card{1});
    std::shuffle(deck.begin(), deck.begin() + n, engine);
    GameState s = GameState::from_sequence(std::span<const Card>(deck.data(), n), n / 2);
    std::uint64_t steps = 0;
    while (!s.is_final() && steps < max_steps) {
      const Side winner = trick_winner(s, rule);
      const auto order = unit_uniform(engine) < probs(winner, PlacementOrder::OwnFirst) ? PlacementOrder::OwnFirst
                                                                                        : PlacementOrder::RivalFirst;
      s = resolve_trick(s, order, rule);
      ++steps;
    }
    lengths[i] = s.is_final() ? steps : kTruncated;
  });

  std::uint64_t completed = 0;
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  for (auto len : lengths) {
    if (len == kTruncated) continue;
    ++completed;
    sum += len;
    sum_sq += static_cast<unsigned __int128>(len) * len;
  }
  return summarize_lengths(trials, completed, sum, sum_sq);
}

}  // namespace wargraph
