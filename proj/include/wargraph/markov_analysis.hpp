#pragma once

// Probabilistic placement model: each player picks OwnFirst with a fixed
// probability when they win a trick. This turns the game graph into an
// absorbing Markov chain whose expected absorption time, survival curve and
// geometric decay bound are computed here.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wargraph/core_rules.hpp"
#include "wargraph/state_space.hpp"

namespace wargraph {

struct PlacementProbabilities {
  static constexpr double kSumTolerance = 1e-12;

  double left_own_first = 0.5;
  double left_rival_first = 0.5;
  double right_own_first = 0.5;
  double right_rival_first = 0.5;

  /// Complements are derived: p2 = 1 - p1.
  static PlacementProbabilities from_own_first(double left, double right);

  void validate() const;
  double operator()(Side winner, PlacementOrder order) const;
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Probability of the edge state -> successor; throws RuleError for non-edges.
double transition_probability(const GameState& state, const GameState& successor,
                              const PlacementProbabilities& probs, ComparisonRule rule);

/// Full (n+1)! x (n+1)! stochastic matrix indexed by state rank; final states
/// carry a unit self-loop.
SparseRowMatrix transition_matrix(int n, ComparisonRule rule, const PlacementProbabilities& probs);

/// Restriction of the chain to non-final states. Row i of `transient` holds the
/// probabilities of moving between non-final states; `exit` the mass leaving
/// to a final state.
struct TransientChain {
  int n = 0;
  std::vector<StateRank> ranks;
  std::vector<std::int64_t> index_of;  // rank -> row, -1 for final states
  SparseRowMatrix transient;
  Eigen::VectorXd exit;
};

TransientChain build_transient_chain(int n, ComparisonRule rule, const PlacementProbabilities& probs);

enum class SolverKind { Auto, Dense, GaussSeidel };

std::string to_string(SolverKind kind);
SolverKind parse_solver(std::string_view text);

struct SolveOptions {
  double tolerance = 1e-10;
  std::int64_t max_iterations = 1'000'000;
  SolverKind method = SolverKind::Auto;
  // Auto picks the dense LU when the state count is at most this.
  std::uint64_t dense_limit = 10'000;
};

class NonAbsorbingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(double residual, std::int64_t iterations);
  double residual;
  std::int64_t iterations;
};

struct AbsorptionSolution {
  int n = 0;
  ComparisonRule rule = ComparisonRule::Standard;
  PlacementProbabilities probs;
  SolverKind method = SolverKind::Auto;
  Eigen::VectorXd expected_steps;  // indexed by state rank, 0 on final states
  double residual = 0.0;
  std::int64_t iterations = 0;
  double mean_equal_split = 0.0;
  double max_state_expectation = 0.0;

  double at(const GameState& s) const { return expected_steps[static_cast<Eigen::Index>(encode(s))]; }
};

/// Solves t = 1 + Q t over the non-final states. Refuses non-absorbing graphs.
AbsorptionSolution expected_absorption(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                                       const SolveOptions& options = {});

/// max_s |t(s) - 1 - sum_s' p(s -> s') t(s')| over non-final s.
double fixed_point_residual(const TransientChain& chain, const Eigen::VectorXd& t_transient);

/// Uniform distribution over equal-split states, as a vector over ranks.
Eigen::VectorXd equal_split_distribution(int n);

struct TailPoint {
  std::int64_t k = 0;
  double p_alive = 0.0;
};

struct TailCurve {
  std::string initial_distribution;
  std::vector<TailPoint> points;
  // Largest |total mass - 1| seen over all propagation steps.
  double max_mass_error = 0.0;
};

TailCurve tail_probability(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                           const Eigen::VectorXd& initial, std::span<const std::int64_t> ks,
                           std::string description = "custom");

struct DecayCertificate {
  int window = 0;       // N: the largest shortest-path distance to a final state
  double q = 0.0;       // min over non-final states of P(absorbed within N moves)
  int verified_up_to = 0;  // largest k checked for p_alive(kN) <= (1-q)^k
  bool holds = false;
  // Worst start state and the canonical equal-split start, checked separately.
  std::vector<double> worst_case_alive;  // index k -> max_s P(alive after kN | s)
  std::vector<double> equal_split_alive;  // index k -> p_alive(kN) from equal-split start
};

/// Relative slack on the bound comparison, for rounding in the propagation.
inline constexpr double kDecayBoundSlack = 1e-12;

DecayCertificate decay_certificate(int n, ComparisonRule rule, const PlacementProbabilities& probs, int horizon);

struct LengthSummary {
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;
  std::uint64_t truncated = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double standard_error = 0.0;
  double ci95_half_width = 0.0;
};

/// Plays `trials` games from uniformly random equal-split deals. Truncated
/// games are counted and excluded from the moments.
LengthSummary monte_carlo_length(int n, ComparisonRule rule, const PlacementProbabilities& probs,
                                 std::uint64_t trials, std::uint64_t seed, std::uint64_t max_steps,
                                 unsigned threads = 1);

/// Builds the summary from exact integer moments; shared with the classic game.
LengthSummary summarize_lengths(std::uint64_t trials, std::uint64_t completed, std::uint64_t sum,
                                unsigned __int128 sum_squares);

}  // namespace wargraph
