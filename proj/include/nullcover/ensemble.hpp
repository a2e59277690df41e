/*!
  \file ensemble.hpp
  \brief Random functions with exactly k zeros and the experiments run over them.

  Every sample draws from its own generator seeded by mixing the master seed
  with the sample index, so results do not depend on scheduling.
*/

#pragma once

#include <nullcover/core.hpp>
#include <nullcover/dnf_min.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace nullcover
{

struct SampleBudgets
{
  EnumerationLimits primes;
  CoverLimits cover;
  /// Exact minimization runs when n <= exact_n_max or primes * |N_f| <= exact_work_max.
  unsigned exact_n_max = 10;
  std::uint64_t exact_work_max = 1'000'000;
  /// Also compute the exact minimal rank (second exact solve per sample).
  bool exact_rank = true;
  /// LP and near-zero lower bounds; off leaves only the counting near-zero bound.
  bool lower_bounds = true;
  /// The near-zero cover degrades to its LP bound past this many nodes.
  CoverLimits near_zero_cover{ .max_nodes = 2'000 };
};

struct EnsembleConfig
{
  unsigned n = 8;
  std::uint64_t k = 4;
  std::uint64_t samples = 20;
  std::uint64_t master_seed = 0;
  bool filter_no_adjacent_zeros = false;
  SampleBudgets budgets;
  /// Worker threads; results are identical for any value.
  unsigned threads = 1;
};

/// splitmix64 finalizer over (master_seed, index).
std::uint64_t derive_seed( std::uint64_t master_seed, std::uint64_t index );

/// Uniform integer in [0, bound) by rejection; `bound` > 0.
std::uint64_t uniform_below( std::mt19937_64& rng, std::uint64_t bound );

/// k distinct cube vertices, uniform without replacement, rows sorted.
ZeroMatrix sample_function( unsigned n, std::uint64_t k, std::uint64_t seed );

/// Sample of the config's class for one index, honouring the adjacency filter
/// (rejection sampling, at most 10^4 redraws).
ZeroMatrix sample_for_index( const EnsembleConfig& cfg, std::uint64_t index );

struct ProportionEstimate
{
  double fraction = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t successes = 0;
  std::uint64_t used = 0;
  std::uint64_t skipped = 0;
  /// sqrt(p (1 - p) / used)
  double standard_error = 0;
};

/// Wilson score interval at 95%.
ProportionEstimate wilson_interval( std::uint64_t successes, std::uint64_t trials );

/// Fraction of sampled functions having a prime of rank exactly d.
ProportionEstimate estimate_prime_rank_prob( const EnsembleConfig& cfg, unsigned d );

/// Same estimate for every d in [1, n] from a single pass over the samples.
std::vector<ProportionEstimate> estimate_prime_rank_probs( const EnsembleConfig& cfg );

struct SampleRecord
{
  std::uint64_t sample_index = 0;
  std::uint64_t seed = 0;
  unsigned n = 0;
  std::uint64_t k = 0;
  std::uint64_t greedy_length = 0;
  Rational lp_bound{ 0 };
  std::uint64_t near_zero_bound = 0;
  bool near_zero_degraded = false;
  std::optional<std::uint64_t> exact_length;
  std::optional<std::uint64_t> exact_rank;
  std::uint64_t prime_count = 0;
  std::map<unsigned, std::size_t> rank_histogram;
  /// Failure message when a budget stopped this sample early.
  std::string status = "ok";
  double reference_nk_over_log_nk = 0;
  double reference_nk_over_log2_n = 0;
  std::optional<double> layer_reference;
  /// Wall-clock seconds; excluded from the deterministic CSV output.
  double seconds = 0;
};

std::vector<SampleRecord> run_length_experiment( const EnsembleConfig& cfg );

/// Record for one fixed function (used by the layer experiment and tests).
SampleRecord analyze_function( const ZeroMatrix& m, const SampleBudgets& budgets, std::uint64_t index = 0, std::uint64_t seed = 0 );

SampleRecord run_layer_experiment( unsigned n, unsigned w, const SampleBudgets& budgets = {} );

struct ConcentrationStats
{
  double mean = 0;
  double stddev = 0;
  double cv = 0;
  double min = 0;
  double max = 0;
};

/// Sample statistics with divisor (size - 1); a single value has stddev 0.
ConcentrationStats concentration_stats( const std::vector<std::uint64_t>& lengths );

} // namespace nullcover
