#include <nullcover/bounds.hpp>
#include <nullcover/ensemble.hpp>
#include <nullcover/errors.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"

using namespace nullcover;

TEST( Sampling, ForcedWhenKFillsTheCube )
{
  for ( std::uint64_t seed : { 0ull, 1ull, 99ull } )
  {
    auto m = sample_function( 3, 8, seed );
    ASSERT_EQ( m.k(), 8u );
    for ( std::uint64_t b = 0; b < 8; ++b )
      EXPECT_EQ( m.row( b ).bits(), b );
  }
}

TEST( Sampling, DeterministicAndSorted )
{
  auto a = sample_function( 20, 50, 1234 );
  auto b = sample_function( 20, 50, 1234 );
  EXPECT_EQ( a, b );
  EXPECT_NE( a, sample_function( 20, 50, 1235 ) );
  EXPECT_TRUE( std::is_sorted( a.rows().begin(), a.rows().end() ) );
  EXPECT_EQ( sample_function( 64, 3, 5 ).k(), 3u );
  EXPECT_THROW( sample_function( 3, 9, 0 ), std::invalid_argument );
  EXPECT_THROW( sample_function( 0, 1, 0 ), std::invalid_argument );
}

TEST( Sampling, SingleZeroIsUniform )
{
  std::vector<double> counts( 16, 0 );
  const int draws = 100000;
  for ( int s = 0; s < draws; ++s )
    counts[sample_function( 4, 1, derive_seed( 42, s ) ).row( 0 ).bits()] += 1;
  double chi2 = 0, expect = draws / 16.0;
  for ( auto c : counts )
    chi2 += ( c - expect ) * ( c - expect ) / expect;
  // 15 degrees of freedom: P(chi2 > 37.70) = 0.001.
  EXPECT_LT( chi2, 37.70 );
}

TEST( Sampling, DenseBranchIsUniformToo )
{
  // k = 12 of 16 goes through the shuffle path; each vertex is a zero w.p. 3/4.
  std::vector<double> counts( 16, 0 );
  const int draws = 20000;
  for ( int s = 0; s < draws; ++s )
  {
    auto m = sample_function( 4, 12, derive_seed( 7, s ) );
    for ( auto const& r : m.rows() )
      counts[r.bits()] += 1;
  }
  for ( auto c : counts )
    EXPECT_NEAR( c / draws, 0.75, 0.015 );
}

TEST( Sampling, AdjacencyFilter )
{
  EnsembleConfig cfg;
  cfg.n = 8;
  cfg.k = 6;
  cfg.master_seed = 3;
  cfg.filter_no_adjacent_zeros = true;
  for ( std::uint64_t i = 0; i < 50; ++i )
    EXPECT_FALSE( has_adjacent_zeros( sample_for_index( cfg, i ) ) );
  cfg.n = 2;
  cfg.k = 3; // every 3 of 4 vertices on a square include an edge
  EXPECT_THROW( sample_for_index( cfg, 0 ), BudgetExceeded );
}

TEST( Wilson, KnownValues )
{
  auto w = wilson_interval( 5, 10 );
  EXPECT_DOUBLE_EQ( w.fraction, 0.5 );
  EXPECT_NEAR( w.ci_low, 0.2366, 1e-4 );
  EXPECT_NEAR( w.ci_high, 0.7634, 1e-4 );
  auto z = wilson_interval( 0, 20 );
  EXPECT_DOUBLE_EQ( z.ci_low, 0 );
  EXPECT_GT( z.ci_high, 0 );
  EXPECT_DOUBLE_EQ( z.standard_error, 0 );
}

TEST( RankProb, SingleZeroExamples )
{
  EnsembleConfig cfg;
  cfg.n = 3;
  cfg.k = 1;
  cfg.samples = 30;
  auto one = estimate_prime_rank_prob( cfg, 1 );
  EXPECT_DOUBLE_EQ( one.fraction, 1.0 );
  EXPECT_EQ( one.used, 30u );
  EXPECT_DOUBLE_EQ( estimate_prime_rank_prob( cfg, 3 ).fraction, 0.0 );
  EXPECT_THROW( estimate_prime_rank_prob( cfg, 0 ), std::invalid_argument );
  EXPECT_THROW( estimate_prime_rank_prob( cfg, 4 ), std::invalid_argument );
}

TEST( RankProb, IntervalShrinksWithSamples )
{
  EnsembleConfig cfg;
  cfg.n = 8;
  cfg.k = 6;
  cfg.master_seed = 1;
  cfg.samples = 50;
  auto a = estimate_prime_rank_prob( cfg, 3 );
  cfg.samples = 800;
  auto b = estimate_prime_rank_prob( cfg, 3 );
  EXPECT_LT( b.ci_high - b.ci_low, ( a.ci_high - a.ci_low ) * 0.5 );
}

TEST( RankProb, BelowAnalyticBound )
{
  EnsembleConfig cfg;
  cfg.n = 10;
  cfg.samples = 100;
  cfg.master_seed = 11;
  for ( std::uint64_t k : { 4u, 16u } )
  {
    cfg.k = k;
    auto probs = estimate_prime_rank_probs( cfg );
    ASSERT_EQ( probs.size(), 10u );
    for ( unsigned d = 1; d <= 10; ++d )
      EXPECT_LE( probs[d - 1].fraction, prime_rank_prob_bound( 10, double( k ), d ) + 3 * probs[d - 1].standard_error ) << d;
  }
}

TEST( LengthExperiment, SingleZero )
{
  EnsembleConfig cfg;
  cfg.n = 3;
  cfg.k = 1;
  cfg.samples = 5;
  auto recs = run_length_experiment( cfg );
  ASSERT_EQ( recs.size(), 5u );
  for ( auto const& r : recs )
  {
    EXPECT_EQ( r.exact_length, 3u );
    EXPECT_EQ( r.greedy_length, 3u );
    EXPECT_EQ( r.lp_bound, 3 );
    EXPECT_EQ( r.status, "ok" );
  }
}

TEST( LengthExperiment, Sandwich )
{
  EnsembleConfig cfg;
  cfg.n = 8;
  cfg.k = 4;
  cfg.samples = 20;
  cfg.master_seed = 2;
  for ( auto const& r : run_length_experiment( cfg ) )
  {
    ASSERT_TRUE( r.exact_length );
    EXPECT_LE( r.lp_bound, Rational( *r.exact_length ) );
    EXPECT_LE( r.near_zero_bound, *r.exact_length );
    EXPECT_LE( *r.exact_length, r.greedy_length );
    EXPECT_NEAR( r.reference_nk_over_log_nk, 32 / std::log( 32.0 ), 1e-12 );
    EXPECT_NEAR( r.reference_nk_over_log2_n, 32 / 3.0, 1e-12 );
  }
}

TEST( LengthExperiment, RejectsEmptyRun )
{
  EnsembleConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW( run_length_experiment( cfg ), std::invalid_argument );
}

TEST( LengthExperiment, SameAcrossThreadCounts )
{
  EnsembleConfig cfg;
  cfg.n = 9;
  cfg.k = 5;
  cfg.samples = 12;
  cfg.master_seed = 77;
  auto a = run_length_experiment( cfg );
  cfg.threads = 4;
  auto b = run_length_experiment( cfg );
  ASSERT_EQ( a.size(), b.size() );
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    EXPECT_EQ( a[i].seed, b[i].seed );
    EXPECT_EQ( a[i].exact_length, b[i].exact_length );
    EXPECT_EQ( a[i].exact_rank, b[i].exact_rank );
    EXPECT_EQ( a[i].greedy_length, b[i].greedy_length );
    EXPECT_EQ( a[i].lp_bound, b[i].lp_bound );
    EXPECT_EQ( a[i].rank_histogram, b[i].rank_histogram );
  }
}

TEST( LengthExperiment, BudgetIsRecordedPerSample )
{
  EnsembleConfig cfg;
  cfg.n = 12;
  cfg.k = 8;
  cfg.samples = 3;
  cfg.budgets.primes.max_primes = 3;
  auto recs = run_length_experiment( cfg );
  for ( auto const& r : recs )
  {
    EXPECT_EQ( r.status, "prime-budget" );
    EXPECT_FALSE( r.exact_length );
  }
}

TEST( Concentration, Examples )
{
  auto a = concentration_stats( { 3, 3, 3 } );
  EXPECT_DOUBLE_EQ( a.mean, 3 );
  EXPECT_DOUBLE_EQ( a.cv, 0 );
  auto b = concentration_stats( { 2, 4 } );
  EXPECT_DOUBLE_EQ( b.mean, 3 );
  EXPECT_NEAR( b.stddev, std::sqrt( 2.0 ), 1e-12 );
  EXPECT_NEAR( b.cv, 0.4714, 1e-4 );
  EXPECT_DOUBLE_EQ( b.min, 2 );
  EXPECT_DOUBLE_EQ( b.max, 4 );
  auto c = concentration_stats( { 5 } );
  EXPECT_DOUBLE_EQ( c.stddev, 0 );
  EXPECT_DOUBLE_EQ( c.cv, 0 );
  EXPECT_THROW( concentration_stats( {} ), std::invalid_argument );
}

TEST( Layer, Examples )
{
  auto r = run_layer_experiment( 3, 0 );
  EXPECT_EQ( r.exact_length, 3u );
  EXPECT_EQ( r.k, 1u );
  EXPECT_FALSE( r.layer_reference );

  auto m = run_layer_experiment( 4, 2 );
  EXPECT_EQ( m.k, 6u );
  ASSERT_TRUE( m.exact_length );
  EXPECT_EQ( double( *m.exact_length ), oracle::min_dnf( layer_function( 4, 2 ), false ) );
  ASSERT_TRUE( m.layer_reference );
  EXPECT_NEAR( *m.layer_reference, layer_length_bound( 4, 6 ), 1e-12 );
  EXPECT_LE( m.near_zero_bound, *m.exact_length );

  EXPECT_THROW( run_layer_experiment( 3, 4 ), std::invalid_argument );
}

TEST( SeedDerivation, DistinctPerIndex )
{
  std::set<std::uint64_t> seen;
  for ( std::uint64_t i = 0; i < 1000; ++i )
    seen.insert( derive_seed( 7, i ) );
  EXPECT_EQ( seen.size(), 1000u );
  EXPECT_EQ( derive_seed( 7, 3 ), derive_seed( 7, 3 ) );
  EXPECT_NE( derive_seed( 7, 3 ), derive_seed( 8, 3 ) );
}
