#include <nullcover/ensemble.hpp>
#include <nullcover/errors.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace nullcover
{

std::uint64_t derive_seed( std::uint64_t master_seed, std::uint64_t index )
{
  auto mix = []( std::uint64_t z ) {
    z += 0x9e3779b97f4a7c15ull;
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
    return z ^ ( z >> 31 );
  };
  return mix( mix( master_seed ) ^ ( index * 0xd1b54a32d192ed03ull + 0x2545f4914f6cdd1dull ) );
}

std::uint64_t uniform_below( std::mt19937_64& rng, std::uint64_t bound )
{
  if ( bound == 0 )
    throw std::invalid_argument( "uniform_below: empty range" );
  // Largest multiple of bound representable, rejection above it.
  std::uint64_t limit = ~std::uint64_t{ 0 } - ( ~std::uint64_t{ 0 } % bound + 1 ) % bound;
  while ( true )
  {
    std::uint64_t x = rng();
    if ( x <= limit )
      return x % bound;
  }
}

ZeroMatrix sample_function( unsigned n, std::uint64_t k, std::uint64_t seed )
{
  if ( n == 0 || n > max_dimension )
    throw std::invalid_argument( "sample_function: n outside [1, 64]" );
  if ( n < 64 && k > ( std::uint64_t{ 1 } << n ) )
    throw std::invalid_argument( "sample_function: k = " + std::to_string( k ) + " exceeds 2^" + std::to_string( n ) );
  if ( k > ( std::uint64_t{ 1 } << 26 ) )
    throw std::invalid_argument( "sample_function: k too large to materialize" );

  std::mt19937_64 rng( seed );
  std::vector<std::uint64_t> chosen;
  chosen.reserve( k );
  if ( n <= 26 && 2 * k > ( std::uint64_t{ 1 } << n ) )
  {
    // Dense: partial Fisher-Yates over every vertex.
    std::vector<std::uint64_t> all( std::uint64_t{ 1 } << n );
    std::iota( all.begin(), all.end(), 0 );
    for ( std::uint64_t i = 0; i < k; ++i )
    {
      auto j = i + uniform_below( rng, all.size() - i );
      std::swap( all[i], all[j] );
      chosen.push_back( all[i] );
    }
  }
  else
  {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve( 2 * k );
    while ( chosen.size() < k )
    {
      std::uint64_t x = n == 64 ? rng() : rng() >> ( 64 - n );
      if ( seen.insert( x ).second )
        chosen.push_back( x );
    }
  }
  std::sort( chosen.begin(), chosen.end() );
  std::vector<Point> rows;
  rows.reserve( k );
  for ( auto b : chosen )
    rows.emplace_back( n, b );
  return ZeroMatrix( n, std::move( rows ) );
}

ZeroMatrix sample_for_index( const EnsembleConfig& cfg, std::uint64_t index )
{
  auto seed = derive_seed( cfg.master_seed, index );
  if ( !cfg.filter_no_adjacent_zeros )
    return sample_function( cfg.n, cfg.k, seed );
  for ( std::uint64_t attempt = 0; attempt <= 10'000; ++attempt )
  {
    auto m = sample_function( cfg.n, cfg.k, derive_seed( seed, attempt ) );
    if ( !has_adjacent_zeros( m ) )
      return m;
  }
  throw BudgetExceeded( "no function without adjacent zeros after 10^4 redraws", 10'000 );
}

namespace
{

void validate( const EnsembleConfig& cfg )
{
  if ( cfg.samples == 0 )
    throw std::invalid_argument( "ensemble: samples must be at least 1" );
  if ( cfg.n == 0 || cfg.n > max_dimension )
    throw std::invalid_argument( "ensemble: n outside [1, 64]" );
  if ( cfg.n < 64 && cfg.k > ( std::uint64_t{ 1 } << cfg.n ) )
    throw std::invalid_argument( "ensemble: k exceeds 2^n" );
}

/// Runs fn(i) for i in [0, count) on `threads` workers; rethrows the first failure by index.
template <class Fn>
void parallel_for( std::uint64_t count, unsigned threads, Fn fn )
{
  std::vector<std::exception_ptr> errors( count );
  std::atomic<std::uint64_t> next{ 0 };
  auto worker = [&]() {
    while ( true )
    {
      auto i = next.fetch_add( 1 );
      if ( i >= count )
        return;
      try
      {
        fn( i );
      }
      catch ( ... )
      {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned workers = std::max( 1u, std::min<unsigned>( threads, static_cast<unsigned>( std::min<std::uint64_t>( count, 256 ) ) ) );
  if ( workers == 1 )
    worker();
  else
  {
    std::vector<std::thread> pool;
    for ( unsigned w = 0; w < workers; ++w )
      pool.emplace_back( worker );
    for ( auto& t : pool )
      t.join();
  }
  for ( auto& e : errors )
    if ( e )
      std::rethrow_exception( e );
}

} // namespace

ProportionEstimate wilson_interval( std::uint64_t successes, std::uint64_t trials )
{
  ProportionEstimate e;
  e.successes = successes;
  e.used = trials;
  if ( trials == 0 )
  {
    e.ci_high = 1.0;
    return e;
  }
  const double z = 1.959963984540054;
  double n = static_cast<double>( trials );
  double p = successes / n;
  double denom = 1 + z * z / n;
  double centre = ( p + z * z / ( 2 * n ) ) / denom;
  double half = z * std::sqrt( p * ( 1 - p ) / n + z * z / ( 4 * n * n ) ) / denom;
  e.fraction = p;
  e.ci_low = std::max( 0.0, centre - half );
  e.ci_high = std::min( 1.0, centre + half );
  e.standard_error = std::sqrt( p * ( 1 - p ) / n );
  return e;
}

std::vector<ProportionEstimate> estimate_prime_rank_probs( const EnsembleConfig& cfg )
{
  validate( cfg );
  // ranks_present[i] bit d set iff sample i has a prime of rank d; UINT64_MAX... uses a flag for skips.
  std::vector<std::vector<bool>> present( cfg.samples );
  std::vector<char> skipped( cfg.samples, 0 );
  parallel_for( cfg.samples, cfg.threads, [&]( std::uint64_t i ) {
    auto m = sample_for_index( cfg, i );
    try
    {
      auto primes = enumerate_primes( m, cfg.budgets.primes );
      std::vector<bool> p( cfg.n + 1, false );
      for ( auto const& c : primes.primes )
        p[c.rank()] = true;
      present[i] = std::move( p );
    }
    catch ( const BudgetExceeded& )
    {
      skipped[i] = 1;
    }
  } );

  std::uint64_t skips = std::count( skipped.begin(), skipped.end(), 1 );
  std::vector<ProportionEstimate> out;
  for ( unsigned d = 1; d <= cfg.n; ++d )
  {
    std::uint64_t hits = 0;
    for ( std::uint64_t i = 0; i < cfg.samples; ++i )
      if ( !skipped[i] && present[i][d] )
        ++hits;
    auto e = wilson_interval( hits, cfg.samples - skips );
    e.skipped = skips;
    out.push_back( e );
  }
  return out;
}

ProportionEstimate estimate_prime_rank_prob( const EnsembleConfig& cfg, unsigned d )
{
  if ( d < 1 || d > cfg.n )
    throw std::invalid_argument( "estimate_prime_rank_prob: rank outside [1, n]" );
  return estimate_prime_rank_probs( cfg )[d - 1];
}

SampleRecord analyze_function( const ZeroMatrix& m, const SampleBudgets& budgets, std::uint64_t index, std::uint64_t seed )
{
  auto start = std::chrono::steady_clock::now();
  SampleRecord r;
  r.sample_index = index;
  r.seed = seed;
  r.n = m.n();
  r.k = m.k();
  double nk = double( m.n() ) * double( m.k() );
  r.reference_nk_over_log_nk = nk > 1 ? nk / std::log( nk ) : 0.0;
  r.reference_nk_over_log2_n = m.n() >= 2 ? nk / std::log2( double( m.n() ) ) : 0.0;

  auto done = [&]() {
    r.seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    return r;
  };

  if ( m.k() == 0 )
  {
    r.greedy_length = 1;
    r.lp_bound = 1;
    r.exact_length = 1;
    r.exact_rank = 0;
    r.prime_count = 1;
    r.rank_histogram[0] = 1;
    return done();
  }

  PrimeSet primes;
  try
  {
    primes = enumerate_primes( m, budgets.primes );
  }
  catch ( const BudgetExceeded& e )
  {
    r.status = "prime-budget";
    r.prime_count = e.partial_count();
    return done();
  }
  r.prime_count = primes.size();
  r.rank_histogram = rank_histogram( primes );

  std::vector<Point> ones;
  try
  {
    ones = one_points( m );
  }
  catch ( const BudgetExceeded& )
  {
    r.status = "universe-budget";
    return done();
  }
  auto inst = build_cover_instance( m, primes, ones, CoverObjective::length );
  r.greedy_length = greedy_cover( inst ).objective.get_num().get_ui();
  if ( budgets.lower_bounds )
    r.lp_bound = lp_lower_bound( inst, budgets.cover );
  auto nz = budgets.lower_bounds ? near_zero_lower_bound( m, primes, NearZeroMode::exact_cover, budgets.near_zero_cover )
                                 : near_zero_lower_bound( m, primes, NearZeroMode::counting );
  r.near_zero_bound = nz.value;
  r.near_zero_degraded = nz.degraded;

  bool try_exact = m.n() <= budgets.exact_n_max || double( primes.size() ) * double( ones.size() ) <= double( budgets.exact_work_max );
  if ( try_exact )
  {
    try
    {
      r.exact_length = exact_min_cover( inst, budgets.cover ).objective.get_num().get_ui();
      if ( budgets.exact_rank )
      {
        auto rank_inst = build_cover_instance( m, primes, ones, CoverObjective::rank );
        r.exact_rank = exact_min_cover( rank_inst, budgets.cover ).objective.get_num().get_ui();
      }
    }
    catch ( const CoverBudgetExceeded& )
    {
      r.status = "cover-budget";
    }
    catch ( const BudgetExceeded& )
    {
      r.status = "cover-budget";
    }
  }
  return done();
}

std::vector<SampleRecord> run_length_experiment( const EnsembleConfig& cfg )
{
  validate( cfg );
  std::vector<SampleRecord> out( cfg.samples );
  parallel_for( cfg.samples, cfg.threads, [&]( std::uint64_t i ) {
    auto m = sample_for_index( cfg, i );
    out[i] = analyze_function( m, cfg.budgets, i, derive_seed( cfg.master_seed, i ) );
  } );
  return out;
}

SampleRecord run_layer_experiment( unsigned n, unsigned w, const SampleBudgets& budgets )
{
  if ( w > n )
    throw std::invalid_argument( "run_layer_experiment: w = " + std::to_string( w ) + " exceeds n = " + std::to_string( n ) );
  auto m = layer_function( n, w );
  auto r = analyze_function( m, budgets );
  if ( n >= 2 && m.k() >= 2 )
    r.layer_reference = layer_length_bound( n, static_cast<double>( m.k() ) );
  return r;
}

ConcentrationStats concentration_stats( const std::vector<std::uint64_t>& lengths )
{
  if ( lengths.empty() )
    throw std::invalid_argument( "concentration_stats: empty list" );
  ConcentrationStats s;
  double sum = 0;
  for ( auto x : lengths )
    sum += double( x );
  s.mean = sum / lengths.size();
  auto [lo, hi] = std::minmax_element( lengths.begin(), lengths.end() );
  s.min = double( *lo );
  s.max = double( *hi );
  if ( lengths.size() > 1 )
  {
    double ss = 0;
    for ( auto x : lengths )
      ss += ( double( x ) - s.mean ) * ( double( x ) - s.mean );
    s.stddev = std::sqrt( ss / ( lengths.size() - 1 ) );
  }
  s.cv = s.mean != 0 ? s.stddev / s.mean : 0.0;
  return s;
}

} // namespace nullcover
