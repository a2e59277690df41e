#include <nullcover/bounds.hpp>
#include <nullcover/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullcover
{

Point theta_point( const ZeroMatrix& m, std::size_t row, unsigned column )
{
  if ( row >= m.k() )
    throw std::invalid_argument( "row index " + std::to_string( row + 1 ) + " out of range [1, " + std::to_string( m.k() ) + "]" );
  if ( column >= m.n() )
    throw std::invalid_argument( "column index " + std::to_string( column + 1 ) + " out of range [1, " + std::to_string( m.n() ) + "]" );
  return m.row( row ).flipped( column );
}

NearZeroSet near_zero_points( const ZeroMatrix& m )
{
  NearZeroSet out;
  out.fans.resize( m.k() );
  for ( std::size_t i = 0; i < m.k(); ++i )
  {
    for ( unsigned j = 0; j < m.n(); ++j )
    {
      auto p = m.row( i ).flipped( j );
      if ( m.is_zero( p.bits() ) )
        continue;
      out.fans[i].push_back( { p, j } );
      out.points.push_back( p );
      ( m.entry( i, j ) ? out.theta1 : out.theta0 ).push_back( p );
    }
  }
  for ( auto* v : { &out.points, &out.theta0, &out.theta1 } )
  {
    std::sort( v->begin(), v->end() );
    v->erase( std::unique( v->begin(), v->end() ), v->end() );
  }
  return out;
}

bool fans_hit_at_most_once( const NearZeroSet& theta, const Cube& k )
{
  for ( auto const& fan : theta.fans )
  {
    std::size_t hits = 0;
    for ( auto const& fp : fan )
      hits += k.contains( fp.point );
    if ( hits > 1 )
      return false;
  }
  return true;
}

bool check_dyakonov_lemma( const ZeroMatrix& m, const Cube& k )
{
  if ( !is_prime( m, k ) )
    throw std::invalid_argument( "check_dyakonov_lemma: " + k.str() + " is not a prime implicant" );
  return fans_hit_at_most_once( near_zero_points( m ), k );
}

NearZeroBound near_zero_lower_bound( const ZeroMatrix& m, const PrimeSet& primes, NearZeroMode mode, const CoverLimits& limits )
{
  NearZeroBound out;
  if ( m.k() == 0 )
    return out;
  auto theta = near_zero_points( m );
  out.theta_size = theta.points.size();
  if ( theta.points.empty() )
    return out;

  std::size_t best = 0;
  for ( auto const& k : primes.primes )
  {
    std::size_t hits = 0;
    for ( auto const& p : theta.points )
      hits += ( p.bits() & k.care() ) == k.value();
    best = std::max( best, hits );
  }
  if ( best == 0 )
    throw InfeasibleError( "near_zero_lower_bound: no prime covers a near-zero point" );
  out.value = ( theta.points.size() + best - 1 ) / best;
  if ( mode == NearZeroMode::counting )
    return out;

  try
  {
    auto inst = build_cover_instance( m, primes, theta.points, CoverObjective::length );
    auto sol = exact_min_cover( inst, limits );
    out.value = sol.objective.get_num().get_ui();
  }
  catch ( const CoverBudgetExceeded& e )
  {
    out.degraded = true;
    auto const& lb = e.best().lower_bound;
    mpz_class up;
    mpz_cdiv_q( up.get_mpz_t(), lb.get_num_mpz_t(), lb.get_den_mpz_t() );
    out.value = std::max<std::uint64_t>( out.value, up.get_ui() );
  }
  catch ( const BudgetExceeded& )
  {
    out.degraded = true;
  }
  return out;
}

NearZeroBound near_zero_lower_bound( const ZeroMatrix& m, NearZeroMode mode, const CoverLimits& limits )
{
  if ( m.k() == 0 )
    return {};
  return near_zero_lower_bound( m, enumerate_primes( m ), mode, limits );
}

std::pair<double, double> rank_window( double n, double k, double c1, double c2 )
{
  if ( !( n >= 2 ) || !( k >= 2 ) )
    throw std::invalid_argument( "rank_window: requires n >= 2 and k >= 2" );
  double lo = std::log( k ) + c1 * ( std::log( std::log( k ) ) + std::log( std::log( n ) ) );
  double hi = std::log( n * k ) - c2 * std::log( std::log( n * k ) );
  return { lo, hi };
}

namespace
{

double log_binomial( unsigned n, unsigned d )
{
  return std::lgamma( n + 1.0 ) - std::lgamma( d + 1.0 ) - std::lgamma( n - d + 1.0 );
}

} // namespace

double prime_rank_prob_bound( unsigned n, double k, unsigned d )
{
  if ( d < 1 || d > n )
    throw std::invalid_argument( "prime_rank_prob_bound: requires 1 <= d <= n" );
  if ( k < 0 )
    throw std::invalid_argument( "prime_rank_prob_bound: negative k" );
  const double ln2 = std::log( 2.0 );
  double common = d * ln2 + log_binomial( n, d );
  double implicant = common + k * std::log1p( -std::ldexp( 1.0, -static_cast<int>( d ) ) );
  double prime = k > 0 ? common + d * ( std::log( k ) - ( d - 1.0 ) * ln2 ) : -std::numeric_limits<double>::infinity();
  return std::exp( std::min( implicant, prime ) );
}

double length_leading_term( double n, double k )
{
  double nk = n * k;
  if ( !( nk > 1 ) )
    throw std::invalid_argument( "length_leading_term: requires nk > 1" );
  return nk / std::log( nk );
}

ZeroMatrix layer_function( unsigned n, unsigned w, std::uint64_t max_rows )
{
  if ( n == 0 || n > max_dimension )
    throw std::invalid_argument( "layer_function: n outside [1, 64]" );
  if ( w > n )
    throw std::invalid_argument( "layer_function: weight " + std::to_string( w ) + " exceeds n = " + std::to_string( n ) );
  double rows = std::exp( log_binomial( n, w ) );
  if ( rows > static_cast<double>( max_rows ) + 0.5 )
    throw BudgetExceeded( "layer_function: C(" + std::to_string( n ) + "," + std::to_string( w ) + ") rows exceed the cap", 0 );

  std::vector<Point> pts;
  if ( w == 0 )
    pts.emplace_back( n, 0 );
  else
  {
    std::uint64_t full = dimension_mask( n );
    std::uint64_t v = dimension_mask( w );
    while ( true )
    {
      pts.emplace_back( n, v );
      if ( v == ( full & ~dimension_mask( n - w ) ) )
        break;
      // Gosper's hack: next larger integer with the same popcount.
      std::uint64_t c = v & -v;
      std::uint64_t r = v + c;
      v = ( ( ( r ^ v ) >> 2 ) / c ) | r;
    }
  }
  return ZeroMatrix( n, std::move( pts ) );
}

double layer_length_bound( double n, double k )
{
  if ( !( n >= 2 ) || !( k >= 2 ) )
    throw std::invalid_argument( "layer_length_bound: requires n >= 2 and k >= 2" );
  return n * k * std::log( n ) / std::log( k );
}

std::string to_string( BoundKind k )
{
  return k == BoundKind::upper ? "upper" : "lower";
}

std::string to_string( BoundScope s )
{
  switch ( s )
  {
  case BoundScope::any_function:
    return "any-function";
  case BoundScope::almost_all:
    return "almost-all";
  case BoundScope::existential:
    return "existential";
  }
  return "?";
}

std::vector<std::pair<std::string, std::string>> BoundReport::inconsistencies() const
{
  std::vector<std::pair<std::string, std::string>> out;
  for ( auto const& lo : entries )
  {
    if ( lo.kind != BoundKind::lower || !lo.applicable || !std::isfinite( lo.value ) )
      continue;
    for ( auto const& up : entries )
    {
      if ( up.kind != BoundKind::upper || !up.applicable || !std::isfinite( up.value ) || up.scope != lo.scope )
        continue;
      if ( lo.value > up.value )
        out.emplace_back( lo.name, up.name );
    }
  }
  return out;
}

BoundReport table_bounds( unsigned n, std::uint64_t k )
{
  if ( n < 2 || k < 1 )
    throw std::invalid_argument( "table_bounds: requires n >= 2 and k >= 1" );
  const double dn = n, dk = static_cast<double>( k );
  const double nk = dn * dk;
  const bool small_k = std::log2( dk ) <= dn / 2.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  BoundReport r{ n, k, {} };
  r.entries.push_back( { "nk", nk, BoundKind::upper, BoundScope::any_function, "dj02,mu06", true, "" } );
  r.entries.push_back( { "nk/log2(n)", nk / std::log2( dn ), BoundKind::upper, BoundScope::almost_all, "zk85dan,me12b", small_k, "requires k <= 2^(n/2)" } );
  r.entries.push_back( { "n", dn, BoundKind::lower, BoundScope::any_function, "dj01", true, "requires an isolated zero" } );
  r.entries.push_back( { "nk/(log(n)*log(nk))", nk / ( std::log( dn ) * std::log( nk ) ), BoundKind::lower, BoundScope::almost_all, "kog87", small_k,
                         "requires k <= 2^(n/2); Omega row that the source table labels upper" } );
  r.entries.push_back( { "nk/(log(n)+log(k))", nk / ( std::log( dn ) + std::log( dk ) ), BoundKind::lower, BoundScope::almost_all, "near-zero", small_k,
                         "requires k <= 2^(n/2)" } );
  r.entries.push_back( { "nk/log(nk)", length_leading_term( dn, dk ), BoundKind::lower, BoundScope::almost_all, "near-zero", true, length_leading_term_caveat } );
  if ( k >= 2 )
  {
    bool regime = std::log( dk ) / std::log( dn ) < dn;
    r.entries.push_back( { "nk*log(n)/log(k)", layer_length_bound( dn, dk ), BoundKind::lower, BoundScope::existential, "layer", true,
                           regime ? "asymptotic regime log_n k = o(n); not checkable at finite n" : "warning: log_n k >= n, outside the regime" } );
  }
  else
    r.entries.push_back( { "nk*log(n)/log(k)", nan, BoundKind::lower, BoundScope::existential, "layer", false, "undefined for k = 1" } );
  return r;
}

} // namespace nullcover
