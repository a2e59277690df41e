#include <nullcover/errors.hpp>
#include <nullcover/lp.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace nullcover
{

namespace
{

template <class T>
struct Num;

template <>
struct Num<double>
{
  static constexpr double eps = 1e-9;
  static bool negative( double x ) { return x < -eps; }
  static bool positive( double x ) { return x > eps; }
  static bool zero( double x ) { return std::fabs( x ) <= eps; }
  static constexpr double dual_tol = 1e-9;
  static bool pivotable( double x ) { return x < -1e-7; }
  static double from( const Rational& q ) { return q.get_d(); }
  static double to_double( double x ) { return x; }
};

template <>
struct Num<Rational>
{
  static bool negative( const Rational& x ) { return sgn( x ) < 0; }
  static bool positive( const Rational& x ) { return sgn( x ) > 0; }
  static bool zero( const Rational& x ) { return sgn( x ) == 0; }
  static inline const Rational dual_tol{ 0 };
  static bool pivotable( const Rational& x ) { return sgn( x ) < 0; }
  static Rational from( const Rational& q ) { return q; }
  static double to_double( const Rational& x ) { return x.get_d(); }
};

/*
  Tableau over rows = elements, columns = sets then one slack per element.
  Row e reads  -sum_{s ni e} y_s + slack_e = -1  with slack_e basic.
*/
template <class T>
CoverLpSolution<T> dual_simplex( const CoverLpProblem& p )
{
  using N = Num<T>;
  const std::size_t m = p.elements;
  const std::size_t ns = p.sets.size();
  const std::size_t cols = ns + m;

  std::vector<bool> covered( m, false );
  for ( auto const& s : p.sets )
    for ( auto e : s )
      covered[e] = true;
  for ( std::size_t e = 0; e < m; ++e )
    if ( !covered[e] )
      throw InfeasibleError( "LP: element " + std::to_string( e ) + " is in no set" );

  std::vector<T> tab( m * cols, T( 0 ) );
  std::vector<T> rhs( m, T( -1 ) );
  std::vector<T> cost( cols, T( 0 ) );
  std::vector<std::size_t> basis( m );
  for ( std::size_t s = 0; s < ns; ++s )
  {
    cost[s] = N::from( p.weights[s] );
    for ( auto e : p.sets[s] )
      tab[e * cols + s] = T( -1 );
  }
  for ( std::size_t e = 0; e < m; ++e )
  {
    tab[e * cols + ns + e] = T( 1 );
    basis[e] = ns + e;
  }

  CoverLpSolution<T> out;
  bool bland = false, past_limit = false;
  std::size_t degenerate_streak = 0;
  const std::uint64_t max_pivots = 50 * ( m + cols ) + 1000;
  std::vector<std::size_t> nz;

  while ( true )
  {
    // Leaving row.
    std::size_t r = m;
    for ( std::size_t e = 0; e < m; ++e )
    {
      if ( !N::negative( rhs[e] ) )
        continue;
      if ( r == m )
        r = e;
      else if ( bland ? basis[e] < basis[r] : rhs[e] < rhs[r] )
        r = e;
    }
    if ( r == m )
      break;

    // Entering column: min cost_j / -a_rj over a_rj < 0. Outside Bland mode a
    // Harris pass picks the largest |a_rj| among near-minimal ratios.
    std::size_t c = cols;
    T best_ratio{};
    const T* row = &tab[r * cols];
    for ( std::size_t j = 0; j < cols; ++j )
    {
      if ( !N::pivotable( row[j] ) )
        continue;
      T ratio = ( cost[j] + N::dual_tol ) / -row[j];
      if ( c == cols || ratio < best_ratio )
      {
        c = j;
        best_ratio = ratio;
      }
    }
    if ( c != cols && !bland )
    {
      T bound = best_ratio;
      c = cols;
      for ( std::size_t j = 0; j < cols; ++j )
      {
        if ( !N::pivotable( row[j] ) )
          continue;
        T ratio = cost[j] / -row[j];
        if ( ratio <= bound && ( c == cols || row[j] < row[c] ) )
          c = j;
      }
    }
    if ( c != cols )
      best_ratio = cost[c] / -row[c];
    if ( c == cols )
      throw InfeasibleError( "LP: covering constraints are infeasible (row rhs " + std::to_string( N::to_double( rhs[r] ) ) + ", pivot " + std::to_string( out.pivots ) + ")" );

    // Bland's rule only while stalled; progress in the objective rules out cycling.
    if ( N::zero( best_ratio ) )
    {
      if ( ++degenerate_streak > 50 )
        bland = true;
    }
    else
    {
      degenerate_streak = 0;
      bland = past_limit;
    }
    if ( ++out.pivots > max_pivots )
    {
      if ( past_limit && out.pivots > 2 * max_pivots )
        throw InfeasibleError( "LP: pivot limit reached" );
      past_limit = bland = true;
    }

    // Pivot on (r, c).
    T piv = tab[r * cols + c];
    nz.clear();
    for ( std::size_t j = 0; j < cols; ++j )
    {
      if ( !N::zero( tab[r * cols + j] ) )
      {
        tab[r * cols + j] /= piv;
        nz.push_back( j );
      }
      else
        tab[r * cols + j] = T( 0 );
    }
    rhs[r] /= piv;
    for ( std::size_t e = 0; e < m; ++e )
    {
      if ( e == r )
        continue;
      T f = tab[e * cols + c];
      if ( N::zero( f ) )
        continue;
      T* dst = &tab[e * cols];
      const T* src = &tab[r * cols];
      for ( auto j : nz )
        dst[j] -= f * src[j];
      dst[c] = T( 0 );
      rhs[e] -= f * rhs[r];
    }
    T fc = cost[c];
    if ( !N::zero( fc ) )
    {
      for ( auto j : nz )
      {
        cost[j] -= fc * tab[r * cols + j];
        if constexpr ( std::is_same_v<T, double> )
          if ( cost[j] < 0 ) // drift; the float duals are certified afterwards
            cost[j] = 0;
      }
    }
    cost[c] = T( 0 );
    basis[r] = c;
  }

  out.set_values.assign( ns, T( 0 ) );
  for ( std::size_t e = 0; e < m; ++e )
    if ( basis[e] < ns )
      out.set_values[basis[e]] = rhs[e];
  out.value = T( 0 );
  for ( std::size_t s = 0; s < ns; ++s )
    out.value += N::from( p.weights[s] ) * out.set_values[s];
  out.element_duals.resize( m );
  for ( std::size_t e = 0; e < m; ++e )
    out.element_duals[e] = cost[ns + e];
  return out;
}

/*
  Row generation for tall instances: solve over the elements with the fewest
  owning sets, then add elements the primal point leaves uncovered until none
  remain. The last restricted optimum is primal feasible for the full problem,
  hence optimal; its duals, zero on inactive rows, stay dual feasible.
*/
template <class T>
CoverLpSolution<T> solve_by_rows( const CoverLpProblem& p )
{
  const std::size_t m = p.elements;
  const std::size_t batch = std::max<std::size_t>( 128, p.sets.size() );
  if ( m <= 2 * batch )
    return dual_simplex<T>( p );

  std::vector<std::vector<std::uint32_t>> owners( m );
  for ( std::size_t s = 0; s < p.sets.size(); ++s )
    for ( auto e : p.sets[s] )
      owners[e].push_back( static_cast<std::uint32_t>( s ) );
  std::vector<std::size_t> order( m );
  for ( std::size_t e = 0; e < m; ++e )
    order[e] = e;
  std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b ) { return owners[a].size() < owners[b].size(); } );

  std::vector<char> active( m, 0 );
  for ( std::size_t i = 0; i < batch; ++i )
    active[order[i]] = 1;

  std::uint64_t pivots = 0;
  while ( true )
  {
    std::vector<std::uint32_t> pos( m, 0 );
    std::vector<std::size_t> rows;
    for ( std::size_t e = 0; e < m; ++e )
      if ( active[e] )
      {
        pos[e] = static_cast<std::uint32_t>( rows.size() );
        rows.push_back( e );
      }
    CoverLpProblem sub;
    sub.elements = rows.size();
    sub.weights = p.weights;
    sub.sets.resize( p.sets.size() );
    for ( std::size_t s = 0; s < p.sets.size(); ++s )
      for ( auto e : p.sets[s] )
        if ( active[e] )
          sub.sets[s].push_back( pos[e] );

    auto sol = dual_simplex<T>( sub );
    pivots += sol.pivots;

    std::vector<std::pair<T, std::size_t>> violated;
    for ( std::size_t e = 0; e < m; ++e )
    {
      if ( active[e] )
        continue;
      T cover( 0 );
      for ( auto s : owners[e] )
        cover += sol.set_values[s];
      if ( Num<T>::negative( cover - T( 1 ) ) )
        violated.emplace_back( cover, e );
    }
    if ( violated.empty() )
    {
      CoverLpSolution<T> out;
      out.value = sol.value;
      out.set_values = std::move( sol.set_values );
      out.element_duals.assign( m, T( 0 ) );
      for ( std::size_t i = 0; i < rows.size(); ++i )
        out.element_duals[rows[i]] = sol.element_duals[i];
      out.pivots = pivots;
      return out;
    }
    std::stable_sort( violated.begin(), violated.end(), []( auto const& a, auto const& b ) { return a.first < b.first; } );
    for ( std::size_t i = 0; i < violated.size() && i < batch; ++i )
      active[violated[i].second] = 1;
  }
}

} // namespace

CoverLpSolution<Rational> solve_cover_lp_exact( const CoverLpProblem& p )
{
  return solve_by_rows<Rational>( p );
}

CoverLpSolution<double> solve_cover_lp_float( const CoverLpProblem& p )
{
  return solve_by_rows<double>( p );
}

namespace
{

/// Closest continued-fraction convergent of x with denominator <= max_den.
Rational small_rational( double x, long max_den = 1 << 20 )
{
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for ( int it = 0; it < 64; ++it )
  {
    double a = std::floor( r );
    if ( a > 1e12 )
      break;
    long ai = static_cast<long>( a );
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if ( k2 > max_den )
      break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if ( frac < 1e-12 )
      break;
    r = 1.0 / frac;
  }
  if ( k1 == 0 )
    return Rational( x );
  Rational q( h1, k1 );
  q.canonicalize();
  return q;
}

} // namespace

Rational certified_dual_bound( const CoverLpProblem& p, const std::vector<double>& duals )
{
  std::vector<Rational> u( p.elements, Rational( 0 ) );
  for ( std::size_t e = 0; e < p.elements && e < duals.size(); ++e )
    if ( duals[e] > 0 && std::isfinite( duals[e] ) )
      u[e] = small_rational( duals[e] );
  // A zero-weight set forces its elements' duals to zero.
  for ( std::size_t s = 0; s < p.sets.size(); ++s )
    if ( sgn( p.weights[s] ) == 0 )
      for ( auto e : p.sets[s] )
        u[e] = 0;
  Rational scale( 1 );
  for ( std::size_t s = 0; s < p.sets.size(); ++s )
  {
    Rational load( 0 );
    for ( auto e : p.sets[s] )
      load += u[e];
    if ( load > p.weights[s] )
    {
      Rational f = p.weights[s] / load;
      if ( f < scale )
        scale = f;
    }
  }
  Rational total( 0 );
  for ( auto const& x : u )
    total += x;
  return total * scale;
}

bool is_dual_feasible( const CoverLpProblem& p, const std::vector<Rational>& duals )
{
  if ( duals.size() != p.elements )
    return false;
  for ( auto const& x : duals )
    if ( sgn( x ) < 0 )
      return false;
  for ( std::size_t s = 0; s < p.sets.size(); ++s )
  {
    Rational load( 0 );
    for ( auto e : p.sets[s] )
      load += duals[e];
    if ( load > p.weights[s] )
      return false;
  }
  return true;
}

} // namespace nullcover
