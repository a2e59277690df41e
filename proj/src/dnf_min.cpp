#include <nullcover/dnf_min.hpp>
#include <nullcover/errors.hpp>

#include <algorithm>
#include <stdexcept>

namespace nullcover
{

std::string to_string( Objective o )
{
  return o == Objective::length ? "length" : "rank";
}

std::string to_string( SolveMode m )
{
  return m == SolveMode::exact ? "exact" : "greedy";
}

MinimizationResult minimize( const ZeroMatrix& m, Objective objective, SolveMode mode, const MinimizationLimits& limits )
{
  MinimizationResult res{ Dnf( m.n() ), objective, mode, 0, {}, 0 };

  if ( m.k() == 0 )
  {
    // Constant one: the empty conjunction.
    res.dnf = Dnf( m.n(), { Cube( m.n() ) } );
    res.value = objective == Objective::length ? 1 : 0;
    res.certificate.lp_bound = Rational( res.value );
    res.certificate.optimal = true;
    res.prime_count = 1;
    return res;
  }

  auto primes = enumerate_primes( m, limits.primes );
  res.prime_count = primes.size();
  auto ones = one_points( m, limits.max_universe );
  auto inst = build_cover_instance( m, primes, ones, objective == Objective::length ? CoverObjective::length : CoverObjective::rank );

  auto lp = lp_bound( inst, limits.cover );
  res.certificate.lp_bound = lp.value;
  res.certificate.lp_exact = lp.exact;
  auto nz = near_zero_lower_bound( m, primes, NearZeroMode::exact_cover, limits.cover );
  res.certificate.near_zero_bound = nz.value;
  res.certificate.near_zero_degraded = nz.degraded;

  CoverSolution sol;
  if ( mode == SolveMode::exact )
  {
    try
    {
      sol = exact_min_cover( inst, limits.cover );
    }
    catch ( const CoverBudgetExceeded& )
    {
      sol = greedy_cover( inst );
      res.certificate.fell_back = true;
    }
  }
  else
    sol = greedy_cover( inst );

  std::vector<Cube> cubes;
  for ( auto s : sol.chosen )
    cubes.push_back( primes.primes[s] );
  res.dnf = Dnf( m.n(), std::move( cubes ) );
  res.value = sol.objective.get_num().get_ui();
  res.certificate.optimal = sol.optimal;
  if ( res.certificate.fell_back )
    res.mode = SolveMode::greedy;
  return res;
}

MinimizationResult shortest_dnf( const ZeroMatrix& m, SolveMode mode, const MinimizationLimits& limits )
{
  return minimize( m, Objective::length, mode, limits );
}

MinimizationResult minimal_dnf( const ZeroMatrix& m, SolveMode mode, const MinimizationLimits& limits )
{
  return minimize( m, Objective::rank, mode, limits );
}

namespace
{

bool check_zero_rows( const ZeroMatrix& m, const Dnf& d, VerifyResult& out )
{
  for ( std::size_t c = 0; c < d.cubes().size(); ++c )
  {
    auto const& cube = d.cubes()[c];
    for ( std::size_t i = 0; i < m.k(); ++i )
      if ( ( m.row( i ).bits() & cube.care() ) == cube.value() )
      {
        out.kind = VerifyResult::Kind::covers_zero;
        out.cube_index = c;
        out.row_index = i;
        return false;
      }
  }
  return true;
}

void check_dims( const ZeroMatrix& m, const Dnf& d )
{
  if ( m.n() != d.dim() )
    throw std::invalid_argument( "verify_dnf: dimension mismatch" );
}

class UncoveredSearch
{
public:
  UncoveredSearch( const ZeroMatrix& m, const Dnf& d ) : m_( m ), d_( d ) {}

  std::optional<Point> run()
  {
    std::vector<std::size_t> alive( d_.cubes().size() );
    for ( std::size_t i = 0; i < alive.size(); ++i )
      alive[i] = i;
    return rec( 0, 0, 0, alive );
  }

private:
  /// Subcube: variables < depth fixed to `value`, the rest free.
  std::optional<Point> rec( unsigned depth, std::uint64_t care, std::uint64_t value, const std::vector<std::size_t>& alive )
  {
    const unsigned n = m_.n();
    std::vector<std::size_t> still;
    for ( auto c : alive )
    {
      auto const& cube = d_.cubes()[c];
      if ( ( cube.value() & care ) != ( cube.care() & value ) )
        continue; // disjoint from the subcube
      if ( ( cube.care() & ~care ) == 0 )
        return std::nullopt; // the subcube lies inside this cube
      still.push_back( c );
    }
    if ( still.empty() )
    {
      // The whole subcube is uncovered: find its smallest non-zero point.
      std::uint64_t free = ~care & dimension_mask( n );
      std::uint64_t sub = 0;
      while ( true )
      {
        // Enumerate in increasing numeric order of the full point.
        std::uint64_t p = value | sub;
        if ( !m_.is_zero( p ) )
          return Point( n, p );
        if ( sub == free )
          return std::nullopt;
        sub = ( sub - free ) & free;
      }
    }
    for ( bool bit : { false, true } )
    {
      auto b = variable_bit( n, depth );
      auto r = rec( depth + 1, care | b, bit ? ( value | b ) : value, still );
      if ( r )
        return r;
    }
    return std::nullopt;
  }

  const ZeroMatrix& m_;
  const Dnf& d_;
};

} // namespace

VerifyResult verify_dnf_by_search( const ZeroMatrix& m, const Dnf& d )
{
  check_dims( m, d );
  VerifyResult out;
  if ( !check_zero_rows( m, d, out ) )
    return out;
  if ( auto p = UncoveredSearch( m, d ).run() )
  {
    out.kind = VerifyResult::Kind::missed_one;
    out.missed = *p;
  }
  return out;
}

VerifyResult verify_dnf( const ZeroMatrix& m, const Dnf& d )
{
  check_dims( m, d );
  if ( m.n() > 12 )
    return verify_dnf_by_search( m, d );
  VerifyResult out;
  if ( !check_zero_rows( m, d, out ) )
    return out;
  for ( std::uint64_t b = 0; b < ( std::uint64_t{ 1 } << m.n() ); ++b )
  {
    if ( m.is_zero( b ) )
      continue;
    Point p( m.n(), b );
    if ( !d.evaluate( p ) )
    {
      out.kind = VerifyResult::Kind::missed_one;
      out.missed = p;
      return out;
    }
  }
  return out;
}

} // namespace nullcover
