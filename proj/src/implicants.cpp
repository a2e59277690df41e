#include <nullcover/errors.hpp>
#include <nullcover/implicants.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nullcover
{

RowSet blocked_rows( const ZeroMatrix& m, unsigned variable, bool sign )
{
  auto col = m.column( variable );
  return sign ? ~col : col;
}

LiteralBlockSet literal_block_set( const ZeroMatrix& m, unsigned variable, bool sign )
{
  return LiteralBlockSet{ variable, sign, blocked_rows( m, variable, sign ) };
}

namespace
{

void check_dims( const ZeroMatrix& m, const Cube& k )
{
  if ( m.n() != k.dim() )
    throw std::invalid_argument( "dimension mismatch: matrix has n = " + std::to_string( m.n() ) + ", cube has " + std::to_string( k.dim() ) );
}

bool implicant_unchecked( const ZeroMatrix& m, const Cube& k )
{
  for ( auto const& r : m.rows() )
    if ( ( r.bits() & k.care() ) == k.value() )
      return false;
  return true;
}

/// Literal id: 2 * variable + sign.
struct Literal
{
  unsigned variable;
  bool sign;
};

class PrimeSearch
{
public:
  PrimeSearch( const ZeroMatrix& m, const EnumerationLimits& limits ) : m_( m ), limits_( limits ), start_( std::chrono::steady_clock::now() )
  {
    auto n = m.n();
    blocked_.reserve( 2 * n );
    for ( unsigned j = 0; j < n; ++j )
    {
      blocked_.push_back( blocked_rows( m, j, false ) );
      blocked_.push_back( blocked_rows( m, j, true ) );
    }
  }

  std::vector<Cube> run()
  {
    RowSet uncovered( m_.k(), true );
    std::vector<bool> candidate( 2 * m_.n(), true );
    rec( uncovered, candidate );
    return std::move( found_ );
  }

private:
  void tick()
  {
    if ( limits_.time_budget.count() > 0 && ( ++nodes_ & 1023u ) == 0 &&
         std::chrono::steady_clock::now() - start_ > limits_.time_budget )
      throw BudgetExceeded( "prime enumeration exceeded time budget", found_.size() );
  }

  void emit()
  {
    std::uint64_t care = 0, value = 0;
    for ( auto lit : chosen_ )
    {
      auto j = lit / 2;
      care |= variable_bit( m_.n(), j );
      if ( lit % 2 )
        value |= variable_bit( m_.n(), j );
    }
    found_.emplace_back( m_.n(), care, value );
    if ( found_.size() > limits_.max_primes )
      throw BudgetExceeded( "prime count exceeded cap of " + std::to_string( limits_.max_primes ), found_.size() );
  }

  void rec( const RowSet& uncovered, std::vector<bool>& candidate )
  {
    tick();
    auto row = uncovered.find_first();
    if ( row == uncovered.size() )
    {
      emit();
      return;
    }

    // Literals that block `row`: for each variable, the sign opposite to the entry.
    std::vector<unsigned> branch;
    for ( unsigned j = 0; j < m_.n(); ++j )
    {
      unsigned lit = 2 * j + ( m_.entry( row, j ) ? 0u : 1u );
      if ( candidate[lit] )
        branch.push_back( lit );
    }
    for ( auto lit : branch )
      candidate[lit] = false;

    for ( auto lit : branch )
    {
      // Each already chosen literal loses the rows the new one also blocks.
      std::vector<RowSet> saved_crit = crit_;
      bool minimal = true;
      for ( auto& c : crit_ )
      {
        c.subtract( blocked_[lit] );
        if ( c.none() )
        {
          minimal = false;
          break;
        }
      }
      if ( minimal )
      {
        auto next_uncovered = uncovered;
        next_uncovered.subtract( blocked_[lit] );
        crit_.push_back( blocked_[lit] & uncovered );
        chosen_.push_back( lit );

        unsigned complement = lit ^ 1u;
        bool was_candidate = candidate[complement];
        candidate[complement] = false;
        rec( next_uncovered, candidate );
        candidate[complement] = was_candidate;

        chosen_.pop_back();
        crit_.pop_back();
      }
      crit_ = std::move( saved_crit );
      candidate[lit] = true;
    }
  }

  const ZeroMatrix& m_;
  EnumerationLimits limits_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  std::vector<RowSet> blocked_;
  std::vector<unsigned> chosen_;
  std::vector<RowSet> crit_;
  std::vector<Cube> found_;
};

} // namespace

bool is_implicant( const ZeroMatrix& m, const Cube& k )
{
  check_dims( m, k );
  return implicant_unchecked( m, k );
}

bool is_prime( const ZeroMatrix& m, const Cube& k )
{
  check_dims( m, k );
  if ( !implicant_unchecked( m, k ) )
    return false;
  for ( unsigned j = 0; j < m.n(); ++j )
    if ( k.is_fixed( j ) && implicant_unchecked( m, k.without_literal( j ) ) )
      return false;
  return true;
}

PrimeSet enumerate_primes( const ZeroMatrix& m, const EnumerationLimits& limits )
{
  PrimeSet out{ m.n(), {}, m.fingerprint() };
  if ( m.k() == 0 )
  {
    out.primes.emplace_back( m.n() );
    return out;
  }
  PrimeSearch search( m, limits );
  out.primes = search.run();
  std::sort( out.primes.begin(), out.primes.end(), canonical_less );
  return out;
}

std::map<unsigned, std::size_t> rank_histogram( const PrimeSet& p )
{
  std::map<unsigned, std::size_t> h;
  for ( auto const& c : p.primes )
    ++h[c.rank()];
  return h;
}

} // namespace nullcover
