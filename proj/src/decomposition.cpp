#include <nullcover/decomposition.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace nullcover
{

namespace
{

void check_parts( const IndicatorVector& alpha, std::span<const IndicatorVector> parts )
{
  if ( alpha.is_zero() )
    throw std::invalid_argument( "decomposition: alpha must be nonzero" );
  for ( auto const& p : parts )
    if ( p.size() != alpha.size() )
      throw std::invalid_argument( "decomposition: part length differs from alpha" );
}

bool strict_parts( const IndicatorVector& alpha, std::span<const IndicatorVector> parts )
{
  for ( auto const& p : parts )
    if ( p.is_zero() || p == alpha )
      return false;
  return true;
}

} // namespace

bool is_decomposable( const IndicatorVector& alpha, std::span<const IndicatorVector> parts )
{
  check_parts( alpha, parts );
  if ( parts.empty() || !strict_parts( alpha, parts ) )
    return false;
  BitVector acc( alpha.size() );
  for ( auto const& p : parts )
  {
    if ( !p.bits().is_subset_of( alpha.bits() ) ) // <not alpha, part> != 0
      return false;
    acc |= p.bits();
  }
  return acc == alpha.bits();
}

bool is_ortho_decomposable( const IndicatorVector& alpha, std::span<const IndicatorVector> parts )
{
  check_parts( alpha, parts );
  if ( parts.empty() || !strict_parts( alpha, parts ) )
    return false;
  BitVector x( alpha.size() ), o( alpha.size() );
  for ( auto const& p : parts )
  {
    x ^= p.bits();
    o |= p.bits();
  }
  return x == alpha.bits() && o == alpha.bits();
}

bool is_unity_decomposition( const IndicatorVector& alpha, std::span<const IndicatorVector> parts )
{
  return alpha.is_unity() && is_ortho_decomposable( alpha, parts );
}

std::string to_string( SplitNotion notion )
{
  return notion == SplitNotion::orthogonal ? "orthogonal" : "plain";
}

std::string to_string( OccurrenceStatus status )
{
  switch ( status )
  {
  case OccurrenceStatus::holds:
    return "holds";
  case OccurrenceStatus::fails:
    return "fails";
  case OccurrenceStatus::budget_exceeded:
    return "budget-exceeded";
  }
  return "?";
}

BitVector literal_vector( const ZeroMatrix& m, unsigned variable, bool sign )
{
  auto col = m.column( variable );
  return sign ? col : ~col;
}

namespace
{

struct Candidate
{
  std::uint32_t mask;
  unsigned variable;
  bool sign;
};

/// Split of the tested literal on one block of rows, if any.
class BlockSplitter
{
public:
  BlockSplitter( const ZeroMatrix& m, unsigned variable, bool sign, SplitNotion notion ) : notion_( notion )
  {
    auto to_mask = []( const BitVector& v ) {
      std::uint32_t x = 0;
      for ( auto i : v.indices() )
        x |= 1u << i;
      return x;
    };
    tested_ = to_mask( literal_vector( m, variable, sign ) );
    for ( unsigned j = 0; j < m.n(); ++j )
      for ( bool s : { false, true } )
        if ( j != variable || s != sign )
          literals_.push_back( { to_mask( literal_vector( m, j, s ) ), j, s } );
  }

  /// Empty optional: no split exists on `block`.
  std::optional<std::vector<Candidate>> split( std::uint32_t block ) const
  {
    std::uint32_t alpha = tested_ & block;
    if ( alpha == 0 )
      return std::nullopt;
    std::vector<Candidate> cands;
    for ( auto const& l : literals_ )
    {
      std::uint32_t p = l.mask & block;
      if ( p == 0 || p == alpha || ( p & ~alpha ) )
        continue;
      if ( std::none_of( cands.begin(), cands.end(), [p]( auto const& c ) { return c.mask == p; } ) )
        cands.push_back( { p, l.variable, l.sign } );
    }
    if ( notion_ == SplitNotion::plain )
    {
      std::uint32_t acc = 0;
      for ( auto const& c : cands )
        acc |= c.mask;
      if ( acc != alpha )
        return std::nullopt;
      return cands;
    }

    // Exact cover of alpha by disjoint candidate masks.
    std::unordered_map<std::uint32_t, bool> memo;
    std::vector<Candidate> chosen;
    std::function<bool( std::uint32_t )> rec = [&]( std::uint32_t rest ) -> bool {
      if ( rest == 0 )
        return true;
      if ( auto it = memo.find( rest ); it != memo.end() && !it->second )
        return false;
      std::uint32_t low = rest & -rest;
      for ( auto const& c : cands )
      {
        if ( !( c.mask & low ) || ( c.mask & ~rest ) )
          continue;
        chosen.push_back( c );
        if ( rec( rest & ~c.mask ) )
          return true;
        chosen.pop_back();
      }
      memo[rest] = false;
      return false;
    };
    if ( !rec( alpha ) )
      return std::nullopt;
    return chosen;
  }

private:
  SplitNotion notion_;
  std::uint32_t tested_ = 0;
  std::vector<Candidate> literals_;
};

} // namespace

OccurrenceResult literal_occurrence_lower_bound( const ZeroMatrix& m, unsigned variable, bool sign, std::size_t t,
                                                 const OccurrenceOptions& options )
{
  if ( variable >= m.n() )
    throw std::invalid_argument( "literal_occurrence_lower_bound: variable out of range" );
  if ( t < 1 )
    throw std::invalid_argument( "literal_occurrence_lower_bound: t must be at least 1" );
  OccurrenceResult out{ OccurrenceStatus::budget_exceeded, options.notion, 0, {}, {} };
  const std::size_t k = m.k();
  if ( k == 0 )
    throw std::invalid_argument( "literal_occurrence_lower_bound: requires k >= 1" );
  if ( k > options.max_rows || k > 31 )
    return out;
  t = std::min( t, k );

  BlockSplitter splitter( m, variable, sign, options.notion );
  const std::uint32_t masks = 1u << k;
  std::vector<char> splittable( masks, 0 );
  for ( std::uint32_t b = 1; b < masks; ++b )
    splittable[b] = splitter.split( b ).has_value();

  // Restricted growth strings with at most t blocks.
  std::vector<std::uint32_t> label( k, 0 ), prefix_max( k, 0 );
  std::vector<std::uint32_t> block( t, 0 );
  while ( true )
  {
    std::fill( block.begin(), block.end(), 0u );
    std::uint32_t blocks = 0;
    for ( std::size_t i = 0; i < k; ++i )
    {
      block[label[i]] |= 1u << i;
      blocks = std::max( blocks, label[i] + 1 );
    }
    ++out.partitions_checked;
    std::uint32_t witness = blocks;
    for ( std::uint32_t b = 0; b < blocks; ++b )
      if ( !splittable[block[b]] )
      {
        witness = b;
        break;
      }
    if ( witness == blocks )
    {
      out.status = OccurrenceStatus::fails;
      out.witness_blocks.clear();
      for ( std::uint32_t b = 0; b < blocks; ++b )
      {
        LiteralSplit ls;
        for ( std::size_t i = 0; i < k; ++i )
          if ( block[b] >> i & 1u )
            ls.block.push_back( i );
        for ( auto const& c : *splitter.split( block[b] ) )
          ls.parts.emplace_back( c.variable, c.sign );
        out.violating_partition.push_back( std::move( ls ) );
      }
      return out;
    }
    out.witness_blocks.push_back( witness );

    // Next restricted growth string.
    std::size_t i = k;
    while ( i-- > 1 )
    {
      std::uint32_t limit = std::min<std::uint32_t>( prefix_max[i - 1] + 1, static_cast<std::uint32_t>( t ) - 1 );
      if ( label[i] < limit )
      {
        ++label[i];
        prefix_max[i] = std::max( prefix_max[i - 1], label[i] );
        for ( std::size_t r = i + 1; r < k; ++r )
        {
          label[r] = 0;
          prefix_max[r] = prefix_max[i];
        }
        break;
      }
    }
    if ( i == 0 || k == 1 )
      break;
  }
  out.status = OccurrenceStatus::holds;
  return out;
}

} // namespace nullcover
