#include <nullcover/core.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace nullcover
{

/* ---------------------------------------------------------------- BitVector */

BitVector::BitVector( std::size_t size, bool value ) : size_( size ), words_( ( size + 63 ) / 64, value ? ~std::uint64_t{ 0 } : 0 )
{
  trim();
}

BitVector BitVector::from_string( std::string_view text )
{
  BitVector v( text.size() );
  for ( std::size_t i = 0; i < text.size(); ++i )
  {
    if ( text[i] == '1' )
      v.set( i );
    else if ( text[i] != '0' )
      throw std::invalid_argument( "bit vector: unexpected character '" + std::string( 1, text[i] ) + "'" );
  }
  return v;
}

void BitVector::trim() noexcept
{
  if ( size_ % 64 && !words_.empty() )
    words_.back() &= ( std::uint64_t{ 1 } << ( size_ % 64 ) ) - 1;
}

void BitVector::set_all() noexcept
{
  std::fill( words_.begin(), words_.end(), ~std::uint64_t{ 0 } );
  trim();
}

void BitVector::reset_all() noexcept
{
  std::fill( words_.begin(), words_.end(), 0 );
}

std::size_t BitVector::count() const noexcept
{
  std::size_t c = 0;
  for ( auto w : words_ )
    c += std::popcount( w );
  return c;
}

bool BitVector::any() const noexcept
{
  return std::any_of( words_.begin(), words_.end(), []( auto w ) { return w != 0; } );
}

void BitVector::check_same_size( const BitVector& other ) const
{
  if ( size_ != other.size_ )
    throw std::invalid_argument( "bit vector size mismatch: " + std::to_string( size_ ) + " vs " + std::to_string( other.size_ ) );
}

bool BitVector::is_subset_of( const BitVector& other ) const
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    if ( words_[w] & ~other.words_[w] )
      return false;
  return true;
}

bool BitVector::intersects( const BitVector& other ) const
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    if ( words_[w] & other.words_[w] )
      return true;
  return false;
}

std::size_t BitVector::find_next( std::size_t from ) const noexcept
{
  if ( from >= size_ )
    return size_;
  std::size_t w = from / 64;
  std::uint64_t word = words_[w] & ( ~std::uint64_t{ 0 } << ( from % 64 ) );
  while ( true )
  {
    if ( word )
      return w * 64 + std::countr_zero( word );
    if ( ++w == words_.size() )
      return size_;
    word = words_[w];
  }
}

BitVector& BitVector::operator|=( const BitVector& other )
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    words_[w] |= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=( const BitVector& other )
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    words_[w] &= other.words_[w];
  return *this;
}

BitVector& BitVector::operator^=( const BitVector& other )
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::subtract( const BitVector& other )
{
  check_same_size( other );
  for ( std::size_t w = 0; w < words_.size(); ++w )
    words_[w] &= ~other.words_[w];
  return *this;
}

BitVector BitVector::operator~() const
{
  BitVector r( *this );
  for ( auto& w : r.words_ )
    w = ~w;
  r.trim();
  return r;
}

std::vector<std::size_t> BitVector::indices() const
{
  std::vector<std::size_t> out;
  for ( auto i = find_first(); i < size_; i = find_next( i + 1 ) )
    out.push_back( i );
  return out;
}

std::string BitVector::to_string() const
{
  std::string s( size_, '0' );
  for ( std::size_t i = 0; i < size_; ++i )
    if ( test( i ) )
      s[i] = '1';
  return s;
}

std::size_t BitVector::hash() const noexcept
{
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for ( auto w : words_ )
  {
    h ^= w + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  }
  return static_cast<std::size_t>( h );
}

std::size_t vector_weight( const BitVector& v )
{
  if ( v.size() == 0 )
    throw std::invalid_argument( "vector_weight: empty vector" );
  auto ones = v.count();
  return std::min( ones, v.size() - ones );
}

/* -------------------------------------------------------------------- Point */

namespace
{

void check_dimension( unsigned n )
{
  if ( n == 0 || n > max_dimension )
    throw std::invalid_argument( "dimension " + std::to_string( n ) + " outside supported range [1, 64]" );
}

void check_same_dimension( unsigned a, unsigned b )
{
  if ( a != b )
    throw std::invalid_argument( "dimension mismatch: " + std::to_string( a ) + " vs " + std::to_string( b ) );
}

} // namespace

Point::Point( unsigned n, std::uint64_t bits ) : n_( n ), bits_( bits )
{
  check_dimension( n );
  if ( bits & ~dimension_mask( n ) )
    throw std::invalid_argument( "point bits exceed dimension " + std::to_string( n ) );
}

Point Point::from_string( std::string_view text )
{
  check_dimension( static_cast<unsigned>( text.size() ) );
  std::uint64_t bits = 0;
  for ( char c : text )
  {
    if ( c != '0' && c != '1' )
      throw std::invalid_argument( "point: unexpected character '" + std::string( 1, c ) + "'" );
    bits = ( bits << 1 ) | ( c == '1' );
  }
  return Point( static_cast<unsigned>( text.size() ), bits );
}

Point Point::flipped( unsigned j ) const
{
  if ( j >= n_ )
    throw std::invalid_argument( "variable index out of range" );
  return Point( n_, bits_ ^ variable_bit( n_, j ) );
}

unsigned Point::ones() const noexcept
{
  return static_cast<unsigned>( std::popcount( bits_ ) );
}

std::string Point::str() const
{
  std::string s( n_, '0' );
  for ( unsigned j = 0; j < n_; ++j )
    if ( ( *this )[j] )
      s[j] = '1';
  return s;
}

std::size_t vector_weight( const Point& p )
{
  return std::min<std::size_t>( p.ones(), p.dim() - p.ones() );
}

unsigned hamming_distance( const Point& u, const Point& v )
{
  check_same_dimension( u.dim(), v.dim() );
  return static_cast<unsigned>( std::popcount( u.bits() ^ v.bits() ) );
}

bool adjacent( const Point& u, const Point& v )
{
  return hamming_distance( u, v ) == 1;
}

/* --------------------------------------------------------------------- Cube */

Cube::Cube( unsigned n ) : Cube( n, 0, 0 ) {}

Cube::Cube( unsigned n, std::uint64_t care, std::uint64_t value ) : n_( n ), care_( care ), value_( value & care )
{
  check_dimension( n );
  if ( care & ~dimension_mask( n ) )
    throw std::invalid_argument( "cube mask exceeds dimension " + std::to_string( n ) );
}

Cube Cube::from_string( std::string_view text )
{
  check_dimension( static_cast<unsigned>( text.size() ) );
  std::uint64_t care = 0, value = 0;
  for ( char c : text )
  {
    care <<= 1;
    value <<= 1;
    switch ( c )
    {
    case '0':
      care |= 1;
      break;
    case '1':
      care |= 1;
      value |= 1;
      break;
    case '-':
    case '*':
      break;
    default:
      throw std::invalid_argument( "cube: unexpected character '" + std::string( 1, c ) + "'" );
    }
  }
  return Cube( static_cast<unsigned>( text.size() ), care, value );
}

Cube Cube::minterm( const Point& p )
{
  return Cube( p.dim(), dimension_mask( p.dim() ), p.bits() );
}

unsigned Cube::rank() const noexcept
{
  return static_cast<unsigned>( std::popcount( care_ ) );
}

unsigned Cube::rank_positive() const noexcept
{
  return static_cast<unsigned>( std::popcount( value_ ) );
}

bool Cube::contains( const Point& p ) const
{
  check_same_dimension( n_, p.dim() );
  return ( p.bits() & care_ ) == value_;
}

bool Cube::contains( const Cube& other ) const
{
  check_same_dimension( n_, other.n_ );
  return ( care_ & ~other.care_ ) == 0 && ( other.value_ & care_ ) == value_;
}

Cube Cube::with_literal( unsigned j, bool sign ) const
{
  if ( j >= n_ )
    throw std::invalid_argument( "variable index out of range" );
  auto b = variable_bit( n_, j );
  return Cube( n_, care_ | b, sign ? ( value_ | b ) : ( value_ & ~b ) );
}

Cube Cube::without_literal( unsigned j ) const
{
  if ( j >= n_ )
    throw std::invalid_argument( "variable index out of range" );
  auto b = variable_bit( n_, j );
  return Cube( n_, care_ & ~b, value_ & ~b );
}

std::vector<Point> Cube::points() const
{
  if ( free_count() > 24 )
    throw std::invalid_argument( "cube too large to enumerate" );
  std::vector<Point> out;
  out.reserve( std::size_t{ 1 } << free_count() );
  std::uint64_t free = ~care_ & dimension_mask( n_ );
  // Enumerate subsets of the free mask in increasing order.
  std::uint64_t sub = 0;
  while ( true )
  {
    out.emplace_back( n_, value_ | sub );
    if ( sub == free )
      break;
    sub = ( sub - free ) & free;
  }
  return out;
}

std::string Cube::str() const
{
  std::string s( n_, '-' );
  for ( unsigned j = 0; j < n_; ++j )
    if ( is_fixed( j ) )
      s[j] = fixed_value( j ) ? '1' : '0';
  return s;
}

bool cube_contains( const Cube& k, const Point& p )
{
  return k.contains( p );
}

bool canonical_less( const Cube& a, const Cube& b )
{
  if ( a.rank() != b.rank() )
    return a.rank() < b.rank();
  auto code = []( const Cube& c, unsigned j ) { return c.is_fixed( j ) ? ( c.fixed_value( j ) ? 1 : 0 ) : 2; };
  auto n = std::min( a.dim(), b.dim() );
  for ( unsigned j = 0; j < n; ++j )
  {
    auto ca = code( a, j ), cb = code( b, j );
    if ( ca != cb )
      return ca < cb;
  }
  return a.dim() < b.dim();
}

/* --------------------------------------------------------------- ZeroMatrix */

ZeroMatrix::ZeroMatrix( unsigned n, std::vector<Point> rows ) : n_( n ), rows_( std::move( rows ) )
{
  check_dimension( n );
  sorted_.reserve( rows_.size() );
  for ( std::size_t i = 0; i < rows_.size(); ++i )
  {
    if ( rows_[i].dim() != n )
      throw std::invalid_argument( "row " + std::to_string( i + 1 ) + " has dimension " + std::to_string( rows_[i].dim() ) + ", expected " + std::to_string( n ) );
    sorted_.push_back( rows_[i].bits() );
  }
  std::sort( sorted_.begin(), sorted_.end() );
  auto dup = std::adjacent_find( sorted_.begin(), sorted_.end() );
  if ( dup != sorted_.end() )
  {
    std::vector<std::size_t> where;
    for ( std::size_t i = 0; i < rows_.size(); ++i )
      if ( rows_[i].bits() == *dup )
        where.push_back( i + 1 );
    throw std::invalid_argument( "duplicate zero row " + Point( n, *dup ).str() + " at rows " + std::to_string( where[0] ) + " and " + std::to_string( where[1] ) );
  }
}

ZeroMatrix ZeroMatrix::from_strings( std::span<const std::string_view> rows )
{
  if ( rows.empty() )
    throw std::invalid_argument( "from_strings: dimension unknown for an empty row list" );
  std::vector<Point> pts;
  pts.reserve( rows.size() );
  for ( auto r : rows )
    pts.push_back( Point::from_string( r ) );
  const unsigned n = pts.front().dim();
  return ZeroMatrix( n, std::move( pts ) );
}

ZeroMatrix ZeroMatrix::from_strings( std::initializer_list<std::string_view> rows )
{
  return from_strings( std::span<const std::string_view>( rows.begin(), rows.size() ) );
}

BitVector ZeroMatrix::column( unsigned j ) const
{
  if ( j >= n_ )
    throw std::invalid_argument( "column index " + std::to_string( j + 1 ) + " out of range [1, " + std::to_string( n_ ) + "]" );
  BitVector c( rows_.size() );
  for ( std::size_t i = 0; i < rows_.size(); ++i )
    if ( rows_[i][j] )
      c.set( i );
  return c;
}

bool ZeroMatrix::is_zero( std::uint64_t bits ) const
{
  return std::binary_search( sorted_.begin(), sorted_.end(), bits );
}

bool ZeroMatrix::is_zero( const Point& p ) const
{
  check_same_dimension( n_, p.dim() );
  return is_zero( p.bits() );
}

ZeroMatrix ZeroMatrix::canonical() const
{
  auto rows = rows_;
  std::sort( rows.begin(), rows.end() );
  return ZeroMatrix( n_, std::move( rows ) );
}

ZeroMatrix ZeroMatrix::flip_columns( std::uint64_t mask ) const
{
  std::vector<Point> rows;
  rows.reserve( rows_.size() );
  for ( auto const& r : rows_ )
    rows.emplace_back( n_, r.bits() ^ ( mask & dimension_mask( n_ ) ) );
  return ZeroMatrix( n_, std::move( rows ) );
}

std::uint64_t ZeroMatrix::fingerprint() const noexcept
{
  // FNV-1a over the sorted row words and the dimension.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h]( std::uint64_t w ) {
    for ( int b = 0; b < 8; ++b )
    {
      h ^= ( w >> ( 8 * b ) ) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix( n_ );
  for ( auto w : sorted_ )
    mix( w );
  return h;
}

std::uint64_t ZeroMatrix::one_count() const
{
  if ( n_ >= 64 )
    throw std::invalid_argument( "one_count: 2^64 points do not fit a counter" );
  return ( std::uint64_t{ 1 } << n_ ) - rows_.size();
}

ReducedForm normalize_reduced( const ZeroMatrix& m )
{
  std::uint64_t mask = 0;
  for ( unsigned j = 0; j < m.n(); ++j )
  {
    auto ones = m.column( j ).count();
    if ( 2 * ones > m.k() )
      mask |= variable_bit( m.n(), j );
  }
  return ReducedForm{ m.flip_columns( mask ), Point( m.n(), mask ) };
}

bool has_adjacent_zeros( const ZeroMatrix& m )
{
  if ( m.k() < 2 )
    return false;
  // Small matrices: pairwise. Large ones: probe each row's n neighbours.
  if ( m.k() * m.k() <= m.k() * m.n() * 4 )
  {
    for ( std::size_t a = 0; a < m.k(); ++a )
      for ( std::size_t b = a + 1; b < m.k(); ++b )
        if ( adjacent( m.row( a ), m.row( b ) ) )
          return true;
    return false;
  }
  for ( auto const& r : m.rows() )
    for ( unsigned j = 0; j < m.n(); ++j )
      if ( m.is_zero( r.bits() ^ variable_bit( m.n(), j ) ) )
        return true;
  return false;
}

ColumnSets column_sets( const ZeroMatrix& m, unsigned column )
{
  auto e = m.column( column );
  auto z = ~e;
  return ColumnSets{ std::move( e ), std::move( z ) };
}

/* ---------------------------------------------------------- IndicatorVector */

IndicatorVector IndicatorVector::from_chi( std::size_t k, std::uint64_t value )
{
  if ( k > 64 )
    throw std::invalid_argument( "chi is defined for k <= 64" );
  if ( k < 64 && ( value >> k ) )
    throw std::invalid_argument( "chi value out of range [0, 2^k)" );
  BitVector b( k );
  for ( std::size_t i = 0; i < k; ++i )
    if ( ( value >> i ) & 1u )
      b.set( i );
  return IndicatorVector( std::move( b ) );
}

IndicatorVector IndicatorVector::unit( std::size_t k, std::size_t i )
{
  if ( i == 0 || i > k )
    throw std::invalid_argument( "unit vector index out of range" );
  BitVector b( k );
  b.set( i - 1 );
  return IndicatorVector( std::move( b ) );
}

std::uint64_t IndicatorVector::chi() const
{
  if ( size() > 64 )
    throw std::invalid_argument( "chi is defined for k <= 64" );
  return size() ? bits_.words()[0] : 0;
}

/* ---------------------------------------------------------------------- Dnf */

Dnf::Dnf( unsigned n, std::vector<Cube> cubes ) : n_( n ), cubes_( std::move( cubes ) )
{
  check_dimension( n );
  for ( auto const& c : cubes_ )
    check_same_dimension( n, c.dim() );
}

std::size_t Dnf::rank() const noexcept
{
  std::size_t r = 0;
  for ( auto const& c : cubes_ )
    r += c.rank();
  return r;
}

bool Dnf::evaluate( const Point& p ) const
{
  return std::any_of( cubes_.begin(), cubes_.end(), [&p]( const Cube& c ) { return c.contains( p ); } );
}

} // namespace nullcover
