/*!
  \file core.hpp
  \brief Points, cubes, zero matrices and the bit-vector helpers used everywhere else.

  Conventions used across the library:

  - Variables and rows are 0-based in the C++ API. Text formats and CLI
    messages use 1-based numbering.
  - A Point of dimension n packs variable j at bit (n - 1 - j) of a 64-bit
    word, so the numeric order of points equals the lexicographic order of
    their '0'/'1' strings (x1 leftmost).
  - A Cube uses the same packing for its `care` and `value` masks.
*/

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nullcover
{

inline constexpr unsigned max_dimension = 64;

/// All-ones mask over the low n bits.
constexpr std::uint64_t dimension_mask( unsigned n ) noexcept
{
  return n >= 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << n ) - 1 );
}

/// Bit of variable j (0-based) in dimension n.
constexpr std::uint64_t variable_bit( unsigned n, unsigned j ) noexcept
{
  return std::uint64_t{ 1 } << ( n - 1 - j );
}

/*! \brief Dynamically sized bit vector.

  Used for row-index sets (position i = row i) and for indicator vectors over
  the zero rows. Position 0 is the least significant bit of word 0.
*/
class BitVector
{
public:
  BitVector() = default;
  explicit BitVector( std::size_t size, bool value = false );

  /// Parses "0110..." where character i is position i.
  static BitVector from_string( std::string_view text );

  std::size_t size() const noexcept { return size_; }
  bool empty_domain() const noexcept { return size_ == 0; }

  bool test( std::size_t i ) const noexcept { return ( words_[i / 64] >> ( i % 64 ) ) & 1u; }
  void set( std::size_t i ) noexcept { words_[i / 64] |= std::uint64_t{ 1 } << ( i % 64 ); }
  void reset( std::size_t i ) noexcept { words_[i / 64] &= ~( std::uint64_t{ 1 } << ( i % 64 ) ); }
  void assign( std::size_t i, bool v ) noexcept { v ? set( i ) : reset( i ); }
  void set_all() noexcept;
  void reset_all() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  bool all() const noexcept { return count() == size_; }

  bool is_subset_of( const BitVector& other ) const;
  bool intersects( const BitVector& other ) const;

  /// Index of the first set position at or after `from`, or size() if none.
  std::size_t find_next( std::size_t from ) const noexcept;
  std::size_t find_first() const noexcept { return find_next( 0 ); }

  BitVector& operator|=( const BitVector& other );
  BitVector& operator&=( const BitVector& other );
  BitVector& operator^=( const BitVector& other );
  /// this &= ~other
  BitVector& subtract( const BitVector& other );
  BitVector operator~() const;

  friend BitVector operator|( BitVector a, const BitVector& b ) { return a |= b; }
  friend BitVector operator&( BitVector a, const BitVector& b ) { return a &= b; }
  friend BitVector operator^( BitVector a, const BitVector& b ) { return a ^= b; }

  bool operator==( const BitVector& other ) const = default;

  std::vector<std::size_t> indices() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

private:
  void check_same_size( const BitVector& other ) const;
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

using RowSet = BitVector;

/// min(#zeros, #ones); throws std::invalid_argument on an empty vector.
std::size_t vector_weight( const BitVector& v );

/*! \brief A vertex of the n-dimensional Boolean cube, 1 <= n <= 64. */
class Point
{
public:
  Point( unsigned n, std::uint64_t bits );

  static Point from_string( std::string_view text );

  unsigned dim() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }

  bool operator[]( unsigned j ) const noexcept { return bits_ & variable_bit( n_, j ); }
  Point flipped( unsigned j ) const;
  Point negated() const noexcept { return Point( n_, ~bits_ & dimension_mask( n_ ) ); }
  unsigned ones() const noexcept;

  std::string str() const;

  auto operator<=>( const Point& ) const = default;

private:
  unsigned n_;
  std::uint64_t bits_;
};

std::size_t vector_weight( const Point& p );
unsigned hamming_distance( const Point& u, const Point& v );
/// Hamming distance exactly 1; throws on dimension mismatch.
bool adjacent( const Point& u, const Point& v );

/*! \brief Elementary conjunction over n variables.

  Each variable is fixed-0, fixed-1 or free. The empty conjunction (rank 0)
  is the whole cube.
*/
class Cube
{
public:
  explicit Cube( unsigned n );
  Cube( unsigned n, std::uint64_t care, std::uint64_t value );

  /// Accepts '0', '1', and '-' or '*' for a free position.
  static Cube from_string( std::string_view text );
  /// The 0-dimensional cube {p}.
  static Cube minterm( const Point& p );

  unsigned dim() const noexcept { return n_; }
  std::uint64_t care() const noexcept { return care_; }
  std::uint64_t value() const noexcept { return value_; }

  bool is_fixed( unsigned j ) const noexcept { return care_ & variable_bit( n_, j ); }
  /// Value of a fixed position (meaningless when free).
  bool fixed_value( unsigned j ) const noexcept { return value_ & variable_bit( n_, j ); }

  unsigned rank() const noexcept;
  unsigned rank_positive() const noexcept;
  unsigned rank_negative() const noexcept { return rank() - rank_positive(); }

  /// log2 |N_K| = n - rank.
  unsigned free_count() const noexcept { return n_ - rank(); }

  bool contains( const Point& p ) const;
  bool contains( const Cube& other ) const;

  Cube with_literal( unsigned j, bool sign ) const;
  Cube without_literal( unsigned j ) const;

  /// Points of the cube in increasing order; throws if there are more than 2^24.
  std::vector<Point> points() const;

  std::string str() const;

  bool operator==( const Cube& ) const = default;

private:
  unsigned n_;
  std::uint64_t care_;
  std::uint64_t value_;
};

bool cube_contains( const Cube& k, const Point& p );

/// Rank ascending, then lexicographic on the ternary string with 0 < 1 < free.
bool canonical_less( const Cube& a, const Cube& b );

/*! \brief Rows are the zeros of a Boolean function.

  Rows are pairwise distinct and share one dimension. The stored row order is
  whatever the caller supplied; `canonical()` sorts it.
*/
class ZeroMatrix
{
public:
  ZeroMatrix( unsigned n, std::vector<Point> rows );

  static ZeroMatrix from_strings( std::span<const std::string_view> rows );
  static ZeroMatrix from_strings( std::initializer_list<std::string_view> rows );

  unsigned n() const noexcept { return n_; }
  std::size_t k() const noexcept { return rows_.size(); }
  const std::vector<Point>& rows() const noexcept { return rows_; }
  const Point& row( std::size_t i ) const { return rows_.at( i ); }
  bool entry( std::size_t i, unsigned j ) const { return rows_.at( i )[j]; }

  /// Column j as a bit vector over the rows.
  BitVector column( unsigned j ) const;

  bool is_zero( const Point& p ) const;
  bool is_zero( std::uint64_t bits ) const;

  ZeroMatrix canonical() const;
  /// Complements the columns set in `mask` (same packing as Point bits).
  ZeroMatrix flip_columns( std::uint64_t mask ) const;

  /// Stable identity of the row set (order independent).
  std::uint64_t fingerprint() const noexcept;

  std::uint64_t one_count() const;

  bool operator==( const ZeroMatrix& other ) const { return n_ == other.n_ && rows_ == other.rows_; }

private:
  unsigned n_;
  std::vector<Point> rows_;
  std::vector<std::uint64_t> sorted_;
};

struct ReducedForm
{
  ZeroMatrix matrix;
  /// Complemented columns, as a Point of dimension n.
  Point flip_mask;
};

/// Complements every column with more ones than zeros (ties stay).
ReducedForm normalize_reduced( const ZeroMatrix& m );

bool has_adjacent_zeros( const ZeroMatrix& m );

struct ColumnSets
{
  RowSet ones;  ///< E(t)
  RowSet zeros; ///< Z(t)
};

ColumnSets column_sets( const ZeroMatrix& m, unsigned column );

/*! \brief Column-space vector over the k zero rows.

  chi maps the vector to the integer whose bit i is position i, so chi is a
  bijection onto [0, 2^k) for k <= 64.
*/
class IndicatorVector
{
public:
  explicit IndicatorVector( BitVector bits ) : bits_( std::move( bits ) ) {}
  static IndicatorVector from_string( std::string_view text ) { return IndicatorVector( BitVector::from_string( text ) ); }
  static IndicatorVector from_chi( std::size_t k, std::uint64_t value );
  /// e_i^k, i 1-based: the vector with only position i - 1 set.
  static IndicatorVector unit( std::size_t k, std::size_t i );
  static IndicatorVector ones( std::size_t k ) { return IndicatorVector( BitVector( k, true ) ); }

  std::size_t size() const noexcept { return bits_.size(); }
  const BitVector& bits() const noexcept { return bits_; }
  bool test( std::size_t i ) const noexcept { return bits_.test( i ); }
  bool is_zero() const noexcept { return bits_.none(); }
  bool is_unity() const noexcept { return bits_.all(); }
  /// Membership in B_k^1 (first coordinate is 1).
  bool first_coordinate() const { return size() && bits_.test( 0 ); }

  std::uint64_t chi() const;
  std::string str() const { return bits_.to_string(); }

  bool operator==( const IndicatorVector& ) const = default;

private:
  BitVector bits_;
};

/*! \brief Ordered disjunction of cubes. */
class Dnf
{
public:
  explicit Dnf( unsigned n, std::vector<Cube> cubes = {} );

  unsigned dim() const noexcept { return n_; }
  const std::vector<Cube>& cubes() const noexcept { return cubes_; }

  std::size_t length() const noexcept { return cubes_.size(); }
  std::size_t rank() const noexcept;

  bool evaluate( const Point& p ) const;

  bool operator==( const Dnf& ) const = default;

private:
  unsigned n_;
  std::vector<Cube> cubes_;
};

} // namespace nullcover
