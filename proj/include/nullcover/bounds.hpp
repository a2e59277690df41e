/*!
  \file bounds.hpp
  \brief Near-zero points, the per-zero fan lemma, and analytic bound formulas.

  Logarithms are natural unless a name says log2.
*/

#pragma once

#include <nullcover/core.hpp>
#include <nullcover/cover.hpp>
#include <nullcover/implicants.hpp>

#include <string>
#include <utility>
#include <vector>

namespace nullcover
{

/// Row i with bit j flipped (both 0-based).
Point theta_point( const ZeroMatrix& m, std::size_t row, unsigned column );

struct FanPoint
{
  Point point;
  unsigned column; ///< the flipped variable
};

struct NearZeroSet
{
  /// Theta: one-points adjacent to some zero, ascending, deduplicated.
  std::vector<Point> points;
  /// Per zero row, the flips that are one-points (duplicates across rows kept).
  std::vector<std::vector<FanPoint>> fans;
  /// Flips of a 0 entry / of a 1 entry, each ascending and deduplicated.
  std::vector<Point> theta0;
  std::vector<Point> theta1;
};

NearZeroSet near_zero_points( const ZeroMatrix& m );

/// True iff K holds at most one point of every fan. Throws std::invalid_argument
/// unless K is a prime implicant of m.
bool check_dyakonov_lemma( const ZeroMatrix& m, const Cube& k );
/// Same check against a precomputed set, without the primality test.
bool fans_hit_at_most_once( const NearZeroSet& theta, const Cube& k );

enum class NearZeroMode
{
  counting,
  exact_cover
};

struct NearZeroBound
{
  std::uint64_t value = 0;
  std::size_t theta_size = 0;
  /// The exact cover ran out of budget and `value` is the counting bound.
  bool degraded = false;
};

/// ceil(|Theta| / max_K |N_K cap Theta|), or the exact minimum number of
/// primes covering Theta. Either is a lower bound on the shortest DNF length.
NearZeroBound near_zero_lower_bound( const ZeroMatrix& m, NearZeroMode mode, const CoverLimits& limits = {} );
NearZeroBound near_zero_lower_bound( const ZeroMatrix& m, const PrimeSet& primes, NearZeroMode mode, const CoverLimits& limits = {} );

/// Interval of prime ranks outside which almost no function has primes:
/// lo = log k + c1 (log log k + log log n), hi = log nk - c2 log log nk.
std::pair<double, double> rank_window( double n, double k, double c1 = 1.0, double c2 = 1.0 );

/// min(2^d C(n,d) (1 - 2^-d)^k, 2^d C(n,d) (k / 2^(d-1))^d), evaluated in log space.
double prime_rank_prob_bound( unsigned n, double k, unsigned d );

/// Leading term nk / log nk of the almost-all length lower bound.
double length_leading_term( double n, double k );
/// The correction factor is printed differently in the statement and the
/// proof, so only the leading term is computed.
inline constexpr const char* length_leading_term_caveat =
    "leading term only; correction factor (1 + O(sqrt log nk)) vs (1 + Omega(sqrt log nk)) is inconsistent at the source";

/// All weight-w points of the n-cube in lexicographic order.
ZeroMatrix layer_function( unsigned n, unsigned w, std::uint64_t max_rows = std::uint64_t{ 1 } << 20 );

/// nk log n / log k.
double layer_length_bound( double n, double k );

enum class BoundKind
{
  upper,
  lower
};

enum class BoundScope
{
  any_function,
  almost_all,
  existential
};

std::string to_string( BoundKind k );
std::string to_string( BoundScope s );

struct BoundEntry
{
  std::string name;
  double value;
  BoundKind kind;
  BoundScope scope;
  std::string source;
  /// Side condition evaluated at (n, k); false means the row does not apply.
  bool applicable = true;
  std::string note;
};

struct BoundReport
{
  unsigned n;
  std::uint64_t k;
  std::vector<BoundEntry> entries;

  /// Pairs (lower, upper) of applicable entries with the same scope where lower > upper.
  std::vector<std::pair<std::string, std::string>> inconsistencies() const;
};

/// The literature rows plus this module's own formulas at (n, k).
BoundReport table_bounds( unsigned n, std::uint64_t k );

} // namespace nullcover
