#pragma once

#include <nullcover/bounds.hpp>
#include <nullcover/core.hpp>
#include <nullcover/cover.hpp>
#include <nullcover/implicants.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace nullcover
{

enum class Objective
{
  length, ///< shortest DNF: fewest cubes
  rank    ///< minimal DNF: fewest literal occurrences
};

enum class SolveMode
{
  exact,
  greedy
};

std::string to_string( Objective o );
std::string to_string( SolveMode m );

struct MinimizationLimits
{
  EnumerationLimits primes;
  CoverLimits cover;
  /// Largest one-point universe the cover is built over.
  std::uint64_t max_universe = std::uint64_t{ 1 } << 22;
};

struct Certificate
{
  Rational lp_bound{ 0 };
  bool lp_exact = true;
  std::uint64_t near_zero_bound = 0;
  bool near_zero_degraded = false;
  bool optimal = false;
  /// Exact mode ran out of budget and the greedy cover was returned.
  bool fell_back = false;
};

struct MinimizationResult
{
  Dnf dnf;
  Objective objective;
  SolveMode mode;
  std::uint64_t value;
  Certificate certificate;
  std::size_t prime_count = 0;
};

/// Covers the one-points with the fewest prime implicants.
MinimizationResult shortest_dnf( const ZeroMatrix& m, SolveMode mode, const MinimizationLimits& limits = {} );
/// Covers the one-points with primes of least total rank.
MinimizationResult minimal_dnf( const ZeroMatrix& m, SolveMode mode, const MinimizationLimits& limits = {} );
MinimizationResult minimize( const ZeroMatrix& m, Objective objective, SolveMode mode, const MinimizationLimits& limits = {} );

struct VerifyResult
{
  enum class Kind
  {
    valid,
    missed_one,
    covers_zero
  };
  Kind kind = Kind::valid;
  std::optional<Point> missed;    ///< a one-point outside every cube
  std::size_t cube_index = 0;     ///< cube containing a zero (0-based)
  std::size_t row_index = 0;      ///< that zero's row (0-based)

  bool ok() const noexcept { return kind == Kind::valid; }
};

/*! \brief Checks that D realizes the function.

  Each cube is tested against every zero row first; then coverage of the
  one-points. The reported missed point is the smallest one. For n <= 12 the
  cube is scanned exhaustively, above that a splitting search looks for a
  region outside every cube that still holds a one-point.
*/
VerifyResult verify_dnf( const ZeroMatrix& m, const Dnf& d );
/// The splitting search alone, exposed for cross-checking.
VerifyResult verify_dnf_by_search( const ZeroMatrix& m, const Dnf& d );

} // namespace nullcover
