#pragma once

#include <nullcover/core.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <vector>

namespace nullcover
{

/// Rows excluded by fixing `variable` to `sign`.
struct LiteralBlockSet
{
  unsigned variable;
  bool sign;
  RowSet blocked;
};

/// { i : M_i^variable != sign }. Throws std::invalid_argument for a bad variable.
RowSet blocked_rows( const ZeroMatrix& m, unsigned variable, bool sign );
LiteralBlockSet literal_block_set( const ZeroMatrix& m, unsigned variable, bool sign );

bool is_implicant( const ZeroMatrix& m, const Cube& k );
bool is_prime( const ZeroMatrix& m, const Cube& k );

/// All prime implicants of one function, canonically ordered.
struct PrimeSet
{
  unsigned n;
  std::vector<Cube> primes;
  std::uint64_t source_fingerprint;

  std::size_t size() const noexcept { return primes.size(); }
};

struct EnumerationLimits
{
  std::uint64_t max_primes = 10'000'000;
  /// Wall-clock cap; zero means unlimited.
  std::chrono::milliseconds time_budget{ 0 };
};

/*! \brief Enumerates every prime implicant of the function with zeros `m`.

  Depth-first minimal hitting-set search over the literal block sets: branch
  on the smallest uncovered row, try each unused literal that blocks it, and
  keep only selections where every chosen literal still blocks some row that
  no other chosen literal blocks. At most one literal per variable.

  k = 0 yields the single empty cube. Throws BudgetExceeded (carrying the
  number of primes found so far) when a limit is hit.
*/
PrimeSet enumerate_primes( const ZeroMatrix& m, const EnumerationLimits& limits = {} );

std::map<unsigned, std::size_t> rank_histogram( const PrimeSet& p );

} // namespace nullcover
