/*!
  \file cover.hpp
  \brief Weighted set cover: greedy, LP lower bound, exact branch and bound.

  All minimization and several lower bounds in the library go through this
  engine. Weights are exact rationals; the length objective uses unit weights
  and the rank objective uses cube ranks.
*/

#pragma once

#include <nullcover/core.hpp>
#include <nullcover/implicants.hpp>
#include <nullcover/lp.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nullcover
{

struct CoverSet
{
  std::vector<std::uint32_t> members;
  Rational weight{ 1 };
  std::string label;
};

class CoverInstance
{
public:
  /// Sorts and deduplicates members; throws std::invalid_argument on an
  /// out-of-range member or a negative weight.
  CoverInstance( std::size_t universe_size, std::vector<CoverSet> sets );

  std::size_t universe_size() const noexcept { return universe_size_; }
  const std::vector<CoverSet>& sets() const noexcept { return sets_; }
  std::size_t nonzeros() const noexcept { return nonzeros_; }
  /// The union of all sets is the whole universe.
  bool feasible() const noexcept { return feasible_; }
  bool integral_weights() const noexcept { return integral_; }

  bool is_cover( const std::vector<std::size_t>& chosen ) const;
  Rational weight_of( const std::vector<std::size_t>& chosen ) const;

  CoverLpProblem lp_problem() const;

private:
  std::size_t universe_size_;
  std::vector<CoverSet> sets_;
  std::size_t nonzeros_ = 0;
  bool feasible_ = true;
  bool integral_ = true;
};

struct CoverSolution
{
  std::vector<std::size_t> chosen; ///< increasing set indices
  Rational objective{ 0 };
  bool optimal = false;
  Rational lower_bound{ 0 };
};

struct CoverLimits
{
  /// Exact rational LP below this many nonzeros (after reductions).
  std::size_t exact_lp_nonzeros = 2000;
  /// Branch-and-bound node cap across both search phases.
  std::uint64_t max_nodes = 2'000'000;
  /// Zero means unlimited.
  std::chrono::milliseconds time_budget{ 0 };
};

/// Budget hit inside exact_min_cover; carries the incumbent and a valid lower bound.
class CoverBudgetExceeded : public std::runtime_error
{
public:
  CoverBudgetExceeded( const std::string& what, CoverSolution best ) : std::runtime_error( what ), best_( std::move( best ) ) {}
  const CoverSolution& best() const noexcept { return best_; }

private:
  CoverSolution best_;
};

/// Picks the set with the best newly-covered/weight ratio until covered; ties
/// go to the lowest index. Throws InfeasibleError.
CoverSolution greedy_cover( const CoverInstance& inst );

struct LpBound
{
  Rational value;
  /// true: LP optimum in exact arithmetic. false: certified dual bound from
  /// a floating-point solve (still a valid lower bound).
  bool exact = true;
  std::vector<Rational> element_duals;
};

LpBound lp_bound( const CoverInstance& inst, const CoverLimits& limits = {} );
Rational lp_lower_bound( const CoverInstance& inst, const CoverLimits& limits = {} );

/*! \brief Provably optimal cover.

  Reduces the instance (dominated elements, dominated sets, essential sets),
  finds the optimum value by branch and bound branching on the uncovered
  element with fewest covering sets, then recovers the lexicographically
  smallest optimal index set with an index-ordered search. Node bounds are
  max(LP, counting). Throws InfeasibleError or CoverBudgetExceeded.
*/
CoverSolution exact_min_cover( const CoverInstance& inst, const CoverLimits& limits = {} );

enum class CoverObjective
{
  length,
  rank
};

/*! \brief Cover instance for covering `target` points with primes.

  The universe is `target` sorted ascending; set s lists the target points in
  prime s. Weight 1 (length) or the prime's rank. Throws InfeasibleError if a
  target point lies in no prime.
*/
CoverInstance build_cover_instance( const ZeroMatrix& m, const PrimeSet& primes, std::vector<Point> target, CoverObjective objective );

/// Every one-point of the function, ascending. Throws BudgetExceeded above `max_points`.
std::vector<Point> one_points( const ZeroMatrix& m, std::uint64_t max_points = std::uint64_t{ 1 } << 22 );

} // namespace nullcover
