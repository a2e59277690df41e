/*!
  \file lp.hpp
  \brief Fractional set-cover LP: minimize w.y subject to A y >= 1, y >= 0.

  Solved by the dual simplex method on the covering rows, starting from the
  all-slack basis (dual feasible because w >= 0). The optimal element duals u
  satisfy sum_{e in s} u_e <= w_s for every set, so sum u is a lower bound on
  any cover.
*/

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace nullcover
{

using Rational = mpq_class;

struct CoverLpProblem
{
  std::size_t elements = 0;
  /// Sorted member lists, indices < elements.
  std::vector<std::vector<std::uint32_t>> sets;
  std::vector<Rational> weights;
};

template <class T>
struct CoverLpSolution
{
  T value;
  std::vector<T> set_values;     ///< y
  std::vector<T> element_duals;  ///< u
  std::uint64_t pivots = 0;
};

/// Exact rational solve. Throws InfeasibleError if some element is in no set.
CoverLpSolution<Rational> solve_cover_lp_exact( const CoverLpProblem& p );

/// Floating-point solve with tolerance 1e-9.
CoverLpSolution<double> solve_cover_lp_float( const CoverLpProblem& p );

/// Turns approximate element duals into an exactly dual-feasible vector
/// (clamp at zero, then scale down until every set constraint holds) and
/// returns the resulting certified lower bound sum u.
Rational certified_dual_bound( const CoverLpProblem& p, const std::vector<double>& duals );

/// True iff u >= 0 and every set constraint sum_{e in s} u_e <= w_s holds exactly.
bool is_dual_feasible( const CoverLpProblem& p, const std::vector<Rational>& duals );

} // namespace nullcover
