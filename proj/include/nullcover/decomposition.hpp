/*!
  \file decomposition.hpp
  \brief Vector decompositions over the zero rows and the literal-occurrence test built on them.

  Parts must be nonzero and differ from alpha; with that rule a decomposable
  alpha has chi(alpha) > chi(part) for every part.
*/

#pragma once

#include <nullcover/core.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nullcover
{

enum class DecompositionKind
{
  plain,
  orthogonal,
  unity
};

/// alpha = OR(parts) and every part lies inside alpha. Throws std::invalid_argument
/// for a zero alpha or mismatched lengths.
bool is_decomposable( const IndicatorVector& alpha, std::span<const IndicatorVector> parts );
/// alpha = XOR(parts) = OR(parts).
bool is_ortho_decomposable( const IndicatorVector& alpha, std::span<const IndicatorVector> parts );
/// Orthogonal decomposition of the all-ones vector.
bool is_unity_decomposition( const IndicatorVector& alpha, std::span<const IndicatorVector> parts );

struct DecompositionWitness
{
  IndicatorVector alpha;
  std::vector<IndicatorVector> parts;
  DecompositionKind kind;
};

/// Decomposition notion used when deciding whether literals split a literal.
enum class SplitNotion
{
  orthogonal, ///< default
  plain
};

std::string to_string( SplitNotion notion );

struct OccurrenceOptions
{
  SplitNotion notion = SplitNotion::orthogonal;
  /// Largest k for which set partitions are enumerated.
  std::size_t max_rows = 12;
};

enum class OccurrenceStatus
{
  holds,
  fails,
  budget_exceeded
};

std::string to_string( OccurrenceStatus status );

struct LiteralSplit
{
  std::vector<std::size_t> block;             ///< rows (0-based)
  std::vector<std::pair<unsigned, bool>> parts; ///< literals (variable, sign) forming the split
};

struct OccurrenceResult
{
  OccurrenceStatus status;
  SplitNotion notion;
  std::uint64_t partitions_checked = 0;
  /// holds: per enumerated partition (restricted-growth order), the index of
  /// the block that admits no split.
  std::vector<std::uint32_t> witness_blocks;
  /// fails: the partition where every block splits, with one split per block.
  std::vector<LiteralSplit> violating_partition;
};

/*! \brief Checks the sufficient condition for literal (variable, sign) to
  occur in at least t + 1 conjunctions of every DNF.

  Enumerates every partition of the rows into at most t nonempty blocks. The
  condition holds iff each partition has a block on which no set of other
  literals' restricted vectors splits the tested literal's restricted vector
  under the configured notion. A literal's vector has a 1 at row i iff
  M_i^variable == sign. A block where the tested vector is zero counts as
  admitting no split.
*/
OccurrenceResult literal_occurrence_lower_bound( const ZeroMatrix& m, unsigned variable, bool sign, std::size_t t,
                                                 const OccurrenceOptions& options = {} );

/// Vector of literal (variable, sign) over the rows: bit i set iff M_i^variable == sign.
BitVector literal_vector( const ZeroMatrix& m, unsigned variable, bool sign );

} // namespace nullcover
