/*!
  \file io.hpp
  \brief Text formats: zero matrices, DIMACS-style CNF, PLA, and tabular reports.

  Zero-matrix text holds one row of '0'/'1' per line. '#' starts a comment and
  blank lines are skipped. A line `n=<count>` may fix the dimension, which is
  the only way to write a function without zeros.
*/

#pragma once

#include <nullcover/bounds.hpp>
#include <nullcover/core.hpp>
#include <nullcover/ensemble.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nullcover
{

/// Rows are returned in canonical (ascending) order.
ZeroMatrix parse_zero_matrix( std::string_view text );
std::string emit_zero_matrix( const ZeroMatrix& m );

struct NelsonCnf
{
  unsigned n = 0;
  /// Literals as (0-based variable, sign); sign true is the positive literal.
  std::vector<std::vector<std::pair<unsigned, bool>>> clauses;
};

NelsonCnf parse_nelson( std::string_view text );

/// Union of the clauses' falsifying subcubes. Throws BudgetExceeded naming the
/// 1-based clause at which the union grows past `expansion_cap`.
ZeroMatrix zeros_of( const NelsonCnf& cnf, std::uint64_t expansion_cap = std::uint64_t{ 1 } << 20 );
ZeroMatrix parse_nelson_cnf( std::string_view text, std::uint64_t expansion_cap = std::uint64_t{ 1 } << 20 );

std::string emit_pla( const Dnf& d );
/// Reads what emit_pla writes; '#' comment lines are skipped.
Dnf parse_pla( std::string_view text );

enum class TableFormat
{
  csv,
  jsonl
};

/// One report: a fixed column list and rows of preformatted cells.
class Table
{
public:
  explicit Table( std::vector<std::string> columns );

  struct Cell
  {
    std::string text;
    bool quoted = false; ///< string cell (vs. number / empty)
  };

  Table& row();
  Table& add( std::string_view s );
  Table& add( double v );
  Table& add( std::uint64_t v );
  Table& add( const Rational& v );
  Table& add_bool( bool v );
  Table& add_empty();

  /// CSV gets a `# nullcover-csv v1` line and a header row; JSON lines get one
  /// object per row, with empty cells as null.
  void write( std::ostream& os, TableFormat format ) const;
  std::string str( TableFormat format = TableFormat::csv ) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Six significant digits; "nan" / "inf" for non-finite values.
std::string format_real( double v );

Table bounds_table( const BoundReport& report );
Table rank_prob_table( const EnsembleConfig& cfg, const std::vector<ProportionEstimate>& estimates, unsigned first_d = 1 );
Table sample_table( const std::vector<SampleRecord>& records );
Table concentration_table( const EnsembleConfig& cfg, const std::vector<SampleRecord>& records );

std::string read_file( const std::string& path );

} // namespace nullcover
