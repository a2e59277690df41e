#include <nullcover/errors.hpp>
#include <nullcover/io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace nullcover
{

namespace
{

std::string_view trim( std::string_view s )
{
  while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ) )
    s.remove_prefix( 1 );
  while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
    s.remove_suffix( 1 );
  return s;
}

/// Calls fn(line_number, line) for each line, without the terminator.
template <class Fn>
void for_each_line( std::string_view text, Fn fn )
{
  std::size_t line = 0;
  while ( !text.empty() )
  {
    ++line;
    auto eol = text.find( '\n' );
    auto l = text.substr( 0, eol );
    fn( line, l );
    if ( eol == std::string_view::npos )
      break;
    text.remove_prefix( eol + 1 );
  }
}

template <class Int>
bool parse_int( std::string_view s, Int& out )
{
  auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), out );
  return ec == std::errc{} && p == s.data() + s.size();
}

std::vector<std::string_view> split_ws( std::string_view s )
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while ( i < s.size() )
  {
    while ( i < s.size() && std::isspace( static_cast<unsigned char>( s[i] ) ) )
      ++i;
    std::size_t j = i;
    while ( j < s.size() && !std::isspace( static_cast<unsigned char>( s[j] ) ) )
      ++j;
    if ( j > i )
      out.push_back( s.substr( i, j - i ) );
    i = j;
  }
  return out;
}

} // namespace

ZeroMatrix parse_zero_matrix( std::string_view text )
{
  std::optional<unsigned> declared;
  std::size_t declared_line = 0;
  std::vector<Point> rows;
  std::map<std::uint64_t, std::size_t> first_line;
  std::size_t width_line = 0;

  for_each_line( text, [&]( std::size_t line, std::string_view raw ) {
    auto l = raw.substr( 0, raw.find( '#' ) );
    l = trim( l );
    if ( l.empty() )
      return;
    if ( l.starts_with( "n=" ) )
    {
      unsigned n = 0;
      if ( declared || !parse_int( l.substr( 2 ), n ) || n == 0 || n > max_dimension )
        throw ParseError( line, "bad dimension line '" + std::string( l ) + "'" );
      declared = n;
      declared_line = line;
      return;
    }
    for ( char c : l )
      if ( c != '0' && c != '1' )
        throw ParseError( line, std::string( "unexpected character '" ) + c + "' in zero row" );
    if ( l.size() > max_dimension )
      throw ParseError( line, "row longer than 64 variables" );
    if ( !rows.empty() && l.size() != rows.front().dim() )
      throw ParseError( line, "ragged row: " + std::to_string( l.size() ) + " columns, line " + std::to_string( width_line ) + " has " +
                                  std::to_string( rows.front().dim() ) );
    if ( rows.empty() )
      width_line = line;
    auto p = Point::from_string( l );
    auto [it, fresh] = first_line.emplace( p.bits(), line );
    if ( !fresh )
      throw ParseError( line, "duplicate zero row " + p.str() + " (first at line " + std::to_string( it->second ) + ")" );
    rows.push_back( p );
  } );

  if ( rows.empty() )
  {
    if ( !declared )
      throw ParseError( 0, "no zero rows and no 'n=' line: dimension unknown" );
    return ZeroMatrix( *declared, {} );
  }
  if ( declared && *declared != rows.front().dim() )
    throw ParseError( declared_line, "declared n=" + std::to_string( *declared ) + " but rows have " + std::to_string( rows.front().dim() ) + " columns" );
  std::sort( rows.begin(), rows.end() );
  const unsigned n = rows.front().dim();
  return ZeroMatrix( n, std::move( rows ) );
}

std::string emit_zero_matrix( const ZeroMatrix& m )
{
  auto c = m.canonical();
  std::string out;
  if ( c.k() == 0 )
    return "n=" + std::to_string( c.n() ) + "\n";
  out.reserve( c.k() * ( c.n() + 1 ) );
  for ( auto const& r : c.rows() )
  {
    out += r.str();
    out += '\n';
  }
  return out;
}

NelsonCnf parse_nelson( std::string_view text )
{
  NelsonCnf cnf;
  bool header = false;
  std::size_t declared = 0;
  std::vector<std::pair<unsigned, bool>> clause;
  std::size_t clause_line = 0;

  for_each_line( text, [&]( std::size_t line, std::string_view raw ) {
    auto l = trim( raw );
    if ( l.empty() || l.front() == 'c' || l.front() == '%' )
      return;
    auto tok = split_ws( l );
    if ( tok.front() == "p" )
    {
      if ( header )
        throw ParseError( line, "second header line" );
      if ( tok.size() != 4 || tok[1] != "cnf" || !parse_int( tok[2], cnf.n ) || !parse_int( tok[3], declared ) )
        throw ParseError( line, "expected 'p cnf <variables> <clauses>'" );
      if ( cnf.n == 0 || cnf.n > max_dimension )
        throw ParseError( line, "variable count must lie in [1, 64]" );
      header = true;
      return;
    }
    if ( !header )
      throw ParseError( line, "clause before the 'p cnf' header" );
    for ( auto t : tok )
    {
      long long v = 0;
      if ( !parse_int( t, v ) )
        throw ParseError( line, "bad literal '" + std::string( t ) + "'" );
      if ( clause.empty() )
        clause_line = line;
      if ( v == 0 )
      {
        if ( clause.empty() )
          throw ParseError( line, "empty clause" );
        std::sort( clause.begin(), clause.end() );
        clause.erase( std::unique( clause.begin(), clause.end() ), clause.end() );
        for ( std::size_t i = 1; i < clause.size(); ++i )
          if ( clause[i].first == clause[i - 1].first )
            throw ParseError( clause_line, "tautological clause: x" + std::to_string( clause[i].first + 1 ) + " appears with both signs" );
        cnf.clauses.push_back( std::move( clause ) );
        clause.clear();
        continue;
      }
      auto var = static_cast<unsigned long long>( v < 0 ? -v : v );
      if ( var > cnf.n )
        throw ParseError( line, "variable " + std::to_string( var ) + " exceeds n = " + std::to_string( cnf.n ) );
      clause.emplace_back( static_cast<unsigned>( var - 1 ), v > 0 );
    }
  } );
  if ( !header )
    throw ParseError( 0, "missing 'p cnf' header" );
  if ( !clause.empty() )
    throw ParseError( clause_line, "clause not terminated by 0" );
  if ( cnf.clauses.size() != declared )
    throw ParseError( 0, "header declares " + std::to_string( declared ) + " clauses, found " + std::to_string( cnf.clauses.size() ) );
  return cnf;
}

ZeroMatrix zeros_of( const NelsonCnf& cnf, std::uint64_t expansion_cap )
{
  std::unordered_set<std::uint64_t> zeros;
  for ( std::size_t c = 0; c < cnf.clauses.size(); ++c )
  {
    auto const& clause = cnf.clauses[c];
    std::uint64_t care = 0, value = 0;
    for ( auto [var, sign] : clause )
    {
      care |= variable_bit( cnf.n, var );
      if ( !sign ) // the literal is false when the variable equals its complement
        value |= variable_bit( cnf.n, var );
    }
    unsigned free = cnf.n - static_cast<unsigned>( std::popcount( care ) );
    auto over = [&]() {
      return BudgetExceeded( "clause " + std::to_string( c + 1 ) + " expands the zero set past the cap of " + std::to_string( expansion_cap ),
                             zeros.size() );
    };
    if ( free >= 63 || ( std::uint64_t{ 1 } << free ) > expansion_cap )
      throw over();
    std::uint64_t freemask = ~care & dimension_mask( cnf.n );
    std::uint64_t sub = 0;
    while ( true )
    {
      zeros.insert( value | sub );
      if ( zeros.size() > expansion_cap )
        throw over();
      if ( sub == freemask )
        break;
      sub = ( sub - freemask ) & freemask;
    }
  }
  std::vector<std::uint64_t> sorted( zeros.begin(), zeros.end() );
  std::sort( sorted.begin(), sorted.end() );
  std::vector<Point> rows;
  rows.reserve( sorted.size() );
  for ( auto b : sorted )
    rows.emplace_back( cnf.n, b );
  return ZeroMatrix( cnf.n, std::move( rows ) );
}

ZeroMatrix parse_nelson_cnf( std::string_view text, std::uint64_t expansion_cap )
{
  return zeros_of( parse_nelson( text ), expansion_cap );
}

std::string emit_pla( const Dnf& d )
{
  std::string out = ".i " + std::to_string( d.dim() ) + "\n.o 1\n.p " + std::to_string( d.length() ) + "\n";
  for ( auto const& c : d.cubes() )
    out += c.str() + " 1\n";
  out += ".e\n";
  return out;
}

Dnf parse_pla( std::string_view text )
{
  std::optional<unsigned> inputs;
  std::optional<std::size_t> declared;
  std::vector<Cube> cubes;
  bool ended = false;

  for_each_line( text, [&]( std::size_t line, std::string_view raw ) {
    auto l = trim( raw.substr( 0, raw.find( '#' ) ) );
    if ( l.empty() )
      return;
    if ( ended )
      throw ParseError( line, "content after .e" );
    auto tok = split_ws( l );
    if ( tok[0] == ".i" )
    {
      unsigned n = 0;
      if ( inputs || tok.size() != 2 || !parse_int( tok[1], n ) || n == 0 || n > max_dimension )
        throw ParseError( line, "bad .i line" );
      inputs = n;
    }
    else if ( tok[0] == ".o" )
    {
      if ( tok.size() != 2 || tok[1] != "1" )
        throw ParseError( line, "only single-output PLA (.o 1) is supported" );
    }
    else if ( tok[0] == ".p" )
    {
      std::size_t p = 0;
      if ( declared || tok.size() != 2 || !parse_int( tok[1], p ) )
        throw ParseError( line, "bad .p line" );
      declared = p;
    }
    else if ( tok[0] == ".e" || tok[0] == ".end" )
      ended = true;
    else if ( tok[0].front() == '.' )
      throw ParseError( line, "unsupported directive " + std::string( tok[0] ) );
    else
    {
      if ( !inputs )
        throw ParseError( line, "cube before .i" );
      if ( tok.size() != 2 || tok[1] != "1" )
        throw ParseError( line, "expected '<cube> 1'" );
      if ( tok[0].size() != *inputs )
        throw ParseError( line, "cube has " + std::to_string( tok[0].size() ) + " positions, .i says " + std::to_string( *inputs ) );
      for ( char c : tok[0] )
        if ( c != '0' && c != '1' && c != '-' )
          throw ParseError( line, std::string( "unexpected character '" ) + c + "' in cube" );
      cubes.push_back( Cube::from_string( tok[0] ) );
    }
  } );
  if ( !inputs )
    throw ParseError( 0, "missing .i line" );
  if ( declared && *declared != cubes.size() )
    throw ParseError( 0, ".p declares " + std::to_string( *declared ) + " cubes, found " + std::to_string( cubes.size() ) );
  return Dnf( *inputs, std::move( cubes ) );
}

std::string format_real( double v )
{
  if ( std::isnan( v ) )
    return "nan";
  if ( std::isinf( v ) )
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf( buf, sizeof buf, "%.6g", v );
  return buf;
}

Table::Table( std::vector<std::string> columns ) : columns_( std::move( columns ) ) {}

Table& Table::row()
{
  rows_.emplace_back();
  rows_.back().reserve( columns_.size() );
  return *this;
}

Table& Table::add( std::string_view s )
{
  rows_.back().push_back( { std::string( s ), true } );
  return *this;
}

Table& Table::add( double v )
{
  rows_.back().push_back( { format_real( v ), false } );
  return *this;
}

Table& Table::add( std::uint64_t v )
{
  rows_.back().push_back( { std::to_string( v ), false } );
  return *this;
}

Table& Table::add( const Rational& v )
{
  return add( v.get_d() );
}

Table& Table::add_bool( bool v )
{
  rows_.back().push_back( { v ? "true" : "false", false } );
  return *this;
}

Table& Table::add_empty()
{
  rows_.back().push_back( { "", false } );
  return *this;
}

namespace
{

std::string csv_field( const std::string& s )
{
  if ( s.find_first_of( ",\"\n" ) == std::string::npos )
    return s;
  std::string out = "\"";
  for ( char c : s )
  {
    if ( c == '"' )
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string( const std::string& s )
{
  std::string out = "\"";
  for ( char c : s )
  {
    switch ( c )
    {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    default:
      out += c;
    }
  }
  return out + "\"";
}

} // namespace

void Table::write( std::ostream& os, TableFormat format ) const
{
  for ( auto const& r : rows_ )
    if ( r.size() != columns_.size() )
      throw std::logic_error( "table row has " + std::to_string( r.size() ) + " cells for " + std::to_string( columns_.size() ) + " columns" );

  if ( format == TableFormat::csv )
  {
    os << "# nullcover-csv v1\n";
    for ( std::size_t c = 0; c < columns_.size(); ++c )
      os << ( c ? "," : "" ) << columns_[c];
    os << '\n';
    for ( auto const& r : rows_ )
    {
      for ( std::size_t c = 0; c < r.size(); ++c )
        os << ( c ? "," : "" ) << csv_field( r[c].text );
      os << '\n';
    }
    return;
  }
  for ( auto const& r : rows_ )
  {
    os << '{';
    for ( std::size_t c = 0; c < r.size(); ++c )
    {
      os << ( c ? "," : "" ) << json_string( columns_[c] ) << ':';
      auto const& cell = r[c];
      if ( cell.quoted )
        os << json_string( cell.text );
      else if ( cell.text.empty() || cell.text == "nan" || cell.text == "inf" || cell.text == "-inf" )
        os << "null";
      else
        os << cell.text;
    }
    os << "}\n";
  }
}

std::string Table::str( TableFormat format ) const
{
  std::ostringstream os;
  write( os, format );
  return os.str();
}

Table bounds_table( const BoundReport& report )
{
  Table t( { "n", "k", "name", "value", "kind", "scope", "applicable", "source", "note" } );
  for ( auto const& e : report.entries )
    t.row()
        .add( std::uint64_t{ report.n } )
        .add( report.k )
        .add( e.name )
        .add( e.value )
        .add( to_string( e.kind ) )
        .add( to_string( e.scope ) )
        .add_bool( e.applicable )
        .add( e.source )
        .add( e.note );
  return t;
}

Table rank_prob_table( const EnsembleConfig& cfg, const std::vector<ProportionEstimate>& estimates, unsigned first_d )
{
  Table t( { "n", "k", "samples", "seed", "d", "fraction", "ci_low", "ci_high", "successes", "used", "skipped", "std_error", "bound" } );
  for ( std::size_t i = 0; i < estimates.size(); ++i )
  {
    auto const& e = estimates[i];
    unsigned d = first_d + static_cast<unsigned>( i );
    t.row()
        .add( std::uint64_t{ cfg.n } )
        .add( cfg.k )
        .add( cfg.samples )
        .add( cfg.master_seed )
        .add( std::uint64_t{ d } )
        .add( e.fraction )
        .add( e.ci_low )
        .add( e.ci_high )
        .add( e.successes )
        .add( e.used )
        .add( e.skipped )
        .add( e.standard_error )
        .add( prime_rank_prob_bound( cfg.n, static_cast<double>( cfg.k ), d ) );
  }
  return t;
}

Table sample_table( const std::vector<SampleRecord>& records )
{
  Table t( { "sample", "seed", "n", "k", "status", "primes", "greedy_length", "lp_bound", "lp_bound_exact", "near_zero_bound",
             "near_zero_degraded", "exact_length", "exact_rank", "nk_over_log_nk", "nk_over_log2_n", "layer_reference", "rank_histogram" } );
  for ( auto const& r : records )
  {
    std::string hist;
    for ( auto [rank, count] : r.rank_histogram )
      hist += ( hist.empty() ? "" : " " ) + std::to_string( rank ) + ":" + std::to_string( count );
    t.row().add( r.sample_index ).add( r.seed ).add( std::uint64_t{ r.n } ).add( r.k ).add( r.status ).add( r.prime_count );
    t.add( r.greedy_length ).add( r.lp_bound ).add( r.lp_bound.get_str() ).add( r.near_zero_bound ).add_bool( r.near_zero_degraded );
    r.exact_length ? t.add( *r.exact_length ) : t.add_empty();
    r.exact_rank ? t.add( *r.exact_rank ) : t.add_empty();
    t.add( r.reference_nk_over_log_nk ).add( r.reference_nk_over_log2_n );
    r.layer_reference ? t.add( *r.layer_reference ) : t.add_empty();
    t.add( hist );
  }
  return t;
}

Table concentration_table( const EnsembleConfig& cfg, const std::vector<SampleRecord>& records )
{
  std::vector<std::uint64_t> exact, greedy;
  for ( auto const& r : records )
  {
    if ( r.exact_length )
      exact.push_back( *r.exact_length );
    if ( r.status == "ok" || r.status == "cover-budget" )
      greedy.push_back( r.greedy_length );
  }
  Table t( { "n", "k", "samples", "seed", "measure", "used", "mean", "stddev", "cv", "min", "max" } );
  auto emit = [&]( std::string_view name, const std::vector<std::uint64_t>& v ) {
    t.row().add( std::uint64_t{ cfg.n } ).add( cfg.k ).add( cfg.samples ).add( cfg.master_seed ).add( name ).add( std::uint64_t{ v.size() } );
    if ( v.empty() )
    {
      for ( int i = 0; i < 5; ++i )
        t.add_empty();
      return;
    }
    auto s = concentration_stats( v );
    t.add( s.mean ).add( s.stddev ).add( s.cv ).add( s.min ).add( s.max );
  };
  emit( "exact_length", exact );
  emit( "greedy_length", greedy );
  return t;
}

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw ParseError( 0, "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace nullcover
