#include <nullcover/cli.hpp>
#include <nullcover/errors.hpp>
#include <nullcover/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nullcover
{

namespace
{

struct GlobalOptions
{
  std::uint64_t seed = 0;
  std::optional<std::int64_t> budget_ms;
  std::string format = "csv";
  unsigned threads = 1;

  TableFormat table_format() const { return format == "jsonl" ? TableFormat::jsonl : TableFormat::csv; }

  std::chrono::milliseconds budget() const
  {
    if ( budget_ms )
      return std::chrono::milliseconds( std::max<std::int64_t>( 0, *budget_ms ) );
    if ( const char* env = std::getenv( "NULLCOVER_BUDGET_MS" ) )
    {
      try
      {
        return std::chrono::milliseconds( std::max<long long>( 0, std::stoll( env ) ) );
      }
      catch ( const std::exception& )
      {
        throw std::invalid_argument( std::string( "NULLCOVER_BUDGET_MS is not an integer: '" ) + env + "'" );
      }
    }
    return std::chrono::milliseconds( 0 );
  }

  MinimizationLimits minimization_limits() const
  {
    MinimizationLimits l;
    l.primes.time_budget = budget();
    l.cover.time_budget = budget();
    return l;
  }

  SampleBudgets sample_budgets() const
  {
    SampleBudgets b;
    b.primes.time_budget = budget();
    b.cover.time_budget = budget();
    return b;
  }
};

/// Sends output to --out when given, else to the caller's stream.
class Sink
{
public:
  Sink( const std::string& path, std::ostream& fallback ) : os_( &fallback )
  {
    if ( !path.empty() )
    {
      file_.open( path, std::ios::binary );
      if ( !file_ )
        throw ParseError( 0, "cannot write '" + path + "'" );
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

void write_certificate( std::ostream& os, const MinimizationResult& r )
{
  Table t( { "objective", "mode", "value", "primes", "lp_bound", "lp_bound_exact", "lp_exact", "near_zero_bound", "near_zero_degraded", "optimal",
             "fell_back" } );
  t.row()
      .add( to_string( r.objective ) )
      .add( to_string( r.mode ) )
      .add( r.value )
      .add( std::uint64_t{ r.prime_count } )
      .add( r.certificate.lp_bound )
      .add( r.certificate.lp_bound.get_str() )
      .add_bool( r.certificate.lp_exact )
      .add( r.certificate.near_zero_bound )
      .add_bool( r.certificate.near_zero_degraded )
      .add_bool( r.certificate.optimal )
      .add_bool( r.certificate.fell_back );
  t.write( os, TableFormat::jsonl );
}

} // namespace

int run_cli( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app( "Prime implicants, shortest and minimal DNFs, and bounds for Boolean functions given by their zeros.", "nullcover" );
  app.fallthrough();
  app.require_subcommand( 1 );

  GlobalOptions g;
  app.add_option( "--seed", g.seed, "Master seed for sampling" );
  app.add_option( "--budget-ms", g.budget_ms, "Wall-clock budget per solver call (0 = none; default from NULLCOVER_BUDGET_MS)" );
  app.add_option( "--format", g.format, "Report format" )->check( CLI::IsMember( { "csv", "jsonl" } ) );
  app.add_option( "--threads", g.threads, "Worker threads for experiments" )->check( CLI::Range( 1u, 1024u ) );

  std::string input, second, out_path;

  auto* primes = app.add_subcommand( "primes", "Enumerate all prime implicants (PLA) and their rank histogram" );
  primes->add_option( "input", input, "Zero-matrix file" )->required();

  std::string objective = "length", mode = "exact", cert_path;
  auto* minimize_cmd = app.add_subcommand( "minimize", "Shortest (length) or minimal (rank) DNF as PLA" );
  minimize_cmd->add_option( "--objective", objective )->check( CLI::IsMember( { "length", "rank" } ) );
  minimize_cmd->add_option( "--mode", mode )->check( CLI::IsMember( { "exact", "greedy" } ) );
  minimize_cmd->add_option( "--certificate", cert_path, "Write the bound certificate (JSON line) here instead of stderr" );
  minimize_cmd->add_option( "input", input, "Zero-matrix file" )->required();

  unsigned n = 0;
  std::uint64_t k = 0;
  double c1 = 1.0, c2 = 1.0;
  auto* bounds = app.add_subcommand( "bounds", "Table of length bounds at (n, k)" );
  bounds->add_option( "--n", n )->required()->check( CLI::Range( 1u, 64u ) );
  bounds->add_option( "--k", k )->required()->check( CLI::PositiveNumber );
  bounds->add_option( "--c1", c1, "Constant of the rank window's lower end" );
  bounds->add_option( "--c2", c2, "Constant of the rank window's upper end" );

  auto* theta = app.add_subcommand( "theta", "Near-zero points and the lower bounds they give" );
  theta->add_option( "input", input, "Zero-matrix file" )->required();

  std::uint64_t cap = std::uint64_t{ 1 } << 20;
  auto* nelson = app.add_subcommand( "nelson", "Convert a DIMACS CNF to a zero-matrix file" );
  nelson->add_option( "input", input, "CNF file" )->required();
  nelson->add_option( "--cap", cap, "Largest zero set to expand" );
  nelson->add_option( "--out", out_path );

  std::string kind;
  unsigned w = 0, d = 0;
  std::uint64_t samples = 20;
  bool filter = false;
  auto* experiment = app.add_subcommand( "experiment", "Monte Carlo experiments over random functions" );
  experiment->add_option( "kind", kind )->required()->check( CLI::IsMember( { "rank-prob", "length", "concentration", "layer" } ) );
  experiment->add_option( "--n", n )->check( CLI::Range( 1u, 64u ) );
  experiment->add_option( "--k", k );
  experiment->add_option( "--samples", samples )->check( CLI::PositiveNumber );
  experiment->add_option( "--w", w, "Layer weight (layer experiment)" );
  experiment->add_option( "--d", d, "Single rank (rank-prob experiment)" );
  experiment->add_option( "--out", out_path );
  experiment->add_flag( "--filter-adjacent", filter, "Only functions without adjacent zeros" );

  auto* verify = app.add_subcommand( "verify", "Check that a PLA realizes the function" );
  verify->add_option( "input", input, "Zero-matrix file" )->required();
  verify->add_option( "dnf", second, "PLA file" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    int code = app.exit( e, out, err );
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( primes->parsed() )
    {
      auto m = parse_zero_matrix( read_file( input ) );
      EnumerationLimits limits;
      limits.time_budget = g.budget();
      auto p = enumerate_primes( m, limits );
      out << emit_pla( Dnf( m.n(), p.primes ) );
      out << "# rank histogram\n";
      for ( auto [rank, count] : rank_histogram( p ) )
        out << "# rank " << rank << ": " << count << '\n';
      return exit_ok;
    }

    if ( minimize_cmd->parsed() )
    {
      auto m = parse_zero_matrix( read_file( input ) );
      auto r = minimize( m, objective == "length" ? Objective::length : Objective::rank, mode == "exact" ? SolveMode::exact : SolveMode::greedy,
                         g.minimization_limits() );
      out << emit_pla( r.dnf );
      if ( cert_path.empty() )
        write_certificate( err, r );
      else
      {
        Sink s( cert_path, err );
        write_certificate( *s, r );
      }
      if ( r.certificate.fell_back )
      {
        err << "budget exceeded: exact search stopped, greedy cover returned\n";
        return exit_budget;
      }
      return exit_ok;
    }

    if ( bounds->parsed() )
    {
      auto report = table_bounds( n, k );
      auto t = bounds_table( report );
      if ( n >= 2 && k >= 2 )
      {
        auto [lo, hi] = rank_window( n, double( k ), c1, c2 );
        t.row().add( std::uint64_t{ n } ).add( k ).add( "rank_window_low" ).add( lo ).add( "window" ).add( "almost-all" ).add_bool( true ).add( "rank" ).add(
            "c1=" + format_real( c1 ) );
        t.row().add( std::uint64_t{ n } ).add( k ).add( "rank_window_high" ).add( hi ).add( "window" ).add( "almost-all" ).add_bool( true ).add( "rank" ).add(
            "c2=" + format_real( c2 ) );
      }
      t.write( out, g.table_format() );
      for ( auto const& [lower, upper] : report.inconsistencies() )
        err << "note: lower bound " << lower << " exceeds upper bound " << upper << " at this (n, k)\n";
      return exit_ok;
    }

    if ( theta->parsed() )
    {
      auto m = parse_zero_matrix( read_file( input ) );
      auto set = near_zero_points( m );
      auto list = [&]( std::string_view name, const std::vector<Point>& pts ) {
        out << name << ' ' << pts.size() << '\n';
        for ( auto const& p : pts )
          out << p.str() << '\n';
      };
      list( "theta", set.points );
      list( "theta0", set.theta0 );
      list( "theta1", set.theta1 );
      auto limits = g.minimization_limits();
      auto counting = near_zero_lower_bound( m, NearZeroMode::counting, limits.cover );
      auto exact = near_zero_lower_bound( m, NearZeroMode::exact_cover, limits.cover );
      out << "counting_bound " << counting.value << '\n';
      out << "exact_cover_bound " << exact.value << ( exact.degraded ? " degraded" : "" ) << '\n';
      return exit_ok;
    }

    if ( nelson->parsed() )
    {
      auto m = parse_nelson_cnf( read_file( input ), cap );
      Sink s( out_path, out );
      *s << emit_zero_matrix( m );
      return exit_ok;
    }

    if ( experiment->parsed() )
    {
      EnsembleConfig cfg;
      cfg.n = n ? n : cfg.n;
      cfg.k = experiment->count( "--k" ) ? k : cfg.k;
      cfg.samples = samples;
      cfg.master_seed = g.seed;
      cfg.filter_no_adjacent_zeros = filter;
      cfg.budgets = g.sample_budgets();
      cfg.threads = g.threads;
      Sink s( out_path, out );

      if ( kind == "rank-prob" )
      {
        auto est = estimate_prime_rank_probs( cfg );
        if ( d )
        {
          if ( d > cfg.n )
            throw std::invalid_argument( "--d exceeds --n" );
          rank_prob_table( cfg, { est[d - 1] }, d ).write( *s, g.table_format() );
        }
        else
          rank_prob_table( cfg, est ).write( *s, g.table_format() );
      }
      else if ( kind == "length" )
        sample_table( run_length_experiment( cfg ) ).write( *s, g.table_format() );
      else if ( kind == "concentration" )
      {
        cfg.budgets.exact_rank = false;
        concentration_table( cfg, run_length_experiment( cfg ) ).write( *s, g.table_format() );
      }
      else
      {
        if ( !experiment->count( "--w" ) )
        {
          err << "usage error: layer experiment needs --w\n";
          return exit_usage;
        }
        sample_table( { run_layer_experiment( cfg.n, w, cfg.budgets ) } ).write( *s, g.table_format() );
      }
      return exit_ok;
    }

    if ( verify->parsed() )
    {
      auto m = parse_zero_matrix( read_file( input ) );
      auto dnf = parse_pla( read_file( second ) );
      if ( dnf.dim() != m.n() )
        throw ParseError( 0, "PLA has " + std::to_string( dnf.dim() ) + " inputs, function has " + std::to_string( m.n() ) );
      auto v = verify_dnf( m, dnf );
      switch ( v.kind )
      {
      case VerifyResult::Kind::valid:
        out << "valid\n";
        return exit_ok;
      case VerifyResult::Kind::missed_one:
        out << "invalid: one-point " << v.missed->str() << " is not covered\n";
        return exit_verification;
      case VerifyResult::Kind::covers_zero:
        out << "invalid: cube " << v.cube_index + 1 << " (" << dnf.cubes()[v.cube_index].str() << ") covers zero " << m.row( v.row_index ).str()
            << '\n';
        return exit_verification;
      }
    }
  }
  catch ( const CoverBudgetExceeded& e )
  {
    err << "budget exceeded: " << e.what() << '\n';
    return exit_budget;
  }
  catch ( const BudgetExceeded& e )
  {
    err << "budget exceeded: " << e.what() << '\n';
    return exit_budget;
  }
  catch ( const ParseError& e )
  {
    err << "input error: " << e.what() << '\n';
    return exit_input;
  }
  catch ( const InfeasibleError& e )
  {
    err << "input error: " << e.what() << '\n';
    return exit_input;
  }
  catch ( const std::invalid_argument& e )
  {
    err << "input error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_usage;
}

} // namespace nullcover
