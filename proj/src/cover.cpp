#include <nullcover/cover.hpp>
#include <nullcover/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nullcover
{

/* ------------------------------------------------------------ CoverInstance */

CoverInstance::CoverInstance( std::size_t universe_size, std::vector<CoverSet> sets ) : universe_size_( universe_size ), sets_( std::move( sets ) )
{
  std::vector<bool> hit( universe_size_, false );
  for ( std::size_t s = 0; s < sets_.size(); ++s )
  {
    auto& mem = sets_[s].members;
    std::sort( mem.begin(), mem.end() );
    mem.erase( std::unique( mem.begin(), mem.end() ), mem.end() );
    if ( !mem.empty() && mem.back() >= universe_size_ )
      throw std::invalid_argument( "cover set " + std::to_string( s ) + " has member " + std::to_string( mem.back() ) + " outside universe of size " + std::to_string( universe_size_ ) );
    if ( sgn( sets_[s].weight ) < 0 )
      throw std::invalid_argument( "cover set " + std::to_string( s ) + " has negative weight" );
    sets_[s].weight.canonicalize();
    if ( sets_[s].weight.get_den() != 1 )
      integral_ = false;
    nonzeros_ += mem.size();
    for ( auto e : mem )
      hit[e] = true;
  }
  feasible_ = std::all_of( hit.begin(), hit.end(), []( bool b ) { return b; } );
}

bool CoverInstance::is_cover( const std::vector<std::size_t>& chosen ) const
{
  std::vector<bool> hit( universe_size_, false );
  for ( auto s : chosen )
    for ( auto e : sets_.at( s ).members )
      hit[e] = true;
  return std::all_of( hit.begin(), hit.end(), []( bool b ) { return b; } );
}

Rational CoverInstance::weight_of( const std::vector<std::size_t>& chosen ) const
{
  Rational w( 0 );
  for ( auto s : chosen )
    w += sets_.at( s ).weight;
  return w;
}

CoverLpProblem CoverInstance::lp_problem() const
{
  CoverLpProblem p;
  p.elements = universe_size_;
  for ( auto const& s : sets_ )
  {
    p.sets.push_back( s.members );
    p.weights.push_back( s.weight );
  }
  return p;
}

/* ------------------------------------------------------------------- greedy */

CoverSolution greedy_cover( const CoverInstance& inst )
{
  if ( !inst.feasible() )
    throw InfeasibleError( "greedy_cover: the sets do not cover the universe" );
  auto const& sets = inst.sets();
  std::vector<std::vector<std::uint32_t>> owners( inst.universe_size() );
  std::vector<std::size_t> fresh( sets.size() );
  for ( std::size_t s = 0; s < sets.size(); ++s )
  {
    fresh[s] = sets[s].members.size();
    for ( auto e : sets[s].members )
      owners[e].push_back( static_cast<std::uint32_t>( s ) );
  }

  // ratio(a) > ratio(b)  <=>  fresh_a * w_b > fresh_b * w_a, zero weight = infinite ratio.
  auto better = [&]( std::size_t a, std::size_t b ) {
    auto const& wa = sets[a].weight;
    auto const& wb = sets[b].weight;
    bool za = sgn( wa ) == 0, zb = sgn( wb ) == 0;
    if ( za || zb )
      return za && !zb;
    if ( inst.integral_weights() && wa.get_num().fits_slong_p() && wb.get_num().fits_slong_p() )
    {
      auto lhs = static_cast<long double>( fresh[a] ) * wb.get_num().get_si();
      auto rhs = static_cast<long double>( fresh[b] ) * wa.get_num().get_si();
      return lhs > rhs;
    }
    return Rational( fresh[a] ) * wb > Rational( fresh[b] ) * wa;
  };

  CoverSolution sol;
  std::vector<bool> covered( inst.universe_size(), false );
  std::size_t remaining = inst.universe_size();
  while ( remaining > 0 )
  {
    std::size_t pick = sets.size();
    for ( std::size_t s = 0; s < sets.size(); ++s )
    {
      if ( fresh[s] == 0 )
        continue;
      if ( pick == sets.size() || better( s, pick ) )
        pick = s;
    }
    sol.chosen.push_back( pick );
    sol.objective += sets[pick].weight;
    for ( auto e : sets[pick].members )
    {
      if ( covered[e] )
        continue;
      covered[e] = true;
      --remaining;
      for ( auto o : owners[e] )
        --fresh[o];
    }
  }
  std::sort( sol.chosen.begin(), sol.chosen.end() );
  sol.optimal = false;
  sol.lower_bound = 0;
  return sol;
}

/* --------------------------------------------------------------- reductions */

namespace
{

/// Instance restricted to surviving elements and sets, in original index order.
struct Reduction
{
  std::vector<std::size_t> elements; ///< surviving original element ids
  std::vector<std::size_t> sets;     ///< surviving original set ids, ascending
  std::vector<std::size_t> forced;   ///< essential original set ids
  std::vector<BitVector> members;    ///< per surviving set, over surviving elements
};

/// Element and set dominance to a fixpoint, plus essential sets when
/// `with_essential`. Removed sets never belong to the lexicographically
/// smallest optimum; removed elements are covered by any cover of the rest.
Reduction reduce( const CoverInstance& inst, bool with_essential )
{
  auto const& sets = inst.sets();
  const std::size_t u = inst.universe_size();
  const std::size_t ns = sets.size();

  std::vector<bool> elem_alive( u, true ), set_alive( ns, false );
  for ( std::size_t s = 0; s < ns; ++s )
    set_alive[s] = !sets[s].members.empty();

  std::vector<std::vector<std::uint32_t>> owners( u );
  for ( std::size_t s = 0; s < ns; ++s )
    for ( auto e : sets[s].members )
      owners[e].push_back( static_cast<std::uint32_t>( s ) );

  Reduction red;
  // set s2 beats s1 (given s1 subset of s2) when cheaper, or equally cheap with smaller index
  auto beats = [&]( std::size_t s2, std::size_t s1 ) {
    int c = cmp( sets[s2].weight, sets[s1].weight );
    return c < 0 || ( c == 0 && s2 < s1 );
  };

  bool changed = true;
  while ( changed )
  {
    changed = false;

    if ( with_essential )
    {
      for ( std::size_t e = 0; e < u; ++e )
      {
        if ( !elem_alive[e] )
          continue;
        std::size_t only = ns, count = 0;
        for ( auto s : owners[e] )
          if ( set_alive[s] )
          {
            ++count;
            only = s;
          }
        if ( count == 0 )
          throw InfeasibleError( "set cover: element " + std::to_string( e ) + " is in no set" );
        if ( count == 1 )
        {
          red.forced.push_back( only );
          set_alive[only] = false;
          for ( auto x : sets[only].members )
            elem_alive[x] = false;
          changed = true;
        }
      }
    }

    // Element dominance: e is redundant if some kept f has owners(f) subset of owners(e).
    std::vector<std::size_t> order;
    for ( std::size_t e = 0; e < u; ++e )
      if ( elem_alive[e] )
        order.push_back( e );
    std::vector<std::size_t> degree( u, 0 );
    for ( auto e : order )
      for ( auto s : owners[e] )
        degree[e] += set_alive[s];
    std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b ) { return degree[a] < degree[b]; } );
    std::vector<BitVector> kept_cov;
    for ( auto e : order )
    {
      BitVector cov( ns );
      for ( auto s : owners[e] )
        if ( set_alive[s] )
          cov.set( s );
      bool dominated = false;
      for ( auto const& k : kept_cov )
        if ( k.is_subset_of( cov ) )
        {
          dominated = true;
          break;
        }
      if ( dominated )
      {
        elem_alive[e] = false;
        changed = true;
      }
      else
        kept_cov.push_back( std::move( cov ) );
    }

    // Set dominance over the surviving elements.
    std::vector<std::size_t> alive_elems;
    std::vector<std::size_t> elem_pos( u, 0 );
    for ( std::size_t e = 0; e < u; ++e )
      if ( elem_alive[e] )
      {
        elem_pos[e] = alive_elems.size();
        alive_elems.push_back( e );
      }
    std::vector<std::size_t> live_sets;
    std::vector<BitVector> bits( ns );
    for ( std::size_t s = 0; s < ns; ++s )
    {
      if ( !set_alive[s] )
        continue;
      BitVector b( alive_elems.size() );
      for ( auto e : sets[s].members )
        if ( elem_alive[e] )
          b.set( elem_pos[e] );
      if ( b.none() )
      {
        set_alive[s] = false;
        changed = true;
        continue;
      }
      bits[s] = std::move( b );
      live_sets.push_back( s );
    }
    std::vector<std::size_t> by_size = live_sets;
    std::vector<std::size_t> sz( ns, 0 );
    for ( auto s : live_sets )
      sz[s] = bits[s].count();
    std::stable_sort( by_size.begin(), by_size.end(), [&]( auto a, auto b ) { return sz[a] > sz[b]; } );
    for ( auto s1 : live_sets )
    {
      for ( auto s2 : by_size )
      {
        if ( sz[s2] < sz[s1] )
          break;
        if ( s2 == s1 || !set_alive[s2] )
          continue;
        if ( beats( s2, s1 ) && bits[s1].is_subset_of( bits[s2] ) )
        {
          set_alive[s1] = false;
          changed = true;
          break;
        }
      }
    }

    if ( !changed )
    {
      red.elements = alive_elems;
      for ( auto s : live_sets )
        if ( set_alive[s] )
        {
          red.sets.push_back( s );
          red.members.push_back( std::move( bits[s] ) );
        }
    }
  }
  std::sort( red.forced.begin(), red.forced.end() );
  return red;
}

CoverLpProblem lp_of( const CoverInstance& inst, const Reduction& red )
{
  CoverLpProblem p;
  p.elements = red.elements.size();
  for ( std::size_t i = 0; i < red.sets.size(); ++i )
  {
    std::vector<std::uint32_t> mem;
    for ( auto e : red.members[i].indices() )
      mem.push_back( static_cast<std::uint32_t>( e ) );
    p.sets.push_back( std::move( mem ) );
    p.weights.push_back( inst.sets()[red.sets[i]].weight );
  }
  return p;
}

constexpr std::size_t exact_lp_cell_cap = 4'000'000;

mpz_class ceil_of( const Rational& q )
{
  mpz_class r;
  mpz_cdiv_q( r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t() );
  return r;
}

} // namespace

LpBound lp_bound( const CoverInstance& inst, const CoverLimits& limits )
{
  if ( !inst.feasible() )
    throw InfeasibleError( "lp_lower_bound: the sets do not cover the universe" );
  LpBound out;
  out.element_duals.assign( inst.universe_size(), Rational( 0 ) );
  if ( inst.universe_size() == 0 )
  {
    out.value = 0;
    return out;
  }
  auto red = reduce( inst, false );
  auto p = lp_of( inst, red );
  std::size_t nz = 0;
  for ( auto const& s : p.sets )
    nz += s.size();
  std::size_t cells = p.elements * ( p.elements + p.sets.size() );

  if ( nz <= limits.exact_lp_nonzeros && cells <= exact_lp_cell_cap )
  {
    auto sol = solve_cover_lp_exact( p );
    out.value = sol.value;
    out.exact = true;
    for ( std::size_t i = 0; i < red.elements.size(); ++i )
      out.element_duals[red.elements[i]] = sol.element_duals[i];
    return out;
  }
  auto sol = solve_cover_lp_float( p );
  out.exact = false;
  // Recompute the certified duals in exact arithmetic.
  std::vector<Rational> u( p.elements );
  Rational bound = certified_dual_bound( p, sol.element_duals );
  Rational raw( 0 );
  for ( std::size_t e = 0; e < p.elements; ++e )
  {
    u[e] = sol.element_duals[e] > 0 ? Rational( sol.element_duals[e] ) : Rational( 0 );
    raw += u[e];
  }
  Rational scale = sgn( raw ) > 0 ? Rational( bound / raw ) : Rational( 0 );
  for ( std::size_t i = 0; i < red.elements.size(); ++i )
    out.element_duals[red.elements[i]] = u[i] * scale;
  out.value = bound;
  return out;
}

Rational lp_lower_bound( const CoverInstance& inst, const CoverLimits& limits )
{
  return lp_bound( inst, limits ).value;
}

/* ------------------------------------------------------- branch and bound */

namespace
{

class BranchAndBound
{
public:
  BranchAndBound( const CoverInstance& inst, const Reduction& red, const CoverLimits& limits, std::uint64_t& nodes,
                  std::chrono::steady_clock::time_point start )
      : limits_( limits ), nodes_( nodes ), start_( start )
  {
    u_ = red.elements.size();
    members_ = red.members;
    integral_ = inst.integral_weights();
    for ( auto s : red.sets )
      weights_.push_back( inst.sets()[s].weight.get_d() );
    owners_.assign( u_, {} );
    for ( std::size_t i = 0; i < members_.size(); ++i )
      for ( auto e : members_[i].indices() )
        owners_[e].push_back( static_cast<std::uint32_t>( i ) );
    last_owner_.assign( u_, 0 );
    for ( std::size_t e = 0; e < u_; ++e )
      last_owner_[e] = owners_[e].empty() ? 0 : owners_[e].back();
  }

  /// Optimum value below `upper`, if any; `best` receives the argmin.
  bool minimize( double upper, std::vector<std::size_t>& best )
  {
    best_value_ = upper;
    found_ = false;
    std::vector<bool> available( members_.size(), true );
    BitVector covered( u_ );
    current_.clear();
    search_value( covered, 0.0, available, {} );
    if ( found_ )
      best = best_choice_;
    return found_;
  }

  bool has_incumbent() const { return found_; }
  const std::vector<std::size_t>& incumbent() const { return best_choice_; }

  /// Lexicographically smallest selection with weight <= target.
  bool lexicographic( double target, std::vector<std::size_t>& out )
  {
    target_ = target;
    current_.clear();
    BitVector covered( u_ );
    if ( search_lex( 0, covered, 0.0, {} ) )
    {
      out = current_;
      return true;
    }
    return false;
  }

private:
  void tick()
  {
    ++nodes_;
    if ( nodes_ > limits_.max_nodes )
      throw BudgetExceeded( "set cover: node budget exhausted", nodes_ );
    if ( limits_.time_budget.count() > 0 && ( nodes_ & 255u ) == 0 &&
         std::chrono::steady_clock::now() - start_ > limits_.time_budget )
      throw BudgetExceeded( "set cover: time budget exhausted", nodes_ );
  }

  double round_bound( double lb ) const
  {
    return integral_ ? std::ceil( lb - 1e-6 ) : lb - 1e-7;
  }

  /// Lower bound on the weight needed to cover `uncovered` using sets where allowed(i).
  /// `inherited` are LP duals of an ancestor node; they stay feasible because
  /// the allowed sets only shrink. `duals` receives the duals to pass down.
  template <class Allowed>
  double bound( const BitVector& uncovered, Allowed allowed, double slack, const std::vector<double>& inherited, std::vector<double>& duals )
  {
    auto need = uncovered.count();
    if ( need == 0 )
      return 0.0;
    // Dual ascent from the inherited duals: raise each element, scarcest
    // first, by the least remaining room among its allowed sets.
    auto elems = uncovered.indices();
    duals.assign( u_, 0.0 );
    std::vector<double> load( members_.size(), 0.0 );
    std::vector<std::size_t> deg( u_, 0 );
    for ( auto e : elems )
    {
      double y = inherited.empty() ? 0.0 : inherited[e];
      for ( auto s : owners_[e] )
        if ( allowed( s ) )
        {
          ++deg[e];
          load[s] += y;
        }
      if ( deg[e] == 0 )
        return std::numeric_limits<double>::infinity();
      duals[e] = y;
    }
    std::stable_sort( elems.begin(), elems.end(), [&]( auto a, auto b ) { return deg[a] < deg[b]; } );
    double dual_sum = 0.0;
    for ( auto e : elems )
    {
      double room = std::numeric_limits<double>::infinity();
      for ( auto s : owners_[e] )
        if ( allowed( s ) )
          room = std::min( room, weights_[s] - load[s] );
      if ( room > 0 )
      {
        duals[e] += room;
        for ( auto s : owners_[e] )
          if ( allowed( s ) )
            load[s] += room;
      }
      dual_sum += duals[e];
    }
    double dual_lb = round_bound( dual_sum );
    if ( dual_lb > slack )
      return dual_lb;
    std::vector<std::size_t> usable;
    std::size_t max_gain = 0;
    double min_w = std::numeric_limits<double>::infinity();
    for ( std::size_t i = 0; i < members_.size(); ++i )
    {
      if ( !allowed( i ) )
        continue;
      auto g = ( members_[i] & uncovered ).count();
      if ( g == 0 )
        continue;
      usable.push_back( i );
      max_gain = std::max( max_gain, g );
      min_w = std::min( min_w, weights_[i] );
    }
    if ( usable.empty() )
      return std::numeric_limits<double>::infinity();
    double counting = std::ceil( double( need ) / double( max_gain ) ) * min_w;
    if ( counting > slack )
      return counting;

    // Elements pairwise sharing no usable set each need their own cheapest set.
    double disjoint = 0.0;
    {
      BitVector blocked( members_.size() );
      for ( auto e : uncovered.indices() )
      {
        bool clash = false;
        double cheapest = std::numeric_limits<double>::infinity();
        for ( auto s : owners_[e] )
        {
          if ( !allowed( s ) )
            continue;
          if ( blocked.test( s ) )
          {
            clash = true;
            break;
          }
          cheapest = std::min( cheapest, weights_[s] );
        }
        if ( clash )
          continue;
        if ( !std::isfinite( cheapest ) )
          return std::numeric_limits<double>::infinity();
        disjoint += cheapest;
        for ( auto s : owners_[e] )
          blocked.set( s );
      }
    }
    double lb = std::max( { counting, round_bound( disjoint + 1e-7 ), dual_lb } );
    if ( lb > slack )
      return lb;

    // LP over the uncovered elements that are not dominated: a row whose
    // owners include another row's owners is implied by it.
    auto idx = uncovered.indices();
    std::vector<BitVector> own( idx.size(), BitVector( usable.size() ) );
    std::vector<std::size_t> usable_pos( members_.size(), usable.size() );
    for ( std::size_t i = 0; i < usable.size(); ++i )
      usable_pos[usable[i]] = i;
    for ( std::size_t t = 0; t < idx.size(); ++t )
      for ( auto s : owners_[idx[t]] )
        if ( usable_pos[s] < usable.size() )
          own[t].set( usable_pos[s] );
    std::vector<std::size_t> order( idx.size() ), degree( idx.size() );
    for ( std::size_t t = 0; t < idx.size(); ++t )
    {
      order[t] = t;
      degree[t] = own[t].count();
    }
    std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b ) { return degree[a] < degree[b]; } );
    std::vector<std::size_t> kept;
    for ( auto t : order )
      if ( std::none_of( kept.begin(), kept.end(), [&]( auto q ) { return own[q].is_subset_of( own[t] ); } ) )
        kept.push_back( t );

    CoverLpProblem p;
    p.elements = kept.size();
    std::vector<std::vector<std::uint32_t>> cols( usable.size() );
    for ( std::size_t r = 0; r < kept.size(); ++r )
      for ( auto i : own[kept[r]].indices() )
        cols[i].push_back( static_cast<std::uint32_t>( r ) );
    for ( std::size_t i = 0; i < usable.size(); ++i )
      if ( !cols[i].empty() )
      {
        p.sets.push_back( std::move( cols[i] ) );
        p.weights.emplace_back( weights_[usable[i]] );
      }
    auto sol = solve_cover_lp_float( p );
    duals.assign( u_, 0.0 );
    for ( std::size_t r = 0; r < kept.size(); ++r )
      duals[idx[kept[r]]] = std::max( 0.0, sol.element_duals[r] );
    return std::max( lb, round_bound( sol.value ) );
  }

  void search_value( BitVector& covered, double cost, std::vector<bool>& available, const std::vector<double>& inherited )
  {
    tick();
    if ( covered.all() )
    {
      if ( cost < best_value_ - 1e-9 )
      {
        best_value_ = cost;
        best_choice_ = current_;
        found_ = true;
      }
      return;
    }
    auto uncovered = ~covered;
    double slack = best_value_ - cost - 1e-9;
    std::vector<double> duals;
    double lb = bound( uncovered, [&]( std::size_t i ) { return available[i]; }, slack, inherited, duals );
    if ( cost + lb >= best_value_ - 1e-9 )
      return;

    // Uncovered element with the fewest available owners.
    std::size_t pick = u_, pick_deg = std::numeric_limits<std::size_t>::max();
    for ( auto e : uncovered.indices() )
    {
      std::size_t d = 0;
      for ( auto s : owners_[e] )
        d += available[s];
      if ( d < pick_deg )
      {
        pick_deg = d;
        pick = e;
      }
    }
    if ( pick_deg == 0 )
      return;

    std::vector<std::pair<std::size_t, std::size_t>> branch; // (-gain, set)
    for ( auto s : owners_[pick] )
      if ( available[s] )
        branch.emplace_back( ( members_[s] & uncovered ).count(), s );
    std::stable_sort( branch.begin(), branch.end(), []( auto const& a, auto const& b ) { return a.first > b.first; } );

    std::vector<std::size_t> excluded;
    for ( auto [gain, s] : branch )
    {
      (void)gain;
      auto next = covered | members_[s];
      current_.push_back( s );
      available[s] = false;
      search_value( next, cost + weights_[s], available, duals );
      current_.pop_back();
      excluded.push_back( s );
    }
    for ( auto s : excluded )
      available[s] = true;
  }

  bool search_lex( std::size_t pos, const BitVector& covered, double cost, const std::vector<double>& inherited )
  {
    tick();
    if ( covered.all() )
      return true;
    if ( pos == members_.size() )
      return false;
    auto uncovered = ~covered;
    for ( auto e : uncovered.indices() )
      if ( owners_[e].empty() || last_owner_[e] < pos )
        return false;
    double slack = target_ - cost + 1e-9;
    std::vector<double> duals;
    double lb = bound( uncovered, [&]( std::size_t i ) { return i >= pos; }, slack, inherited, duals );
    if ( cost + lb > target_ + 1e-9 )
      return false;

    if ( members_[pos].intersects( uncovered ) && cost + weights_[pos] <= target_ + 1e-9 )
    {
      current_.push_back( pos );
      if ( search_lex( pos + 1, covered | members_[pos], cost + weights_[pos], duals ) )
        return true;
      current_.pop_back();
    }
    return search_lex( pos + 1, covered, cost, duals );
  }

  const CoverLimits& limits_;
  std::uint64_t& nodes_;
  std::chrono::steady_clock::time_point start_;
  std::size_t u_ = 0;
  bool integral_ = true;
  std::vector<BitVector> members_;
  std::vector<double> weights_;
  std::vector<std::vector<std::uint32_t>> owners_;
  std::vector<std::uint32_t> last_owner_;

  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_choice_;
  double best_value_ = 0.0;
  double target_ = 0.0;
  bool found_ = false;
};

} // namespace

CoverSolution exact_min_cover( const CoverInstance& inst, const CoverLimits& limits )
{
  if ( !inst.feasible() )
    throw InfeasibleError( "exact_min_cover: the sets do not cover the universe" );
  CoverSolution sol;
  if ( inst.universe_size() == 0 )
  {
    sol.optimal = true;
    return sol;
  }

  auto start = std::chrono::steady_clock::now();
  auto greedy = greedy_cover( inst );
  auto root_lp = lp_bound( inst, limits );

  auto finish = [&]( std::vector<std::size_t> chosen, bool optimal ) {
    std::sort( chosen.begin(), chosen.end() );
    CoverSolution s;
    s.chosen = std::move( chosen );
    s.objective = inst.weight_of( s.chosen );
    s.optimal = optimal;
    s.lower_bound = optimal ? s.objective : root_lp.value;
    return s;
  };

  auto red = reduce( inst, true );
  Rational forced_weight( 0 );
  for ( auto s : red.forced )
    forced_weight += inst.sets()[s].weight;

  auto lift = [&]( const std::vector<std::size_t>& reduced_choice ) {
    std::vector<std::size_t> out = red.forced;
    for ( auto i : reduced_choice )
      out.push_back( red.sets[i] );
    return out;
  };

  if ( red.elements.empty() )
    return finish( red.forced, true );

  std::uint64_t nodes = 0;
  BranchAndBound bb( inst, red, limits, nodes, start );

  // Phase 1: optimum value, seeded with the greedy objective. Skipped when
  // the root LP bound already certifies greedy.
  Rational root_floor = inst.integral_weights() ? Rational( ceil_of( root_lp.value ) ) : root_lp.value;
  std::vector<std::size_t> optimum_choice = greedy.chosen;
  if ( root_floor < greedy.objective )
  {
    double upper = Rational( greedy.objective - forced_weight ).get_d();
    std::vector<std::size_t> phase1;
    try
    {
      if ( bb.minimize( upper + 1e-9 * ( 1 + std::fabs( upper ) ), phase1 ) )
        optimum_choice = lift( phase1 );
    }
    catch ( const BudgetExceeded& e )
    {
      CoverSolution best = greedy;
      if ( bb.has_incumbent() )
      {
        auto c = lift( bb.incumbent() );
        if ( inst.weight_of( c ) < best.objective )
          best = finish( c, false );
      }
      best.optimal = false;
      best.lower_bound = root_lp.value;
      throw CoverBudgetExceeded( e.what(), best );
    }
  }
  Rational optimum = inst.weight_of( optimum_choice );

  // Phase 2: lexicographically smallest selection attaining the optimum.
  std::vector<std::size_t> lex;
  bool found = false;
  try
  {
    found = bb.lexicographic( Rational( optimum - forced_weight ).get_d(), lex );
  }
  catch ( const BudgetExceeded& )
  {
    found = false;
  }
  if ( found )
  {
    auto chosen = lift( lex );
    if ( inst.weight_of( chosen ) == optimum && inst.is_cover( chosen ) )
      return finish( chosen, true );
  }
  return finish( optimum_choice, true );
}

/* ---------------------------------------------------- prime cover instances */

std::vector<Point> one_points( const ZeroMatrix& m, std::uint64_t max_points )
{
  if ( m.n() >= 63 || m.one_count() > max_points )
    throw BudgetExceeded( "one-point set of a " + std::to_string( m.n() ) + "-variable function exceeds the universe cap", 0 );
  std::vector<Point> out;
  out.reserve( m.one_count() );
  auto sorted = m.canonical().rows();
  std::size_t z = 0;
  for ( std::uint64_t b = 0; b < ( std::uint64_t{ 1 } << m.n() ); ++b )
  {
    if ( z < sorted.size() && sorted[z].bits() == b )
    {
      ++z;
      continue;
    }
    out.emplace_back( m.n(), b );
  }
  return out;
}

CoverInstance build_cover_instance( const ZeroMatrix& m, const PrimeSet& primes, std::vector<Point> target, CoverObjective objective )
{
  std::sort( target.begin(), target.end() );
  target.erase( std::unique( target.begin(), target.end() ), target.end() );
  std::vector<CoverSet> sets;
  sets.reserve( primes.primes.size() );
  for ( auto const& k : primes.primes )
  {
    if ( k.dim() != m.n() )
      throw std::invalid_argument( "build_cover_instance: prime dimension mismatch" );
    CoverSet s;
    s.weight = objective == CoverObjective::length ? Rational( 1 ) : Rational( k.rank() );
    s.label = k.str();
    for ( std::size_t i = 0; i < target.size(); ++i )
      if ( ( target[i].bits() & k.care() ) == k.value() )
        s.members.push_back( static_cast<std::uint32_t>( i ) );
    sets.push_back( std::move( s ) );
  }
  CoverInstance inst( target.size(), std::move( sets ) );
  if ( !inst.feasible() )
  {
    std::vector<bool> hit( target.size(), false );
    for ( auto const& s : inst.sets() )
      for ( auto e : s.members )
        hit[e] = true;
    auto it = std::find( hit.begin(), hit.end(), false );
    throw InfeasibleError( "target point " + target[it - hit.begin()].str() + " is covered by no prime" );
  }
  return inst;
}

} // namespace nullcover
