/*!
  \file truth_table.hpp
  \brief Dynamic truth tables with little-endian variable encoding

  Bit `i` of a table over `m` variables holds the function value at the
  valuation whose variable `j` equals bit `j` of `i`.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "../errors.hpp"

namespace probedepth
{

namespace detail
{

/* bits where variable j (< 6) is 1 */
inline constexpr std::uint64_t var_mask_pos[] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

/* bits where variable j (< 6) is 0 */
inline constexpr std::uint64_t var_mask_neg[] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull };

inline constexpr std::uint64_t length_mask( unsigned num_vars )
{
  return num_vars >= 6 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << ( 1u << num_vars ) ) - 1u );
}

} // namespace detail

class truth_table
{
public:
  /// Hard limit on the number of variables a table may span.
  static constexpr unsigned max_vars = 30;

  truth_table() : truth_table( 0u ) {}

  explicit truth_table( unsigned num_vars ) : num_vars_( num_vars )
  {
    if ( num_vars > max_vars )
      throw capacity_exceeded( "truth table over " + std::to_string( num_vars ) + " variables" );
    words_.assign( num_vars <= 6 ? 1u : ( std::size_t{ 1 } << ( num_vars - 6 ) ), 0u );
  }

  static truth_table constant( unsigned num_vars, bool value )
  {
    truth_table t( num_vars );
    if ( value )
      t = ~t;
    return t;
  }

  /// Projection onto variable `j`.
  static truth_table nth_var( unsigned num_vars, unsigned j )
  {
    assert( j < num_vars );
    truth_table t( num_vars );
    if ( j < 6 )
    {
      for ( auto& w : t.words_ )
        w = detail::var_mask_pos[j];
    }
    else
    {
      std::size_t const block = std::size_t{ 1 } << ( j - 6 );
      for ( std::size_t i = 0; i < t.words_.size(); ++i )
        if ( i & block )
          t.words_[i] = ~std::uint64_t{ 0 };
    }
    t.mask_bits();
    return t;
  }

  unsigned num_vars() const noexcept { return num_vars_; }
  std::size_t num_bits() const noexcept { return std::size_t{ 1 } << num_vars_; }
  std::vector<std::uint64_t> const& words() const noexcept { return words_; }

  bool get( std::size_t i ) const { return ( words_[i >> 6] >> ( i & 63 ) ) & 1u; }

  void set( std::size_t i, bool value )
  {
    auto const bit = std::uint64_t{ 1 } << ( i & 63 );
    if ( value )
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }

  std::size_t count_ones() const
  {
    std::size_t c = 0;
    for ( auto w : words_ )
      c += static_cast<std::size_t>( std::popcount( w ) );
    return c;
  }

  /// The constant value, if the table is constant.
  std::optional<bool> constant_value() const
  {
    auto const full = detail::length_mask( num_vars_ );
    bool all_zero = true, all_one = true;
    for ( auto w : words_ )
    {
      all_zero = all_zero && w == 0u;
      all_one = all_one && w == full;
    }
    if ( all_zero )
      return false;
    if ( all_one )
      return true;
    return std::nullopt;
  }

  bool is_constant() const { return constant_value().has_value(); }

  /*! \brief Fixes variable `j` to `value` and drops it.

    The result spans `num_vars() - 1` variables; variables above `j` shift down.
  */
  truth_table cofactor( unsigned j, bool value ) const
  {
    assert( j < num_vars_ );
    truth_table out( num_vars_ - 1 );
    if ( num_vars_ <= 6 )
    {
      /* gather from one word */
      std::uint64_t const src = words_[0];
      std::size_t const out_bits = out.num_bits();
      std::uint64_t res = 0;
      for ( std::size_t o = 0; o < out_bits; ++o )
      {
        std::size_t const low = o & ( ( std::size_t{ 1 } << j ) - 1 );
        std::size_t const high = ( o >> j ) << ( j + 1 );
        std::size_t const in = high | low | ( std::size_t( value ) << j );
        res |= ( ( src >> in ) & 1u ) << o;
      }
      out.words_[0] = res;
    }
    else if ( j >= 6 )
    {
      /* whole-word blocks of 2^(j-6) words */
      std::size_t const block = std::size_t{ 1 } << ( j - 6 );
      std::size_t o = 0;
      for ( std::size_t base = 0; base < words_.size(); base += 2 * block )
        for ( std::size_t k = 0; k < block; ++k )
          out.words_[o++] = words_[base + ( value ? block : 0 ) + k];
    }
    else
    {
      /* each input word yields 32 output bits */
      unsigned const shift = 1u << j;
      for ( std::size_t wi = 0; wi < words_.size(); ++wi )
      {
        std::uint64_t w = value ? ( ( words_[wi] & detail::var_mask_pos[j] ) >> shift )
                                : ( words_[wi] & detail::var_mask_neg[j] );
        std::uint64_t res = 0;
        unsigned o = 0;
        for ( unsigned b = 0; b < 64; b += 2 * shift, o += shift )
          res |= ( ( w >> b ) & detail::length_mask( j ) ) << o;
        out.words_[wi >> 1] |= res << ( ( wi & 1u ) * 32u );
      }
    }
    return out;
  }

  /// True iff the function value changes with variable `j` somewhere.
  bool depends_on( unsigned j ) const
  {
    assert( j < num_vars_ );
    if ( j < 6 )
    {
      unsigned const shift = 1u << j;
      for ( auto w : words_ )
        if ( ( ( w >> shift ) & detail::var_mask_neg[j] ) != ( w & detail::var_mask_neg[j] ) )
          return true;
      return false;
    }
    std::size_t const block = std::size_t{ 1 } << ( j - 6 );
    for ( std::size_t base = 0; base < words_.size(); base += 2 * block )
      for ( std::size_t k = 0; k < block; ++k )
        if ( words_[base + k] != words_[base + block + k] )
          return true;
    return false;
  }

  /// Monotone (non-decreasing) in every variable.
  bool is_monotone() const
  {
    for ( unsigned j = 0; j < num_vars_; ++j )
    {
      if ( j < 6 )
      {
        unsigned const shift = 1u << j;
        for ( auto w : words_ )
          if ( ( w & detail::var_mask_neg[j] ) & ~( ( w >> shift ) & detail::var_mask_neg[j] ) )
            return false;
      }
      else
      {
        std::size_t const block = std::size_t{ 1 } << ( j - 6 );
        for ( std::size_t base = 0; base < words_.size(); base += 2 * block )
          for ( std::size_t k = 0; k < block; ++k )
            if ( words_[base + k] & ~words_[base + block + k] )
              return false;
      }
    }
    return true;
  }

  /*! \brief Largest minimal true point, as a popcount.

    For a monotone function these are exactly its prime implicants, so this is
    the largest prime-implicant size. Returns 0 if the function is never true
    or is true on the all-false point.
  */
  unsigned max_minimal_true_size() const
  {
    /* a true point is minimal if no single-bit removal keeps it true */
    std::vector<std::uint64_t> minimal = words_;
    for ( unsigned j = 0; j < num_vars_; ++j )
    {
      if ( j < 6 )
      {
        unsigned const shift = 1u << j;
        for ( std::size_t i = 0; i < words_.size(); ++i )
          minimal[i] &= ~( ( words_[i] & detail::var_mask_neg[j] ) << shift );
      }
      else
      {
        std::size_t const block = std::size_t{ 1 } << ( j - 6 );
        for ( std::size_t base = 0; base < words_.size(); base += 2 * block )
          for ( std::size_t k = 0; k < block; ++k )
            minimal[base + block + k] &= ~words_[base + k];
      }
    }
    unsigned best = 0;
    for ( std::size_t i = 0; i < minimal.size(); ++i )
    {
      auto w = minimal[i];
      while ( w )
      {
        auto const b = static_cast<unsigned>( std::countr_zero( w ) );
        w &= w - 1u;
        best = std::max( best, static_cast<unsigned>( std::popcount( ( i << 6 ) | b ) ) );
      }
    }
    return best;
  }

  /// The dual function x -> !f(!x).
  truth_table dual() const
  {
    truth_table out( num_vars_ );
    std::size_t const last = num_bits() - 1;
    for ( std::size_t i = 0; i < num_bits(); ++i )
      if ( !get( last - i ) )
        out.set( i, true );
    return out;
  }

  truth_table operator~() const
  {
    truth_table t = *this;
    for ( auto& w : t.words_ )
      w = ~w;
    t.mask_bits();
    return t;
  }

  truth_table& operator&=( truth_table const& o )
  {
    assert( o.num_vars_ == num_vars_ );
    for ( std::size_t i = 0; i < words_.size(); ++i )
      words_[i] &= o.words_[i];
    return *this;
  }

  truth_table& operator|=( truth_table const& o )
  {
    assert( o.num_vars_ == num_vars_ );
    for ( std::size_t i = 0; i < words_.size(); ++i )
      words_[i] |= o.words_[i];
    return *this;
  }

  friend truth_table operator&( truth_table a, truth_table const& b ) { return a &= b; }
  friend truth_table operator|( truth_table a, truth_table const& b ) { return a |= b; }

  friend bool operator==( truth_table const& a, truth_table const& b )
  {
    return a.num_vars_ == b.num_vars_ && a.words_ == b.words_;
  }

  /// Bits in index order, e.g. "0001" for x&y.
  std::string to_string() const
  {
    std::string s;
    s.reserve( num_bits() );
    for ( std::size_t i = 0; i < num_bits(); ++i )
      s.push_back( get( i ) ? '1' : '0' );
    return s;
  }

private:
  void mask_bits() { words_[0] &= detail::length_mask( num_vars_ ) | ( num_vars_ >= 6 ? ~0ull : 0ull ); }

  unsigned num_vars_;
  std::vector<std::uint64_t> words_;
};

} // namespace probedepth
