// Copyright 2026 The dissoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>

namespace dissoc {

/// Dense identifier of a query variable, an index into the query's symbol table.
using VarId = std::uint32_t;

inline constexpr std::size_t kMaxVariables = 64;
inline constexpr std::size_t kMaxAtoms = 64;

/// A set of small integers stored as a 64-bit mask.  `Tag` keeps variable sets and atom sets apart.
template<typename Tag>
class BitSet64
{
    std::uint64_t bits_ = 0;

    constexpr explicit BitSet64(std::uint64_t bits) : bits_(bits) { }

  public:
    class iterator
    {
        std::uint64_t rest_ = 0;

      public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = std::size_t;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) { }

        constexpr std::size_t operator*() const { return std::countr_zero(rest_); }
        constexpr iterator & operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) { auto old = *this; ++*this; return old; }
        constexpr bool operator==(const iterator&) const = default;
    };

    constexpr BitSet64() = default;

    static constexpr BitSet64 FromBits(std::uint64_t bits) { return BitSet64(bits); }
    static constexpr BitSet64 Singleton(std::size_t i) { return BitSet64(std::uint64_t(1) << i); }
    /// The set {0, ..., n-1}.
    static constexpr BitSet64 Prefix(std::size_t n) {
        return BitSet64(n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return std::popcount(bits_); }
    constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1; }
    constexpr std::size_t front() const { return std::countr_zero(bits_); }

    constexpr void insert(std::size_t i) { bits_ |= std::uint64_t(1) << i; }
    constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t(1) << i); }

    constexpr bool is_subset_of(BitSet64 other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool is_strict_subset_of(BitSet64 other) const { return is_subset_of(other) and bits_ != other.bits_; }
    constexpr bool intersects(BitSet64 other) const { return (bits_ & other.bits_) != 0; }

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    constexpr BitSet64 & operator|=(BitSet64 o) { bits_ |= o.bits_; return *this; }
    constexpr BitSet64 & operator&=(BitSet64 o) { bits_ &= o.bits_; return *this; }
    constexpr BitSet64 & operator-=(BitSet64 o) { bits_ &= ~o.bits_; return *this; }

    friend constexpr BitSet64 operator|(BitSet64 a, BitSet64 b) { return a |= b; }
    friend constexpr BitSet64 operator&(BitSet64 a, BitSet64 b) { return a &= b; }
    /// Set difference.
    friend constexpr BitSet64 operator-(BitSet64 a, BitSet64 b) { return a -= b; }

    friend constexpr bool operator==(BitSet64, BitSet64) = default;
    friend constexpr auto operator<=>(BitSet64 a, BitSet64 b) { return a.bits_ <=> b.bits_; }
};

struct VarTag;
struct AtomTag;

using VarSet = BitSet64<VarTag>;
using AtomSet = BitSet64<AtomTag>;

}
