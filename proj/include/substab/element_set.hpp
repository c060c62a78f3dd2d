#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace substab {

/// Dense index of a ground-set element, 0 <= id < ground size.
using ElementId = int;

/// Subset of a ground set of at most 64 elements, stored as a bitmask.
class ElementSet {
 public:
  using Bits = std::uint64_t;
  static constexpr int kMaxElements = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ElementId;
    using difference_type = std::ptrdiff_t;
    using pointer = const ElementId*;
    using reference = ElementId;

    constexpr iterator() = default;
    constexpr explicit iterator(Bits rest) : rest_(rest) {}

    constexpr ElementId operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    Bits rest_ = 0;
  };

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(Bits bits) : bits_(bits) {}

  static ElementSet of(std::initializer_list<ElementId> ids);
  static ElementSet from_ids(std::span<const ElementId> ids);
  static constexpr ElementSet full(int n) {
    return ElementSet(n >= kMaxElements ? ~Bits{0} : (Bits{1} << n) - 1);
  }
  static constexpr ElementSet singleton(ElementId e) {
    return ElementSet(Bits{1} << e);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool contains(ElementId e) const { return (bits_ >> e) & 1U; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr ElementSet with(ElementId e) const {
    return ElementSet(bits_ | (Bits{1} << e));
  }
  constexpr ElementSet without(ElementId e) const {
    return ElementSet(bits_ & ~(Bits{1} << e));
  }
  constexpr bool subset_of(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(ElementSet other) const {
    return (bits_ & other.bits_) != 0;
  }

  /// Lowest id in the set; the set must be nonempty.
  constexpr ElementId first() const { return std::countr_zero(bits_); }

  constexpr ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  constexpr ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr ElementSet operator-(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }

  constexpr auto operator<=>(const ElementSet&) const = default;

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<ElementId> ids() const;
  /// "{0,2,5}"
  std::string to_string() const;

 private:
  Bits bits_ = 0;
};

/// Calls fn(sub) for every subset of `mask`, in increasing bitmask order.
template <typename Fn>
void for_each_subset(ElementSet mask, Fn&& fn) {
  const ElementSet::Bits m = mask.bits();
  ElementSet::Bits sub = 0;
  do {
    fn(ElementSet(sub));
    sub = (sub - m) & m;
  } while (sub != 0);
}

/// Index of `s` restricted to `block`, with the block's elements renumbered
/// 0..|block|-1 in increasing id order.
ElementSet::Bits compress(ElementSet s, ElementSet block);
/// Inverse of compress: maps local bits back to the block's ids.
ElementSet expand(ElementSet::Bits local, ElementSet block);

}  // namespace substab
