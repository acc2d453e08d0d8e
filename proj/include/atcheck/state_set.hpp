#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

namespace atc {

using StateIndex = std::uint32_t;

/// Fixed-universe bitset of state indices. All binary operations require
/// both operands to share the same universe size.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  StateSet(std::size_t universe, std::initializer_list<StateIndex> members) : StateSet(universe) {
    for (auto s : members) insert(s);
  }

  static StateSet full(std::size_t universe) {
    StateSet set(universe);
    for (auto& w : set.words_) w = ~std::uint64_t{0};
    set.trim();
    return set;
  }

  std::size_t universe() const { return universe_; }

  void insert(StateIndex s) {
    check(s);
    words_[s / 64] |= std::uint64_t{1} << (s % 64);
  }
  void erase(StateIndex s) {
    check(s);
    words_[s / 64] &= ~(std::uint64_t{1} << (s % 64));
  }
  bool contains(StateIndex s) const {
    return s < universe_ && ((words_[s / 64] >> (s % 64)) & 1U) != 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  std::optional<StateIndex> first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return static_cast<StateIndex>(i * 64 + std::countr_zero(words_[i]));
    return std::nullopt;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w != 0) {
        auto bit = std::countr_zero(w);
        f(static_cast<StateIndex>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<StateIndex> members() const {
    std::vector<StateIndex> out;
    for_each([&](StateIndex s) { out.push_back(s); });
    return out;
  }

  bool is_subset_of(const StateSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const StateSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  StateSet complement() const {
    StateSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.trim();
    return out;
  }

  StateSet& operator&=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  void check(StateIndex s) const {
    if (s >= universe_) throw std::out_of_range("state index outside set universe");
  }
  void same_universe(const StateSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("state sets over different universes");
  }
  void trim() {
    if (universe_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace atc
