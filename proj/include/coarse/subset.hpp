#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "coarse/errors.hpp"

namespace coarse {

using Index = std::size_t;

/// Membership mask over the points {0, ..., universe-1} of a finite space.
class Subset {
public:
    Subset() = default;
    explicit Subset(std::size_t universe) : bits_(universe, 0) {}

    static Subset none(std::size_t universe) { return Subset(universe); }

    static Subset all(std::size_t universe) {
        Subset s(universe);
        std::fill(s.bits_.begin(), s.bits_.end(), std::uint8_t{1});
        return s;
    }

    static Subset of(std::size_t universe, std::span<const Index> members) {
        Subset s(universe);
        for (Index i : members) s.insert(i);
        return s;
    }

    static Subset of(std::size_t universe, std::initializer_list<Index> members) {
        return of(universe, std::span<const Index>(members.begin(), members.size()));
    }

    /// Points lo..hi inclusive.
    static Subset range(std::size_t universe, Index lo, Index hi) {
        Subset s(universe);
        for (Index i = lo; i <= hi && i < universe; ++i) s.bits_[i] = 1;
        return s;
    }

    std::size_t universe() const noexcept { return bits_.size(); }

    bool contains(Index i) const noexcept { return i < bits_.size() && bits_[i] != 0; }

    void insert(Index i) {
        if (i >= bits_.size())
            throw ValidationError("point " + std::to_string(i) + " outside universe of size " +
                                  std::to_string(bits_.size()));
        bits_[i] = 1;
    }

    void erase(Index i) {
        if (i < bits_.size()) bits_[i] = 0;
    }

    std::size_t count() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
    }

    bool empty() const noexcept { return count() == 0; }
    bool full() const noexcept { return count() == bits_.size(); }

    std::vector<Index> members() const {
        std::vector<Index> out;
        for (Index i = 0; i < bits_.size(); ++i)
            if (bits_[i]) out.push_back(i);
        return out;
    }

    Subset complement() const {
        Subset s(bits_.size());
        for (Index i = 0; i < bits_.size(); ++i) s.bits_[i] = bits_[i] ? 0 : 1;
        return s;
    }

    bool is_subset_of(const Subset& other) const noexcept {
        for (Index i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !other.contains(i)) return false;
        return true;
    }

    bool intersects(const Subset& other) const noexcept {
        for (Index i = 0; i < bits_.size(); ++i)
            if (bits_[i] && other.contains(i)) return true;
        return false;
    }

    Subset& operator|=(const Subset& o) {
        check_same(o);
        for (Index i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }
    Subset& operator&=(const Subset& o) {
        check_same(o);
        for (Index i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
        return *this;
    }
    Subset& operator-=(const Subset& o) {
        check_same(o);
        for (Index i = 0; i < bits_.size(); ++i)
            if (o.bits_[i]) bits_[i] = 0;
        return *this;
    }

    friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
    friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
    friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
    friend bool operator==(const Subset& a, const Subset& b) = default;

private:
    void check_same(const Subset& o) const {
        if (o.bits_.size() != bits_.size())
            throw ValidationError("subset universes differ: " + std::to_string(bits_.size()) +
                                  " vs " + std::to_string(o.bits_.size()));
    }

    std::vector<std::uint8_t> bits_;
};

}  // namespace coarse
