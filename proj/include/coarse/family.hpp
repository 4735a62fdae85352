#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/subset.hpp"

namespace coarse {

/// Labeled family of subsets of one finite space. Members may be empty and
/// the family need not cover the space.
class IndexedFamily {
public:
    IndexedFamily() = default;
    explicit IndexedFamily(std::size_t universe) : universe_(universe) {}

    void add(std::string label, Subset set) {
        if (set.universe() != universe_)
            throw ValidationError("member '" + label + "' lives on " + std::to_string(set.universe()) +
                                  " points, family on " + std::to_string(universe_));
        if (find(label)) throw ValidationError("duplicate label '" + label + "'");
        labels_.push_back(std::move(label));
        sets_.push_back(std::move(set));
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

    const std::string& label(std::size_t s) const { return labels_.at(s); }
    const Subset& set(std::size_t s) const { return sets_.at(s); }
    Subset& set(std::size_t s) { return sets_.at(s); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Subset>& sets() const noexcept { return sets_; }

    std::optional<std::size_t> find(const std::string& label) const {
        for (std::size_t s = 0; s < labels_.size(); ++s)
            if (labels_[s] == label) return s;
        return std::nullopt;
    }

    const Subset& operator[](const std::string& label) const {
        auto s = find(label);
        if (!s) throw ValidationError("no member labeled '" + label + "'");
        return sets_[*s];
    }

    Subset union_all() const {
        Subset u(universe_);
        for (const auto& s : sets_) u |= s;
        return u;
    }

    bool covers(const Subset& A) const { return A.is_subset_of(union_all()); }
    bool covers() const { return union_all().full(); }

    /// Labels whose member contains x, in label order.
    std::vector<std::size_t> labels_at(Index x) const {
        std::vector<std::size_t> out;
        for (std::size_t s = 0; s < sets_.size(); ++s)
            if (sets_[s].contains(x)) out.push_back(s);
        return out;
    }

    /// Memberwise intersection with A (labels kept).
    IndexedFamily restricted_to(const Subset& A) const {
        IndexedFamily out(universe_);
        for (std::size_t s = 0; s < sets_.size(); ++s) out.add(labels_[s], sets_[s] & A);
        return out;
    }

    IndexedFamily without_empty() const {
        IndexedFamily out(universe_);
        for (std::size_t s = 0; s < sets_.size(); ++s)
            if (!sets_[s].empty()) out.add(labels_[s], sets_[s]);
        return out;
    }

    friend bool operator==(const IndexedFamily& a, const IndexedFamily& b) {
        return a.universe_ == b.universe_ && a.labels_ == b.labels_ && a.sets_ == b.sets_;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::string> labels_;
    std::vector<Subset> sets_;
};

}  // namespace coarse
