#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"

namespace coarse {

struct ProfileEntry {
    double t;
    double value;
    friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// Table t -> value with strictly increasing thresholds. Values may be +inf.
class ScaleProfile {
public:
    ScaleProfile() = default;
    explicit ScaleProfile(std::string name) : name_(std::move(name)) {}

    void push(double t, double value) {
        if (!entries_.empty() && !(t > entries_.back().t))
            throw ValidationError("profile thresholds must be strictly increasing");
        entries_.push_back({t, value});
    }

    const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const ProfileEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Value of the last entry with threshold <= t (step function), or
    /// nullopt-like NaN when t lies before the first threshold.
    double at(double t) const noexcept {
        double v = std::nan("");
        for (const auto& e : entries_) {
            if (e.t > t) break;
            v = e.value;
        }
        return v;
    }

    bool nondecreasing() const noexcept {
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].value < entries_[i - 1].value) return false;
        return true;
    }

    bool nonincreasing() const noexcept {
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].value > entries_[i - 1].value) return false;
        return true;
    }

    double max_finite() const noexcept {
        double m = 0.0;
        for (const auto& e : entries_)
            if (std::isfinite(e.value) && e.value > m) m = e.value;
        return m;
    }

    friend bool operator==(const ScaleProfile& a, const ScaleProfile& b) { return a.entries_ == b.entries_; }

private:
    std::string name_;
    std::vector<ProfileEntry> entries_;
};

}  // namespace coarse
