#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

/// Shortest round-trip text for a double, "inf"/"-inf"/"nan" otherwise.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
    std::vector<std::size_t> witness;
};

/// A list of claims, each re-verified against the output it describes.
struct Certificate {
    std::string kind;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    Certificate() = default;
    explicit Certificate(std::string k) : kind(std::move(k)) {}

    Check& add(std::string name, bool passed, std::string detail = {}, std::vector<std::size_t> witness = {}) {
        checks.push_back({std::move(name), passed, std::move(detail), std::move(witness)});
        return checks.back();
    }

    void note(std::string n) { notes.push_back(std::move(n)); }

    bool passed() const noexcept {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::optional<Check> first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return c;
        return std::nullopt;
    }
};

}  // namespace coarse
