#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace coarse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad metric, bad family, violated precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A construction produced an output that fails its own re-verification.
class CertificateError : public Error {
public:
    using Error::Error;
};

/// Exact search requested on an input larger than the configured limit.
class SizeLimitError : public Error {
public:
    SizeLimitError(std::size_t size, std::size_t limit)
        : Error("exact search limited to " + std::to_string(limit) + " points, got " +
                std::to_string(size) + "; rerun in heuristic mode"),
          size_(size),
          limit_(limit) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

class TriangleViolation : public ValidationError {
public:
    TriangleViolation(std::size_t i, std::size_t j, std::size_t k, double dik, double dij, double djk)
        : ValidationError("triangle inequality violated for (" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) + "): d(" + std::to_string(i) +
                          "," + std::to_string(k) + ")=" + std::to_string(dik) + " > " +
                          std::to_string(dij) + "+" + std::to_string(djk)),
          triple_{i, j, k} {}

    /// (i, j, k) with d(i,k) > d(i,j) + d(j,k).
    const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

private:
    std::array<std::size_t, 3> triple_;
};

}  // namespace coarse
