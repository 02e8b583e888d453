#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace altiso {

/// Raised when an enumeration would exceed the configured combinatorial guard.
/// Enumerators never truncate silently.
class GuardExceeded : public std::runtime_error {
public:
    GuardExceeded(const std::string& what, long double needed, std::uint64_t limit)
        : std::runtime_error(what + ": needs ~" + std::to_string(static_cast<double>(needed)) +
                             " steps, guard is " + std::to_string(limit)),
          needed_(needed), limit_(limit) {}

    long double needed() const noexcept { return needed_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    long double needed_;
    std::uint64_t limit_;
};

/// A self-check on a produced witness failed. Indicates a bug, never bad input.
class VerificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file; carries a 1-based line/column when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        std::string s = "line " + std::to_string(line);
        if (column != 0) s += ", column " + std::to_string(column);
        return s + ": " + what;
    }
    std::size_t line_;
    std::size_t column_;
};

/// The single knob bounding every exponential enumeration.
struct Guard {
    std::uint64_t limit = 10'000'000;

    void require(long double needed, const std::string& what) const {
        if (needed > static_cast<long double>(limit)) throw GuardExceeded(what, needed, limit);
    }
};

/// Running counter against a Guard, for searches whose size is not known upfront.
class Budget {
public:
    Budget(const Guard& g, std::string what) : limit_(g.limit), what_(std::move(what)) {}

    void spend(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_) throw GuardExceeded(what_, static_cast<long double>(used_), limit_);
    }
    std::uint64_t used() const noexcept { return used_; }

private:
    std::uint64_t limit_;
    std::string what_;
    std::uint64_t used_ = 0;
};

}  // namespace altiso
