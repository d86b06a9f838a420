#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace blognet {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    explicit ParseError(const std::string& msg) : Error(msg), line_(0) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Deterministic RNG used everywhere randomness is needed.
/// Output depends only on the seed, not on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as an argument to log().
    double uniform01_open_low() { return 1.0 - uniform01(); }

    /// Uniform integer in [0, n).
    std::size_t uniform_index(std::size_t n) {
        // rejection-free modulo is fine here: n is tiny relative to 2^64
        return static_cast<std::size_t>(eng_() % n);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Format a double with enough digits to round-trip through text for all
/// practical purposes; output is byte-stable for identical inputs.
std::string fmt_num(double x);

/// Format with fixed significant digits (for compact TSV columns).
std::string fmt_num(double x, int sig_digits);

}  // namespace blognet
