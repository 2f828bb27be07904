#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace monop {

// Invalid operator specification (exponent range, undeclared tail, bad config).
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Expression syntax error; `position` is a byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Evaluation hit a pole (vanishing denominator). Signalled distinctly from
// overflow, which propagates as an IEEE infinity instead.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(std::complex<double> at)
        : std::runtime_error("pole at point (" + std::to_string(at.real()) + ", " +
                             std::to_string(at.imag()) + "i)"),
          at_(at) {}
    std::complex<double> at() const noexcept { return at_; }

private:
    std::complex<double> at_;
};

// A sampled point left the closed right half-plane where a self-map was required.
class NotSelfMapError : public std::runtime_error {
public:
    explicit NotSelfMapError(std::complex<double> witness)
        : std::runtime_error("symbol is not a self-map of the right half-plane; witness (" +
                             std::to_string(witness.real()) + ", " +
                             std::to_string(witness.imag()) + "i)"),
          witness_(witness) {}
    std::complex<double> witness() const noexcept { return witness_; }

private:
    std::complex<double> witness_;
};

}  // namespace monop
