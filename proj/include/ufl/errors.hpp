#ifndef UFL_ERRORS_HPP
#define UFL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ufl {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix/tensor shape does not match the declared factor dimensions.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input fails the Hermiticity pre-check of an eigenvalue routine.
class NotHermitianError : public Error {
public:
    explicit NotHermitianError(const std::string& what) : Error(what) {}
};

// The Jacobi sweep limit was exhausted or a reconstructed eigenpair
// failed its residual bound.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

// A physical parameter is outside its documented domain.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(what) {}
};

// Post-selection success probability vanished; the filtered state is undefined.
class FilteredToZeroError : public Error {
public:
    explicit FilteredToZeroError(const std::string& what) : Error(what) {}
};

// File I/O failure, annotated with the offending path.
class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(what + ": " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Syntax or semantic failure while parsing a pipeline expression.
// Carries the byte offset of the failure, the offending lexeme and,
// for syntax errors, the set of tokens that would have been accepted.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string lexeme, std::vector<std::string> expected,
               const std::string& message)
        : Error("parse error at byte " + std::to_string(offset) + ": " + message),
          offset_(offset), lexeme_(std::move(lexeme)), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::string& lexeme() const { return lexeme_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string lexeme_;
    std::vector<std::string> expected_;
};

// Failure while evaluating a pipeline, annotated with the source span
// of the stage that failed.
class EvalError : public Error {
public:
    EvalError(std::size_t span_begin, std::size_t span_end, const std::string& stage,
              const std::string& message)
        : Error("stage '" + stage + "' (bytes " + std::to_string(span_begin) + ".." +
                std::to_string(span_end) + "): " + message),
          span_begin_(span_begin), span_end_(span_end), stage_(stage) {}

    std::size_t span_begin() const { return span_begin_; }
    std::size_t span_end() const { return span_end_; }
    const std::string& stage() const { return stage_; }

private:
    std::size_t span_begin_;
    std::size_t span_end_;
    std::string stage_;
};

} // namespace ufl

#endif // UFL_ERRORS_HPP
