#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockade {

// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidTruncation : public Error
{
public:
    using Error::Error;
};

class InvalidParameters : public Error
{
public:
    using Error::Error;
};

// A density matrix (or a state produced by a solver) broke one of the
// Hermiticity / trace / positivity bounds.
class InvariantViolation : public Error
{
public:
    using Error::Error;
};

// The Liouvillian has no unique fixed point (singular or ill-conditioned
// trace-constrained system).
class DegenerateSteadyState : public Error
{
public:
    using Error::Error;
};

// Time integration left the physical state space; the step is too large.
class StepSizeError : public Error
{
public:
    using Error::Error;
};

// g2 requested for a state whose mean occupation is numerically zero.
class UndefinedCorrelation : public Error
{
public:
    using Error::Error;
};

// Weak-drive amplitude system is singular at these parameters.
class DegenerateParameters : public Error
{
public:
    using Error::Error;
};

class InvalidRange : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          m_line(line)
    {
    }

    // 1-based line number; 0 for problems with the document as a whole.
    std::size_t line() const noexcept { return m_line; }

private:
    std::size_t m_line;
};

} // namespace blockade
