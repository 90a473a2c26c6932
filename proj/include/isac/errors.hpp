/**
 * errors.hpp — exception hierarchy shared by all isac modules.
 *
 * Every precondition violation throws a typed exception derived from
 * isac::Error (itself a std::runtime_error), so callers can distinguish
 * domain errors (CLI exit code 1) from I/O failures (exit code 2) without
 * string matching.
 */

#ifndef ISAC_ERRORS_HPP
#define ISAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isac {

/** Base class for all library errors. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** A variable name was not found in the pmf it was used against. */
class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable: " + name) {}
};

/** Target/given (or left/right) variable sets overlap where they must not. */
class OverlappingSets : public Error {
public:
    explicit OverlappingSets(const std::string& name)
        : Error("variable appears on both sides: " + name) {}
};

/** Channel, law, or estimator dimensions disagree. */
class AlphabetMismatch : public Error {
public:
    explicit AlphabetMismatch(const std::string& what) : Error(what) {}
};

/** Numeric argument outside its documented domain (e.g. probability not in [0,1]). */
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/** A spec file failed to parse or validate; message names the offending field/row. */
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/** Numerical breakdown inside the LP solver (distinct from plain infeasibility). */
class SolverFailure : public Error {
public:
    explicit SolverFailure(const std::string& what) : Error(what) {}
};

/** A region sweep configuration produced no input laws at all. */
class EmptySweep : public Error {
public:
    explicit EmptySweep(const std::string& what) : Error(what) {}
};

/** Auxiliary alphabet larger than the cardinality bound allows. */
class CardinalityExceeded : public Error {
public:
    explicit CardinalityExceeded(const std::string& what) : Error(what) {}
};

/** Filesystem/output failure (atomic write, missing file, ...). */
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace isac

#endif // ISAC_ERRORS_HPP
