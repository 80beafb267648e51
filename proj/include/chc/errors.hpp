#pragma once

#include <stdexcept>
#include <string>

namespace chc {

// Errors caused by bad user input (malformed files, invalid complexes,
// programmes that violate preconditions).  The CLI maps these to exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariants: theorems this code relies on failed to hold on
// concrete data, or bookkeeping went inconsistent.  CLI exit code 2.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct NameClash : ValidationError {
    explicit NameClash(const std::string& what) : ValidationError(what) {}
};

struct UnknownCurve : ValidationError {
    explicit UnknownCurve(const std::string& what) : ValidationError(what) {}
};

struct UnknownGenerator : ValidationError {
    explicit UnknownGenerator(const std::string& what) : ValidationError(what) {}
};

struct OrderViolation : ValidationError {
    explicit OrderViolation(const std::string& what) : ValidationError(what) {}
};

struct Lemma62Violation : ValidationError {
    explicit Lemma62Violation(const std::string& what) : ValidationError(what) {}
};

struct BadEuler : ValidationError {
    explicit BadEuler(const std::string& what) : ValidationError(what) {}
};

struct BadWitness : ValidationError {
    explicit BadWitness(const std::string& what) : ValidationError(what) {}
};

struct NoCurve : ValidationError {
    explicit NoCurve(const std::string& what) : ValidationError(what) {}
};

struct AmbiguousTangency : ValidationError {
    explicit AmbiguousTangency(const std::string& what) : ValidationError(what) {}
};

struct NotClosed : ValidationError {
    explicit NotClosed(const std::string& what) : ValidationError(what) {}
};

inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace chc
