#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace aniso {

// Base for every failure raised by the library. The CLI prints what() verbatim.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("SingularMatrix: determinant is zero") {}
};

// Raised when exact integer intermediates could exceed the 128-bit range.
class OverflowRisk : public Error {
public:
    explicit OverflowRisk(const std::string& what) : Error("OverflowRisk: " + what) {}
};

class NotAMember : public Error {
public:
    explicit NotAMember(const std::string& what) : Error("NotAMember: " + what) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& what)
        : Error("ConvergenceFailure: " + what) {}
};

class NotExpanding : public Error {
public:
    explicit NotExpanding(const std::string& what) : Error("NotExpanding: " + what) {}
};

class NotInSpace : public Error {
public:
    explicit NotInSpace(const std::string& what) : Error("NotInSpace: " + what) {}
};

class NonExistent : public Error {
public:
    explicit NonExistent(const std::string& what) : Error("NonExistent: " + what) {}
};

class TailTooLarge : public Error {
public:
    TailTooLarge(double achieved, double requested)
        : Error("TailTooLarge: achieved tail bound " + sci(achieved) + " exceeds requested " + sci(requested)),
          achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    static std::string sci(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }
    double achieved_;
};

class InsufficientSupport : public Error {
public:
    explicit InsufficientSupport(const std::string& what)
        : Error("InsufficientSupport: " + what) {}
};

class DivergentSeries : public Error {
public:
    explicit DivergentSeries(const std::string& what)
        : Error("DivergentSeries: " + what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

} // namespace aniso
