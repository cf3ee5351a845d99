#pragma once

#include <stdexcept>
#include <string>

namespace regusamp {

// Base of everything the library throws. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidOrder : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class OverflowDomain : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class WrongKind : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class EpsilonOutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// A closed-form bound whose hypotheses do not hold for the given configuration.
class ConditionViolated : public Error {
public:
    using Error::Error;
};

// The reconstruction needs samples outside the stored index range.
class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(long long need_lo, long long need_hi, long long have_lo, long long have_hi)
        : Error("samples " + std::to_string(need_lo) + ".." + std::to_string(need_hi) +
                " required, have " + std::to_string(have_lo) + ".." + std::to_string(have_hi)),
          required_lo(need_lo),
          required_hi(need_hi) {}

    long long required_lo;
    long long required_hi;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// A measured error exceeded a bound that claims to dominate it.
class BoundViolation : public Error {
public:
    using Error::Error;
};

} // namespace regusamp
