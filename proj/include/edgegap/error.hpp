#pragma once

#include <stdexcept>
#include <string>

namespace edgegap {

// Base of every error raised by the library. Subclasses map onto the CLI exit
// codes (see tools/edgegap_cli.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad argument, wrong parity, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class SingularFactorization : public Error {
public:
    using Error::Error;
};

class NegativeDeterminant : public Error {
public:
    using Error::Error;
};

class DivisionUnderflow : public Error {
public:
    using Error::Error;
};

class SizeLimit : public Error {
public:
    using Error::Error;
};

} // namespace edgegap
