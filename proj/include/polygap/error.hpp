// Exception hierarchy shared by all polygap components.
#ifndef POLYGAP_ERROR_HPP
#define POLYGAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polygap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid numeric input (violated precondition).
class DomainError : public Error {
public:
    using Error::Error;
};

// Input is valid but outside the regime where a formula or method is
// meaningful (asymptotic guards, thin-domain FEM refusal).
class RegimeError : public Error {
public:
    using Error::Error;
};

// An iterative solve failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Invalid polygon or sandwich construction.
class GeometryError : public Error {
public:
    using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace polygap

#endif
