#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilq {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NotSkew : public Error {
public:
    using Error::Error;
};

class OddDimension : public Error {
public:
    using Error::Error;
};

/// Raised by the graded quotient when a V-vector of the proposed ideal
/// brackets with a basis vector of V outside the proposed W-part.
class NotAnIdeal : public Error {
public:
    NotAnIdeal(std::string what, long ideal_vector, long basis_index)
        : Error(std::move(what)), ideal_vector_(ideal_vector), basis_index_(basis_index) {}

    long ideal_vector() const noexcept { return ideal_vector_; }
    long basis_index() const noexcept { return basis_index_; }

private:
    long ideal_vector_;
    long basis_index_;
};

class NotAnIsomorphism : public Error {
public:
    using Error::Error;
};

class LayoutMismatch : public Error {
public:
    using Error::Error;
};

class BadPrime : public Error {
public:
    using Error::Error;
};

/// Operation-count cap hit during an exhaustive finite-field search.
/// `remainder()` counts the outer candidates that were never examined.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string what, std::uint64_t remainder)
        : Error(std::move(what)), remainder_(remainder) {}

    std::uint64_t remainder() const noexcept { return remainder_; }

private:
    std::uint64_t remainder_;
};

}  // namespace nilq
