#pragma once

#include <stdexcept>
#include <string>

namespace orba {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A vector is tagged with the wrong carrier space or has the wrong dimension.
class CarrierError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not supported for this cone/norm variant.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// An order-theoretic precondition is violated (not order preserving,
/// not directed, order bounds do not hold).
class OrderError : public Error {
public:
    using Error::Error;
};

/// The vector does not belong to the (sub)space a norm is defined on.
class NotInSpaceError : public Error {
public:
    using Error::Error;
};

/// No dominating cone element exists (space not directed at this vector).
class NoDominatorError : public Error {
public:
    using Error::Error;
};

/// Invalid argument value (nonpositive weight, zero sample count, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// The LP kernel failed (dimension cap, singular basis, iteration cap).
class SolverError : public Error {
public:
    using Error::Error;
};

/// The function is not integrable (unbounded l1 norm, missing tail bound).
class NotIntegrableError : public Error {
public:
    using Error::Error;
};

/// The dyadic slack schedule of the dominating construction cannot be met.
class ScheduleError : public Error {
public:
    using Error::Error;
};

/// No cover member can hold the presented function.
class UncoverableError : public Error {
public:
    using Error::Error;
};

/// The function is outside the principal ideal of the given unit.
class NotInIdealError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside the stored range of a group function.
class RangeError : public Error {
public:
    using Error::Error;
};

} // namespace orba
