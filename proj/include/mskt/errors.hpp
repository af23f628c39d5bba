#pragma once

#include <stdexcept>
#include <string>

namespace mskt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (bad edges, shape mismatch, parse errors).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// No spanning k-tree of the host graph retains the backbone.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// A brute-force or dense routine was asked to run beyond its size guard.
class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

/// A k-tree being scored does not contain every backbone edge.
class NotRetaining : public Error {
public:
    using Error::Error;
};

/// Components of a child separator do not exactly tile the region handed down by its parent.
class InconsistentPartition : public Error {
public:
    using Error::Error;
};

} // namespace mskt
