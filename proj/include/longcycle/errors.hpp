#pragma once

#include <stdexcept>
#include <string>

namespace longcycle {

/// Base class of every error raised by the pipeline stages.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stage removed every vertex it was handed.
class EmptyResult : public Error {
public:
    using Error::Error;
};

/// Parameters violate a stage precondition (e.g. 2 * anchor_len > path_size).
class BadParameters : public Error {
public:
    using Error::Error;
};

/// A matching does not induce a permutation of the covered vertex set.
class BrokenPermutation : public Error {
public:
    using Error::Error;
};

/// No arc of the auxiliary digraph closes the DFS path into a cycle.
class NoClosingArc : public Error {
public:
    using Error::Error;
};

/// A witness arc does not land in the suffix/prefix anchors it claims.
class InconsistentWitness : public Error {
public:
    using Error::Error;
};

/// Witness-tree construction self-intersected (graph has a short cycle).
class GirthViolation : public Error {
public:
    using Error::Error;
};

/// Malformed text input (graph dump, certificate, config file).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace longcycle
