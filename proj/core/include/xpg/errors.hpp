#pragma once

#include <stdexcept>
#include <string>

namespace xpg {

// Error taxonomy mirrored by the CLI exit statuses: DomainError -> 1,
// ParseError -> 2, InvariantError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input documents (models, instances, decision lists).
class ParseError : public Error {
public:
    using Error::Error;
};

// Semantically invalid requests on well-formed data: bad seeds, instance/domain
// mismatches, tree-only operations on non-trees, exceeded brute-force caps.
class DomainError : public Error {
public:
    using Error::Error;
};

// A broken internal invariant; reaching this is a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace xpg
