#ifndef MPSIG_ERRORS_HPP
#define MPSIG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpsig {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands built against different group parameters.
struct MismatchedParamsError : Error {
    MismatchedParamsError() : Error("operands belong to different groups") {}
};

struct NonInvertibleError : Error {
    NonInvertibleError() : Error("element has no inverse mod p") {}
};

// A domain-type invariant does not hold (warrant shape, list lengths, ...).
struct InvariantError : Error {
    using Error::Error;
};

// Message rejected by the warrant (prefix or validity window).
struct ConformanceError : Error {
    using Error::Error;
};

// Delegation or delegation share failed its verification equation.
struct InvalidDelegationError : Error {
    using Error::Error;
};

// g^d != V after key derivation; signals an arithmetic fault upstream.
struct SelfCheckError : Error {
    using Error::Error;
};

struct MissingCommitmentError : Error {
    std::vector<std::size_t> missing;
    explicit MissingCommitmentError(std::vector<std::size_t> idx);
};

// Operation invoked in the wrong session phase.
struct PhaseError : Error {
    using Error::Error;
};

// Session aborted; `blame` lists the indices whose partials failed.
struct SessionAbortedError : Error {
    std::vector<std::size_t> blame;
    explicit SessionAbortedError(std::vector<std::size_t> idx);
};

struct ParseError : Error {
    using Error::Error;
};

// Prime search exceeded its retry budget.
struct SearchExhaustedError : Error {
    using Error::Error;
};

inline std::string join_indices(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s;
}

inline MissingCommitmentError::MissingCommitmentError(std::vector<std::size_t> idx)
    : Error("missing commitments from proxy index " + join_indices(idx)),
      missing(std::move(idx)) {}

inline SessionAbortedError::SessionAbortedError(std::vector<std::size_t> idx)
    : Error("session aborted, invalid partials from proxy index " + join_indices(idx)),
      blame(std::move(idx)) {}

}  // namespace mpsig

#endif
