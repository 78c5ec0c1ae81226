#ifndef MPSIG_ENCODING_HPP
#define MPSIG_ENCODING_HPP

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "mpsig/group.hpp"

namespace mpsig {

/// Domain separator, one byte per hash use. Every hash evaluation carries
/// exactly one tag.
enum class DomainTag : std::uint8_t {
    Delegation = 0x01,
    MultiChallenge = 0x02,
    BaseSign = 0x03,
    KimSign = 0x04,
};

using Field = std::variant<Bignum, Bytes>;

/// Canonical injective encoding: each field as a 4-byte big-endian length
/// followed by the payload; integers as minimal big-endian bytes (0 encodes
/// to an empty payload). Integers must be non-negative.
Bytes encode_fields(const std::vector<Field>& fields);

Bytes sha256(const Bytes& data);

/// Test-only challenge injection: maps a domain tag to a stipulated value.
/// Never populated outside tests (the CLI offers no way to set one).
using ChallengeTable = std::map<DomainTag, Bignum>;

/// SHA-256(tag byte || encode_fields(fields)) read big-endian and reduced
/// mod q. Charges H once, also when the result is injected.
Scalar hash_to_scalar(DomainTag tag, const std::vector<Field>& fields,
                      const ParamsPtr& params, OpCounter& counter,
                      const ChallengeTable* injected = nullptr);

}  // namespace mpsig

#endif
