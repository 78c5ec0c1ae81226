#ifndef MPSIG_IO_HPP
#define MPSIG_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "mpsig/kim_proxy.hpp"
#include "mpsig/multiproxy.hpp"

namespace mpsig {

// Labeled-hex-line formats. One `key=value` pair per line, '\n' terminated;
// big integers as lowercase hex without leading zeros, octet strings as
// lowercase hex (possibly empty). Malformed input throws ParseError.

std::string hex_of(const Bignum& v);
Bignum bignum_of_hex(const std::string& s);
std::string hex_of(const Bytes& b);
Bytes bytes_of_hex(const std::string& s);

void write_params(std::ostream& os, const GroupParams& params);
ParamsPtr read_params(std::istream& is); // rejects invalid groups

void write_keypair(std::ostream& os, const KeyPair& key);
KeyPair read_keypair(std::istream& is, const ParamsPtr& params);
/// Reads just the `y=` line; accepts both keypair and public-only files.
GroupElement read_public_key(std::istream& is, const ParamsPtr& params);
void write_public_key(std::ostream& os, const GroupElement& y);

void write_warrant(std::ostream& os, const Warrant& w);
Warrant read_warrant(std::istream& is);

void write_record(std::ostream& os, const MultiDelegationRecord& record);
MultiDelegationRecord read_record(std::istream& is, const ParamsPtr& params);

void write_share(std::ostream& os, const DelegationShare& share);
DelegationShare read_share(std::istream& is, const ParamsPtr& params);

void write_signing_key(std::ostream& os, const ProxySigningKey& key);
ProxySigningKey read_signing_key(std::istream& is, const ParamsPtr& params);

void write_kim_delegation(std::ostream& os, const KimDelegation& d);
KimDelegation read_kim_delegation(std::istream& is, const ParamsPtr& params);

/// Signature container; the `scheme=` header selects the variant.
using StoredSignature = std::variant<SchnorrSignature, KimProxySignature, MultiProxySignature>;

void write_signature(std::ostream& os, const StoredSignature& sig);
StoredSignature read_signature(std::istream& is, const ParamsPtr& params);

}  // namespace mpsig

#endif
