#ifndef MPSIG_KIM_PROXY_HPP
#define MPSIG_KIM_PROXY_HPP

#include "mpsig/schnorr.hpp"
#include "mpsig/warrant.hpp"

namespace mpsig {

/// Single-proxy delegation: g^s = y^e * r mod p with e = h(DELEGATION, m_w, r).
struct KimDelegation {
    Warrant warrant;
    Scalar s;       // proxy secret key
    GroupElement r; // delegation commitment
};

struct KimProxySignature {
    Warrant warrant;
    GroupElement r;
    SchnorrSignature inner; // over m under the proxy key y' = y^e * r
};

/// k <- random; r = g^k; e = h(DELEGATION, m_w, r); s = x*e + k mod q.
KimDelegation kim_delegate(const Scalar& x, const Warrant& warrant, RandomSource& rng,
                           OpCounter& counter, const ChallengeTable* injected = nullptr);

bool kim_verify_delegation(const KimDelegation& d, const GroupElement& y,
                           OpCounter& counter, const ChallengeTable* injected = nullptr);

/// Requires a valid delegation and a warrant-conforming message. The signing
/// challenge binds (m, m_w, r, T) under the KIM_SIGN tag.
KimProxySignature kim_proxy_sign(const Bytes& m, const KimDelegation& d,
                                 const GroupElement& y, RandomSource& rng,
                                 OpCounter& counter, std::uint64_t now,
                                 const ChallengeTable* injected = nullptr);

/// Checks conformance, then the inner signature against y' = y^e * r.
bool kim_proxy_verify(const Bytes& m, const KimProxySignature& sig, const GroupElement& y,
                      OpCounter& counter, std::uint64_t now,
                      const ChallengeTable* injected = nullptr);

}  // namespace mpsig

#endif
