#include "mpsig/kim_proxy.hpp"

namespace mpsig {

namespace {

Scalar delegation_challenge(const Warrant& w, const GroupElement& r, OpCounter& counter,
                            const ChallengeTable* injected) {
    return hash_to_scalar(DomainTag::Delegation, {encode_warrant(w), r.value()},
                          r.params(), counter, injected);
}

// Binds (m_w, r) alongside (m, T) so a signature cannot be replayed under a
// different delegation.
Scalar kim_challenge(const Bytes& m, const Warrant& w, const GroupElement& r,
                     const GroupElement& T, OpCounter& counter, const ChallengeTable* injected) {
    return hash_to_scalar(DomainTag::KimSign, {m, encode_warrant(w), r.value(), T.value()},
                          r.params(), counter, injected);
}

}  // namespace

KimDelegation kim_delegate(const Scalar& x, const Warrant& warrant, RandomSource& rng,
                           OpCounter& counter, const ChallengeTable* injected) {
    validate_warrant(warrant);
    const ParamsPtr& params = x.params();
    Scalar k = random_scalar(rng, params);
    GroupElement r = mod_exp(GroupElement(params->g, params), k, counter);
    Scalar e = delegation_challenge(warrant, r, counter, injected);
    Scalar s = x * e + k;
    return KimDelegation{warrant, s, r};
}

bool kim_verify_delegation(const KimDelegation& d, const GroupElement& y,
                           OpCounter& counter, const ChallengeTable* injected) {
    const ParamsPtr& params = y.params();
    if (!same_group(*d.r.params(), *params)) return false;
    if (!in_subgroup(d.r)) return false;
    Scalar e = delegation_challenge(d.warrant, d.r, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), d.s, counter);
    GroupElement rhs = mod_mul(mod_exp(y, e, counter), d.r, counter);
    return lhs == rhs;
}

KimProxySignature kim_proxy_sign(const Bytes& m, const KimDelegation& d,
                                 const GroupElement& y, RandomSource& rng,
                                 OpCounter& counter, std::uint64_t now,
                                 const ChallengeTable* injected) {
    if (!kim_verify_delegation(d, y, counter, injected))
        throw InvalidDelegationError("delegation fails g^s = y^e * r");
    if (!check_conformance(m, d.warrant, now))
        throw ConformanceError("message does not conform to the warrant");
    const ParamsPtr& params = y.params();
    Scalar t = random_scalar(rng, params);
    GroupElement T = mod_exp(GroupElement(params->g, params), t, counter);
    Scalar c = kim_challenge(m, d.warrant, d.r, T, counter, injected);
    Scalar s = t + c * d.s;
    return KimProxySignature{d.warrant, d.r, SchnorrSignature{T, s}};
}

bool kim_proxy_verify(const Bytes& m, const KimProxySignature& sig, const GroupElement& y,
                      OpCounter& counter, std::uint64_t now, const ChallengeTable* injected) {
    const ParamsPtr& params = y.params();
    if (!same_group(*sig.r.params(), *params) || !same_group(*sig.inner.T.params(), *params))
        return false;
    if (!check_conformance(m, sig.warrant, now)) return false;
    if (!in_subgroup(sig.r) || !in_subgroup(sig.inner.T)) return false;
    Scalar e = delegation_challenge(sig.warrant, sig.r, counter, injected);
    // y' = y^e * r acts as the proxy public key.
    GroupElement y_proxy = mod_mul(mod_exp(y, e, counter), sig.r, counter);
    Scalar c = kim_challenge(m, sig.warrant, sig.r, sig.inner.T, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), sig.inner.s, counter);
    GroupElement rhs = mod_mul(sig.inner.T, mod_exp(y_proxy, c, counter), counter);
    return lhs == rhs;
}

}  // namespace mpsig
