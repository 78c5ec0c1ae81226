#include "mpsig/schnorr.hpp"

namespace mpsig {

namespace {

Scalar base_challenge(const Bytes& m, const GroupElement& T, const ParamsPtr& params,
                      OpCounter& counter, const ChallengeTable* injected) {
    return hash_to_scalar(DomainTag::BaseSign, {m, T.value()}, params, counter, injected);
}

}  // namespace

KeyPair keygen(RandomSource& rng, const ParamsPtr& params) {
    Scalar x = random_scalar(rng, params);
    GroupElement g(params->g, params);
    return KeyPair{x, exp_raw(g, x)};
}

SchnorrSignature sign(const Bytes& m, const KeyPair& key, RandomSource& rng,
                      OpCounter& counter, const ChallengeTable* injected) {
    const ParamsPtr& params = key.x.params();
    Scalar t = random_scalar(rng, params);
    GroupElement T = mod_exp(GroupElement(params->g, params), t, counter);
    Scalar c = base_challenge(m, T, params, counter, injected);
    Scalar s = t + c * key.x;
    return SchnorrSignature{T, s};
}

bool verify(const Bytes& m, const SchnorrSignature& sig, const GroupElement& y,
            OpCounter& counter, const ChallengeTable* injected) {
    const ParamsPtr& params = y.params();
    if (!same_group(*sig.T.params(), *params)) return false;
    if (!in_subgroup(sig.T)) return false;
    Scalar c = base_challenge(m, sig.T, params, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), sig.s, counter);
    GroupElement rhs = mod_mul(sig.T, mod_exp(y, c, counter), counter);
    return lhs == rhs;
}

}  // namespace mpsig
