#ifndef MPSIG_SCHNORR_HPP
#define MPSIG_SCHNORR_HPP

#include "mpsig/encoding.hpp"

namespace mpsig {

struct KeyPair {
    Scalar x;       // secret
    GroupElement y; // g^x mod p
};

/// (T, s) form: T = g^t, s = t + c*x mod q with c = h(BASE_SIGN, m, T).
struct SchnorrSignature {
    GroupElement T;
    Scalar s;
};

KeyPair keygen(RandomSource& rng, const ParamsPtr& params);

SchnorrSignature sign(const Bytes& m, const KeyPair& key, RandomSource& rng,
                      OpCounter& counter, const ChallengeTable* injected = nullptr);

bool verify(const Bytes& m, const SchnorrSignature& sig, const GroupElement& y,
            OpCounter& counter, const ChallengeTable* injected = nullptr);

}  // namespace mpsig

#endif
