#ifndef MPSIG_GROUP_HPP
#define MPSIG_GROUP_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mpsig/errors.hpp"

namespace mpsig {

using Bignum = boost::multiprecision::cpp_int;
using Bytes = std::vector<std::uint8_t>;

/// Per-phase cost accumulator: modular exponentiations (E), multiplications
/// (M), inversions (I) and hash evaluations (H). Exponentiation counts as a
/// single E regardless of exponent size; multiplications inside the
/// exponentiation loop are not charged to M. Structural checks (subgroup
/// membership, record consistency) and public-input preprocessing stay off
/// the meter so counts depend only on the protocol shape, never on operand
/// values.
struct OpCounter {
    std::uint64_t E = 0;
    std::uint64_t M = 0;
    std::uint64_t I = 0;
    std::uint64_t H = 0;
};

/// Source of uniform random bytes. Implementations: OS entropy or a seeded
/// deterministic stream.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::uint8_t* out, std::size_t len) = 0;
};

class SystemRandom final : public RandomSource {
public:
    void fill(std::uint8_t* out, std::size_t len) override;
};

/// Deterministic byte stream: block i is SHA-256(seed || i as 8-byte
/// big-endian counter). Used for seeded, reproducible runs.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(Bytes seed);
    void fill(std::uint8_t* out, std::size_t len) override;

private:
    Bytes seed_;
    std::uint64_t block_ = 0;
    Bytes buf_;
    std::size_t pos_ = 0;
};

/// Schnorr group: q | p-1, g generates the order-q subgroup of Z_p*.
struct GroupParams {
    Bignum p;
    Bignum q;
    Bignum g;
    unsigned p_bits = 0;
    unsigned q_bits = 0;
};

using ParamsPtr = std::shared_ptr<const GroupParams>;

ParamsPtr make_group(const Bignum& p, const Bignum& q, const Bignum& g);

/// The p=23, q=11, g=2 group used throughout the tests. Not cryptographic.
ParamsPtr toy_group();

bool same_group(const GroupParams& a, const GroupParams& b);

/// Residue mod q. Always normalized to [0, q).
class Scalar {
public:
    Scalar(Bignum v, ParamsPtr params);

    const Bignum& value() const { return v_; }
    const ParamsPtr& params() const { return params_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    bool operator==(const Scalar& o) const { return v_ == o.v_; }

private:
    Bignum v_;
    ParamsPtr params_;
};

/// Residue mod p in [1, p). Subgroup membership is checked where the
/// protocol requires it, not at construction.
class GroupElement {
public:
    GroupElement(Bignum v, ParamsPtr params);

    const Bignum& value() const { return v_; }
    const ParamsPtr& params() const { return params_; }

    bool operator==(const GroupElement& o) const { return v_ == o.v_; }

private:
    Bignum v_;
    ParamsPtr params_;
};

// Metered arithmetic. Each call charges the counter exactly once.
GroupElement mod_exp(const GroupElement& base, const Scalar& exponent, OpCounter& counter);
GroupElement mod_mul(const GroupElement& a, const GroupElement& b, OpCounter& counter);
GroupElement mod_inv(const GroupElement& a, OpCounter& counter);

// Unmetered variants for structural checks and input preprocessing.
GroupElement exp_raw(const GroupElement& base, const Scalar& exponent);
GroupElement mul_raw(const GroupElement& a, const GroupElement& b);
bool in_subgroup(const GroupElement& a);

/// Uniform scalar in [2, q) by rejection sampling; 0 and 1 are excluded.
Scalar random_scalar(RandomSource& rng, const ParamsPtr& params);

/// Generate a fresh Schnorr group: prime q of q_bits, p = q*t + 1 prime of
/// p_bits, g = u^((p-1)/q) for random u retried until g != 1.
ParamsPtr generate_params(unsigned q_bits, unsigned p_bits, RandomSource& rng);

/// True iff all GroupParams invariants hold (primality of p and q at the
/// 2^-128 error level, q | p-1, g of order q).
bool validate_params(const GroupParams& params);

bool is_probable_prime(const Bignum& n);

}  // namespace mpsig

#endif
