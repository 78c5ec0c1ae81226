#include "mpsig/group.hpp"

#include <random>

#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <openssl/evp.h>

namespace mpsig {

namespace {

unsigned bit_length(const Bignum& v) {
    return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
}

Bignum from_be_bytes(const std::uint8_t* data, std::size_t len) {
    Bignum v = 0;
    if (len) boost::multiprecision::import_bits(v, data, data + len, 8, true);
    return v;
}

void check_same_group(const ParamsPtr& a, const ParamsPtr& b) {
    if (!same_group(*a, *b)) throw MismatchedParamsError();
}

}  // namespace

void SystemRandom::fill(std::uint8_t* out, std::size_t len) {
    static thread_local std::random_device rd;
    for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>(rd());
}

SeededRandom::SeededRandom(Bytes seed) : seed_(std::move(seed)) {}

void SeededRandom::fill(std::uint8_t* out, std::size_t len) {
    while (len) {
        if (pos_ == buf_.size()) {
            Bytes block = seed_;
            for (int i = 7; i >= 0; --i)
                block.push_back(static_cast<std::uint8_t>(block_ >> (8 * i)));
            buf_.assign(32, 0);
            unsigned int md_len = 0;
            EVP_Digest(block.data(), block.size(), buf_.data(), &md_len, EVP_sha256(), nullptr);
            pos_ = 0;
            ++block_;
        }
        std::size_t take = std::min(len, buf_.size() - pos_);
        std::copy_n(buf_.data() + pos_, take, out);
        pos_ += take;
        out += take;
        len -= take;
    }
}

ParamsPtr make_group(const Bignum& p, const Bignum& q, const Bignum& g) {
    return std::make_shared<GroupParams>(GroupParams{p, q, g, bit_length(p), bit_length(q)});
}

ParamsPtr toy_group() {
    static const ParamsPtr group = make_group(23, 11, 2);
    return group;
}

bool same_group(const GroupParams& a, const GroupParams& b) {
    return a.p == b.p && a.q == b.q && a.g == b.g;
}

Scalar::Scalar(Bignum v, ParamsPtr params) : params_(std::move(params)) {
    v_ = v % params_->q;
    if (v_ < 0) v_ += params_->q;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_group(params_, o.params_);
    return Scalar(v_ + o.v_, params_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_group(params_, o.params_);
    return Scalar(v_ * o.v_, params_);
}

GroupElement::GroupElement(Bignum v, ParamsPtr params) : v_(std::move(v)), params_(std::move(params)) {
    if (v_ < 1 || v_ >= params_->p)
        throw InvariantError("group element out of range [1, p)");
}

GroupElement mod_exp(const GroupElement& base, const Scalar& exponent, OpCounter& counter) {
    check_same_group(base.params(), exponent.params());
    counter.E += 1;
    return exp_raw(base, exponent);
}

GroupElement mod_mul(const GroupElement& a, const GroupElement& b, OpCounter& counter) {
    check_same_group(a.params(), b.params());
    counter.M += 1;
    return mul_raw(a, b);
}

GroupElement mod_inv(const GroupElement& a, OpCounter& counter) {
    counter.I += 1;
    // p is prime, so a^(p-2) inverts every nonzero residue.
    Bignum inv = boost::multiprecision::powm(a.value(), a.params()->p - 2, a.params()->p);
    if (inv == 0 || (inv * a.value()) % a.params()->p != 1) throw NonInvertibleError();
    return GroupElement(inv, a.params());
}

GroupElement exp_raw(const GroupElement& base, const Scalar& exponent) {
    Bignum r = boost::multiprecision::powm(base.value(), exponent.value(), base.params()->p);
    return GroupElement(r, base.params());
}

GroupElement mul_raw(const GroupElement& a, const GroupElement& b) {
    Bignum r = (a.value() * b.value()) % a.params()->p;
    return GroupElement(r, a.params());
}

bool in_subgroup(const GroupElement& a) {
    return boost::multiprecision::powm(a.value(), a.params()->q, a.params()->p) == 1;
}

Scalar random_scalar(RandomSource& rng, const ParamsPtr& params) {
    const unsigned bits = bit_length(params->q);
    const std::size_t nbytes = (bits + 7) / 8;
    const unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
    const std::uint8_t top_mask = static_cast<std::uint8_t>(0xff >> excess);
    Bytes buf(nbytes);
    for (;;) {
        rng.fill(buf.data(), buf.size());
        buf[0] &= top_mask;
        Bignum v = from_be_bytes(buf.data(), buf.size());
        if (v >= 2 && v < params->q) return Scalar(v, params);
    }
}

bool is_probable_prime(const Bignum& n) {
    // 64 Miller-Rabin rounds, error probability <= 4^-64 = 2^-128. The
    // witness engine is fixed-seeded so validation is deterministic.
    boost::random::mt19937 eng(0x6d707369u);
    return boost::multiprecision::miller_rabin_test(n, 64, eng);
}

namespace {

Bignum random_in_range(RandomSource& rng, const Bignum& lo, const Bignum& hi) {
    // uniform in [lo, hi) by rejection
    Bignum span = hi - lo;
    const unsigned bits = bit_length(span);
    const std::size_t nbytes = (bits + 7) / 8;
    const std::uint8_t top_mask = static_cast<std::uint8_t>(0xff >> (nbytes * 8 - bits));
    Bytes buf(nbytes);
    for (;;) {
        rng.fill(buf.data(), buf.size());
        buf[0] &= top_mask;
        Bignum v = from_be_bytes(buf.data(), buf.size());
        if (v < span) return lo + v;
    }
}

Bignum random_prime(unsigned bits, RandomSource& rng) {
    const std::size_t nbytes = (bits + 7) / 8;
    Bytes buf(nbytes);
    for (;;) {
        rng.fill(buf.data(), buf.size());
        Bignum v = from_be_bytes(buf.data(), buf.size());
        v >>= (nbytes * 8 - bits);
        boost::multiprecision::bit_set(v, bits - 1);
        if (boost::multiprecision::bit_test(v, 0) == false) ++v;
        if (is_probable_prime(v)) return v;
    }
}

}  // namespace

ParamsPtr generate_params(unsigned q_bits, unsigned p_bits, RandomSource& rng) {
    if (q_bits < 8) throw InvariantError("q_bits must be at least 8");
    if (p_bits <= q_bits) throw InvariantError("p_bits must exceed q_bits");

    const Bignum q = random_prime(q_bits, rng);

    // Search p = q*t + 1 of exactly p_bits bits; t must be even since q is odd.
    Bignum p_lo = Bignum(1) << (p_bits - 1);
    Bignum p_hi = Bignum(1) << p_bits;
    Bignum t_lo = p_lo / q + 1;
    Bignum t_hi = (p_hi - 1) / q;
    if (t_hi <= t_lo) throw InvariantError("p_bits too close to q_bits for the p = q*t + 1 search");

    constexpr int kRetryBudget = 100000;
    Bignum p;
    bool found = false;
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        Bignum t = random_in_range(rng, t_lo, t_hi);
        if (boost::multiprecision::bit_test(t, 0)) ++t;
        p = q * t + 1;
        if (p >= p_hi) continue;
        if (is_probable_prime(p)) {
            found = true;
            break;
        }
    }
    if (!found) throw SearchExhaustedError("no prime p = q*t + 1 found within the retry budget");

    const Bignum cofactor = (p - 1) / q;
    Bignum g = 1;
    while (g == 1) {
        Bignum u = random_in_range(rng, 2, p - 1);
        g = boost::multiprecision::powm(u, cofactor, p);
    }
    return make_group(p, q, g);
}

bool validate_params(const GroupParams& params) {
    const Bignum &p = params.p, &q = params.q, &g = params.g;
    if (p < 3 || q < 2) return false;
    if (!is_probable_prime(p) || !is_probable_prime(q)) return false;
    if ((p - 1) % q != 0) return false;
    if (g <= 1 || g >= p) return false;
    return boost::multiprecision::powm(g, q, p) == 1;
}

}  // namespace mpsig
