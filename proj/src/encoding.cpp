#include "mpsig/encoding.hpp"

#include <openssl/evp.h>

namespace mpsig {

namespace {

void append_length_prefixed(Bytes& out, const Bytes& payload) {
    const std::uint32_t len = static_cast<std::uint32_t>(payload.size());
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
    out.insert(out.end(), payload.begin(), payload.end());
}

Bytes minimal_be_bytes(const Bignum& v) {
    if (v < 0) throw InvariantError("encode_fields: negative integer");
    Bytes out;
    if (v != 0) boost::multiprecision::export_bits(v, std::back_inserter(out), 8, true);
    return out;
}

}  // namespace

Bytes encode_fields(const std::vector<Field>& fields) {
    Bytes out;
    for (const Field& f : fields) {
        if (const Bignum* v = std::get_if<Bignum>(&f)) {
            append_length_prefixed(out, minimal_be_bytes(*v));
        } else {
            append_length_prefixed(out, std::get<Bytes>(f));
        }
    }
    return out;
}

Bytes sha256(const Bytes& data) {
    Bytes md(32, 0);
    unsigned int md_len = 0;
    EVP_Digest(data.data(), data.size(), md.data(), &md_len, EVP_sha256(), nullptr);
    return md;
}

Scalar hash_to_scalar(DomainTag tag, const std::vector<Field>& fields,
                      const ParamsPtr& params, OpCounter& counter,
                      const ChallengeTable* injected) {
    counter.H += 1;
    if (injected) {
        auto it = injected->find(tag);
        if (it != injected->end()) return Scalar(it->second, params);
    }
    Bytes input{static_cast<std::uint8_t>(tag)};
    Bytes encoded = encode_fields(fields);
    input.insert(input.end(), encoded.begin(), encoded.end());
    Bytes digest = sha256(input);
    Bignum v = 0;
    boost::multiprecision::import_bits(v, digest.begin(), digest.end(), 8, true);
    return Scalar(v, params);
}

}  // namespace mpsig
