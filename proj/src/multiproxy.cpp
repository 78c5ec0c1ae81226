#include "mpsig/multiproxy.hpp"

#include <algorithm>

namespace mpsig {

namespace {

Scalar delegation_challenge(const Warrant& w, const GroupElement& r, OpCounter& counter,
                            const ChallengeTable* injected) {
    return hash_to_scalar(DomainTag::Delegation, {encode_warrant(w), r.value()},
                          r.params(), counter, injected);
}

Scalar multi_challenge(const Bytes& m, const Warrant& w, const GroupElement& r,
                       const GroupElement& T, OpCounter& counter, const ChallengeTable* injected) {
    return hash_to_scalar(DomainTag::MultiChallenge,
                          {m, encode_warrant(w), r.value(), T.value()},
                          r.params(), counter, injected);
}

// Record consistency r = prod r_i; structural, unmetered.
bool record_consistent(const MultiDelegationRecord& record) {
    if (record.r_list.size() != record.warrant.size()) return false;
    GroupElement prod(1, record.r.params());
    for (const GroupElement& ri : record.r_list) prod = mul_raw(prod, ri);
    return prod == record.r;
}

}  // namespace

MultiDelegation multi_delegate(const Scalar& x0, const Warrant& warrant, RandomSource& rng,
                               OpCounter& counter, const ChallengeTable* injected) {
    validate_warrant(warrant);
    const ParamsPtr& params = x0.params();
    const std::size_t n = warrant.size();
    GroupElement g(params->g, params);

    std::vector<Scalar> nonces;
    std::vector<GroupElement> r_list;
    nonces.reserve(n);
    r_list.reserve(n);
    GroupElement r(1, params);
    for (std::size_t i = 0; i < n; ++i) {
        nonces.push_back(random_scalar(rng, params));
        r_list.push_back(mod_exp(g, nonces.back(), counter));
        r = i == 0 ? r_list.back() : mod_mul(r, r_list.back(), counter);
    }

    Scalar e = delegation_challenge(warrant, r, counter, injected);
    MultiDelegationRecord record{warrant, r, r_list};

    MultiDelegation out{{}, record};
    out.shares.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.shares.push_back(DelegationShare{i + 1, x0 * e + nonces[i], record});
    return out;
}

bool verify_share(const DelegationShare& share, const GroupElement& y0,
                  OpCounter& counter, const ChallengeTable* injected) {
    const MultiDelegationRecord& record = share.record;
    const ParamsPtr& params = y0.params();
    if (share.index < 1 || share.index > record.r_list.size()) return false;
    if (!same_group(*record.r.params(), *params)) return false;
    if (!record_consistent(record)) return false;
    Scalar e = delegation_challenge(record.warrant, record.r, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), share.sigma, counter);
    GroupElement rhs = mod_mul(mod_exp(y0, e, counter), record.r_list[share.index - 1], counter);
    return lhs == rhs;
}

ProxySigningKey derive_signing_key(const DelegationShare& share, const Scalar& xi,
                                   const GroupElement& y0, const GroupElement& yi,
                                   OpCounter& counter, const ChallengeTable* injected) {
    const MultiDelegationRecord& record = share.record;
    const ParamsPtr& params = y0.params();
    if (share.index < 1 || share.index > record.r_list.size() || !record_consistent(record))
        throw InvalidDelegationError("delegation record is inconsistent");
    // Same check as verify_share, with e and y0^e * r_i kept for reuse.
    Scalar e = delegation_challenge(record.warrant, record.r, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), share.sigma, counter);
    GroupElement anchor = mod_mul(mod_exp(y0, e, counter), record.r_list[share.index - 1], counter);
    if (!(lhs == anchor))
        throw InvalidDelegationError("delegation share fails g^sigma = y0^e * r_i");
    Scalar d = share.sigma + e * xi;
    GroupElement V = mod_mul(anchor, mod_exp(yi, e, counter), counter);
    if (!(mod_exp(GroupElement(params->g, params), d, counter) == V))
        throw SelfCheckError("g^d != V after key derivation");
    return ProxySigningKey{share.index, d, V};
}

GroupElement group_proxy_key(const MultiDelegationRecord& record, const GroupElement& y0,
                             const std::vector<GroupElement>& y_list, OpCounter& counter,
                             const ChallengeTable* injected) {
    if (y_list.size() != record.warrant.size())
        throw InvariantError("public-key list does not match the warrant");
    const ParamsPtr& params = y0.params();
    const Bignum n = record.warrant.size();
    Scalar e = delegation_challenge(record.warrant, record.r, counter, injected);
    // prod y_i is public-input preprocessing, unmetered.
    GroupElement y_prod(1, params);
    for (const GroupElement& yi : y_list) y_prod = mul_raw(y_prod, yi);
    GroupElement a = mod_exp(y0, Scalar(n * e.value(), params), counter);
    GroupElement b = mod_exp(y_prod, e, counter);
    return mod_mul(mod_mul(a, b, counter), record.r, counter);
}

std::pair<Scalar, GroupElement> round1_commit(RandomSource& rng, const ParamsPtr& params,
                                              OpCounter& counter) {
    Scalar t = random_scalar(rng, params);
    GroupElement T = mod_exp(GroupElement(params->g, params), t, counter);
    return {t, T};
}

std::pair<GroupElement, Scalar> session_challenge(const Bytes& m, const MultiDelegationRecord& record,
                                                  const std::vector<std::optional<GroupElement>>& commitments,
                                                  OpCounter& counter,
                                                  const ChallengeTable* injected) {
    const std::size_t n = record.warrant.size();
    if (commitments.size() != n)
        throw InvariantError("commitment list does not match the warrant");
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < n; ++i)
        if (!commitments[i]) missing.push_back(i + 1);
    if (!missing.empty()) throw MissingCommitmentError(std::move(missing));

    GroupElement T = *commitments[0];
    for (std::size_t i = 1; i < n; ++i) T = mod_mul(T, *commitments[i], counter);
    Scalar c = multi_challenge(m, record.warrant, record.r, T, counter, injected);
    return {T, c};
}

Scalar round2_respond(const Scalar& ti, const Scalar& di, const Scalar& c) {
    return ti + c * di;
}

bool verify_partial(const Scalar& si, const GroupElement& Ti, const GroupElement& Vi,
                    const Scalar& c, OpCounter& counter) {
    const ParamsPtr& params = Vi.params();
    GroupElement lhs = mod_exp(GroupElement(params->g, params), si, counter);
    GroupElement rhs = mod_mul(Ti, mod_exp(Vi, c, counter), counter);
    return lhs == rhs;
}

SigningSession::SigningSession(Bytes m, MultiDelegationRecord record,
                               std::vector<GroupElement> partial_keys)
    : m_(std::move(m)), record_(std::move(record)), partial_keys_(std::move(partial_keys)) {
    validate_warrant(record_.warrant);
    if (record_.r_list.size() != record_.warrant.size())
        throw InvariantError("record commitment list does not match the warrant");
    if (partial_keys_.size() != record_.warrant.size())
        throw InvariantError("partial-key list does not match the warrant");
    commitments_.resize(record_.warrant.size());
    responses_.resize(record_.warrant.size());
}

void SigningSession::submit_commitment(std::size_t index, const GroupElement& Ti) {
    if (phase_ != Phase::CollectCommitments)
        throw PhaseError("commitments are closed");
    if (index < 1 || index > commitments_.size())
        throw InvariantError("proxy index out of range");
    if (commitments_[index - 1])
        throw PhaseError("duplicate commitment for proxy index " + std::to_string(index));
    commitments_[index - 1] = Ti;
}

std::pair<GroupElement, Scalar> SigningSession::finalize_challenge(OpCounter& counter,
                                                                   const ChallengeTable* injected) {
    if (phase_ != Phase::CollectCommitments)
        throw PhaseError("challenge already fixed");
    auto [T, c] = session_challenge(m_, record_, commitments_, counter, injected);
    T_ = T;
    c_ = c;
    phase_ = Phase::CollectResponses;
    return {T, c};
}

void SigningSession::submit_response(std::size_t index, const Scalar& si) {
    if (phase_ != Phase::CollectResponses)
        throw PhaseError("responses accepted only after the challenge is fixed");
    if (index < 1 || index > responses_.size())
        throw InvariantError("proxy index out of range");
    if (responses_[index - 1])
        throw PhaseError("duplicate response for proxy index " + std::to_string(index));
    responses_[index - 1] = si;
}

MultiProxySignature SigningSession::aggregate(OpCounter& counter) {
    if (phase_ != Phase::CollectResponses)
        throw PhaseError("aggregate requires a fixed challenge and open responses");
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < responses_.size(); ++i)
        if (!responses_[i]) missing.push_back(i + 1);
    if (!missing.empty())
        throw PhaseError("responses missing from proxy index " + join_indices(missing));

    for (std::size_t i = 0; i < responses_.size(); ++i)
        if (!verify_partial(*responses_[i], *commitments_[i], partial_keys_[i], *c_, counter))
            blame_.push_back(i + 1);
    if (!blame_.empty()) {
        phase_ = Phase::Aborted;
        throw SessionAbortedError(blame_);
    }

    Scalar s = *responses_[0];
    for (std::size_t i = 1; i < responses_.size(); ++i) s = s + *responses_[i];
    phase_ = Phase::Done;
    return MultiProxySignature{record_.warrant, record_.r, *T_, s};
}

bool verify_multiproxy(const Bytes& m, const MultiProxySignature& sig, const GroupElement& y0,
                       const std::vector<GroupElement>& y_list, std::uint64_t now,
                       OpCounter& counter, const ChallengeTable* injected) {
    const ParamsPtr& params = y0.params();
    if (sig.warrant.size() != y_list.size()) return false;
    if (!same_group(*sig.r.params(), *params) || !same_group(*sig.T.params(), *params))
        return false;
    if (!check_conformance(m, sig.warrant, now)) return false;
    if (!in_subgroup(sig.r) || !in_subgroup(sig.T)) return false;

    // The signature carries no r_list; Y needs only the warrant and r.
    MultiDelegationRecord key_record{sig.warrant, sig.r, {}};
    GroupElement Y = group_proxy_key(key_record, y0, y_list, counter, injected);

    Scalar c = multi_challenge(m, sig.warrant, sig.r, sig.T, counter, injected);
    GroupElement lhs = mod_exp(GroupElement(params->g, params), sig.s, counter);
    GroupElement rhs = mod_mul(sig.T, mod_exp(Y, c, counter), counter);
    return lhs == rhs;
}

}  // namespace mpsig
