#ifndef MPSIG_MULTIPROXY_HPP
#define MPSIG_MULTIPROXY_HPP

#include <optional>
#include <utility>

#include "mpsig/warrant.hpp"

namespace mpsig {

/// Public delegation record: commitment product r = prod r_i and the n
/// per-proxy commitments, aligned with warrant.proxy_ids.
struct MultiDelegationRecord {
    Warrant warrant;
    GroupElement r;
    std::vector<GroupElement> r_list;
};

/// Proxy i's delegation share: g^sigma = y_0^e * r_i mod p with
/// e = h(DELEGATION, m_w, r).
struct DelegationShare {
    std::size_t index; // 1-based, position in warrant.proxy_ids
    Scalar sigma;
    MultiDelegationRecord record;
};

/// Proxy i's signing key d_i = sigma_i + e*x_i mod q and its public
/// counterpart V_i = y_0^e * r_i * y_i^e, so g^d_i = V_i.
struct ProxySigningKey {
    std::size_t index;
    Scalar d;
    GroupElement V;
};

struct MultiProxySignature {
    Warrant warrant;
    GroupElement r;
    GroupElement T;
    Scalar s;
};

struct MultiDelegation {
    std::vector<DelegationShare> shares;
    MultiDelegationRecord record;
};

/// k_i <- random for each proxy; r_i = g^k_i; r = prod r_i;
/// e = h(DELEGATION, m_w, r); sigma_i = x_0*e + k_i mod q.
MultiDelegation multi_delegate(const Scalar& x0, const Warrant& warrant, RandomSource& rng,
                               OpCounter& counter, const ChallengeTable* injected = nullptr);

/// g^sigma_i = y_0^e * r_i, plus record consistency r = prod r_i.
bool verify_share(const DelegationShare& share, const GroupElement& y0,
                  OpCounter& counter, const ChallengeTable* injected = nullptr);

/// Derives (d_i, V_i) after re-verifying the share; the g^d_i = V_i
/// self-check runs before return.
ProxySigningKey derive_signing_key(const DelegationShare& share, const Scalar& xi,
                                   const GroupElement& y0, const GroupElement& yi,
                                   OpCounter& counter, const ChallengeTable* injected = nullptr);

/// Group proxy key Y = y_0^(n*e) * (prod y_i)^e * r; equals prod V_i.
GroupElement group_proxy_key(const MultiDelegationRecord& record, const GroupElement& y0,
                             const std::vector<GroupElement>& y_list, OpCounter& counter,
                             const ChallengeTable* injected = nullptr);

/// Round 1: t_i <- random, T_i = g^t_i.
std::pair<Scalar, GroupElement> round1_commit(RandomSource& rng, const ParamsPtr& params,
                                              OpCounter& counter);

/// T = prod T_i; c = h(MULTI_CHALLENGE, m, m_w, r, T). The commitment list
/// is indexed 0..n-1 for proxies 1..n; throws MissingCommitmentError naming
/// the absent indices.
std::pair<GroupElement, Scalar> session_challenge(const Bytes& m, const MultiDelegationRecord& record,
                                                  const std::vector<std::optional<GroupElement>>& commitments,
                                                  OpCounter& counter,
                                                  const ChallengeTable* injected = nullptr);

/// Round 2: s_i = t_i + c*d_i mod q.
Scalar round2_respond(const Scalar& ti, const Scalar& di, const Scalar& c);

/// Clerk-side accountability check: g^s_i = T_i * V_i^c mod p.
bool verify_partial(const Scalar& si, const GroupElement& Ti, const GroupElement& Vi,
                    const Scalar& c, OpCounter& counter);

/// Two-round signing session run by the clerk. Commitments and responses
/// arrive in any order, one per index; the challenge is fixed once all n
/// commitments are in. Single-writer.
class SigningSession {
public:
    enum class Phase { CollectCommitments, CollectResponses, Done, Aborted };

    SigningSession(Bytes m, MultiDelegationRecord record,
                   std::vector<GroupElement> partial_keys); // V_i, aligned 1..n

    std::size_t size() const { return record_.r_list.size(); }
    Phase phase() const { return phase_; }
    const std::vector<std::size_t>& blame() const { return blame_; }

    /// index is 1-based. Duplicate or out-of-range submissions throw.
    void submit_commitment(std::size_t index, const GroupElement& Ti);

    /// Computes (T, c) once all commitments are present and moves the
    /// session to response collection. Idempotent calls are a phase error.
    std::pair<GroupElement, Scalar> finalize_challenge(OpCounter& counter,
                                                       const ChallengeTable* injected = nullptr);

    void submit_response(std::size_t index, const Scalar& si);

    /// Verifies every partial and sums the responses. On any invalid
    /// partial the session aborts and SessionAbortedError carries the
    /// blame set; the session is never silently re-keyed.
    MultiProxySignature aggregate(OpCounter& counter);

private:
    Bytes m_;
    MultiDelegationRecord record_;
    std::vector<GroupElement> partial_keys_;
    Phase phase_ = Phase::CollectCommitments;
    std::vector<std::optional<GroupElement>> commitments_;
    std::vector<std::optional<Scalar>> responses_;
    std::optional<GroupElement> T_;
    std::optional<Scalar> c_;
    std::vector<std::size_t> blame_;
};

/// Conformance gate, subgroup membership of r and T, then
/// g^s = T * Y^c mod p with Y = y_0^(n*e) * (prod y_i)^e * r,
/// e = h(DELEGATION, m_w, r), c = h(MULTI_CHALLENGE, m, m_w, r, T).
bool verify_multiproxy(const Bytes& m, const MultiProxySignature& sig, const GroupElement& y0,
                       const std::vector<GroupElement>& y_list, std::uint64_t now,
                       OpCounter& counter, const ChallengeTable* injected = nullptr);

}  // namespace mpsig

#endif
