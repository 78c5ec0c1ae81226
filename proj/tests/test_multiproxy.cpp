#include <doctest.h>

#include "test_util.hpp"

using namespace mpsig;
using namespace mpsig::test;

namespace {

// Acceptance vector: x_0=3, x_1=2, x_2=6, k=(4,5), e=7, t=(5,9), c=10.
const ChallengeTable kVector{{DomainTag::Delegation, 7}, {DomainTag::MultiChallenge, 10}};

struct ToyVector {
    Warrant warrant = toy_warrant(2);
    Scalar x0 = toy_scalar(3);
    GroupElement y0 = toy_element(8);
    Scalar x1 = toy_scalar(2);
    GroupElement y1 = toy_element(4);
    Scalar x2 = toy_scalar(6);
    GroupElement y2 = toy_element(18);
    MultiDelegation delegation;
    OpCounter counter;

    ToyVector() : delegation([&] {
        ScriptedRng rng{4, 5};
        OpCounter c;
        return multi_delegate(toy_scalar(3), toy_warrant(2), rng, c, &kVector);
    }()) {}
};

}  // namespace

TEST_CASE("toy delegation vector: r=(16,9), r=6, sigma=(3,4)") {
    ToyVector v;
    const MultiDelegationRecord& rec = v.delegation.record;
    CHECK(rec.r_list[0].value() == 16);
    CHECK(rec.r_list[1].value() == 9);
    CHECK(rec.r.value() == 6);
    CHECK(v.delegation.shares[0].sigma.value() == 3);
    CHECK(v.delegation.shares[1].sigma.value() == 4);

    for (const DelegationShare& share : v.delegation.shares)
        CHECK(verify_share(share, v.y0, v.counter, &kVector));
}

TEST_CASE("share verification binds sigma and the record") {
    ToyVector v;

    DelegationShare bad_sigma = v.delegation.shares[0];
    bad_sigma.sigma = bad_sigma.sigma + toy_scalar(1);
    CHECK_FALSE(verify_share(bad_sigma, v.y0, v.counter, &kVector));

    DelegationShare bad_record = v.delegation.shares[0];
    bad_record.record.r_list[1] = mul_raw(bad_record.record.r_list[1], toy_element(2));
    CHECK_FALSE(verify_share(bad_record, v.y0, v.counter, &kVector)); // r != prod r_i

    DelegationShare bad_index = v.delegation.shares[0];
    bad_index.index = 3;
    CHECK_FALSE(verify_share(bad_index, v.y0, v.counter, &kVector));
}

TEST_CASE("signing-key derivation: d=(6,2), V=(18,4)") {
    ToyVector v;
    ProxySigningKey k1 = derive_signing_key(v.delegation.shares[0], v.x1, v.y0, v.y1,
                                            v.counter, &kVector);
    ProxySigningKey k2 = derive_signing_key(v.delegation.shares[1], v.x2, v.y0, v.y2,
                                            v.counter, &kVector);
    CHECK(k1.d.value() == 6);
    CHECK(k1.V.value() == 18);
    CHECK(k2.d.value() == 2);
    CHECK(k2.V.value() == 4);

    // invalid share surfaces as a typed error
    DelegationShare bad = v.delegation.shares[0];
    bad.sigma = bad.sigma + toy_scalar(1);
    CHECK_THROWS_AS(derive_signing_key(bad, v.x1, v.y0, v.y1, v.counter, &kVector),
                    InvalidDelegationError);
}

TEST_CASE("x_i = 0 degenerates to d_i = sigma_i") {
    ToyVector v;
    ProxySigningKey k = derive_signing_key(v.delegation.shares[0], toy_scalar(0), v.y0,
                                           toy_element(1), v.counter, &kVector);
    CHECK(k.d == v.delegation.shares[0].sigma);
}

TEST_CASE("group proxy key Y = 3 = prod V_i = g^(sum d_i)") {
    ToyVector v;
    GroupElement Y = group_proxy_key(v.delegation.record, v.y0, {v.y1, v.y2},
                                     v.counter, &kVector);
    CHECK(Y.value() == 3);
    CHECK(Y == exp_raw(toy_element(2), toy_scalar(6 + 2)));
    CHECK(Y == mul_raw(toy_element(18), toy_element(4))); // V_1 * V_2

    CHECK_THROWS_AS(group_proxy_key(v.delegation.record, v.y0, {v.y1}, v.counter, &kVector),
                    InvariantError);
}

TEST_CASE("n=1 degenerates to a Kim-style delegation augmented by the proxy key") {
    ScriptedRng rng{4};
    OpCounter c;
    MultiDelegation d = multi_delegate(toy_scalar(3), toy_warrant(1), rng, c, &kVector);
    CHECK(d.record.r == d.record.r_list[0]);

    GroupElement y0 = toy_element(8), y1 = toy_element(4);
    GroupElement Y = group_proxy_key(d.record, y0, {y1}, c, &kVector);
    GroupElement expected = mul_raw(mul_raw(exp_raw(y0, toy_scalar(7)), d.record.r),
                                    exp_raw(y1, toy_scalar(7)));
    CHECK(Y == expected);
}

TEST_CASE("round 1 commitments: t=5 -> T=9, t=9 -> T=6") {
    OpCounter c;
    ScriptedRng rng{5, 9};
    auto [t1, T1] = round1_commit(rng, toy_group(), c);
    auto [t2, T2] = round1_commit(rng, toy_group(), c);
    CHECK(T1.value() == 9);
    CHECK(T2.value() == 6);
    CHECK(in_subgroup(T1));
    CHECK(in_subgroup(T2));
}

TEST_CASE("session challenge: T = 9*6 mod 23 = 8, order-invariant") {
    ToyVector v;
    std::vector<std::optional<GroupElement>> commitments{toy_element(9), toy_element(6)};
    auto [T, c] = session_challenge(bytes_of("invoice:1"), v.delegation.record,
                                    commitments, v.counter, &kVector);
    CHECK(T.value() == 8);
    CHECK(c.value() == 10);

    std::vector<std::optional<GroupElement>> swapped{toy_element(6), toy_element(9)};
    auto [T2, c2] = session_challenge(bytes_of("invoice:1"), v.delegation.record,
                                      swapped, v.counter, &kVector);
    CHECK(T == T2);
    CHECK(c == c2);

    std::vector<std::optional<GroupElement>> partial{toy_element(9), std::nullopt};
    try {
        session_challenge(bytes_of("invoice:1"), v.delegation.record, partial, v.counter,
                          &kVector);
        FAIL("missing commitment not detected");
    } catch (const MissingCommitmentError& e) {
        CHECK(e.missing == std::vector<std::size_t>{2});
    }
}

TEST_CASE("round 2 responses: s=(10,7); c=0 gives s_i = t_i") {
    CHECK(round2_respond(toy_scalar(5), toy_scalar(6), toy_scalar(10)).value() == 10);
    CHECK(round2_respond(toy_scalar(9), toy_scalar(2), toy_scalar(10)).value() == 7);
    CHECK(round2_respond(toy_scalar(5), toy_scalar(6), toy_scalar(0)).value() == 5);
}

TEST_CASE("partial verification is signer-specific") {
    OpCounter c;
    // g^10 = 12 and T_1 * V_1^c = 9 * 18^10 = 12
    CHECK(verify_partial(toy_scalar(10), toy_element(9), toy_element(18), toy_scalar(10), c));
    CHECK(verify_partial(toy_scalar(7), toy_element(6), toy_element(4), toy_scalar(10), c));

    CHECK_FALSE(verify_partial(toy_scalar(10 + 1), toy_element(9), toy_element(18),
                               toy_scalar(10), c));
    // swapped keys: partials are not interchangeable
    CHECK_FALSE(verify_partial(toy_scalar(10), toy_element(9), toy_element(4), toy_scalar(10), c));
    CHECK_FALSE(verify_partial(toy_scalar(7), toy_element(6), toy_element(18), toy_scalar(10), c));
}

TEST_CASE("full session produces (r=6, T=8, s=6) and verifies") {
    ToyVector v;
    SigningSession session(bytes_of("invoice:1"), v.delegation.record,
                           {toy_element(18), toy_element(4)});
    session.submit_commitment(1, toy_element(9));
    session.submit_commitment(2, toy_element(6));
    auto [T, c] = session.finalize_challenge(v.counter, &kVector);
    CHECK(T.value() == 8);
    session.submit_response(1, toy_scalar(10));
    session.submit_response(2, toy_scalar(7));
    MultiProxySignature sig = session.aggregate(v.counter);
    CHECK(session.phase() == SigningSession::Phase::Done);
    CHECK(sig.r.value() == 6);
    CHECK(sig.T.value() == 8);
    CHECK(sig.s.value() == 6);

    // g^6 = 18 and T*Y^c = 8*3^10 = 18
    CHECK(verify_multiproxy(bytes_of("invoice:1"), sig, v.y0, {v.y1, v.y2}, kNow,
                            v.counter, &kVector));
}

TEST_CASE("session state machine rejects out-of-phase and duplicate input") {
    ToyVector v;
    SigningSession session(bytes_of("invoice:1"), v.delegation.record,
                           {toy_element(18), toy_element(4)});
    CHECK_THROWS_AS(session.aggregate(v.counter), PhaseError);
    CHECK_THROWS_AS(session.submit_response(1, toy_scalar(10)), PhaseError);

    session.submit_commitment(1, toy_element(9));
    CHECK_THROWS_AS(session.submit_commitment(1, toy_element(9)), PhaseError);
    CHECK_THROWS_AS(session.submit_commitment(3, toy_element(9)), InvariantError);
    CHECK_THROWS_AS(session.finalize_challenge(v.counter, &kVector), MissingCommitmentError);

    session.submit_commitment(2, toy_element(6));
    session.finalize_challenge(v.counter, &kVector);
    CHECK_THROWS_AS(session.finalize_challenge(v.counter, &kVector), PhaseError);
    CHECK_THROWS_AS(session.submit_commitment(2, toy_element(6)), PhaseError);

    session.submit_response(1, toy_scalar(10));
    CHECK_THROWS_AS(session.submit_response(1, toy_scalar(10)), PhaseError);
    CHECK_THROWS_AS(session.aggregate(v.counter), PhaseError); // response 2 missing
}

TEST_CASE("one corrupted partial aborts with exactly that blame index") {
    ToyVector v;
    SigningSession session(bytes_of("invoice:1"), v.delegation.record,
                           {toy_element(18), toy_element(4)});
    session.submit_commitment(1, toy_element(9));
    session.submit_commitment(2, toy_element(6));
    session.finalize_challenge(v.counter, &kVector);
    session.submit_response(1, toy_scalar(10));
    session.submit_response(2, toy_scalar(7 + 1)); // corrupted
    try {
        session.aggregate(v.counter);
        FAIL("aggregate accepted a corrupted partial");
    } catch (const SessionAbortedError& e) {
        CHECK(e.blame == std::vector<std::size_t>{2});
    }
    CHECK(session.phase() == SigningSession::Phase::Aborted);
    CHECK_THROWS_AS(session.aggregate(v.counter), PhaseError); // no silent re-keying
}

TEST_CASE("aggregation identity: g^(sum sigma_i) = y0^(n*e) * r") {
    OpCounter c;
    GroupElement g = toy_element(2);
    for (unsigned x0 = 0; x0 < 11; ++x0) {
        GroupElement y0 = exp_raw(g, toy_scalar(x0));
        for (unsigned e = 0; e < 11; ++e)
            for (unsigned k1 = 0; k1 < 11; ++k1)
                for (unsigned k2 = 0; k2 < 11; ++k2) {
                    unsigned n = 2;
                    GroupElement r = exp_raw(g, toy_scalar(k1 + k2));
                    Bignum sigma_sum = Bignum(x0) * e + k1 + (Bignum(x0) * e + k2);
                    GroupElement lhs = mod_exp(g, Scalar(sigma_sum, toy_group()), c);
                    GroupElement rhs = mod_mul(mod_exp(y0, toy_scalar(n * e), c), r, c);
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("end-to-end roundtrips for n in {1,2,3,5}") {
    SeededRandom rng(bytes_of("mp-roundtrip"));
    OpCounter c;
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
        Warrant w = toy_warrant(n);
        for (int i = 0; i < 200; ++i) {
            ProtocolRun run = run_protocol(w, bytes_of("invoice:x"), rng, toy_group());
            CHECK(verify_multiproxy(run.m, run.sig, run.original.y, run.pubs, kNow, c));
        }
    }
}

TEST_CASE("tamper matrix: every structural perturbation is rejected") {
    SeededRandom rng(bytes_of("mp-tamper"));
    OpCounter c;
    Warrant w = toy_warrant(2);
    for (int i = 0; i < 100; ++i) {
        ProtocolRun run = run_protocol(w, bytes_of("invoice:x"), rng, toy_group());
        const MultiProxySignature& sig = run.sig;
        auto verifies = [&](const Bytes& m, const MultiProxySignature& s) {
            return verify_multiproxy(m, s, run.original.y, run.pubs, kNow, c);
        };
        CHECK(verifies(run.m, sig));

        // message pushed off the warrant prefix
        CHECK_FALSE(verifies(bytes_of("Invoice:x"), sig));

        // warrant fields: window collapses, prefix no longer matches
        MultiProxySignature expired = sig;
        expired.warrant.valid_to = kNow - 1;
        CHECK_FALSE(verifies(run.m, expired));
        MultiProxySignature reprefixed = sig;
        reprefixed.warrant.message_prefix = bytes_of("order:");
        CHECK_FALSE(verifies(run.m, reprefixed));

        // r and T pushed off the subgroup
        MultiProxySignature bad_r = sig;
        bad_r.r = off_subgroup(sig.r);
        CHECK_FALSE(verifies(run.m, bad_r));
        MultiProxySignature bad_T = sig;
        bad_T.T = off_subgroup(sig.T);
        CHECK_FALSE(verifies(run.m, bad_T));

        // s+1 shifts g^s by g
        MultiProxySignature bad_s = sig;
        bad_s.s = sig.s + toy_scalar(1);
        CHECK_FALSE(verifies(run.m, bad_s));

        // record-level tampers are caught by share verification
        DelegationShare bad_ri = run.delegation.shares[0];
        bad_ri.record.r_list[1] = mul_raw(bad_ri.record.r_list[1], toy_element(2));
        CHECK_FALSE(verify_share(bad_ri, run.original.y, c));
        DelegationShare bad_sigma = run.delegation.shares[1];
        bad_sigma.sigma = bad_sigma.sigma + toy_scalar(1);
        CHECK_FALSE(verify_share(bad_sigma, run.original.y, c));
    }
}

TEST_CASE("dropping a proxy public key breaks verification") {
    SeededRandom rng(bytes_of("mp-drop"));
    OpCounter c;
    ProtocolRun run = run_protocol(toy_warrant(2), bytes_of("invoice:x"), rng, toy_group());
    CHECK_FALSE(verify_multiproxy(run.m, run.sig, run.original.y, {run.pubs[0]}, kNow, c));
}

TEST_CASE("n-1 colluders cannot push a forged partial through the clerk") {
    SeededRandom rng(bytes_of("mp-collusion"));
    OpCounter c;
    const std::size_t n = 3, missing = 2;
    Warrant w = toy_warrant(n);
    for (int i = 0; i < 50; ++i) {
        ProtocolRun honest = run_protocol(w, bytes_of("invoice:x"), rng, toy_group());
        std::vector<GroupElement> partial_keys;
        for (const ProxySigningKey& k : honest.keys) partial_keys.push_back(k.V);

        SigningSession session(honest.m, honest.delegation.record, partial_keys);
        std::vector<Scalar> nonces;
        for (std::size_t j = 1; j <= n; ++j) {
            auto [t, T] = round1_commit(rng, toy_group(), c);
            nonces.push_back(t);
            session.submit_commitment(j, T);
        }
        auto [T, ch] = session.finalize_challenge(c);
        for (std::size_t j = 1; j <= n; ++j) {
            // proxy `missing` never reveals d_j; the colluders respond with
            // the bare nonce instead
            Scalar d = (j == missing) ? toy_scalar(0) : honest.keys[j - 1].d;
            session.submit_response(j, round2_respond(nonces[j - 1], d, ch));
        }
        if (ch.value() == 0 || honest.keys[missing - 1].d.value() == 0) {
            // degenerate toy-group draws where the forged partial is a valid one
            session.aggregate(c);
            continue;
        }
        try {
            session.aggregate(c);
            FAIL("forged partial was aggregated");
        } catch (const SessionAbortedError& e) {
            CHECK(e.blame == std::vector<std::size_t>{missing});
        }
    }
}
