#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpsig/cost_report.hpp"
#include "mpsig/io.hpp"

namespace fs = std::filesystem;
using namespace mpsig;

namespace {

// 0 success; 1 verification-false; 2 malformed input; 3 protocol abort;
// 4 internal error.
enum ExitStatus : int {
    kOk = 0,
    kVerifyFalse = 1,
    kMalformed = 2,
    kAborted = 3,
    kInternal = 4,
};

std::unique_ptr<RandomSource> make_rng(const std::string& seed_hex) {
    if (seed_hex.empty()) return std::make_unique<SystemRandom>();
    return std::make_unique<SeededRandom>(bytes_of_hex(seed_hex));
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open " + path);
    return is;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    return os;
}

ParamsPtr load_params(const std::string& path) {
    auto is = open_in(path);
    return read_params(is);
}

KeyPair load_keypair(const std::string& path, const ParamsPtr& params) {
    auto is = open_in(path);
    return read_keypair(is, params);
}

GroupElement load_public_key(const std::string& path, const ParamsPtr& params) {
    auto is = open_in(path);
    return read_public_key(is, params);
}

Bytes message_bytes(const std::string& m) {
    return Bytes(m.begin(), m.end());
}

int cmd_params(unsigned q_bits, unsigned p_bits, const std::string& out, const std::string& seed) {
    auto rng = make_rng(seed);
    ParamsPtr params = generate_params(q_bits, p_bits, *rng);
    auto os = open_out(out);
    write_params(os, *params);
    return kOk;
}

int cmd_keygen(const std::string& params_path, const std::string& out, const std::string& seed) {
    ParamsPtr params = load_params(params_path);
    auto rng = make_rng(seed);
    KeyPair key = keygen(*rng, params);
    auto os = open_out(out);
    write_keypair(os, key);
    return kOk;
}

int cmd_delegate(const std::string& params_path, const std::string& key_path,
                 const std::string& warrant_path, const std::string& out_dir,
                 const std::string& scheme, const std::string& seed) {
    ParamsPtr params = load_params(params_path);
    KeyPair original = load_keypair(key_path, params);
    auto wis = open_in(warrant_path);
    Warrant warrant = read_warrant(wis);
    auto rng = make_rng(seed);
    OpCounter counter;
    fs::create_directories(out_dir);

    if (scheme == "kim") {
        if (warrant.size() != 1)
            throw ParseError("kim delegation requires a warrant with exactly one proxy");
        KimDelegation d = kim_delegate(original.x, warrant, *rng, counter);
        auto os = open_out(out_dir + "/delegation.txt");
        write_kim_delegation(os, d);
        return kOk;
    }

    MultiDelegation delegation = multi_delegate(original.x, warrant, *rng, counter);
    {
        auto os = open_out(out_dir + "/record.txt");
        write_record(os, delegation.record);
    }
    for (const DelegationShare& share : delegation.shares) {
        auto os = open_out(out_dir + "/share." + std::to_string(share.index) + ".txt");
        write_share(os, share);
    }
    return kOk;
}

int cmd_accept(const std::string& params_path, const std::string& share_path,
               const std::string& key_path, const std::string& orig_pub_path,
               const std::string& out) {
    ParamsPtr params = load_params(params_path);
    auto sis = open_in(share_path);
    DelegationShare share = read_share(sis, params);
    KeyPair proxy = load_keypair(key_path, params);
    GroupElement y0 = load_public_key(orig_pub_path, params);

    OpCounter counter;
    if (!verify_share(share, y0, counter)) {
        std::cerr << "share " << share.index << " fails g^sigma = y0^e * r_i\n";
        return kVerifyFalse;
    }
    ProxySigningKey key = derive_signing_key(share, proxy.x, y0, proxy.y, counter);
    auto os = open_out(out);
    write_signing_key(os, key);
    return kOk;
}

int cmd_sign(const std::string& params_path, const std::string& scheme,
             const std::string& key_path, const std::string& delegation_path,
             const std::string& orig_pub_path, const std::string& message,
             std::uint64_t now, const std::string& out, const std::string& seed) {
    ParamsPtr params = load_params(params_path);
    auto rng = make_rng(seed);
    OpCounter counter;

    StoredSignature sig = [&]() -> StoredSignature {
        if (scheme == "schnorr") {
            if (key_path.empty()) throw ParseError("--key is required for schnorr signing");
            KeyPair key = load_keypair(key_path, params);
            return sign(message_bytes(message), key, *rng, counter);
        }
        if (delegation_path.empty() || orig_pub_path.empty())
            throw ParseError("--delegation and --orig-pub are required for kim signing");
        auto dis = open_in(delegation_path);
        KimDelegation d = read_kim_delegation(dis, params);
        GroupElement y0 = load_public_key(orig_pub_path, params);
        return kim_proxy_sign(message_bytes(message), d, y0, *rng, counter, now);
    }();

    auto os = open_out(out);
    write_signature(os, sig);
    return kOk;
}

int cmd_session(const std::string& params_path, const std::string& record_path,
                const std::vector<std::string>& signer_paths, const std::string& message,
                const std::string& out_dir, const std::string& seed) {
    ParamsPtr params = load_params(params_path);
    auto ris = open_in(record_path);
    MultiDelegationRecord record = read_record(ris, params);
    const std::size_t n = record.warrant.size();
    if (signer_paths.size() != n)
        throw ParseError("need exactly one --signer file per warrant proxy");

    std::vector<std::optional<ProxySigningKey>> keys(n);
    for (const std::string& path : signer_paths) {
        auto is = open_in(path);
        ProxySigningKey key = read_signing_key(is, params);
        if (key.index < 1 || key.index > n) throw ParseError("signer index out of range in " + path);
        if (keys[key.index - 1]) throw ParseError("duplicate signer index in " + path);
        keys[key.index - 1] = std::move(key);
    }

    auto rng = make_rng(seed);
    OpCounter counter;
    fs::create_directories(out_dir);

    std::vector<GroupElement> partial_keys;
    for (const auto& key : keys) partial_keys.push_back(key->V);
    SigningSession session(message_bytes(message), record, partial_keys);

    std::vector<std::optional<Scalar>> nonces(n);
    for (std::size_t i = 1; i <= n; ++i) {
        auto [t, T] = round1_commit(*rng, params, counter);
        nonces[i - 1] = t;
        session.submit_commitment(i, T);
        auto os = open_out(out_dir + "/commit." + std::to_string(i) + ".txt");
        os << "i=" << i << "\n"
           << "t=" << hex_of(t.value()) << "\n"
           << "T=" << hex_of(T.value()) << "\n";
    }

    auto [T, c] = session.finalize_challenge(counter);
    {
        auto os = open_out(out_dir + "/challenge.txt");
        os << "T=" << hex_of(T.value()) << "\n"
           << "c=" << hex_of(c.value()) << "\n";
    }

    for (std::size_t i = 1; i <= n; ++i) {
        Scalar si = round2_respond(*nonces[i - 1], keys[i - 1]->d, c);
        session.submit_response(i, si);
        auto os = open_out(out_dir + "/response." + std::to_string(i) + ".txt");
        os << "i=" << i << "\n"
           << "s=" << hex_of(si.value()) << "\n";
    }

    MultiProxySignature sig = session.aggregate(counter);
    auto os = open_out(out_dir + "/signature.txt");
    write_signature(os, sig);
    return kOk;
}

int cmd_verify(const std::string& params_path, const std::string& sig_path,
               const std::string& message, std::uint64_t now,
               const std::string& orig_pub_path, const std::vector<std::string>& pub_paths) {
    ParamsPtr params = load_params(params_path);
    auto sis = open_in(sig_path);
    StoredSignature sig = read_signature(sis, params);
    OpCounter counter;
    Bytes m = message_bytes(message);

    bool ok = false;
    if (const auto* schnorr = std::get_if<SchnorrSignature>(&sig)) {
        if (pub_paths.size() != 1)
            throw ParseError("schnorr verification takes exactly one --pub");
        ok = verify(m, *schnorr, load_public_key(pub_paths[0], params), counter);
    } else if (const auto* kim = std::get_if<KimProxySignature>(&sig)) {
        if (orig_pub_path.empty()) throw ParseError("--orig-pub is required");
        ok = kim_proxy_verify(m, *kim, load_public_key(orig_pub_path, params), counter, now);
    } else {
        const auto& multi = std::get<MultiProxySignature>(sig);
        if (orig_pub_path.empty()) throw ParseError("--orig-pub is required");
        if (pub_paths.size() != multi.warrant.size())
            throw ParseError("need one --pub per warrant proxy, in warrant order");
        std::vector<GroupElement> y_list;
        for (const std::string& path : pub_paths)
            y_list.push_back(load_public_key(path, params));
        ok = verify_multiproxy(m, multi, load_public_key(orig_pub_path, params),
                               y_list, now, counter);
    }
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? kOk : kVerifyFalse;
}

int cmd_costs(unsigned n, const std::string& group, const std::string& params_path,
              const std::string& format, const std::string& seed) {
    ParamsPtr params;
    if (group == "toy") {
        params = toy_group();
    } else {
        if (params_path.empty()) throw ParseError("--group file requires --params");
        params = load_params(params_path);
    }
    auto rng = make_rng(seed);
    std::vector<PhaseCosts> costs = measure(n, *rng, params);
    if (format == "csv") {
        std::cout << render_csv(costs);
    } else {
        std::cout << render_table(costs);
        std::cout << "\n" << lin_reference_block();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-log signature toolkit: Schnorr, single-proxy delegation "
                 "with warrant, and multi-proxy signing"};
    app.require_subcommand(1);

    std::string params_path, key_path, warrant_path, out, seed, scheme = "multi";
    std::string share_path, orig_pub, record_path, sig_path, delegation_path;
    std::string message, group = "toy", format = "table";
    std::vector<std::string> signers, pubs;
    unsigned q_bits = 160, p_bits = 512, n = 2;
    std::uint64_t now = 0;

    auto* params_cmd = app.add_subcommand("params", "Generate group parameters");
    params_cmd->add_option("--q-bits", q_bits);
    params_cmd->add_option("--p-bits", p_bits);
    params_cmd->add_option("--out", out)->required();
    params_cmd->add_option("--seed", seed);

    auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
    keygen_cmd->add_option("--params", params_path)->required();
    keygen_cmd->add_option("--out", out)->required();
    keygen_cmd->add_option("--seed", seed);

    auto* delegate_cmd = app.add_subcommand("delegate", "Delegate signing power under a warrant");
    delegate_cmd->add_option("--params", params_path)->required();
    delegate_cmd->add_option("--key", key_path)->required();
    delegate_cmd->add_option("--warrant", warrant_path)->required();
    delegate_cmd->add_option("--out", out)->required();
    delegate_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"multi", "kim"}));
    delegate_cmd->add_option("--seed", seed);

    auto* accept_cmd = app.add_subcommand("accept", "Verify a share and derive the signing key");
    accept_cmd->add_option("--params", params_path)->required();
    accept_cmd->add_option("--share", share_path)->required();
    accept_cmd->add_option("--key", key_path)->required();
    accept_cmd->add_option("--orig-pub", orig_pub)->required();
    accept_cmd->add_option("--out", out)->required();

    auto* sign_cmd = app.add_subcommand("sign", "Sign with the base or kim scheme");
    sign_cmd->add_option("--params", params_path)->required();
    sign_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"schnorr", "kim"}))->required();
    sign_cmd->add_option("--key", key_path);
    sign_cmd->add_option("--delegation", delegation_path);
    sign_cmd->add_option("--orig-pub", orig_pub);
    sign_cmd->add_option("--message", message)->required();
    sign_cmd->add_option("--now", now);
    sign_cmd->add_option("--out", out)->required();
    sign_cmd->add_option("--seed", seed);

    auto* session_cmd = app.add_subcommand("session", "Run a multi-proxy signing session");
    session_cmd->add_option("--params", params_path)->required();
    session_cmd->add_option("--record", record_path)->required();
    session_cmd->add_option("--signer", signers)->required();
    session_cmd->add_option("--message", message)->required();
    session_cmd->add_option("--out", out)->required();
    session_cmd->add_option("--seed", seed);

    auto* verify_cmd = app.add_subcommand("verify", "Verify a signature file");
    verify_cmd->add_option("--params", params_path)->required();
    verify_cmd->add_option("--sig", sig_path)->required();
    verify_cmd->add_option("--message", message)->required();
    verify_cmd->add_option("--now", now);
    verify_cmd->add_option("--orig-pub", orig_pub);
    verify_cmd->add_option("--pub", pubs);

    auto* costs_cmd = app.add_subcommand("costs", "Measure per-phase operation counts");
    costs_cmd->add_option("--n", n);
    costs_cmd->add_option("--group", group)->check(CLI::IsMember({"toy", "file"}));
    costs_cmd->add_option("--params", params_path);
    costs_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "csv"}));
    costs_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kMalformed;
    }

    try {
        if (params_cmd->parsed()) return cmd_params(q_bits, p_bits, out, seed);
        if (keygen_cmd->parsed()) return cmd_keygen(params_path, out, seed);
        if (delegate_cmd->parsed())
            return cmd_delegate(params_path, key_path, warrant_path, out, scheme, seed);
        if (accept_cmd->parsed())
            return cmd_accept(params_path, share_path, key_path, orig_pub, out);
        if (sign_cmd->parsed())
            return cmd_sign(params_path, scheme, key_path, delegation_path, orig_pub,
                            message, now, out, seed);
        if (session_cmd->parsed())
            return cmd_session(params_path, record_path, signers, message, out, seed);
        if (verify_cmd->parsed())
            return cmd_verify(params_path, sig_path, message, now, orig_pub, pubs);
        if (costs_cmd->parsed()) return cmd_costs(n, group, params_path, format, seed);
    } catch (const SessionAbortedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAborted;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const ConformanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFalse;
    } catch (const InvalidDelegationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFalse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
