#include "mpsig/io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace mpsig {

namespace {

int hex_nibble(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    return -1;
}

// Ordered key=value lines; duplicate keys (r.N, proxy_id.N) are kept.
struct Lines {
    std::vector<std::pair<std::string, std::string>> kv;

    const std::string& get(const std::string& key) const {
        for (const auto& [k, v] : kv)
            if (k == key) return v;
        throw ParseError("missing field `" + key + "`");
    }

    bool has(const std::string& key) const {
        for (const auto& [k, v] : kv)
            if (k == key) return true;
        return false;
    }

    // Values of `prefix.1`, `prefix.2`, ... which must be contiguous from 1.
    std::vector<std::string> indexed(const std::string& prefix) const {
        std::map<unsigned long, std::string> found;
        for (const auto& [k, v] : kv) {
            if (k.rfind(prefix + ".", 0) != 0) continue;
            const std::string tail = k.substr(prefix.size() + 1);
            std::size_t pos = 0;
            unsigned long idx = 0;
            try {
                idx = std::stoul(tail, &pos);
            } catch (const std::exception&) {
                throw ParseError("bad index in field `" + k + "`");
            }
            if (pos != tail.size() || idx == 0)
                throw ParseError("bad index in field `" + k + "`");
            if (!found.emplace(idx, v).second)
                throw ParseError("duplicate field `" + k + "`");
        }
        std::vector<std::string> out;
        for (unsigned long i = 1; i <= found.size(); ++i) {
            auto it = found.find(i);
            if (it == found.end())
                throw ParseError("non-contiguous `" + prefix + ".N` fields");
            out.push_back(it->second);
        }
        return out;
    }
};

Lines read_lines(std::istream& is) {
    Lines lines;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line without `=`: " + line);
        lines.kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return lines;
}

std::uint64_t u64_of(const std::string& s) {
    if (s.empty()) throw ParseError("empty integer field");
    std::uint64_t v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw ParseError("bad integer: " + s);
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
}

GroupElement element_of(const std::string& hex, const ParamsPtr& params) {
    Bignum v = bignum_of_hex(hex);
    if (v < 1 || v >= params->p) throw ParseError("group element out of range");
    return GroupElement(v, params);
}

Scalar scalar_of(const std::string& hex, const ParamsPtr& params) {
    Bignum v = bignum_of_hex(hex);
    if (v >= params->q) throw ParseError("scalar out of range");
    return Scalar(v, params);
}

Warrant warrant_of(const Lines& lines) {
    Warrant w;
    w.original_id = bytes_of_hex(lines.get("original_id"));
    for (const std::string& id : lines.indexed("proxy_id"))
        w.proxy_ids.push_back(bytes_of_hex(id));
    w.valid_from = u64_of(lines.get("valid_from"));
    w.valid_to = u64_of(lines.get("valid_to"));
    w.message_prefix = bytes_of_hex(lines.get("message_prefix"));
    try {
        validate_warrant(w);
    } catch (const InvariantError& e) {
        throw ParseError(std::string("invalid warrant: ") + e.what());
    }
    return w;
}

MultiDelegationRecord record_of(const Lines& lines, const ParamsPtr& params) {
    Warrant w = warrant_of(lines);
    GroupElement r = element_of(lines.get("r"), params);
    std::vector<GroupElement> r_list;
    for (const std::string& ri : lines.indexed("r"))
        r_list.push_back(element_of(ri, params));
    if (r_list.size() != w.size()) throw ParseError("r.N count does not match the warrant");
    return MultiDelegationRecord{w, r, r_list};
}

}  // namespace

std::string hex_of(const Bignum& v) {
    if (v < 0) throw InvariantError("negative big integer");
    return v.str(0, std::ios_base::hex);
}

Bignum bignum_of_hex(const std::string& s) {
    if (s.empty()) throw ParseError("empty hex integer");
    Bignum v = 0;
    for (char ch : s) {
        int nib = hex_nibble(ch);
        if (nib < 0) throw ParseError("bad hex digit in: " + s);
        v = v * 16 + nib;
    }
    if (s.size() > 1 && s[0] == '0') throw ParseError("leading zeros in hex integer: " + s);
    return v;
}

std::string hex_of(const Bytes& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (std::uint8_t byte : b) {
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

Bytes bytes_of_hex(const std::string& s) {
    if (s.size() % 2) throw ParseError("odd-length hex string");
    Bytes out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2) {
        int hi = hex_nibble(s[i]), lo = hex_nibble(s[i + 1]);
        if (hi < 0 || lo < 0) throw ParseError("bad hex digit in: " + s);
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

void write_params(std::ostream& os, const GroupParams& params) {
    os << "p=" << hex_of(params.p) << "\n"
       << "q=" << hex_of(params.q) << "\n"
       << "g=" << hex_of(params.g) << "\n";
}

ParamsPtr read_params(std::istream& is) {
    Lines lines = read_lines(is);
    ParamsPtr params = make_group(bignum_of_hex(lines.get("p")),
                                  bignum_of_hex(lines.get("q")),
                                  bignum_of_hex(lines.get("g")));
    if (!validate_params(*params)) throw ParseError("invalid group parameters");
    return params;
}

void write_keypair(std::ostream& os, const KeyPair& key) {
    os << "x=" << hex_of(key.x.value()) << "\n"
       << "y=" << hex_of(key.y.value()) << "\n";
}

KeyPair read_keypair(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    return KeyPair{scalar_of(lines.get("x"), params), element_of(lines.get("y"), params)};
}

GroupElement read_public_key(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    return element_of(lines.get("y"), params);
}

void write_public_key(std::ostream& os, const GroupElement& y) {
    os << "y=" << hex_of(y.value()) << "\n";
}

void write_warrant(std::ostream& os, const Warrant& w) {
    validate_warrant(w);
    os << "original_id=" << hex_of(w.original_id) << "\n";
    for (std::size_t i = 0; i < w.proxy_ids.size(); ++i)
        os << "proxy_id." << (i + 1) << "=" << hex_of(w.proxy_ids[i]) << "\n";
    os << "valid_from=" << w.valid_from << "\n"
       << "valid_to=" << w.valid_to << "\n"
       << "message_prefix=" << hex_of(w.message_prefix) << "\n";
}

Warrant read_warrant(std::istream& is) {
    return warrant_of(read_lines(is));
}

void write_record(std::ostream& os, const MultiDelegationRecord& record) {
    write_warrant(os, record.warrant);
    os << "r=" << hex_of(record.r.value()) << "\n";
    for (std::size_t i = 0; i < record.r_list.size(); ++i)
        os << "r." << (i + 1) << "=" << hex_of(record.r_list[i].value()) << "\n";
}

MultiDelegationRecord read_record(std::istream& is, const ParamsPtr& params) {
    return record_of(read_lines(is), params);
}

void write_share(std::ostream& os, const DelegationShare& share) {
    write_record(os, share.record);
    os << "i=" << share.index << "\n"
       << "sigma=" << hex_of(share.sigma.value()) << "\n";
}

DelegationShare read_share(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    MultiDelegationRecord record = record_of(lines, params);
    std::size_t index = static_cast<std::size_t>(u64_of(lines.get("i")));
    if (index < 1 || index > record.r_list.size()) throw ParseError("share index out of range");
    return DelegationShare{index, scalar_of(lines.get("sigma"), params), std::move(record)};
}

void write_signing_key(std::ostream& os, const ProxySigningKey& key) {
    os << "i=" << key.index << "\n"
       << "d=" << hex_of(key.d.value()) << "\n"
       << "V=" << hex_of(key.V.value()) << "\n";
}

ProxySigningKey read_signing_key(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    return ProxySigningKey{static_cast<std::size_t>(u64_of(lines.get("i"))),
                           scalar_of(lines.get("d"), params),
                           element_of(lines.get("V"), params)};
}

void write_kim_delegation(std::ostream& os, const KimDelegation& d) {
    write_warrant(os, d.warrant);
    os << "s=" << hex_of(d.s.value()) << "\n"
       << "r=" << hex_of(d.r.value()) << "\n";
}

KimDelegation read_kim_delegation(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    return KimDelegation{warrant_of(lines), scalar_of(lines.get("s"), params),
                         element_of(lines.get("r"), params)};
}

void write_signature(std::ostream& os, const StoredSignature& sig) {
    if (const auto* schnorr = std::get_if<SchnorrSignature>(&sig)) {
        os << "scheme=schnorr\n"
           << "T=" << hex_of(schnorr->T.value()) << "\n"
           << "s=" << hex_of(schnorr->s.value()) << "\n";
    } else if (const auto* kim = std::get_if<KimProxySignature>(&sig)) {
        os << "scheme=kim\n";
        write_warrant(os, kim->warrant);
        os << "r=" << hex_of(kim->r.value()) << "\n"
           << "T=" << hex_of(kim->inner.T.value()) << "\n"
           << "inner_s=" << hex_of(kim->inner.s.value()) << "\n";
    } else {
        const auto& multi = std::get<MultiProxySignature>(sig);
        os << "scheme=multiproxy\n";
        write_warrant(os, multi.warrant);
        os << "r=" << hex_of(multi.r.value()) << "\n"
           << "T=" << hex_of(multi.T.value()) << "\n"
           << "s=" << hex_of(multi.s.value()) << "\n";
    }
}

StoredSignature read_signature(std::istream& is, const ParamsPtr& params) {
    Lines lines = read_lines(is);
    const std::string& scheme = lines.get("scheme");
    if (scheme == "schnorr") {
        return SchnorrSignature{element_of(lines.get("T"), params),
                                scalar_of(lines.get("s"), params)};
    }
    if (scheme == "kim") {
        return KimProxySignature{warrant_of(lines), element_of(lines.get("r"), params),
                                 SchnorrSignature{element_of(lines.get("T"), params),
                                                  scalar_of(lines.get("inner_s"), params)}};
    }
    if (scheme == "multiproxy") {
        return MultiProxySignature{warrant_of(lines), element_of(lines.get("r"), params),
                                   element_of(lines.get("T"), params),
                                   scalar_of(lines.get("s"), params)};
    }
    throw ParseError("unknown scheme: " + scheme);
}

}  // namespace mpsig
