#include "mpsig/warrant.hpp"

#include <set>

namespace mpsig {

void validate_warrant(const Warrant& w) {
    if (w.proxy_ids.empty()) throw InvariantError("warrant needs at least one proxy");
    std::set<Bytes> seen(w.proxy_ids.begin(), w.proxy_ids.end());
    if (seen.size() != w.proxy_ids.size()) throw InvariantError("duplicate proxy ids in warrant");
    if (w.valid_from > w.valid_to) throw InvariantError("warrant validity window is empty");
}

Bytes encode_warrant(const Warrant& w) {
    validate_warrant(w);
    std::vector<Field> fields;
    fields.emplace_back(w.original_id);
    fields.emplace_back(Bignum(w.proxy_ids.size())); // pins arity
    for (const Bytes& id : w.proxy_ids) fields.emplace_back(id);
    fields.emplace_back(Bignum(w.valid_from));
    fields.emplace_back(Bignum(w.valid_to));
    fields.emplace_back(w.message_prefix);
    return encode_fields(fields);
}

bool check_conformance(const Bytes& m, const Warrant& w, std::uint64_t now) {
    if (now < w.valid_from || now > w.valid_to) return false;
    if (m.size() < w.message_prefix.size()) return false;
    return std::equal(w.message_prefix.begin(), w.message_prefix.end(), m.begin());
}

}  // namespace mpsig
