#ifndef MPSIG_WARRANT_HPP
#define MPSIG_WARRANT_HPP

#include <cstdint>
#include <vector>

#include "mpsig/encoding.hpp"

namespace mpsig {

/// Delegation warrant m_w: who may sign what, for whom, and when. An empty
/// message_prefix means no message restriction.
struct Warrant {
    Bytes original_id;
    std::vector<Bytes> proxy_ids;  // pairwise distinct, n >= 1
    std::uint64_t valid_from = 0;  // epoch seconds, inclusive
    std::uint64_t valid_to = 0;    // epoch seconds, inclusive
    Bytes message_prefix;

    std::size_t size() const { return proxy_ids.size(); }
};

/// Throws InvariantError if the warrant is malformed.
void validate_warrant(const Warrant& w);

/// Injective byte encoding of all fields in declaration order (the proxy
/// count is encoded so warrants of different arity cannot collide).
Bytes encode_warrant(const Warrant& w);

/// True iff m starts with the warrant prefix and now is inside the window.
bool check_conformance(const Bytes& m, const Warrant& w, std::uint64_t now);

}  // namespace mpsig

#endif
