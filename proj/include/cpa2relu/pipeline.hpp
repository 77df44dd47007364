#pragma once

#include <cstdint>

#include "cpa2relu/network.hpp"
#include "cpa2relu/sparsify.hpp"

namespace cpa2relu {

/// Every stage of the compiler for one instance.
struct Compiled {
    Instance sparse;
    Decomposition dec;
    TermList terms;
    ReluNetwork net;
};

/// validate -> sparsify -> decompose -> reduce -> build.
inline Compiled compile(const Instance& inst, std::uint64_t seed = 0) {
    Compiled c;
    c.sparse = sparsify(inst, seed);
    c.dec = decompose(c.sparse, seed);
    c.terms = reduce(c.dec, c.sparse.piece_count());
    c.net = build_network(c.terms);
    return c;
}

} // namespace cpa2relu
