#pragma once

#include <cstdint>

#include "cpa2relu/membership.hpp"

namespace cpa2relu {

/// f(x), the ground truth every later stage is compared against. On an edge
/// or vertex the value of every incident piece is computed and must agree.
inline Rat eval_cpa(const Instance& inst, const Point& x, std::uint64_t seed = 0) {
    std::vector<std::size_t> incident;
    for (std::size_t v = 0; v < inst.vertices.size(); ++v)
        if (inst.vertices[v].pos == x)
            for (std::size_t e : inst.incident_edges(v)) incident.insert(incident.end(), inst.edges[e].pieces.begin(), inst.edges[e].pieces.end());
    if (incident.empty())
        for (const auto& e : inst.edges)
            if (on_edge(x, e.geom)) {
                incident.assign(e.pieces.begin(), e.pieces.end());
                break;
            }
    if (!incident.empty()) {
        const Rat value = inst.pieces[incident.front()].affine(x);
        for (std::size_t p : incident)
            if (inst.pieces[p].affine(x) != value)
                throw Error(ErrorCode::ContinuityViolation, "pieces disagree at a boundary point");
        return value;
    }
    for (std::size_t p = 0; p < inst.pieces.size(); ++p)
        if (member(inst, p, x, seed)) return inst.pieces[p].affine(x);
    throw Error(ErrorCode::NoPieceFound, "no piece contains (" + to_string(x.x) + ", " + to_string(x.y) + ")");
}

} // namespace cpa2relu
