#pragma once

// Brute-force membership oracle: x is in piece P iff a generic polyline from
// x to P's witness crosses the boundary of P an even number of times.

#include <cstdint>
#include <vector>

#include "cpa2relu/instance.hpp"
#include "cpa2relu/sampling.hpp"

namespace cpa2relu {

inline constexpr std::size_t kMaxReroutes = 64;

/// Crossing parity (true = odd) of a path from `from` to `to` against the
/// given edges. The straight segment is tried first; on DEGENERATE the path
/// is rerouted through random via-points.
inline bool route_parity(const Point& from, const Point& to, const std::vector<EdgeGeom>& boundary,
                         std::uint64_t seed) {
    if (from == to) return false;
    auto attempt = [&](const std::vector<Point>& path) -> std::optional<std::size_t> {
        std::size_t total = 0;
        for (const auto& e : boundary) {
            const auto c = crossing_count(path, e);
            if (!c) return std::nullopt;
            total += *c;
        }
        return total;
    };
    if (const auto c = attempt({from, to})) return *c % 2 == 1;

    std::vector<Point> anchors{from, to};
    for (const auto& e : boundary) anchors.push_back(hull_base(e));
    const Box box = extent_box(anchors, make_rat(3, 2));
    Rng rng(seed);
    for (std::size_t i = 0; i < kMaxReroutes; ++i) {
        // Prime denominator keeps via-points off dyadic and small-denominator structure.
        const Point via = rng.in_box(box, 65521);
        if (via == from || via == to) continue;
        if (const auto c = attempt({from, via, to})) return *c % 2 == 1;
    }
    throw Error(ErrorCode::RetriesExhausted, "could not find a generic path");
}

inline std::vector<EdgeGeom> piece_boundary_geoms(const Instance& inst, std::size_t piece) {
    std::vector<EdgeGeom> out;
    for (std::size_t e : inst.piece_edges(piece)) out.push_back(inst.edges[e].geom);
    return out;
}

/// 1_P(x) for x off the boundary of P. Throws ON_BOUNDARY otherwise.
inline bool member(const Instance& inst, std::size_t piece, const Point& x, std::uint64_t seed = 0) {
    const auto boundary = piece_boundary_geoms(inst, piece);
    for (const auto& e : boundary)
        if (on_edge(x, e))
            throw Error(ErrorCode::OnBoundary, "point lies on the boundary of piece " + inst.pieces[piece].id);
    return !route_parity(x, inst.pieces[piece].witness, boundary, seed);
}

} // namespace cpa2relu
