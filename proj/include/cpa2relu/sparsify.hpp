#pragma once

// Removal of degree-2 vertices. At such a vertex both edges bound the same
// two pieces Q, R. If f_Q != f_R the edges are collinear and are fused into
// one edge; if f_Q == f_R the two pieces are fused into one and every edge
// between them disappears.

#include <cstdint>
#include <optional>
#include <vector>

#include "cpa2relu/conic_sides.hpp"
#include "cpa2relu/validate.hpp"

namespace cpa2relu {

namespace detail {

/// Drops deleted vertices, edges and pieces and renumbers every reference.
inline Instance compact(const Instance& inst, const std::vector<bool>& keep_vertex, const std::vector<bool>& keep_edge,
                        const std::vector<bool>& keep_piece) {
    constexpr std::size_t gone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> vmap(inst.vertices.size(), gone), emap(inst.edges.size(), gone),
        pmap(inst.pieces.size(), gone);
    Instance out;
    for (std::size_t v = 0; v < inst.vertices.size(); ++v)
        if (keep_vertex[v]) {
            vmap[v] = out.vertices.size();
            out.vertices.push_back(inst.vertices[v]);
        }
    for (std::size_t p = 0; p < inst.pieces.size(); ++p)
        if (keep_piece[p]) {
            pmap[p] = out.pieces.size();
            out.pieces.push_back(inst.pieces[p]);
        }
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
        if (keep_edge[e]) {
            emap[e] = out.edges.size();
            Edge edge = inst.edges[e];
            if (edge.from) edge.from = vmap[*edge.from];
            if (edge.to) edge.to = vmap[*edge.to];
            edge.pieces = {pmap[edge.pieces[0]], pmap[edge.pieces[1]]};
            out.edges.push_back(std::move(edge));
        }
    for (auto& piece : out.pieces)
        for (auto& comp : piece.boundary) {
            std::vector<std::size_t> kept;
            for (std::size_t e : comp.edges)
                if (emap[e] != gone) kept.push_back(emap[e]);
            comp.edges = std::move(kept);
        }
    return out;
}

inline std::size_t other_vertex(const Edge& e, std::size_t v) { return e.from == v ? *e.to : *e.from; }

/// Case (i): fuse the two collinear edges at v.
inline Instance merge_edges(const Instance& inst, std::size_t v, std::size_t e1, std::size_t e2) {
    if (inst.edges[e2].id < inst.edges[e1].id) std::swap(e1, e2);
    const Edge& a = inst.edges[e1];
    const Edge& b = inst.edges[e2];
    const Point& pos = inst.vertices[v].pos;
    const Direction da = direction_at(inst, e1, v);
    const Direction db = direction_at(inst, e2, v);
    if (sign(cross(da, db)) != 0 || sign(dot(da, db)) >= 0)
        throw Error(ErrorCode::InvalidInput, "edges " + a.id + " and " + b.id + " meet at a bend between distinct affines");

    Instance out = inst;
    Edge merged;
    merged.id = a.id + "+" + b.id;
    merged.pieces = a.pieces;
    const bool a_seg = a.kind == EdgeKind::Segment;
    const bool b_seg = b.kind == EdgeKind::Segment;
    if (a_seg && b_seg) {
        merged.kind = EdgeKind::Segment;
        merged.from = other_vertex(a, v);
        merged.to = other_vertex(b, v);
        merged.geom = Segment{inst.vertices[*merged.from].pos, inst.vertices[*merged.to].pos};
    } else if (a_seg || b_seg) {
        const Edge& seg = a_seg ? a : b;
        const Edge& ray = a_seg ? b : a;
        merged.kind = EdgeKind::Ray;
        merged.from = other_vertex(seg, v);
        merged.geom = Ray{inst.vertices[*merged.from].pos, std::get<Ray>(ray.geom).dir};
    } else {
        merged.kind = EdgeKind::Line;
        merged.geom = Line{pos, da};
    }
    const std::size_t id = out.edges.size();
    out.edges.push_back(merged);

    for (std::size_t p : a.pieces)
        for (auto& comp : out.pieces[p].boundary) {
            auto& es = comp.edges;
            const auto i = std::find(es.begin(), es.end(), e1);
            const auto j = std::find(es.begin(), es.end(), e2);
            if (i == es.end() || j == es.end()) continue;
            const std::size_t at = static_cast<std::size_t>(std::min(i, j) - es.begin());
            std::erase_if(es, [&](std::size_t e) { return e == e1 || e == e2; });
            es.insert(es.begin() + static_cast<std::ptrdiff_t>(at), id);
            if (merged.kind == EdgeKind::Line) comp.kind = ComponentKind::Arc;
        }

    std::vector<bool> keep_v(out.vertices.size(), true), keep_e(out.edges.size(), true),
        keep_p(out.pieces.size(), true);
    keep_v[v] = false;
    keep_e[e1] = keep_e[e2] = false;
    return compact(out, keep_v, keep_e, keep_p);
}

/// Case (ii): fuse pieces q and r, which carry the same affine.
inline Instance merge_pieces(const Instance& inst, std::size_t q, std::size_t r, std::uint64_t seed) {
    if (inst.pieces[r].id < inst.pieces[q].id) std::swap(q, r);
    Instance out = inst;
    std::vector<bool> keep_v(out.vertices.size(), true), keep_e(out.edges.size(), true),
        keep_p(out.pieces.size(), true);
    keep_p[r] = false;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        Edge& edge = out.edges[e];
        const bool has_q = edge.pieces[0] == q || edge.pieces[1] == q;
        const bool has_r = edge.pieces[0] == r || edge.pieces[1] == r;
        if (has_q && has_r) keep_e[e] = false;
        else
            for (auto& p : edge.pieces)
                if (p == r) p = q;
    }
    // Both boundaries are re-derived below; keep only the surviving edge set.
    auto& merged = out.pieces[q].boundary;
    std::vector<std::size_t> edges;
    for (std::size_t p : {q, r})
        for (std::size_t e : inst.piece_edges(p))
            if (keep_e[e]) edges.push_back(e);
    merged = edges.empty() ? std::vector<BoundaryComponent>{} : std::vector<BoundaryComponent>{{ComponentKind::Cycle, edges}};
    out.pieces[r].boundary.clear();
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
        bool used = false;
        for (std::size_t e = 0; e < out.edges.size() && !used; ++e) used = keep_e[e] && out.edges[e].has_vertex(v);
        keep_v[v] = used;
    }
    Instance compacted = compact(out, keep_v, keep_e, keep_p);
    const std::size_t nq = static_cast<std::size_t>(std::count(keep_p.begin(), keep_p.begin() + static_cast<std::ptrdiff_t>(q), true));
    if (!compacted.pieces[nq].boundary.empty()) compacted.pieces[nq].boundary = trace_boundary(compacted, nq, seed);
    return compacted;
}

} // namespace detail

/// One step of the fixpoint: the degree-2 vertex with the smallest id, if any.
inline std::optional<std::size_t> next_degree_two_vertex(const Instance& inst) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < inst.vertices.size(); ++v)
        if (inst.degree(v) == 2 && (!best || inst.vertices[v].id < inst.vertices[*best].id)) best = v;
    return best;
}

inline Instance sparsify_step(const Instance& inst, std::size_t v, std::uint64_t seed = 0) {
    const auto incident = inst.incident_edges(v);
    const Edge& a = inst.edges[incident[0]];
    const Edge& b = inst.edges[incident[1]];
    auto pa = a.pieces;
    auto pb = b.pieces;
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb)
        throw Error(ErrorCode::InvalidInput, "edges at degree-2 vertex " + inst.vertices[v].id + " bound different pieces");
    if (inst.pieces[pa[0]].affine == inst.pieces[pa[1]].affine) return detail::merge_pieces(inst, pa[0], pa[1], seed);
    return detail::merge_edges(inst, v, incident[0], incident[1]);
}

/// Equivalent instance in which every vertex has degree at least 3.
inline Instance sparsify(const Instance& inst, std::uint64_t seed = 0) {
    ValidateOptions opts;
    opts.seed = seed;
    if (!validate(inst, opts).ok()) throw Error(ErrorCode::InvalidInput, "sparsify requires a valid instance");
    Instance cur = inst;
    while (const auto v = next_degree_two_vertex(cur)) cur = sparsify_step(cur, *v, seed);
    return cur;
}

} // namespace cpa2relu
