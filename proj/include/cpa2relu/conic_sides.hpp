#pragma once

// Local sides of a piece at its vertices (angular cones) and edges (closed
// half-planes), the conic coefficient c(P), and a runtime check of the
// indicator identity
//
//   sum_v 1[Q^v_P](x) + sum_{lines} 1[H^e_P](x) - sum_{segments} 1[H^e_P](x) + c(P) = 1[P](x)
//
// for x in P-general position.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cpa2relu/membership.hpp"

namespace cpa2relu {

/// Squared clearance of a vertex: distance to the nearest vertex or edge not
/// incident to it. nullopt when nothing else exists.
inline std::optional<Rat> vertex_clearance_sq(const Instance& inst, std::size_t v) {
    std::optional<Rat> best;
    auto consider = [&](const Rat& d) {
        if (!best || d < *best) best = d;
    };
    const Point& pos = inst.vertices[v].pos;
    for (std::size_t u = 0; u < inst.vertices.size(); ++u)
        if (u != v) consider(sq_distance(pos, inst.vertices[u].pos));
    for (const auto& e : inst.edges)
        if (!e.has_vertex(v)) consider(sq_distance(pos, e.geom));
    return best;
}

/// Squared clearance of an interior point of edge `skip` from every other
/// edge and every vertex.
inline std::optional<Rat> edge_point_clearance_sq(const Instance& inst, std::size_t skip, const Point& pos) {
    std::optional<Rat> best;
    auto consider = [&](const Rat& d) {
        if (!best || d < *best) best = d;
    };
    for (const auto& v : inst.vertices) consider(sq_distance(pos, v.pos));
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
        if (e != skip) consider(sq_distance(pos, inst.edges[e].geom));
    return best;
}

/// Incident edges of a vertex in CCW order with the piece owning each sector.
/// Sector i spans dirs[i] -> dirs[i+1 mod k].
struct VertexStar {
    std::size_t vertex = 0;
    std::vector<std::size_t> edges;
    std::vector<Direction> dirs;
    std::vector<std::size_t> owners;
};

inline VertexStar build_star(const Instance& inst, std::size_t v, std::uint64_t seed = 0) {
    VertexStar star;
    star.vertex = v;
    const auto incident = inst.incident_edges(v);
    std::vector<Direction> raw;
    for (std::size_t e : incident) raw.push_back(direction_at(inst, e, v));
    for (std::size_t i : ccw_sort_directions(raw)) {
        star.edges.push_back(incident[i]);
        star.dirs.push_back(raw[i]);
    }
    const std::size_t k = star.edges.size();
    const auto clearance = vertex_clearance_sq(inst, v);
    const Point& center = inst.vertices[v].pos;
    for (std::size_t i = 0; i < k; ++i) {
        const Edge& a = inst.edges[star.edges[i]];
        const Edge& b = inst.edges[star.edges[(i + 1) % k]];
        std::vector<std::size_t> candidates;
        for (std::size_t p : a.pieces)
            if ((b.pieces[0] == p || b.pieces[1] == p) &&
                std::find(candidates.begin(), candidates.end(), p) == candidates.end())
                candidates.push_back(p);
        const Point probe =
            probe_point(center, sector_interior_direction(star.dirs[i], star.dirs[(i + 1) % k]), clearance);
        std::optional<std::size_t> owner;
        for (std::size_t p : candidates)
            if (member(inst, p, probe, seed)) {
                owner = p;
                break;
            }
        if (!owner)
            throw Error(ErrorCode::InvalidInput, "no piece owns a sector at vertex " + inst.vertices[v].id);
        star.owners.push_back(*owner);
    }
    return star;
}

struct ConicCoeff {
    long d = 0;    // sum over V(P) of deg_P(v)/2 - 1
    long n_h = 0;  // holes
    long n_a = 0;  // arcs
    long c = 0;    // 1 + d - n_h - n_a
};

/// True iff `inside` lies in the bounded region of the cycle.
inline bool inside_cycle(const Instance& inst, const BoundaryComponent& cycle, const Point& inside,
                         std::uint64_t seed = 0) {
    std::vector<EdgeGeom> geoms;
    std::vector<Point> pts{inside};
    for (std::size_t e : cycle.edges) {
        geoms.push_back(inst.edges[e].geom);
        pts.push_back(hull_base(inst.edges[e].geom));
    }
    const Box box = extent_box(pts, Rat(2));
    const Point far{box.xmax + 1, box.ymax + make_rat(1, 3)};
    return route_parity(inside, far, geoms, seed);
}

inline ConicCoeff compute_conic_coeff(const Instance& inst, std::size_t piece, std::uint64_t seed = 0) {
    ConicCoeff k;
    for (std::size_t v : inst.piece_vertices(piece))
        k.d += static_cast<long>(inst.piece_degree(piece, v)) / 2 - 1;
    for (const auto& comp : inst.pieces[piece].boundary) {
        if (comp.kind == ComponentKind::Arc) ++k.n_a;
        else if (!inside_cycle(inst, comp, inst.pieces[piece].witness, seed)) ++k.n_h;
    }
    k.c = 1 + k.d - k.n_h - k.n_a;
    return k;
}

struct IdentityCheck {
    long lhs = 0;
    long rhs = 0;
    bool ok = false;
};

/// Precomputed local structure of an instance: vertex stars, the piece lying
/// on the left of every edge, and conic coefficients. Holds a reference to
/// the instance, which must outlive it.
class ConicSides {
public:
    explicit ConicSides(const Instance& inst, std::uint64_t seed = 0) : inst_(inst), seed_(seed) {
        for (std::size_t v = 0; v < inst.vertices.size(); ++v) stars_.push_back(build_star(inst, v, seed));
        for (std::size_t e = 0; e < inst.edges.size(); ++e) left_piece_.push_back(find_left_piece(e));
        for (std::size_t p = 0; p < inst.pieces.size(); ++p) coeffs_.push_back(compute_conic_coeff(inst, p, seed));
    }

    const Instance& instance() const { return inst_; }
    const VertexStar& star(std::size_t v) const { return stars_[v]; }
    const ConicCoeff& conic_coeff(std::size_t piece) const { return coeffs_[piece]; }

    /// The incident piece on the left of the edge's directed hull.
    std::size_t left_piece(std::size_t e) const { return left_piece_[e]; }

    bool member(std::size_t piece, const Point& x) const { return cpa2relu::member(inst_, piece, x, seed_); }

    /// x in Q^v_P. Directions along an edge of P are not in general position.
    bool vertex_cone_contains(std::size_t piece, std::size_t v, const Point& x) const {
        const VertexStar& s = stars_[v];
        const Direction u = x - inst_.vertices[v].pos;
        if (u.is_zero()) throw Error(ErrorCode::GeneralPositionViolation, "point coincides with vertex");
        const SectorLocation loc = locate_sector(s.dirs, u);
        if (loc.on_ray) {
            const Edge& e = inst_.edges[s.edges[*loc.on_ray]];
            if (e.pieces[0] == piece || e.pieces[1] == piece)
                throw Error(ErrorCode::GeneralPositionViolation, "point lies along an edge of the piece");
            return false;
        }
        return s.owners[loc.sector] == piece;
    }

    /// x in H^e_P; empty half-plane when P does not border e.
    bool edge_halfplane_contains(std::size_t piece, std::size_t e, const Point& x) const {
        const Edge& edge = inst_.edges[e];
        const int side = hull_side(edge.geom, x);
        if (side == 0) throw Error(ErrorCode::GeneralPositionViolation, "point lies on the affine hull of " + edge.id);
        if (edge.pieces[0] != piece && edge.pieces[1] != piece) return false;
        return (side > 0) == (left_piece_[e] == piece);
    }

    IdentityCheck indicator_identity_check(std::size_t piece, const Point& x) const {
        const auto edges = inst_.piece_edges(piece);
        for (std::size_t e : edges)
            if (on_affine_hull(x, inst_.edges[e].geom))
                throw Error(ErrorCode::GeneralPositionViolation, "point is not in general position for the piece");
        IdentityCheck r;
        for (std::size_t v : inst_.piece_vertices(piece)) r.lhs += vertex_cone_contains(piece, v, x) ? 1 : 0;
        for (std::size_t e : edges) {
            const EdgeKind kind = inst_.edges[e].kind;
            if (kind == EdgeKind::Line) r.lhs += edge_halfplane_contains(piece, e, x) ? 1 : 0;
            else if (kind == EdgeKind::Segment) r.lhs -= edge_halfplane_contains(piece, e, x) ? 1 : 0;
        }
        r.lhs += coeffs_[piece].c;
        r.rhs = member(piece, x) ? 1 : 0;
        r.ok = r.lhs == r.rhs;
        return r;
    }

private:
    std::size_t find_left_piece(std::size_t e) const {
        const Edge& edge = inst_.edges[e];
        const Point m = interior_point(edge.geom);
        const Point probe = probe_point(m, rot90(hull_dir(edge.geom)), edge_point_clearance_sq(inst_, e, m));
        const bool first = cpa2relu::member(inst_, edge.pieces[0], probe, seed_);
        const bool second = cpa2relu::member(inst_, edge.pieces[1], probe, seed_);
        if (first == second)
            throw Error(ErrorCode::InvalidInput, "edge " + edge.id + " does not separate its two pieces");
        return first ? edge.pieces[0] : edge.pieces[1];
    }

    const Instance& inst_;
    std::uint64_t seed_;
    std::vector<VertexStar> stars_;
    std::vector<std::size_t> left_piece_;
    std::vector<ConicCoeff> coeffs_;
};

/// Re-derives the boundary components of a piece from its edge set. Where
/// several components meet at a vertex, the two edges bounding each sector
/// outside the piece belong to the same component.
inline std::vector<BoundaryComponent> trace_boundary(const Instance& inst, std::size_t piece, std::uint64_t seed = 0) {
    const auto edges = inst.piece_edges(piece);
    // partner[(vertex, edge)] = the other edge of the same component at that vertex.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> partner;
    for (std::size_t v : inst.piece_vertices(piece)) {
        std::vector<std::size_t> local;
        std::vector<Direction> dirs;
        for (std::size_t e : edges)
            if (inst.edges[e].has_vertex(v)) {
                local.push_back(e);
                dirs.push_back(direction_at(inst, e, v));
            }
        if (local.size() % 2 != 0)
            throw Error(ErrorCode::InvalidInput, "odd piece degree at vertex " + inst.vertices[v].id);
        if (local.size() == 2) {
            partner[{v, local[0]}] = local[1];
            partner[{v, local[1]}] = local[0];
            continue;
        }
        const auto order = ccw_sort_directions(dirs);
        const auto clearance = vertex_clearance_sq(inst, v);
        const std::size_t k = order.size();
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t a = order[i];
            const std::size_t b = order[(i + 1) % k];
            const Point probe = probe_point(inst.vertices[v].pos, sector_interior_direction(dirs[a], dirs[b]), clearance);
            if (!member(inst, piece, probe, seed)) {
                partner[{v, local[a]}] = local[b];
                partner[{v, local[b]}] = local[a];
            }
        }
    }

    std::vector<BoundaryComponent> out;
    std::vector<bool> used(inst.edges.size(), false);
    auto other_end = [&](std::size_t e, std::size_t v) -> std::optional<std::size_t> {
        const Edge& edge = inst.edges[e];
        if (edge.kind != EdgeKind::Segment) return std::nullopt;
        return edge.from == v ? edge.to : edge.from;
    };
    auto walk = [&](std::size_t start, std::size_t v, BoundaryComponent& comp) {
        std::size_t e = start;
        while (true) {
            const auto it = partner.find({v, e});
            if (it == partner.end()) throw Error(ErrorCode::InvalidInput, "open boundary chain in piece " + inst.pieces[piece].id);
            e = it->second;
            if (used[e]) return;
            used[e] = true;
            comp.edges.push_back(e);
            const auto next = other_end(e, v);
            if (!next) return;
            v = *next;
        }
    };

    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return inst.edges[a].id < inst.edges[b].id; });
    for (std::size_t e : sorted)
        if (inst.edges[e].kind == EdgeKind::Line) {
            used[e] = true;
            out.push_back({ComponentKind::Arc, {e}});
        }
    for (std::size_t e : sorted)
        if (inst.edges[e].kind == EdgeKind::Ray && !used[e]) {
            used[e] = true;
            BoundaryComponent comp{ComponentKind::Arc, {e}};
            walk(e, *inst.edges[e].from, comp);
            out.push_back(std::move(comp));
        }
    for (std::size_t e : sorted)
        if (!used[e]) {
            used[e] = true;
            BoundaryComponent comp{ComponentKind::Cycle, {e}};
            walk(e, *inst.edges[e].to, comp);
            out.push_back(std::move(comp));
        }
    return out;
}

} // namespace cpa2relu
