#pragma once

// f = sum_v f^v + sum_{lines} f^e - sum_{segments} f^e + sum_P c(P) f_P
//
// Vertex functions are angular fans, edge functions are half-plane pairs.

#include <cstdint>
#include <string>
#include <vector>

#include "cpa2relu/conic_sides.hpp"
#include "cpa2relu/instance_io.hpp"

namespace cpa2relu {

/// Sector i spans rays[i] -> rays[i+1 mod k] and carries sector_affines[i].
struct Fan {
    std::string vertex_id;
    Point center;
    std::vector<Direction> rays;
    std::vector<AffineFunc> sector_affines;

    std::size_t size() const { return rays.size(); }
};

/// Value at x. A point on a ray takes the sector starting at that ray.
inline Rat eval_fan(const Fan& fan, const Point& x) {
    const Direction u = x - fan.center;
    if (u.is_zero()) return fan.sector_affines.front()(x);
    return fan.sector_affines[locate_sector(fan.rays, u).sector](x);
}

/// f^e for an edge: `plus` on the left of the directed hull, `minus` on the right.
struct EdgePair {
    std::string edge_id;
    Point base;
    Direction dir;
    AffineFunc plus;
    AffineFunc minus;
    int sigma = -1;
};

inline Rat eval_edge_pair(const EdgePair& ep, const Point& x) {
    return sign(cross(ep.dir, x - ep.base)) >= 0 ? ep.plus(x) : ep.minus(x);
}

struct Decomposition {
    std::vector<Fan> fans;
    std::vector<EdgePair> edge_pairs;
    AffineFunc tail;
};

inline Fan build_vertex_function(const ConicSides& sides, std::size_t v) {
    const Instance& inst = sides.instance();
    const VertexStar& star = sides.star(v);
    Fan fan{inst.vertices[v].id, inst.vertices[v].pos, star.dirs, {}};
    for (std::size_t owner : star.owners) fan.sector_affines.push_back(inst.pieces[owner].affine);
    return fan;
}

inline EdgePair build_edge_function(const ConicSides& sides, std::size_t e) {
    const Instance& inst = sides.instance();
    const Edge& edge = inst.edges[e];
    if (edge.pieces[0] == edge.pieces[1]) throw Error(ErrorCode::SamePieceBothSides, "edge " + edge.id);
    const std::size_t left = sides.left_piece(e);
    return {edge.id,
            hull_base(edge.geom),
            hull_dir(edge.geom),
            inst.pieces[left].affine,
            inst.pieces[edge.other_piece(left)].affine,
            edge.kind == EdgeKind::Line ? 1 : -1};
}

inline Decomposition decompose(const ConicSides& sides) {
    const Instance& inst = sides.instance();
    Decomposition dec;
    for (std::size_t v : Instance::order_by_id(inst.vertices)) dec.fans.push_back(build_vertex_function(sides, v));
    for (std::size_t e : Instance::order_by_id(inst.edges))
        if (inst.edges[e].kind != EdgeKind::Ray) dec.edge_pairs.push_back(build_edge_function(sides, e));
    for (std::size_t p = 0; p < inst.pieces.size(); ++p)
        dec.tail = dec.tail + Rat(sides.conic_coeff(p).c) * inst.pieces[p].affine;
    return dec;
}

inline Decomposition decompose(const Instance& inst, std::uint64_t seed = 0) { return decompose(ConicSides(inst, seed)); }

inline Rat eval_decomposition(const Decomposition& dec, const Point& x) {
    Rat sum = dec.tail(x);
    for (const auto& fan : dec.fans) sum += eval_fan(fan, x);
    for (const auto& ep : dec.edge_pairs) sum += Rat(ep.sigma) * eval_edge_pair(ep, x);
    return sum;
}

inline json vec_to_json(const Vec& v) { return json::array({rat_to_json(v.dx), rat_to_json(v.dy)}); }

inline json fan_to_json(const Fan& fan) {
    json rays = json::array(), affines = json::array();
    for (const auto& d : fan.rays) rays.push_back(vec_to_json(d));
    for (const auto& f : fan.sector_affines) affines.push_back(affine_to_json(f));
    return {{"vertex", fan.vertex_id}, {"center", point_to_json(fan.center)}, {"rays", rays}, {"sector_affines", affines}};
}

inline json decomposition_to_json(const Decomposition& dec) {
    json fans = json::array(), pairs = json::array();
    for (const auto& fan : dec.fans) fans.push_back(fan_to_json(fan));
    for (const auto& ep : dec.edge_pairs)
        pairs.push_back({{"edge", ep.edge_id},
                         {"base", point_to_json(ep.base)},
                         {"dir", vec_to_json(ep.dir)},
                         {"plus", affine_to_json(ep.plus)},
                         {"minus", affine_to_json(ep.minus)},
                         {"sigma", ep.sigma}});
    return {{"fans", fans}, {"edge_pairs", pairs}, {"tail", affine_to_json(dec.tail)}};
}

} // namespace cpa2relu
