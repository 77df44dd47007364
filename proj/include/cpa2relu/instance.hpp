#pragma once

// In-memory model of a continuous piecewise affine function on the plane:
// vertices, edges (segments, rays, lines) and pieces with affine components.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpa2relu/geometry.hpp"

namespace cpa2relu {

/// a*x + b*y + c
struct AffineFunc {
    Rat a;
    Rat b;
    Rat c;

    Rat operator()(const Point& p) const { return a * p.x + b * p.y + c; }

    bool is_zero() const { return sign(a) == 0 && sign(b) == 0 && sign(c) == 0; }
    bool is_linear() const { return sign(c) == 0; }

    friend bool operator==(const AffineFunc&, const AffineFunc&) = default;
    friend AffineFunc operator+(const AffineFunc& f, const AffineFunc& g) { return {f.a + g.a, f.b + g.b, f.c + g.c}; }
    friend AffineFunc operator-(const AffineFunc& f, const AffineFunc& g) { return {f.a - g.a, f.b - g.b, f.c - g.c}; }
    friend AffineFunc operator-(const AffineFunc& f) { return {-f.a, -f.b, -f.c}; }
    friend AffineFunc operator*(const Rat& s, const AffineFunc& f) { return {s * f.a, s * f.b, s * f.c}; }
};

enum class EdgeKind { Segment, Ray, Line };

struct Vertex {
    std::string id;
    Point pos;
};

struct Edge {
    std::string id;
    EdgeKind kind = EdgeKind::Segment;
    std::optional<std::size_t> from;  // segment start or ray origin
    std::optional<std::size_t> to;    // segment end
    EdgeGeom geom;
    std::array<std::size_t, 2> pieces{};

    bool has_vertex(std::size_t v) const { return from == v || to == v; }
    std::size_t other_piece(std::size_t p) const { return pieces[0] == p ? pieces[1] : pieces[0]; }
};

enum class ComponentKind { Arc, Cycle };

struct BoundaryComponent {
    ComponentKind kind = ComponentKind::Cycle;
    std::vector<std::size_t> edges;
};

struct Piece {
    std::string id;
    AffineFunc affine;
    Point witness;
    std::vector<BoundaryComponent> boundary;
};

struct Instance {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Piece> pieces;

    std::size_t piece_count() const { return pieces.size(); }

    std::vector<std::size_t> piece_edges(std::size_t piece) const {
        std::vector<std::size_t> out;
        for (const auto& comp : pieces[piece].boundary) out.insert(out.end(), comp.edges.begin(), comp.edges.end());
        return out;
    }

    std::vector<std::size_t> incident_edges(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].has_vertex(v)) out.push_back(e);
        return out;
    }

    std::size_t degree(std::size_t v) const { return incident_edges(v).size(); }

    /// Vertices of the piece in ascending index order.
    std::vector<std::size_t> piece_vertices(std::size_t piece) const {
        std::vector<std::size_t> out;
        for (std::size_t e : piece_edges(piece)) {
            if (edges[e].from) out.push_back(*edges[e].from);
            if (edges[e].to) out.push_back(*edges[e].to);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Number of the piece's edges having v as a vertex.
    std::size_t piece_degree(std::size_t piece, std::size_t v) const {
        std::size_t n = 0;
        for (std::size_t e : piece_edges(piece))
            if (edges[e].has_vertex(v)) ++n;
        return n;
    }

    std::size_t count_edges(EdgeKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.kind == kind; }));
    }

    /// Index permutations sorting each table by string id.
    template <typename T>
    static std::vector<std::size_t> order_by_id(const std::vector<T>& items) {
        std::vector<std::size_t> order(items.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return items[i].id < items[j].id; });
        return order;
    }
};

/// Direction of edge e leaving its vertex v.
inline Direction direction_at(const Instance& inst, std::size_t e, std::size_t v) {
    const Edge& edge = inst.edges[e];
    if (edge.kind == EdgeKind::Ray) return std::get<Ray>(edge.geom).dir;
    const std::size_t other = edge.from == v ? *edge.to : *edge.from;
    return inst.vertices[other].pos - inst.vertices[v].pos;
}

inline EdgeGeom make_geom(const Instance& inst, const Edge& e, const std::optional<Direction>& dir = std::nullopt) {
    switch (e.kind) {
    case EdgeKind::Segment: return Segment{inst.vertices[*e.from].pos, inst.vertices[*e.to].pos};
    case EdgeKind::Ray: return Ray{inst.vertices[*e.from].pos, dir ? *dir : std::get<Ray>(e.geom).dir};
    case EdgeKind::Line: return e.geom;
    }
    return e.geom;
}

/// Every finite point that anchors the geometry, plus witnesses.
inline std::vector<Point> anchor_points(const Instance& inst) {
    std::vector<Point> pts;
    for (const auto& v : inst.vertices) pts.push_back(v.pos);
    for (const auto& e : inst.edges)
        if (e.kind == EdgeKind::Line) pts.push_back(std::get<Line>(e.geom).through);
    for (const auto& p : inst.pieces) pts.push_back(p.witness);
    return pts;
}

struct Box {
    Rat xmin, xmax, ymin, ymax;
};

/// Axis-aligned box centred on the anchors, `scale` times their half-extent
/// (at least 1) in every direction.
inline Box extent_box(const std::vector<Point>& pts, const Rat& scale) {
    if (pts.empty()) return {Rat(-scale), scale, Rat(-scale), scale};
    Rat xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const Rat cx = (xmin + xmax) / 2;
    const Rat cy = (ymin + ymax) / 2;
    Rat half = std::max({Rat((xmax - xmin) / 2), Rat((ymax - ymin) / 2), Rat(1)});
    half *= scale;
    return {cx - half, cx + half, cy - half, cy + half};
}

} // namespace cpa2relu
