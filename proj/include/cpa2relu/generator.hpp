#pragma once

// Random bounded instances for fuzzing: a jittered n x n grid on [0, n]^2,
// each cell cut along a random diagonal, linear interpolation of random
// integer values at interior vertices, zero on the square's boundary and on
// the outer piece.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "cpa2relu/sampling.hpp"

namespace cpa2relu {

struct GridOptions {
    std::size_t n = 3;
    std::uint64_t seed = 0;
    long max_value = 4;
};

namespace detail {

/// Affine function with f(p[i]) = z[i] for a nondegenerate triangle.
inline AffineFunc interpolate(const std::array<Point, 3>& p, const std::array<Rat, 3>& z) {
    const Vec u = p[1] - p[0];
    const Vec v = p[2] - p[0];
    const Rat du = z[1] - z[0];
    const Rat dv = z[2] - z[0];
    const Rat det = cross(u, v);
    const Rat a = (du * v.dy - dv * u.dy) / det;
    const Rat b = (u.dx * dv - v.dx * du) / det;
    return {a, b, z[0] - a * p[0].x - b * p[0].y};
}

inline Point off_hulls(Rng& rng, const std::vector<EdgeGeom>& hulls, const std::function<Point(Rng&)>& draw) {
    for (std::size_t i = 0; i < kMaxConsecutiveRejections; ++i) {
        Point p = draw(rng);
        if (in_general_position(p, hulls)) return p;
    }
    throw Error(ErrorCode::SamplingStalled, "no witness off every hull");
}

} // namespace detail

inline Instance generate_grid(const GridOptions& opts) {
    const std::size_t n = std::max<std::size_t>(opts.n, 1);
    Rng rng(opts.seed);
    Instance inst;
    auto vid = [&](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    std::vector<Rat> value;
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i) {
            const bool boundary = i == 0 || j == 0 || i == n || j == n;
            Point p{Rat(static_cast<long>(i)), Rat(static_cast<long>(j))};
            if (!boundary) {
                p.x += rng.between(make_rat(-1, 4), make_rat(1, 4), 64);
                p.y += rng.between(make_rat(-1, 4), make_rat(1, 4), 64);
            }
            inst.vertices.push_back({"v" + std::to_string(i) + "_" + std::to_string(j), p});
            const long span = 2 * opts.max_value + 1;
            value.push_back(boundary ? Rat(0) : Rat(static_cast<long>(rng.below(static_cast<std::uint64_t>(span))) - opts.max_value));
        }

    const std::size_t outer = 2 * n * n;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
    auto edge = [&](std::size_t u, std::size_t v, std::size_t piece) {
        const auto key = std::minmax(u, v);
        auto it = edge_of.find(key);
        if (it == edge_of.end()) {
            Edge e;
            e.id = "e_" + inst.vertices[key.first].id + "_" + inst.vertices[key.second].id;
            e.kind = EdgeKind::Segment;
            e.from = key.first;
            e.to = key.second;
            e.geom = Segment{inst.vertices[key.first].pos, inst.vertices[key.second].pos};
            e.pieces = {piece, outer};
            it = edge_of.emplace(key, inst.edges.size()).first;
            inst.edges.push_back(std::move(e));
        } else {
            inst.edges[it->second].pieces[1] = piece;
        }
        return it->second;
    };

    std::vector<std::array<std::size_t, 3>> triangles;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if (rng.below(2) == 0) {
                triangles.push_back({a, b, c});
                triangles.push_back({a, c, d});
            } else {
                triangles.push_back({a, b, d});
                triangles.push_back({b, c, d});
            }
        }
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        Piece piece;
        piece.id = "t" + std::to_string(t);
        piece.affine = detail::interpolate({inst.vertices[tri[0]].pos, inst.vertices[tri[1]].pos, inst.vertices[tri[2]].pos},
                                           {value[tri[0]], value[tri[1]], value[tri[2]]});
        piece.boundary.push_back({ComponentKind::Cycle, {edge(tri[0], tri[1], t), edge(tri[1], tri[2], t), edge(tri[2], tri[0], t)}});
        inst.pieces.push_back(std::move(piece));
    }
    BoundaryComponent rim{ComponentKind::Cycle, {}};
    for (std::size_t i = 0; i < n; ++i) rim.edges.push_back(edge_of.at(std::minmax(vid(i, 0), vid(i + 1, 0))));
    for (std::size_t j = 0; j < n; ++j) rim.edges.push_back(edge_of.at(std::minmax(vid(n, j), vid(n, j + 1))));
    for (std::size_t i = n; i > 0; --i) rim.edges.push_back(edge_of.at(std::minmax(vid(i, n), vid(i - 1, n))));
    for (std::size_t j = n; j > 0; --j) rim.edges.push_back(edge_of.at(std::minmax(vid(0, j), vid(0, j - 1))));
    inst.pieces.push_back({"out", AffineFunc{}, Point{}, {rim}});

    const auto hulls = edge_geoms(inst);
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const auto& tri = triangles[t];
        inst.pieces[t].witness = detail::off_hulls(rng, hulls, [&](Rng& r) {
            // Random interior barycentric weights.
            const Rat w0 = 1 + r.below(8), w1 = 1 + r.below(8), w2 = 1 + r.below(8);
            const Rat s = w0 + w1 + w2;
            const Point& p0 = inst.vertices[tri[0]].pos;
            const Point& p1 = inst.vertices[tri[1]].pos;
            const Point& p2 = inst.vertices[tri[2]].pos;
            return Point{(w0 * p0.x + w1 * p1.x + w2 * p2.x) / s, (w0 * p0.y + w1 * p1.y + w2 * p2.y) / s};
        });
    }
    inst.pieces[outer].witness = detail::off_hulls(rng, hulls, [&](Rng& r) {
        return Point{make_rat(-1, 2), r.between(Rat(0), Rat(static_cast<long>(n)), 97)};
    });
    return inst;
}

} // namespace cpa2relu
