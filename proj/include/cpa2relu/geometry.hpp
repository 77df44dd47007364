#pragma once

// Exact planar predicates over rational coordinates. Nothing here rounds.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cpa2relu/error.hpp"
#include "cpa2relu/rational.hpp"

namespace cpa2relu {

struct Point {
    Rat x;
    Rat y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Displacement between points. Edge and ray directions are stored
/// unnormalized; only signs of cross and dot products are ever compared.
struct Vec {
    Rat dx;
    Rat dy;

    friend bool operator==(const Vec&, const Vec&) = default;
    bool is_zero() const { return sign(dx) == 0 && sign(dy) == 0; }
};

using Direction = Vec;

inline Vec operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator+(const Point& p, const Vec& v) { return {p.x + v.dx, p.y + v.dy}; }
inline Point operator-(const Point& p, const Vec& v) { return {p.x - v.dx, p.y - v.dy}; }
inline Vec operator+(const Vec& a, const Vec& b) { return {a.dx + b.dx, a.dy + b.dy}; }
inline Vec operator-(const Vec& v) { return {-v.dx, -v.dy}; }
inline Vec operator*(const Rat& s, const Vec& v) { return {s * v.dx, s * v.dy}; }

inline Rat cross(const Vec& a, const Vec& b) { return a.dx * b.dy - a.dy * b.dx; }
inline Rat dot(const Vec& a, const Vec& b) { return a.dx * b.dx + a.dy * b.dy; }
inline Rat norm_sq(const Vec& v) { return dot(v, v); }
inline Vec rot90(const Vec& v) { return {-v.dy, v.dx}; }

/// Sign of (q - p) x (r - p): +1 counterclockwise, 0 collinear, -1 clockwise.
inline int orientation(const Point& p, const Point& q, const Point& r) { return sign(cross(q - p, r - p)); }

struct Segment {
    Point a;
    Point b;
};

struct Ray {
    Point origin;
    Direction dir;
};

struct Line {
    Point through;
    Direction dir;
};

using EdgeGeom = std::variant<Segment, Ray, Line>;

/// Base point and direction of the affine hull; parameter 0 is the base.
inline Point hull_base(const EdgeGeom& e) {
    return std::visit(
        [](const auto& g) -> Point {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) return g.a;
            else if constexpr (std::is_same_v<T, Ray>) return g.origin;
            else return g.through;
        },
        e);
}

inline Direction hull_dir(const EdgeGeom& e) {
    return std::visit(
        [](const auto& g) -> Direction {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) return g.b - g.a;
            else return g.dir;
        },
        e);
}

/// Hull parameter interval of the point set: [0,1] segment, [0,inf) ray, R line.
struct ParamRange {
    std::optional<Rat> lo;
    std::optional<Rat> hi;

    bool contains(const Rat& t) const { return (!lo || *lo <= t) && (!hi || t <= *hi); }
    bool is_endpoint(const Rat& t) const { return (lo && *lo == t) || (hi && *hi == t); }
};

inline ParamRange param_range(const EdgeGeom& e) {
    if (std::holds_alternative<Segment>(e)) return {Rat(0), Rat(1)};
    if (std::holds_alternative<Ray>(e)) return {Rat(0), std::nullopt};
    return {};
}

inline Rat hull_param(const EdgeGeom& e, const Point& x) {
    const Direction d = hull_dir(e);
    return dot(x - hull_base(e), d) / norm_sq(d);
}

/// Signed side of x relative to the directed hull: +1 left, -1 right, 0 on it.
inline int hull_side(const EdgeGeom& e, const Point& x) { return sign(cross(hull_dir(e), x - hull_base(e))); }

inline bool on_affine_hull(const Point& x, const EdgeGeom& e) { return hull_side(e, x) == 0; }

inline bool on_edge(const Point& x, const EdgeGeom& e) {
    return on_affine_hull(x, e) && param_range(e).contains(hull_param(e, x));
}

/// A point in the relative interior of the edge.
inline Point interior_point(const EdgeGeom& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return {(s->a.x + s->b.x) / 2, (s->a.y + s->b.y) / 2};
    if (const auto* r = std::get_if<Ray>(&e)) return r->origin + r->dir;
    return std::get<Line>(e).through;
}

inline Rat sq_distance(const Point& p, const Point& q) { return norm_sq(p - q); }

inline Rat sq_distance(const Point& x, const EdgeGeom& e) {
    Rat t = hull_param(e, x);
    const ParamRange range = param_range(e);
    if (range.lo && t < *range.lo) t = *range.lo;
    if (range.hi && t > *range.hi) t = *range.hi;
    return sq_distance(x, hull_base(e) + t * hull_dir(e));
}

/// Number of transversal crossings of a polyline with an edge, or nullopt
/// (DEGENERATE) when the path touches the edge in a way that has no
/// well-defined parity: it passes through an endpoint of the edge, has a
/// vertex on the edge, or runs along the edge.
///
/// Path vertices on the affine hull but off the edge itself are harmless and
/// are not reported as degenerate.
inline std::optional<std::size_t> crossing_count(std::span<const Point> path, const EdgeGeom& e) {
    const Point base = hull_base(e);
    const Direction d = hull_dir(e);
    const ParamRange range = param_range(e);
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Point& s = path[i];
        const Point& t = path[i + 1];
        const Rat vs = cross(d, s - base);
        const Rat vt = cross(d, t - base);
        const int ss = sign(vs);
        const int st = sign(vt);
        if (ss == 0 && st == 0) {
            // Collinear with the hull: degenerate iff the two parameter intervals meet.
            Rat a = hull_param(e, s);
            Rat b = hull_param(e, t);
            if (a > b) std::swap(a, b);
            const bool below = range.hi && a > *range.hi;
            const bool above = range.lo && b < *range.lo;
            if (!below && !above) return std::nullopt;
            continue;
        }
        if (ss == 0 || st == 0) {
            if (on_edge(ss == 0 ? s : t, e)) return std::nullopt;
            continue;
        }
        if (ss == st) continue;
        const Rat u = vs / (vs - vt);
        const Point q = s + u * (t - s);
        const Rat tau = hull_param(e, q);
        if (!range.contains(tau)) continue;
        if (range.is_endpoint(tau)) return std::nullopt;
        ++count;
    }
    return count;
}

namespace detail {

// 0 for angles in [0, pi), 1 for [pi, 2pi).
inline int half_plane(const Direction& d) {
    const int sy = sign(d.dy);
    return (sy > 0 || (sy == 0 && sign(d.dx) > 0)) ? 0 : 1;
}

} // namespace detail

/// Strict angular order measured counterclockwise from the positive x-axis.
inline bool angle_less(const Direction& a, const Direction& b) {
    const int ha = detail::half_plane(a);
    const int hb = detail::half_plane(b);
    if (ha != hb) return ha < hb;
    return sign(cross(a, b)) > 0;
}

inline bool same_direction(const Direction& a, const Direction& b) {
    return sign(cross(a, b)) == 0 && sign(dot(a, b)) > 0;
}

/// Indices of `dirs` in counterclockwise order starting from the positive
/// x-axis. Throws DUPLICATE_DIRECTION for positive multiples.
inline std::vector<std::size_t> ccw_sort_directions(std::span<const Direction> dirs) {
    std::vector<std::size_t> order(dirs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (const auto& d : dirs)
        if (d.is_zero()) throw Error(ErrorCode::InvalidInput, "zero direction");
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return angle_less(dirs[i], dirs[j]); });
    for (std::size_t k = 1; k < order.size(); ++k)
        if (same_direction(dirs[order[k - 1]], dirs[order[k]]))
            throw Error(ErrorCode::DuplicateDirection, "two directions are positive multiples");
    return order;
}

/// Where a direction falls among CCW-sorted rays. Sector i spans
/// rays[i] -> rays[i+1 mod k].
struct SectorLocation {
    std::size_t sector;
    std::optional<std::size_t> on_ray;
};

inline SectorLocation locate_sector(std::span<const Direction> sorted_rays, const Direction& u) {
    const std::size_t k = sorted_rays.size();
    for (std::size_t i = 0; i < k; ++i)
        if (same_direction(sorted_rays[i], u)) return {i, i};
    std::size_t sector = k - 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (angle_less(sorted_rays[i], u)) sector = i;
        else break;
    }
    return {sector, std::nullopt};
}

/// True iff the CCW angle from `from` to `to` is strictly less than pi.
inline bool angle_below_pi(const Direction& from, const Direction& to) { return sign(cross(from, to)) > 0; }

/// A direction strictly inside the CCW sector from `from` to `to`.
inline Direction sector_interior_direction(const Direction& from, const Direction& to) {
    const int c = sign(cross(from, to));
    if (c > 0) return from + to;
    if (c < 0) return -(from + to);
    if (sign(dot(from, to)) < 0) return rot90(from);
    // Full turn (single ray): anything not along it.
    return -from;
}

/// Point center + t*dir with |t*dir|^2 <= limit_sq / 4, halving t from 1.
inline Point probe_point(const Point& center, const Direction& dir, const std::optional<Rat>& limit_sq) {
    Rat t(1);
    if (limit_sq) {
        const Rat len = norm_sq(dir);
        while (t * t * len * 4 > *limit_sq) t /= 2;
    }
    return center + t * dir;
}

} // namespace cpa2relu
