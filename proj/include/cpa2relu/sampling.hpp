#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cpa2relu/instance.hpp"

namespace cpa2relu {

/// Seeded generator used everywhere randomness is needed. Draws are mapped
/// to integers with plain modulo so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform-ish integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    /// Rational in [lo, hi] with denominator dividing `den`.
    Rat between(const Rat& lo, const Rat& hi, std::uint64_t den) {
        const Rat frac = make_rat(mpz_class(std::to_string(below(den + 1)), 10), mpz_class(std::to_string(den), 10));
        return lo + (hi - lo) * frac;
    }

    Point in_box(const Box& box, std::uint64_t den) { return {between(box.xmin, box.xmax, den), between(box.ymin, box.ymax, den)}; }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kSampleDenominator = 1u << 16;
inline constexpr std::size_t kMaxConsecutiveRejections = 10000;

/// Affine hulls of all edges, for general-position tests.
inline std::vector<EdgeGeom> edge_geoms(const Instance& inst) {
    std::vector<EdgeGeom> out;
    out.reserve(inst.edges.size());
    for (const auto& e : inst.edges) out.push_back(e.geom);
    return out;
}

inline bool in_general_position(const Point& x, const std::vector<EdgeGeom>& hulls) {
    for (const auto& h : hulls)
        if (on_affine_hull(x, h)) return false;
    return true;
}

inline Box sampling_box(const Instance& inst) { return extent_box(anchor_points(inst), Rat(2)); }

/// n points off every affine hull of the instance, drawn from a box twice the
/// instance's extent with denominators up to 2^16.
inline std::vector<Point> sample_general_position(const Instance& inst, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    const Box box = sampling_box(inst);
    const auto hulls = edge_geoms(inst);
    std::vector<Point> out;
    out.reserve(n);
    std::size_t rejections = 0;
    while (out.size() < n) {
        const std::uint64_t den = 1 + rng.below(kSampleDenominator);
        Point p = rng.in_box(box, den);
        if (in_general_position(p, hulls)) {
            out.push_back(std::move(p));
            rejections = 0;
        } else if (++rejections >= kMaxConsecutiveRejections) {
            throw Error(ErrorCode::SamplingStalled, "no general-position point after 10^4 draws");
        }
    }
    return out;
}

/// n points lying on edges of the instance (relative interiors of randomly
/// chosen edges). Empty when the instance has no edges.
inline std::vector<Point> sample_on_edges(const Instance& inst, std::uint64_t seed, std::size_t n) {
    std::vector<Point> out;
    if (inst.edges.empty()) return out;
    Rng rng(seed);
    const Box box = sampling_box(inst);
    const Rat span = box.xmax - box.xmin;
    while (out.size() < n) {
        const Edge& e = inst.edges[rng.below(inst.edges.size())];
        const std::uint64_t den = 1 + rng.below(kSampleDenominator);
        const Point base = hull_base(e.geom);
        const Direction d = hull_dir(e.geom);
        Rat t;
        switch (e.kind) {
        case EdgeKind::Segment: t = rng.between(Rat(0), Rat(1), den); break;
        case EdgeKind::Ray: t = rng.between(Rat(0), span / norm_sq(d) + 1, den); break;
        case EdgeKind::Line: t = rng.between(-(span / norm_sq(d) + 1), span / norm_sq(d) + 1, den); break;
        }
        out.push_back(base + t * d);
    }
    return out;
}

} // namespace cpa2relu
