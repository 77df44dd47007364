#pragma once

// Reduction of a decomposition to a sum of nested maxima
//   sum_n sigma1_n * max(f1_n, sigma2_n * max(f2_n, f3_n)).

#include <algorithm>
#include <utility>
#include <vector>

#include "cpa2relu/decompose.hpp"

namespace cpa2relu {

struct MaxTerm {
    int sigma1 = 1;
    AffineFunc f1;
    int sigma2 = 1;
    AffineFunc f2;
    AffineFunc f3;

    friend bool operator==(const MaxTerm&, const MaxTerm&) = default;
};

inline Rat eval_term(const MaxTerm& t, const Point& x) {
    const Rat inner = Rat(t.sigma2) * std::max(t.f2(x), t.f3(x));
    return Rat(t.sigma1) * std::max(t.f1(x), inner);
}

struct TermList {
    std::vector<MaxTerm> terms;
    std::size_t source_p = 0;
};

inline Rat eval_terms(const TermList& list, const Point& x) {
    Rat sum(0);
    for (const auto& t : list.terms) sum += eval_term(t, x);
    return sum;
}

/// Term value plus h, absorbed into the term's affines.
inline MaxTerm fold_affine(MaxTerm t, const AffineFunc& h) {
    t.f1 = t.f1 + Rat(t.sigma1) * h;
    const Rat inner(t.sigma1 * t.sigma2);
    t.f2 = t.f2 + inner * h;
    t.f3 = t.f3 + inner * h;
    return t;
}

/// h(v - x) as an affine function of x.
inline AffineFunc reflect_through(const AffineFunc& h, const Point& v) { return {-h.a, -h.b, h(v)}; }

inline MaxTerm reflect_through(const MaxTerm& t, const Point& v) {
    return {t.sigma1, reflect_through(t.f1, v), t.sigma2, reflect_through(t.f2, v), reflect_through(t.f3, v)};
}

namespace detail {

/// Rotates the fan so its rays start at the smallest angle from the x-axis.
inline Fan normalized(Fan fan) {
    std::vector<std::size_t> order = ccw_sort_directions(fan.rays);
    Fan out{fan.vertex_id, fan.center, {}, {}};
    for (std::size_t i : order) {
        out.rays.push_back(fan.rays[i]);
        out.sector_affines.push_back(fan.sector_affines[i]);
    }
    return out;
}

inline void check_fan(const Fan& fan, std::size_t min_sectors) {
    const std::size_t k = fan.size();
    if (k < min_sectors || fan.sector_affines.size() != k) throw Error(ErrorCode::MalformedFan, "too few sectors");
    for (std::size_t i = 0; i < k; ++i) {
        const Point on_ray = fan.center + fan.rays[i];
        if (fan.sector_affines[i](on_ray) != fan.sector_affines[(i + k - 1) % k](on_ray))
            throw Error(ErrorCode::MalformedFan, "sector affines disagree on a ray");
    }
}

} // namespace detail

struct CplRecord {
    Point v;
    Rat f_of_v;
};

/// x -> f(v - x) - f(v): a fan centered at the origin with linear sectors.
inline std::pair<Fan, CplRecord> fan_to_cpl(const Fan& fan) {
    const Rat fv = fan.sector_affines.front()(fan.center);
    for (const auto& g : fan.sector_affines)
        if (g(fan.center) != fv) throw Error(ErrorCode::ContinuityViolation, "sector affines disagree at the center");
    Fan out{fan.vertex_id, Point{Rat(0), Rat(0)}, {}, {}};
    for (std::size_t i = 0; i < fan.size(); ++i) {
        out.rays.push_back(-fan.rays[i]);
        out.sector_affines.push_back({-fan.sector_affines[i].a, -fan.sector_affines[i].b, Rat(0)});
    }
    return {detail::normalized(std::move(out)), {fan.center, fv}};
}

struct MergeResult {
    Fan extracted;
    Fan reduced;
};

/// Index i of the first pair of sectors i, i+1 whose union spans less than pi.
inline std::optional<std::size_t> find_mergeable_pair(const Fan& fan) {
    const std::size_t k = fan.size();
    for (std::size_t i = 0; i < k; ++i)
        if (angle_below_pi(fan.rays[i], fan.rays[(i + 2) % k])) return i;
    return std::nullopt;
}

/// Splits a linear fan into a three-sector fan agreeing with it on two
/// adjacent sectors and a remainder with one sector fewer.
inline MergeResult merge_step(const Fan& fan) {
    const std::size_t k = fan.size();
    if (k < 4) throw Error(ErrorCode::MalformedFan, "merge_step needs at least four sectors");
    const auto found = find_mergeable_pair(fan);
    if (!found) throw Error(ErrorCode::NoMergeablePair, "no two adjacent sectors span less than pi");
    const std::size_t i = *found, j = (i + 1) % k, l = (i + 2) % k;
    const Direction& p1 = fan.rays[i];
    const Direction& p2 = fan.rays[l];
    const Rat r1 = fan.sector_affines[i](fan.center + p1);
    const Rat r2 = fan.sector_affines[j](fan.center + p2);
    const Rat det = cross(p1, p2);
    // Linear f_P with f_P(p1) = r1, f_P(p2) = r2.
    const AffineFunc fp{(r1 * p2.dy - r2 * p1.dy) / det, (p1.dx * r2 - p2.dx * r1) / det, Rat(0)};

    Fan extracted{fan.vertex_id, fan.center, {p1, fan.rays[j], p2}, {fan.sector_affines[i], fan.sector_affines[j], fp}};
    Fan reduced{fan.vertex_id, fan.center, {}, {}};
    for (std::size_t s = 0; s < k; ++s) {
        if (s == j) continue;
        reduced.rays.push_back(fan.rays[s]);
        reduced.sector_affines.push_back(s == i ? AffineFunc{} : fan.sector_affines[s] - fp);
    }
    return {detail::normalized(std::move(extracted)), detail::normalized(std::move(reduced))};
}

/// A four-sector linear fan whose rays form two lines, as the two-piece
/// functions f1 (constant across the line through rays 1 and 3) and f - f1.
inline std::pair<MaxTerm, MaxTerm> split_cross_case(const Fan& fan) {
    if (fan.size() != 4) throw Error(ErrorCode::NotCrossCase, "fan does not have four sectors");
    const auto& d = fan.rays;
    auto antipodal = [](const Direction& a, const Direction& b) { return sign(cross(a, b)) == 0 && sign(dot(a, b)) < 0; };
    if (!antipodal(d[0], d[2]) || !antipodal(d[1], d[3])) throw Error(ErrorCode::NotCrossCase, "rays are not two lines");
    const auto& g = fan.sector_affines;
    const Point q0 = fan.center + d[0];

    MaxTerm first;
    const bool upper = g[0](q0) >= g[1](q0);
    const AffineFunc& lead = g[1].is_zero() ? g[1] : g[0];
    const AffineFunc& inner = g[1].is_zero() ? g[0] : g[1];
    if (upper) first = {1, lead, 1, inner, inner};
    else first = {-1, -lead, 1, -inner, -inner};

    const AffineFunc h = g[2] - g[1];
    MaxTerm second;
    if (h(fan.center + d[3]) >= 0) second = {1, AffineFunc{}, 1, h, h};
    else second = {-1, AffineFunc{}, 1, -h, -h};
    return {first, second};
}

/// Closed form of a three-sector fan as sigma1 * max(g0, sigma2 * max(g1, g2)).
inline MaxTerm three_piece_to_max(const Fan& fan) {
    detail::check_fan(fan, 3);
    if (fan.size() != 3) throw Error(ErrorCode::MalformedFan, "expected three sectors");
    std::size_t j0 = 0;
    bool reflex = false;
    for (std::size_t j = 0; j < 3; ++j)
        if (!angle_below_pi(fan.rays[j], fan.rays[(j + 1) % 3])) {
            j0 = j;
            reflex = true;
            break;
        }
    const AffineFunc& g0 = fan.sector_affines[j0];
    const AffineFunc& g1 = fan.sector_affines[(j0 + 1) % 3];
    const AffineFunc& g2 = fan.sector_affines[(j0 + 2) % 3];
    // Ray between sectors j0+1 and j0+2.
    const Point q0 = fan.center + fan.rays[(j0 + 2) % 3];
    const bool upper = g1(q0) >= g0(q0);
    if (!reflex) return upper ? MaxTerm{1, g0, 1, g1, g2} : MaxTerm{-1, -g0, 1, -g1, -g2};
    return upper ? MaxTerm{1, g0, -1, -g1, -g2} : MaxTerm{-1, -g0, -1, g1, g2};
}

inline MaxTerm edge_to_max(const EdgePair& ep) {
    const Point probe = ep.base + rot90(ep.dir);
    const bool plus_wins = ep.plus(probe) >= ep.minus(probe);
    const AffineFunc& lead = ep.minus.is_zero() ? ep.minus : ep.plus;
    const AffineFunc& inner = ep.minus.is_zero() ? ep.plus : ep.minus;
    if (plus_wins) return {ep.sigma, lead, 1, inner, inner};
    return {-ep.sigma, -lead, 1, -inner, -inner};
}

/// Terms of one vertex function plus the constant f(v) that still has to be
/// added to the sum.
inline std::pair<std::vector<MaxTerm>, Rat> reduce_fan(const Fan& fan) {
    detail::check_fan(fan, 3);
    auto [cur, record] = fan_to_cpl(fan);
    std::vector<MaxTerm> linear;
    while (cur.size() > 3) {
        if (cur.size() == 4 && !find_mergeable_pair(cur)) {
            auto [a, b] = split_cross_case(cur);
            linear.push_back(a);
            linear.push_back(b);
            cur.rays.clear();
            break;
        }
        MergeResult step = merge_step(cur);
        linear.push_back(three_piece_to_max(step.extracted));
        cur = std::move(step.reduced);
    }
    if (!cur.rays.empty()) linear.push_back(three_piece_to_max(cur));
    std::vector<MaxTerm> out;
    for (const auto& t : linear) out.push_back(reflect_through(t, record.v));
    return {out, record.f_of_v};
}

/// Fans in vertex-id order, then edge pairs in edge-id order. The tail and
/// every f(v) are folded into the first term; with no terms at all a single
/// carrier term max(h, h) holds the tail.
inline TermList reduce(const Decomposition& dec, std::size_t source_p) {
    TermList list;
    list.source_p = source_p;
    AffineFunc extra = dec.tail;
    for (const auto& fan : dec.fans) {
        auto [terms, fv] = reduce_fan(fan);
        list.terms.insert(list.terms.end(), terms.begin(), terms.end());
        extra.c += fv;
    }
    for (const auto& ep : dec.edge_pairs) list.terms.push_back(edge_to_max(ep));
    if (list.terms.empty()) list.terms.push_back({1, extra, 1, extra, extra});
    else list.terms.front() = fold_affine(list.terms.front(), extra);
    return list;
}

/// sum_v (deg(v) - 2) + |E_l| + |E_b|.
inline std::size_t expected_term_count(const Instance& inst) {
    std::size_t n = inst.count_edges(EdgeKind::Line) + inst.count_edges(EdgeKind::Segment);
    for (std::size_t v = 0; v < inst.vertices.size(); ++v) n += inst.degree(v) - 2;
    return n;
}

inline json term_to_json(const MaxTerm& t) {
    return {{"sigma1", t.sigma1}, {"f1", affine_to_json(t.f1)}, {"sigma2", t.sigma2}, {"f2", affine_to_json(t.f2)},
            {"f3", affine_to_json(t.f3)}};
}

inline json terms_to_json(const TermList& list) {
    json out = json::array();
    for (const auto& t : list.terms) out.push_back(term_to_json(t));
    return out;
}

} // namespace cpa2relu
