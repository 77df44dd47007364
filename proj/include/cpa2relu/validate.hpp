#pragma once

// Admissibility checks for parsed instances. The first six checks are exact;
// witness separation and the cover check are probabilistic certificates
// driven by the crossing-parity oracle.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cpa2relu/membership.hpp"
#include "cpa2relu/sampling.hpp"

namespace cpa2relu {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;

    explicit CheckResult(std::string n) : name(std::move(n)) {}

    void fail(std::string why) {
        passed = false;
        failures.push_back(std::move(why));
    }
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const CheckResult* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct ValidateOptions {
    std::size_t cover_samples = 256;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<std::size_t> edge_vertex_ids(const Edge& e) {
    std::vector<std::size_t> out;
    if (e.from) out.push_back(*e.from);
    if (e.to) out.push_back(*e.to);
    return out;
}

inline std::string intersection_problem(const Instance& inst, const Edge& e1, const Edge& e2) {
    const auto shared_at = [&](const Point& q) {
        for (std::size_t v : edge_vertex_ids(e1))
            if (e2.has_vertex(v) && inst.vertices[v].pos == q) return true;
        return false;
    };
    const Point b1 = hull_base(e1.geom);
    const Direction d1 = hull_dir(e1.geom);
    const Point b2 = hull_base(e2.geom);
    const Direction d2 = hull_dir(e2.geom);
    const ParamRange r1 = param_range(e1.geom);
    if (sign(cross(d1, d2)) != 0) {
        // q = b2 + s*d2 on the first hull.
        const Rat s = cross(d1, b1 - b2) / cross(d1, d2);
        const Point q = b2 + s * d2;
        if (!param_range(e2.geom).contains(s) || !r1.contains(hull_param(e1.geom, q))) return {};
        if (shared_at(q)) return {};
        return "edges " + e1.id + " and " + e2.id + " cross";
    }
    if (sign(cross(d1, b2 - b1)) != 0) return {};
    // Collinear: intersect parameter intervals on the first hull.
    const Rat t0 = hull_param(e1.geom, b2);
    std::optional<Rat> lo2, hi2;
    switch (e2.kind) {
    case EdgeKind::Segment: {
        const Rat t1 = hull_param(e1.geom, std::get<Segment>(e2.geom).b);
        lo2 = std::min(t0, t1);
        hi2 = std::max(t0, t1);
        break;
    }
    case EdgeKind::Ray:
        if (sign(dot(d1, d2)) > 0) lo2 = t0;
        else hi2 = t0;
        break;
    case EdgeKind::Line: break;
    }
    std::optional<Rat> lo = r1.lo, hi = r1.hi;
    if (lo2 && (!lo || *lo2 > *lo)) lo = lo2;
    if (hi2 && (!hi || *hi2 < *hi)) hi = hi2;
    if (lo && hi && *lo > *hi) return {};
    if (lo && hi && *lo == *hi && shared_at(b1 + *lo * d1)) return {};
    return "edges " + e1.id + " and " + e2.id + " overlap";
}

inline void check_component(const Instance& inst, const Piece& piece, const BoundaryComponent& comp, CheckResult& out) {
    const std::string where = "piece " + piece.id + ": ";
    const auto& ids = comp.edges;
    if (ids.empty()) return out.fail(where + "empty boundary component");
    auto shared = [&](std::size_t a, std::size_t b) {
        std::vector<std::size_t> s;
        for (std::size_t v : edge_vertex_ids(inst.edges[a]))
            if (inst.edges[b].has_vertex(v)) s.push_back(v);
        return s;
    };
    std::vector<std::size_t> joints;
    if (comp.kind == ComponentKind::Cycle) {
        if (ids.size() < 3) return out.fail(where + "cycle with fewer than 3 edges");
        for (std::size_t e : ids)
            if (inst.edges[e].kind != EdgeKind::Segment) return out.fail(where + "cycle contains a non-segment edge");
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const auto s = shared(ids[i], ids[(i + 1) % ids.size()]);
            if (s.size() != 1) return out.fail(where + "cycle edges do not chain");
            joints.push_back(s[0]);
        }
    } else {
        if (ids.size() == 1) {
            if (inst.edges[ids[0]].kind != EdgeKind::Line) out.fail(where + "single-edge arc must be a line");
            return;
        }
        if (inst.edges[ids.front()].kind != EdgeKind::Ray || inst.edges[ids.back()].kind != EdgeKind::Ray)
            return out.fail(where + "arc must start and end with rays");
        for (std::size_t i = 1; i + 1 < ids.size(); ++i)
            if (inst.edges[ids[i]].kind != EdgeKind::Segment) return out.fail(where + "arc interior must be segments");
        for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
            const auto s = shared(ids[i], ids[i + 1]);
            if (s.size() != 1) return out.fail(where + "arc edges do not chain");
            joints.push_back(s[0]);
        }
    }
    std::set<std::size_t> distinct(joints.begin(), joints.end());
    if (distinct.size() != joints.size()) return out.fail(where + "boundary component revisits a vertex");
}

} // namespace detail

inline ValidationReport validate(const Instance& inst, const ValidateOptions& opts = {}) {
    ValidationReport report;
    const std::size_t P = inst.pieces.size();

    CheckResult pieces_check("edge_pieces");
    {
        std::vector<std::vector<std::size_t>> listed(inst.edges.size());
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t e : inst.piece_edges(p)) listed[e].push_back(p);
        for (std::size_t e = 0; e < inst.edges.size(); ++e) {
            const Edge& edge = inst.edges[e];
            if (edge.pieces[0] == edge.pieces[1]) {
                pieces_check.fail("edge " + edge.id + " bounds piece " + inst.pieces[edge.pieces[0]].id + " on both sides");
                continue;
            }
            auto got = listed[e];
            std::sort(got.begin(), got.end());
            std::vector<std::size_t> want{edge.pieces[0], edge.pieces[1]};
            std::sort(want.begin(), want.end());
            if (got != want) pieces_check.fail("edge " + edge.id + " is not listed exactly once by each of its two pieces");
        }
    }

    CheckResult continuity("continuity");
    for (const auto& edge : inst.edges) {
        const Point p0 = hull_base(edge.geom);
        const Point p1 = p0 + hull_dir(edge.geom);
        const AffineFunc& fq = inst.pieces[edge.pieces[0]].affine;
        const AffineFunc& fr = inst.pieces[edge.pieces[1]].affine;
        if (fq(p0) != fr(p0) || fq(p1) != fr(p1)) continuity.fail("affine components disagree on edge " + edge.id);
    }

    CheckResult vertices("vertex_consistency");
    for (std::size_t v = 0; v < inst.vertices.size(); ++v) {
        const Vertex& vx = inst.vertices[v];
        for (std::size_t u = v + 1; u < inst.vertices.size(); ++u)
            if (inst.vertices[u].pos == vx.pos) vertices.fail("vertices " + vx.id + " and " + inst.vertices[u].id + " coincide");
        if (inst.degree(v) < 2) vertices.fail("vertex " + vx.id + " has degree < 2");
        for (const auto& e : inst.edges)
            if (!e.has_vertex(v) && on_edge(vx.pos, e.geom))
                vertices.fail("vertex " + vx.id + " lies inside edge " + e.id);
    }

    CheckResult planarity("planarity");
    for (std::size_t i = 0; i < inst.edges.size(); ++i)
        for (std::size_t j = i + 1; j < inst.edges.size(); ++j) {
            const std::string problem = detail::intersection_problem(inst, inst.edges[i], inst.edges[j]);
            if (!problem.empty()) planarity.fail(problem);
        }

    CheckResult components("boundary_components");
    for (std::size_t p = 0; p < P; ++p) {
        const Piece& piece = inst.pieces[p];
        for (const auto& comp : piece.boundary) detail::check_component(inst, piece, comp, components);
        for (std::size_t v : inst.piece_vertices(p))
            if (inst.piece_degree(p, v) % 2 != 0)
                components.fail("piece " + piece.id + " has odd degree at vertex " + inst.vertices[v].id);
        if (piece.boundary.empty() && P != 1) components.fail("piece " + piece.id + " has no boundary but is not alone");
    }

    CheckResult witnesses("witness_position");
    for (const auto& piece : inst.pieces)
        for (const auto& e : inst.edges)
            if (on_affine_hull(piece.witness, e.geom))
                witnesses.fail("witness of piece " + piece.id + " lies on the affine hull of edge " + e.id);

    const bool structural_ok = pieces_check.passed && vertices.passed && planarity.passed && components.passed &&
                               witnesses.passed;

    CheckResult separation("witness_separation");
    CheckResult cover("cover");
    if (!structural_ok) {
        separation.fail("skipped: structural checks failed");
        cover.fail("skipped: structural checks failed");
    } else {
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t q = 0; q < P; ++q)
                if (p != q && member(inst, p, inst.pieces[q].witness, opts.seed))
                    separation.fail("witness of piece " + inst.pieces[q].id + " lies inside piece " + inst.pieces[p].id);
        const auto samples = sample_general_position(inst, opts.seed, opts.cover_samples);
        for (const auto& x : samples) {
            std::size_t owners = 0;
            for (std::size_t p = 0; p < P; ++p) owners += member(inst, p, x, opts.seed) ? 1 : 0;
            if (owners != 1) {
                cover.fail("point (" + to_string(x.x) + ", " + to_string(x.y) + ") lies in " + std::to_string(owners) +
                           " pieces");
                if (cover.failures.size() >= 8) break;
            }
        }
    }

    report.checks = {continuity, pieces_check, vertices, planarity, components, witnesses, separation, cover};
    return report;
}

} // namespace cpa2relu
