#pragma once

// JSON ingestion and emission of CPA instances. Rationals are written as
// bare integers when possible and as "num/den" strings otherwise.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "cpa2relu/instance.hpp"

namespace cpa2relu {

using json = nlohmann::json;

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(std::to_string(j.get<std::int64_t>()), 10);
    if (j.is_number_unsigned()) return Rat(std::to_string(j.get<std::uint64_t>()), 10);
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw Error(ErrorCode::SchemaError, "expected integer or \"num/den\" string, got " + j.dump());
}

inline json rat_to_json(const Rat& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return static_cast<std::int64_t>(r.get_num().get_si());
    return to_string(r);
}

inline json point_to_json(const Point& p) { return json::array({rat_to_json(p.x), rat_to_json(p.y)}); }
inline json affine_to_json(const AffineFunc& f) { return json::array({rat_to_json(f.a), rat_to_json(f.b), rat_to_json(f.c)}); }

namespace detail {

inline const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw Error(ErrorCode::SchemaError, where + ": missing field '" + key + "'");
    return obj.at(key);
}

inline std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw Error(ErrorCode::SchemaError, where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline const json& require_array(const json& obj, const char* key, const std::string& where, std::size_t size = 0) {
    const json& v = require(obj, key, where);
    if (!v.is_array() || (size != 0 && v.size() != size))
        throw Error(ErrorCode::SchemaError, where + ": field '" + key + "' must be an array" +
                                                (size ? " of length " + std::to_string(size) : std::string{}));
    return v;
}

inline Point point_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::SchemaError, where + ": expected [rat, rat]");
    return {rat_from_json(j[0]), rat_from_json(j[1])};
}

inline std::size_t lookup(const std::unordered_map<std::string, std::size_t>& table, const json& ref,
                          const std::string& what) {
    if (!ref.is_string()) throw Error(ErrorCode::SchemaError, what + " reference must be a string");
    const auto it = table.find(ref.get<std::string>());
    if (it == table.end()) throw Error(ErrorCode::DanglingRef, "unknown " + what + " '" + ref.get<std::string>() + "'");
    return it->second;
}

} // namespace detail

inline Instance parse_instance(const json& doc) {
    using namespace detail;
    Instance inst;
    std::unordered_map<std::string, std::size_t> vertex_ids, edge_ids, piece_ids;

    for (const auto& jv : require_array(doc, "vertices", "instance")) {
        const std::string id = require_string(jv, "id", "vertex");
        if (!vertex_ids.emplace(id, inst.vertices.size()).second)
            throw Error(ErrorCode::SchemaError, "duplicate vertex id '" + id + "'");
        inst.vertices.push_back({id, {rat_from_json(require(jv, "x", "vertex " + id)), rat_from_json(require(jv, "y", "vertex " + id))}});
    }

    // Piece ids first so edges can refer to them.
    const json& jpieces = require_array(doc, "pieces", "instance");
    for (const auto& jp : jpieces) {
        const std::string id = require_string(jp, "id", "piece");
        if (!piece_ids.emplace(id, piece_ids.size()).second)
            throw Error(ErrorCode::SchemaError, "duplicate piece id '" + id + "'");
    }

    for (const auto& je : require_array(doc, "edges", "instance")) {
        const std::string id = require_string(je, "id", "edge");
        const std::string where = "edge " + id;
        if (!edge_ids.emplace(id, inst.edges.size()).second)
            throw Error(ErrorCode::SchemaError, "duplicate edge id '" + id + "'");
        Edge e;
        e.id = id;
        const std::string kind = require_string(je, "kind", where);
        if (kind == "segment") {
            e.kind = EdgeKind::Segment;
            e.from = lookup(vertex_ids, require(je, "a", where), "vertex");
            e.to = lookup(vertex_ids, require(je, "b", where), "vertex");
            if (inst.vertices[*e.from].pos == inst.vertices[*e.to].pos)
                throw Error(ErrorCode::SchemaError, where + ": segment endpoints coincide");
            e.geom = Segment{inst.vertices[*e.from].pos, inst.vertices[*e.to].pos};
        } else if (kind == "ray") {
            e.kind = EdgeKind::Ray;
            e.from = lookup(vertex_ids, require(je, "v", where), "vertex");
            const Point d = point_from_json(require(je, "d", where), where);
            const Direction dir{d.x, d.y};
            if (dir.is_zero()) throw Error(ErrorCode::SchemaError, where + ": zero direction");
            e.geom = Ray{inst.vertices[*e.from].pos, dir};
        } else if (kind == "line") {
            e.kind = EdgeKind::Line;
            const Point p = point_from_json(require(je, "p", where), where);
            const Point d = point_from_json(require(je, "d", where), where);
            const Direction dir{d.x, d.y};
            if (dir.is_zero()) throw Error(ErrorCode::SchemaError, where + ": zero direction");
            e.geom = Line{p, dir};
        } else {
            throw Error(ErrorCode::SchemaError, where + ": unknown kind '" + kind + "'");
        }
        const json& jp = require_array(je, "pieces", where, 2);
        e.pieces = {lookup(piece_ids, jp[0], "piece"), lookup(piece_ids, jp[1], "piece")};
        inst.edges.push_back(std::move(e));
    }

    for (const auto& jp : jpieces) {
        Piece p;
        p.id = jp.at("id").get<std::string>();
        const std::string where = "piece " + p.id;
        const json& ja = require_array(jp, "affine", where, 3);
        p.affine = {rat_from_json(ja[0]), rat_from_json(ja[1]), rat_from_json(ja[2])};
        p.witness = point_from_json(require(jp, "witness", where), where);
        for (const auto& jc : require_array(jp, "boundary", where)) {
            BoundaryComponent comp;
            const std::string kind = require_string(jc, "kind", where);
            if (kind == "arc") comp.kind = ComponentKind::Arc;
            else if (kind == "cycle") comp.kind = ComponentKind::Cycle;
            else throw Error(ErrorCode::SchemaError, where + ": unknown boundary kind '" + kind + "'");
            for (const auto& ref : require_array(jc, "edges", where)) comp.edges.push_back(lookup(edge_ids, ref, "edge"));
            p.boundary.push_back(std::move(comp));
        }
        inst.pieces.push_back(std::move(p));
    }
    return inst;
}

inline Instance parse_instance_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
    return parse_instance(doc);
}

inline json serialize_instance(const Instance& inst) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& v : inst.vertices)
        doc["vertices"].push_back({{"id", v.id}, {"x", rat_to_json(v.pos.x)}, {"y", rat_to_json(v.pos.y)}});
    doc["edges"] = json::array();
    for (const auto& e : inst.edges) {
        json je{{"id", e.id}};
        switch (e.kind) {
        case EdgeKind::Segment:
            je["kind"] = "segment";
            je["a"] = inst.vertices[*e.from].id;
            je["b"] = inst.vertices[*e.to].id;
            break;
        case EdgeKind::Ray: {
            const Direction& d = std::get<Ray>(e.geom).dir;
            je["kind"] = "ray";
            je["v"] = inst.vertices[*e.from].id;
            je["d"] = json::array({rat_to_json(d.dx), rat_to_json(d.dy)});
            break;
        }
        case EdgeKind::Line: {
            const Line& l = std::get<Line>(e.geom);
            je["kind"] = "line";
            je["p"] = point_to_json(l.through);
            je["d"] = json::array({rat_to_json(l.dir.dx), rat_to_json(l.dir.dy)});
            break;
        }
        }
        je["pieces"] = json::array({inst.pieces[e.pieces[0]].id, inst.pieces[e.pieces[1]].id});
        doc["edges"].push_back(std::move(je));
    }
    doc["pieces"] = json::array();
    for (const auto& p : inst.pieces) {
        json jp{{"id", p.id}, {"affine", affine_to_json(p.affine)}, {"witness", point_to_json(p.witness)}};
        jp["boundary"] = json::array();
        for (const auto& comp : p.boundary) {
            json ids = json::array();
            for (std::size_t e : comp.edges) ids.push_back(inst.edges[e].id);
            jp["boundary"].push_back({{"kind", comp.kind == ComponentKind::Arc ? "arc" : "cycle"}, {"edges", ids}});
        }
        doc["pieces"].push_back(std::move(jp));
    }
    return doc;
}

} // namespace cpa2relu
