#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "cpa2relu/instance.hpp"

namespace cpa2relu {

struct RenderOptions {
    std::optional<Box> viewport;  // default: 1.5 times the extent of the instance
    double size_px = 800;
    double stroke = 1.5;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Parameter interval of the edge inside the box (Liang-Barsky).
inline std::optional<std::pair<Rat, Rat>> clip_to_box(const EdgeGeom& e, const Box& box) {
    const Point b = hull_base(e);
    const Direction d = hull_dir(e);
    const ParamRange range = param_range(e);
    std::optional<Rat> lo = range.lo, hi = range.hi;
    auto bound = [&](const Rat& p, const Rat& q) {
        // Keep t with p * t <= q.
        if (sign(p) == 0) return sign(q) >= 0;
        const Rat t = q / p;
        if (sign(p) > 0) {
            if (!hi || t < *hi) hi = t;
        } else if (!lo || t > *lo) {
            lo = t;
        }
        return true;
    };
    const bool inside = bound(-d.dx, b.x - box.xmin) && bound(d.dx, box.xmax - b.x) && bound(-d.dy, b.y - box.ymin) &&
                        bound(d.dy, box.ymax - b.y);
    if (!inside || !lo || !hi || *lo > *hi) return std::nullopt;
    return std::pair{*lo, *hi};
}

inline std::string affine_label(const AffineFunc& f) {
    std::ostringstream os;
    os << to_string(f.a) << "x + " << to_string(f.b) << "y + " << to_string(f.c);
    return os.str();
}

} // namespace detail

/// SVG drawing of the subdivision: one path per edge (unbounded edges clipped
/// to the viewport and dashed), one label per piece at its witness.
inline std::string render_svg(const Instance& inst, const RenderOptions& opts = {}) {
    const Box box = opts.viewport ? *opts.viewport : extent_box(anchor_points(inst), make_rat(3, 2));
    const double w = opts.size_px;
    const double sx = w / Rat(box.xmax - box.xmin).get_d();
    const double sy = w / Rat(box.ymax - box.ymin).get_d();
    auto px = [&](const Point& p) {
        return std::pair{Rat(p.x - box.xmin).get_d() * sx, Rat(box.ymax - p.y).get_d() * sy};
    };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << w
       << "\" viewBox=\"0 0 " << w << ' ' << w << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& e : inst.edges) {
        const auto span = detail::clip_to_box(e.geom, box);
        os << "<path class=\"edge\" id=\"edge-" << detail::xml_escape(e.id) << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
           << opts.stroke << '"';
        if (e.kind != EdgeKind::Segment) os << " stroke-dasharray=\"8 5\"";
        os << " d=\"";
        if (span) {
            const auto [x0, y0] = px(hull_base(e.geom) + span->first * hull_dir(e.geom));
            const auto [x1, y1] = px(hull_base(e.geom) + span->second * hull_dir(e.geom));
            os << "M " << x0 << ' ' << y0 << " L " << x1 << ' ' << y1;
        }
        os << "\"/>\n";
    }
    for (const auto& v : inst.vertices) {
        const auto [x, y] = px(v.pos);
        os << "<circle class=\"vertex\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << 2 * opts.stroke << "\"/>\n";
    }
    for (const auto& p : inst.pieces) {
        const auto [x, y] = px(p.witness);
        os << "<text class=\"piece\" x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"middle\">"
           << detail::xml_escape(p.id + ": " + detail::affine_label(p.affine)) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace cpa2relu
