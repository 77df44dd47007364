#pragma once

// Two-hidden-layer ReLU network realizing a term list. Each term occupies
// its own block of five first-layer and three second-layer neurons.

#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "cpa2relu/reduce.hpp"

namespace cpa2relu {

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rat value;
};

struct AffineLayer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Triplet> weights;  // nonzero only, sorted by (row, col)
    std::vector<Rat> bias;

    void add(std::size_t r, std::size_t c, const Rat& v) {
        if (sign(v) != 0) weights.push_back({r, c, v});
    }
};

struct ReluNetwork {
    std::vector<AffineLayer> layers;

    std::size_t s1() const { return layers.at(0).rows; }
    std::size_t s2() const { return layers.at(1).rows; }
    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d{layers.front().cols};
        for (const auto& l : layers) d.push_back(l.rows);
        return d;
    }
};

enum class EvalMode { Exact, Float64 };

namespace detail {

inline void sort_weights(AffineLayer& layer) {
    std::sort(layer.weights.begin(), layer.weights.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
}

template <typename T>
std::vector<T> apply(const AffineLayer& layer, const std::vector<T>& in, const std::vector<T>& weights,
                     const std::vector<T>& bias) {
    std::vector<T> out = bias;
    for (std::size_t k = 0; k < layer.weights.size(); ++k)
        out[layer.weights[k].row] += weights[k] * in[layer.weights[k].col];
    return out;
}

} // namespace detail

/// Layer 1 per term: [f1, -f1, f2 - f3, f3, -f3].
/// Layer 2 per term, with s = sigma2 * (u3 + u4 - u5): [u1 - u2 - s, s, -s].
/// Output: sum of sigma1 * (w1 + w2 - w3).
///
/// Second-layer weights reading a first-layer unit that is identically zero
/// (no weights, bias <= 0) are left out.
inline ReluNetwork build_network(const TermList& list) {
    const std::size_t n = list.terms.size();
    if (n == 0) throw Error(ErrorCode::EmptyTermList, "cannot build a network from an empty term list");
    AffineLayer l1{5 * n, 2, {}, std::vector<Rat>(5 * n)};
    AffineLayer l2{3 * n, 5 * n, {}, std::vector<Rat>(3 * n)};
    AffineLayer l3{1, 3 * n, {}, std::vector<Rat>(1)};
    for (std::size_t t = 0; t < n; ++t) {
        const MaxTerm& term = list.terms[t];
        const std::array<AffineFunc, 5> rows{term.f1, -term.f1, term.f2 - term.f3, term.f3, -term.f3};
        std::array<bool, 5> live{};
        for (std::size_t r = 0; r < 5; ++r) {
            const std::size_t row = 5 * t + r;
            l1.add(row, 0, rows[r].a);
            l1.add(row, 1, rows[r].b);
            l1.bias[row] = rows[r].c;
            live[r] = sign(rows[r].a) != 0 || sign(rows[r].b) != 0 || sign(rows[r].c) > 0;
        }
        const Rat s2(term.sigma2);
        // Coefficients of (u1..u5) in each of the three second-layer rows.
        const std::array<std::array<Rat, 5>, 3> mix{{
            {Rat(1), Rat(-1), Rat(-s2), Rat(-s2), Rat(s2)},
            {Rat(0), Rat(0), s2, s2, Rat(-s2)},
            {Rat(0), Rat(0), Rat(-s2), Rat(-s2), s2},
        }};
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                if (live[c]) l2.add(3 * t + r, 5 * t + c, mix[r][c]);
        const Rat s1(term.sigma1);
        l3.add(0, 3 * t, s1);
        l3.add(0, 3 * t + 1, s1);
        l3.add(0, 3 * t + 2, Rat(-s1));
    }
    for (auto* l : {&l1, &l2, &l3}) detail::sort_weights(*l);
    return {{std::move(l1), std::move(l2), std::move(l3)}};
}

inline Rat eval_network_exact(const ReluNetwork& net, const Point& x) {
    std::vector<Rat> act{x.x, x.y};
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const AffineLayer& layer = net.layers[i];
        std::vector<Rat> w;
        w.reserve(layer.weights.size());
        for (const auto& t : layer.weights) w.push_back(t.value);
        act = detail::apply(layer, act, w, layer.bias);
        if (i + 1 < net.layers.size())
            for (auto& a : act)
                if (sign(a) < 0) a = 0;
    }
    return act.at(0);
}

inline double eval_network_f64(const ReluNetwork& net, double x, double y) {
    std::vector<double> act{x, y};
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const AffineLayer& layer = net.layers[i];
        std::vector<double> w, b;
        for (const auto& t : layer.weights) w.push_back(t.value.get_d());
        for (const auto& v : layer.bias) b.push_back(v.get_d());
        act = detail::apply(layer, act, w, b);
        if (i + 1 < net.layers.size())
            for (auto& a : act) a = std::max(a, 0.0);
    }
    return act.at(0);
}

struct NetworkStats {
    std::size_t s1 = 0;
    std::size_t s2 = 0;
    std::size_t nnz = 0;
    std::size_t pieces = 0;
    bool bounds_ok = false;
    double terms_per_piece = 0;
};

/// Widths, stored nonzero parameters (weights and biases) and the bounds
/// s1 <= 45p, s2 <= 27p, nnz <= 333p.
inline NetworkStats stats(const ReluNetwork& net, std::size_t p) {
    NetworkStats s;
    s.s1 = net.s1();
    s.s2 = net.s2();
    for (const auto& l : net.layers) {
        s.nnz += l.weights.size();
        for (const auto& b : l.bias) s.nnz += sign(b) != 0 ? 1 : 0;
    }
    s.pieces = p;
    s.bounds_ok = s.s1 <= 45 * p && s.s2 <= 27 * p && s.nnz <= 333 * p;
    s.terms_per_piece = p == 0 ? 0.0 : static_cast<double>(s.s1 / 5) / static_cast<double>(p);
    return s;
}

inline json stats_to_json(const NetworkStats& s) {
    return {{"s1", s.s1}, {"s2", s.s2}, {"nnz", s.nnz}, {"pieces", s.pieces}, {"bounds_ok", s.bounds_ok},
            {"terms_per_piece", s.terms_per_piece}};
}

inline json export_network(const ReluNetwork& net) {
    json dims = json::array();
    for (std::size_t d : net.dims()) dims.push_back(d);
    json layers = json::array(), mirror = json::array();
    for (const auto& l : net.layers) {
        json trip = json::array(), bias = json::array(), ftrip = json::array(), fbias = json::array();
        for (const auto& t : l.weights) {
            trip.push_back(json::array({t.row, t.col, rat_to_json(t.value)}));
            ftrip.push_back(json::array({t.row, t.col, t.value.get_d()}));
        }
        for (const auto& b : l.bias) {
            bias.push_back(rat_to_json(b));
            fbias.push_back(b.get_d());
        }
        layers.push_back({{"rows", l.rows}, {"cols", l.cols}, {"triplets", trip}, {"bias", bias}});
        mirror.push_back({{"triplets", ftrip}, {"bias", fbias}});
    }
    return {{"dims", dims}, {"layers", layers}, {"float_mirror", {{"layers", mirror}}}};
}

inline ReluNetwork import_network(const json& doc) {
    auto bad = [](const std::string& why) { return Error(ErrorCode::SchemaError, "network: " + why); };
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("layers")) throw bad("missing dims or layers");
    const json& dims = doc["dims"];
    const json& layers = doc["layers"];
    if (!dims.is_array() || !layers.is_array() || dims.size() != 4 || layers.size() != 3)
        throw bad("expected dims [2, s1, s2, 1] and three layers");
    std::vector<std::size_t> d;
    for (const auto& v : dims) {
        if (!v.is_number_unsigned()) throw bad("dims must be nonnegative integers");
        d.push_back(v.get<std::size_t>());
    }
    if (d[0] != 2 || d[3] != 1) throw bad("input dimension must be 2 and output dimension 1");
    ReluNetwork net;
    for (std::size_t i = 0; i < 3; ++i) {
        const json& lj = layers[i];
        if (!lj.is_object() || !lj.contains("rows") || !lj.contains("cols") || !lj.contains("triplets") ||
            !lj.contains("bias"))
            throw bad("layer is missing a field");
        if (!lj["rows"].is_number_unsigned() || !lj["cols"].is_number_unsigned()) throw bad("layer sizes must be integers");
        AffineLayer layer;
        layer.rows = lj["rows"].get<std::size_t>();
        layer.cols = lj["cols"].get<std::size_t>();
        if (layer.cols != d[i] || layer.rows != d[i + 1]) throw bad("layer dimensions do not chain");
        if (!lj["triplets"].is_array() || !lj["bias"].is_array() || lj["bias"].size() != layer.rows)
            throw bad("bad triplets or bias");
        for (const auto& t : lj["triplets"]) {
            if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_number_unsigned())
                throw bad("triplet must be [row, col, value]");
            const std::size_t r = t[0].get<std::size_t>(), c = t[1].get<std::size_t>();
            if (r >= layer.rows || c >= layer.cols) throw bad("triplet index out of range");
            const Rat v = rat_from_json(t[2]);
            if (sign(v) == 0) throw bad("stored weights must be nonzero");
            layer.weights.push_back({r, c, v});
        }
        for (const auto& b : lj["bias"]) layer.bias.push_back(rat_from_json(b));
        detail::sort_weights(layer);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

} // namespace cpa2relu
