#include <gtest/gtest.h>

#include <cmath>

#include "common.hpp"

using namespace cpa2relu;
using namespace testing_support;

namespace {

/// Dense forward pass written independently of the sparse evaluator.
Rat dense_eval(const ReluNetwork& net, const Point& x) {
    std::vector<Rat> act{x.x, x.y};
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const AffineLayer& l = net.layers[i];
        std::vector<std::vector<Rat>> w(l.rows, std::vector<Rat>(l.cols));
        for (const auto& t : l.weights) w[t.row][t.col] = t.value;
        std::vector<Rat> next(l.rows);
        for (std::size_t r = 0; r < l.rows; ++r) {
            next[r] = l.bias[r];
            for (std::size_t c = 0; c < l.cols; ++c) next[r] += w[r][c] * act[c];
            if (i + 1 < net.layers.size()) next[r] = rmax(Rat(0), next[r]);
        }
        act = std::move(next);
    }
    return act[0];
}

} // namespace

TEST(Network, SingleLinePair) {
    const Compiled c = compile(load("halfplane"));
    EXPECT_EQ(c.net.dims(), (std::vector<std::size_t>{2, 5, 3, 1}));
    EXPECT_EQ(eval_network_exact(c.net, P(3, 5)), 3);
    EXPECT_EQ(eval_network_exact(c.net, P(-7, 2)), 0);
    EXPECT_EQ(eval_network_exact(c.net, P("1/3", 9)), make_rat(1, 3));
}

TEST(Network, MaxOfThreePlanesAndHat) {
    const Compiled m = compile(load("max0xy"));
    EXPECT_EQ(eval_network_exact(m.net, P(-1, -2)), 0);
    EXPECT_EQ(eval_network_exact(m.net, P(2, 1)), 2);
    EXPECT_EQ(eval_network_exact(m.net, P(-5, 3)), 3);
    const Compiled h = compile(load("hat"));
    EXPECT_EQ(eval_network_exact(h.net, P(0, 0)), 1);
    EXPECT_EQ(eval_network_exact(h.net, P("1/4", "-1/4")), make_rat(1, 2));
    EXPECT_EQ(eval_network_exact(h.net, P(4, 4)), 0);
}

TEST(Network, ExactEqualsFunctionEverywhere) {
    for (const auto& name : corpus_names()) {
        const Instance inst = load(name);
        const Compiled c = compile(inst);
        for (const auto& x : sample_general_position(inst, 12, 200)) {
            const Rat y = eval_network_exact(c.net, x);
            ASSERT_EQ(y, eval_cpa(inst, x)) << name;
            ASSERT_EQ(y, dense_eval(c.net, x)) << name;
        }
        // The network is continuous, so edge points must agree with either side.
        for (const auto& x : sample_on_edges(inst, 5, 50)) {
            const Rat y = eval_network_exact(c.net, x);
            const Rat on = eval_terms(c.terms, x);
            ASSERT_EQ(y, on) << name;
        }
    }
}

TEST(Network, FloatMirrorWithinTolerance) {
    for (const auto& name : corpus_names()) {
        const Compiled c = compile(load(name));
        for (const auto& x : random_points(6, 100, 20)) {
            const double exact = eval_network_exact(c.net, x).get_d();
            const double approx = eval_network_f64(c.net, x.x.get_d(), x.y.get_d());
            EXPECT_LE(std::abs(approx - exact), 1e-9 * (1 + std::abs(exact))) << name;
        }
    }
}

TEST(Network, BlockStructure) {
    const Compiled c = compile(load("fig1"));
    const std::size_t n = c.terms.terms.size();
    ASSERT_EQ(c.net.s1(), 5 * n);
    ASSERT_EQ(c.net.s2(), 3 * n);
    for (const auto& t : c.net.layers[1].weights) EXPECT_EQ(t.row / 3, t.col / 5);
    std::vector<int> per_term(n, 0);
    for (const auto& t : c.net.layers[2].weights) {
        EXPECT_EQ(t.row, 0u);
        ++per_term[t.col / 3];
        EXPECT_EQ(rabs(t.value), 1);
    }
    for (int k : per_term) EXPECT_EQ(k, 3);
    for (const auto& t : c.net.layers[0].weights) EXPECT_NE(sign(t.value), 0);
}

TEST(Network, StatsAndBounds) {
    const Compiled one = compile(load("halfplane"));
    EXPECT_LE(stats(one.net, 2).nnz, 37u);
    const NetworkStats hat = stats(compile(load("hat")).net, 5);
    EXPECT_EQ(hat.s1, 70u);
    EXPECT_EQ(hat.s2, 42u);
    EXPECT_TRUE(hat.bounds_ok);
    const Compiled fig = compile(load("fig1"));
    const NetworkStats s = stats(fig.net, fig.sparse.piece_count());
    EXPECT_TRUE(s.bounds_ok);
    EXPECT_LE(s.s1, 360u);
    EXPECT_LE(s.s2, 216u);
    EXPECT_FALSE(stats(fig.net, 1).bounds_ok);
}

TEST(Network, NnzCountsStoredWeightsAndBiases) {
    const Compiled c = compile(load("max0xy"));
    std::size_t n = 0;
    for (const auto& l : c.net.layers) {
        for (const auto& t : l.weights) n += sign(t.value) != 0 ? 1 : 0;
        for (const auto& b : l.bias) n += sign(b) != 0 ? 1 : 0;
    }
    EXPECT_EQ(stats(c.net, 3).nnz, n);
}

TEST(Network, ExportImportRoundTrip) {
    for (const auto& name : {"fig1", "hat", "annulus"}) {
        const Compiled c = compile(load(name));
        const json doc = export_network(c.net);
        EXPECT_EQ(doc["layers"].size(), 3u);
        const ReluNetwork back = import_network(json::parse(doc.dump()));
        EXPECT_EQ(back.dims(), c.net.dims());
        EXPECT_EQ(export_network(back), doc);
        for (const auto& x : random_points(2, 50)) EXPECT_EQ(eval_network_exact(back, x), eval_network_exact(c.net, x));
    }
}

TEST(Network, ImportRejectsMalformedDocuments) {
    const json good = export_network(compile(load("max0xy")).net);
    auto expect_schema = [](const json& doc) {
        try {
            import_network(doc);
            ADD_FAILURE() << doc.dump();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::SchemaError);
        }
    };
    json dims = good;
    dims["dims"][1] = 6;
    expect_schema(dims);
    json zero = good;
    zero["layers"][0]["triplets"][0][2] = 0;
    expect_schema(zero);
    json range = good;
    range["layers"][2]["triplets"][0][1] = 999;
    expect_schema(range);
    json missing = good;
    missing.erase("layers");
    expect_schema(missing);
}

TEST(Network, ScalingTheFunctionScalesTheOutput) {
    Instance inst = load("fig1");
    const Compiled base = compile(inst);
    for (auto& p : inst.pieces) p.affine = make_rat(3, 2) * p.affine;
    const Compiled scaled = compile(inst);
    for (const auto& x : random_points(10, 100, 15))
        EXPECT_EQ(eval_network_exact(scaled.net, x), make_rat(3, 2) * eval_network_exact(base.net, x));
}

TEST(Network, EmptyTermListRejected) {
    try {
        build_network(TermList{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyTermList);
    }
}
