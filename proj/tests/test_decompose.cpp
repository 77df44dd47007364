#include <gtest/gtest.h>

#include <set>

#include "common.hpp"

using namespace cpa2relu;
using namespace testing_support;

namespace {

const EdgePair& pair_named(const Decomposition& dec, const std::string& id) {
    for (const auto& ep : dec.edge_pairs)
        if (ep.edge_id == id) return ep;
    throw std::runtime_error("no edge pair " + id);
}

} // namespace

TEST(Decompose, SinglePieceIsAllTail) {
    const Decomposition dec = decompose(load("single"));
    EXPECT_TRUE(dec.fans.empty());
    EXPECT_TRUE(dec.edge_pairs.empty());
    EXPECT_EQ(dec.tail, A(3, 2, 1));
}

TEST(Decompose, HalfPlaneIsOneLinePair) {
    const Decomposition dec = decompose(load("halfplane"));
    EXPECT_TRUE(dec.fans.empty());
    ASSERT_EQ(dec.edge_pairs.size(), 1u);
    EXPECT_EQ(dec.edge_pairs[0].sigma, 1);
    EXPECT_TRUE(dec.tail.is_zero());
    for (const auto& x : random_points(3, 50))
        if (sign(x.x) != 0) EXPECT_EQ(eval_decomposition(dec, x), rmax(Rat(0), x.x));
}

TEST(Decompose, MaxOfThreeIsOneFan) {
    const Decomposition dec = decompose(load("max0xy"));
    ASSERT_EQ(dec.fans.size(), 1u);
    EXPECT_TRUE(dec.edge_pairs.empty());
    EXPECT_TRUE(dec.tail.is_zero());
    EXPECT_EQ(dec.fans[0].rays.size(), 3u);
}

TEST(Decompose, EdgePairSidesAndSigns) {
    const Decomposition fig = decompose(load("fig1"));
    const EdgePair& ep = pair_named(fig, "RI-TI");
    EXPECT_EQ(ep.sigma, -1);
    const std::set<std::string> got{to_string(ep.plus.a) + "," + to_string(ep.plus.b) + "," + to_string(ep.plus.c),
                                    to_string(ep.minus.a) + "," + to_string(ep.minus.b) + "," + to_string(ep.minus.c)};
    EXPECT_EQ(got, (std::set<std::string>{"0,0,0", "1,1,-2"}));

    const Decomposition hat = decompose(load("hat"));
    const EdgePair& en = pair_named(hat, "en");
    const Point inside = en.base + make_rat(1, 1000) * rot90(en.dir);
    EXPECT_EQ(en.plus, sign(inside.x + inside.y - 1) < 0 ? A(-1, -1, 1) : A(0, 0, 0));
}

TEST(Decompose, PairAffinesAgreeOnTheirLine) {
    for (const auto& name : corpus_names()) {
        const Instance inst = sparsify(load(name));
        const Decomposition dec = decompose(inst);
        for (const auto& ep : dec.edge_pairs) {
            EXPECT_EQ(ep.plus(ep.base), ep.minus(ep.base)) << name << " " << ep.edge_id;
            EXPECT_EQ(ep.plus(ep.base + ep.dir), ep.minus(ep.base + ep.dir)) << name << " " << ep.edge_id;
            EXPECT_EQ(ep.sigma, inst.edges[edge_index(inst, ep.edge_id)].kind == EdgeKind::Line ? 1 : -1);
        }
    }
}

TEST(Decompose, SectorCountIsDegree) {
    for (const auto& name : corpus_names()) {
        const Instance inst = sparsify(load(name));
        const Decomposition dec = decompose(inst);
        ASSERT_EQ(dec.fans.size(), inst.vertices.size());
        for (const auto& fan : dec.fans) {
            const std::size_t v = vertex_index(inst, fan.vertex_id);
            EXPECT_EQ(fan.rays.size(), inst.degree(v)) << name << " " << fan.vertex_id;
            EXPECT_EQ(fan.sector_affines.size(), fan.rays.size());
        }
        std::size_t non_rays = 0;
        for (const auto& e : inst.edges) non_rays += e.kind == EdgeKind::Ray ? 0 : 1;
        EXPECT_EQ(dec.edge_pairs.size(), non_rays) << name;
    }
}

TEST(Decompose, FanMatchesFunctionNearItsVertex) {
    Rng rng(17);
    for (const auto& name : corpus_names()) {
        const Instance inst = sparsify(load(name));
        const Decomposition dec = decompose(inst);
        for (const auto& fan : dec.fans) {
            for (int k = 0; k < 20; ++k) {
                const Vec u{Rat(static_cast<long>(rng.below(1995)) - 997), Rat(static_cast<long>(rng.below(1995)) - 997)};
                bool skip = u.is_zero();
                for (const auto& r : fan.rays) skip = skip || sign(cross(u, r)) == 0;
                if (skip) continue;
                const Point x = fan.center + make_rat(1, 1000000) * u;
                EXPECT_EQ(eval_fan(fan, x), eval_cpa(inst, x)) << name << " " << fan.vertex_id;
            }
        }
    }
}

TEST(Decompose, SumEqualsFunctionOnCorpus) {
    for (const auto& name : corpus_names()) {
        const Instance inst = sparsify(load(name));
        const Decomposition dec = decompose(inst);
        for (const auto& x : sample_general_position(inst, 41, 300))
            ASSERT_EQ(eval_decomposition(dec, x), eval_cpa(inst, x)) << name << " at " << to_string(x.x) << ", "
                                                                      << to_string(x.y);
    }
}

TEST(Decompose, SumEqualsFunctionOnGrids) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Instance inst = sparsify(generate_grid({4, seed, 5}));
        const Decomposition dec = decompose(inst);
        for (const auto& x : sample_general_position(inst, seed, 200)) ASSERT_EQ(eval_decomposition(dec, x), eval_cpa(inst, x));
    }
}

TEST(Decompose, FansAndPairsFollowIdOrder) {
    const Decomposition dec = decompose(load("fig1"));
    for (std::size_t i = 1; i < dec.fans.size(); ++i) EXPECT_LT(dec.fans[i - 1].vertex_id, dec.fans[i].vertex_id);
    for (std::size_t i = 1; i < dec.edge_pairs.size(); ++i)
        EXPECT_LT(dec.edge_pairs[i - 1].edge_id, dec.edge_pairs[i].edge_id);
}
