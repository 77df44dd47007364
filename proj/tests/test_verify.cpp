#include <gtest/gtest.h>

#include "common.hpp"

using namespace cpa2relu;
using namespace testing_support;

namespace {

VerifyReport run_mutant(const Instance& inst, const Compiled& c, const Mutant& m) {
    const ReluNetwork* net = m.net ? &*m.net : nullptr;
    return verify_equivalence(inst, c.dec, m.terms, net, 1000, 3, true);
}

} // namespace

TEST(Verify, CorpusIsCertified) {
    for (const auto& name : corpus_names()) {
        const Instance inst = load(name);
        const Compiled c = compile(inst);
        VerifyReport r = verify_equivalence(c.sparse, c.dec, c.terms, &c.net, 400, 1);
        EXPECT_TRUE(r.failures.empty()) << name;
        r.bounds = stats(c.net, c.sparse.piece_count());
        EXPECT_TRUE(r.certified()) << name;
        // The source instance (before sparsify) defines the same function.
        EXPECT_TRUE(verify_equivalence(inst, c.dec, c.terms, &c.net, 400, 2).failures.empty()) << name;
    }
}

TEST(Verify, ZeroSamplesIsNotCertified) {
    const Compiled c = compile(load("hat"));
    const VerifyReport r = verify_equivalence(c.sparse, c.dec, c.terms, &c.net, 0, 0);
    EXPECT_FALSE(r.certified());
}

TEST(Verify, MutationsAreCaughtAtTheRightStage) {
    const Instance inst = load("fig1");
    const Compiled c = compile(inst);
    const std::pair<MutationKind, const char*> kinds[] = {
        {MutationKind::FlipSign, "terms"}, {MutationKind::DropTerm, "terms"}, {MutationKind::PerturbWeight, "network"}};
    std::size_t caught = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        for (const auto& [kind, stage] : kinds) {
            const Mutant m = mutate(c.terms, c.net, kind, seed);
            const VerifyReport r = run_mutant(inst, c, m);
            ++total;
            if (!r.failures.empty()) {
                ++caught;
                EXPECT_EQ(r.failures[0].stage, stage) << m.description;
                continue;
            }
            // A survivor must compute the same function: no independent point separates it.
            for (const auto& x : sample_general_position(inst, 1000 + seed, 5000)) {
                const Rat y = m.net ? eval_network_exact(*m.net, x) : eval_terms(m.terms, x);
                ASSERT_EQ(y, eval_cpa(inst, x)) << to_string(kind) << " " << m.description;
            }
        }
    EXPECT_GE(caught * 10, total * 9);
}

TEST(Verify, BrokenDecompositionIsBlamedFirst) {
    const Instance inst = load("hat");
    Compiled c = compile(inst);
    c.dec.tail.c += 1;
    const VerifyReport r = verify_equivalence(inst, c.dec, c.terms, &c.net, 50, 0);
    ASSERT_EQ(r.failures.size(), 50u);
    EXPECT_EQ(r.failures[0].stage, "decomposition");
}

TEST(Verify, DeterministicPerSeed) {
    const Instance inst = load("annulus");
    const Compiled c = compile(inst);
    const json a = verify_report_to_json(verify_equivalence(inst, c.dec, c.terms, &c.net, 200, 9));
    const json b = verify_report_to_json(verify_equivalence(inst, c.dec, c.terms, &c.net, 200, 9));
    EXPECT_EQ(a, b);
    EXPECT_EQ(sample_general_position(inst, 9, 50), sample_general_position(inst, 9, 50));
    EXPECT_NE(sample_general_position(inst, 9, 50), sample_general_position(inst, 10, 50));
    const Mutant m1 = mutate(c.terms, c.net, MutationKind::PerturbWeight, 4);
    const Mutant m2 = mutate(c.terms, c.net, MutationKind::PerturbWeight, 4);
    EXPECT_EQ(m1.description, m2.description);
}

TEST(Verify, IdentityAndEulerSuite) {
    for (const auto& name : corpus_names()) {
        const Instance inst = sparsify(load(name));
        const VerifyReport r = verify_lemma_suite(inst, 100, 5);
        EXPECT_EQ(r.identity_stats.size(), inst.pieces.size());
        EXPECT_TRUE(r.identity_ok()) << name;
        if (r.euler) EXPECT_TRUE(r.euler->ok) << name;
    }
    const auto hat = euler_diagnostic(load("hat"));
    ASSERT_TRUE(hat.has_value());
    EXPECT_EQ(hat->v, 5u);
    EXPECT_EQ(hat->e, 8u);
    EXPECT_EQ(hat->p, 5u);
    EXPECT_FALSE(euler_diagnostic(load("max0xy")).has_value());
    EXPECT_FALSE(euler_diagnostic(load("annulus")).has_value());
}

TEST(Sampling, AvoidsEdgeHulls) {
    for (const auto& x : sample_general_position(load("halfplane"), 7, 500)) EXPECT_NE(sign(x.x), 0);
    const Instance single = load("single");
    EXPECT_EQ(sample_general_position(single, 1, 30).size(), 30u);
    const Instance fig = load("fig1");
    const auto hulls = edge_geoms(fig);
    for (const auto& x : sample_general_position(fig, 3, 300))
        for (const auto& h : hulls) EXPECT_FALSE(on_affine_hull(x, h));
}
