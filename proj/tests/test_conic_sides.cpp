#include <gtest/gtest.h>

#include "common.hpp"

using namespace cpa2relu;
using namespace testing_support;

TEST(Membership, WitnessesAndFarPoints) {
    const Instance hat = load("hat");
    const std::size_t out = piece_index(hat, "out");
    const std::size_t ne = piece_index(hat, "NE");
    EXPECT_TRUE(member(hat, ne, P("1/5", "1/5")));
    EXPECT_FALSE(member(hat, ne, P("-1/5", "1/5")));
    EXPECT_TRUE(member(hat, out, P(50, -31)));
    EXPECT_FALSE(member(hat, out, P("1/5", "1/7")));
    try {
        member(hat, ne, P("1/2", "1/2"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OnBoundary);
    }
}

TEST(Membership, ReroutesAroundVertices) {
    // The straight path from this point to the NE witness passes through the
    // center vertex; the oracle must detour.
    const Instance hat = load("hat");
    EXPECT_FALSE(member(hat, piece_index(hat, "NE"), P("-1/8", "-1/6")));
    EXPECT_TRUE(member(hat, piece_index(hat, "SW"), P("-1/8", "-1/6")));
}

TEST(ConicCoeff, HandCountedValues) {
    const Instance hat = load("hat");
    for (const auto& id : {"NE", "NW", "SW", "SE"}) EXPECT_EQ(compute_conic_coeff(hat, piece_index(hat, id)).c, 1);
    const ConicCoeff out = compute_conic_coeff(hat, piece_index(hat, "out"));
    EXPECT_EQ(out.n_h, 1);
    EXPECT_EQ(out.c, 0);

    const Instance strip = load("strip");
    const ConicCoeff mid = compute_conic_coeff(strip, piece_index(strip, "M"));
    EXPECT_EQ(mid.n_a, 2);
    EXPECT_EQ(mid.c, -1);
    EXPECT_EQ(compute_conic_coeff(strip, piece_index(strip, "L")).c, 0);

    const Instance half = load("halfplane");
    EXPECT_EQ(compute_conic_coeff(half, 0).c, 0);
    EXPECT_EQ(compute_conic_coeff(half, 1).c, 0);

    const Instance ring = load("annulus");
    const ConicCoeff r = compute_conic_coeff(ring, piece_index(ring, "ring"));
    EXPECT_EQ(r.n_h, 1);
    EXPECT_EQ(r.c, 0);

    // Outer piece touching itself at the origin: degree 4 there, two holes.
    const Instance touch = load("touching_cones");
    const ConicCoeff t = compute_conic_coeff(touch, piece_index(touch, "out"));
    EXPECT_EQ(t.d, 1);
    EXPECT_EQ(t.n_h, 2);
    EXPECT_EQ(t.c, 0);

    EXPECT_EQ(compute_conic_coeff(load("single"), 0).c, 1);
}

TEST(VertexStar, MaxOfThreePlanes) {
    const Instance inst = load("max0xy");
    const VertexStar star = build_star(inst, 0);
    ASSERT_EQ(star.dirs.size(), 3u);
    EXPECT_TRUE(same_direction(star.dirs[0], D(1, 1)));
    EXPECT_TRUE(same_direction(star.dirs[1], D(-1, 0)));
    EXPECT_TRUE(same_direction(star.dirs[2], D(0, -1)));
    EXPECT_EQ(inst.pieces[star.owners[0]].affine, A(0, 1, 0));
    EXPECT_EQ(inst.pieces[star.owners[1]].affine, A(0, 0, 0));
    EXPECT_EQ(inst.pieces[star.owners[2]].affine, A(1, 0, 0));
}

TEST(VertexStar, HatCorner) {
    const Instance hat = load("hat");
    const VertexStar star = build_star(hat, vertex_index(hat, "E"));
    ASSERT_EQ(star.owners.size(), 3u);
    EXPECT_EQ(hat.pieces[star.owners[0]].affine, A(-1, -1, 1));
    EXPECT_EQ(hat.pieces[star.owners[1]].affine, A(-1, 1, 1));
    EXPECT_EQ(hat.pieces[star.owners[2]].affine, A(0, 0, 0));
}

TEST(VertexStar, DisconnectedConeOwnsTwoSectors) {
    const Instance touch = load("touching_cones");
    const VertexStar star = build_star(touch, vertex_index(touch, "O"));
    ASSERT_EQ(star.owners.size(), 6u);
    const std::size_t out = piece_index(touch, "out");
    EXPECT_EQ(std::count(star.owners.begin(), star.owners.end(), out), 2);
}

TEST(HalfPlanes, LeftPieceOfLine) {
    const Instance half = load("halfplane");
    const ConicSides sides(half);
    EXPECT_EQ(half.pieces[sides.left_piece(0)].id, "neg");
    EXPECT_TRUE(sides.edge_halfplane_contains(0, 0, P(-3, 100)));
    EXPECT_FALSE(sides.edge_halfplane_contains(0, 0, P(3, 100)));
    EXPECT_TRUE(sides.edge_halfplane_contains(1, 0, P(3, 100)));
    try {
        sides.edge_halfplane_contains(1, 0, P(0, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GeneralPositionViolation);
    }
}

TEST(HalfPlanes, VertexConeOfTriangle) {
    const Instance hat = load("hat");
    const ConicSides sides(hat);
    const std::size_t ne = piece_index(hat, "NE");
    const std::size_t c = vertex_index(hat, "C");
    EXPECT_TRUE(sides.vertex_cone_contains(ne, c, P(5, 7)));
    EXPECT_FALSE(sides.vertex_cone_contains(ne, c, P(-5, 7)));
}

TEST(IndicatorIdentity, HoldsForEveryCorpusPiece) {
    for (const auto& name : corpus_names()) {
        const Instance inst = load(name);
        const ConicSides sides(inst, 1);
        const auto points = sample_general_position(inst, 23, 150);
        for (std::size_t p = 0; p < inst.pieces.size(); ++p)
            for (const auto& x : points) {
                const IdentityCheck r = sides.indicator_identity_check(p, x);
                ASSERT_TRUE(r.ok) << name << " piece " << inst.pieces[p].id << " lhs " << r.lhs << " rhs " << r.rhs;
            }
    }
}

TEST(IndicatorIdentity, HoldsOnGeneratedGrids) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Instance inst = sparsify(generate_grid({3, seed, 3}));
        const ConicSides sides(inst);
        for (const auto& x : sample_general_position(inst, seed, 60))
            for (std::size_t p = 0; p < inst.pieces.size(); ++p) ASSERT_TRUE(sides.indicator_identity_check(p, x).ok);
    }
}

TEST(TraceBoundary, RecoversDeclaredComponentCounts) {
    for (const auto& name : corpus_names()) {
        const Instance inst = load(name);
        for (std::size_t p = 0; p < inst.pieces.size(); ++p) {
            const auto comps = trace_boundary(inst, p);
            EXPECT_EQ(comps.size(), inst.pieces[p].boundary.size()) << name << " " << inst.pieces[p].id;
            std::size_t arcs = 0;
            for (const auto& c : comps) arcs += c.kind == ComponentKind::Arc ? 1 : 0;
            std::size_t declared = 0;
            for (const auto& c : inst.pieces[p].boundary) declared += c.kind == ComponentKind::Arc ? 1 : 0;
            EXPECT_EQ(arcs, declared) << name << " " << inst.pieces[p].id;
        }
    }
}
