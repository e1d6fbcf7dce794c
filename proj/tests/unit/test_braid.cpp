#include "fk/braid/braid.hpp"
#include "fk/braid/diagram.hpp"
#include "fk/braid/random_walk.hpp"
#include "fk/jones/alexander.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace fk;

TEST(Braid, ParseFormatRoundTrip) {
    const BraidWord b = parse_braid("1 -2 1 -2");
    EXPECT_EQ(b.strands, 3);
    ASSERT_EQ(b.letters.size(), 4u);
    EXPECT_EQ(b.letters[1].index, 2);
    EXPECT_EQ(b.letters[1].sign, -1);
    EXPECT_EQ(format_braid(b), "1 -2 1 -2");
    EXPECT_EQ(parse_braid(format_braid(b), 3), b);
    EXPECT_EQ(parse_braid("", 1).letters.size(), 0u);
}

TEST(Braid, ParseRejectsBadLetters) {
    EXPECT_THROW(parse_braid("1 0 2"), std::invalid_argument);
    EXPECT_THROW(parse_braid("1 x"), std::invalid_argument);
    EXPECT_THROW(parse_braid("3", 3), std::invalid_argument);
}

TEST(Braid, ClosureComponents) {
    EXPECT_EQ(closure_components(parse_braid("1", 2)), 1);
    EXPECT_EQ(closure_components(parse_braid("1 1", 2)), 2);
    EXPECT_EQ(closure_components(parse_braid("", 3)), 3);
    EXPECT_EQ(closure_components(parse_braid("1 -2 1 -2")), 1);
    EXPECT_EQ(closure_components(parse_braid("1 2 1")), 2);
}

TEST(Braid, WritheMirrorInverse) {
    const BraidWord b = parse_braid("1 1 -2 1 3 -2 3");
    EXPECT_EQ(b.writhe(), 3);
    EXPECT_EQ(mirror(b).writhe(), -3);
    EXPECT_EQ(mirror(mirror(b)), b);
    EXPECT_EQ(free_reduce(concat(b, inverse(b))).letters.size(), 0u);
}

TEST(Braid, BandGeneratorWord) {
    // sigma_{1,3} = sigma_3 sigma_2 sigma_1 sigma_2^{-1} sigma_3^{-1}
    EXPECT_EQ(format_braid(band_generator(1, 3, 4)), "3 2 1 -2 -3");
    EXPECT_EQ(format_braid(band_generator(2, 2, 3)), "2");
    EXPECT_THROW(band_generator(2, 1, 3), std::invalid_argument);
    EXPECT_EQ(format_braid(band_word(3, {{1, 2, 1}, {1, 1, -1}})), "2 1 -2 -1");
}

TEST(Braid, ConnectedSumShiftsSecondFactor) {
    const BraidWord s = connected_sum(parse_braid("1 1 1"), parse_braid("1 -2 1 -2"), 1);
    EXPECT_EQ(s.strands, 5);
    EXPECT_EQ(format_braid(s), "1 1 1 2 3 -4 3 -4");
    EXPECT_EQ(closure_components(s), 1);
}

TEST(Braid, MovesRejectWhenNotApplicable) {
    const BraidWord b = parse_braid("1 2 1");
    EXPECT_THROW(apply_move(b, {MoveKind::Commute, 0, {}}), MoveError);
    EXPECT_EQ(format_braid(apply_move(b, {MoveKind::YangBaxter, 0, {}})), "2 1 2");
    EXPECT_THROW(apply_move(parse_braid("1 2 2"), {MoveKind::YangBaxter, 0, {}}), MoveError);
    EXPECT_EQ(format_braid(apply_move(b, {MoveKind::Rotate, 0, {}})), "2 1 1");
    const BraidWord st = apply_move(b, {MoveKind::Stabilize, 0, {1, -1}});
    EXPECT_EQ(st.strands, 4);
    EXPECT_EQ(apply_move(st, {MoveKind::Destabilize, 0, {}}), b);
    EXPECT_THROW(apply_move(b, {MoveKind::Destabilize, 0, {}}), MoveError);
}

TEST(Braid, NormalizeIsIdempotentAndReduces) {
    std::mt19937 rng(1);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<Letter> w;
        for (int k = 0; k < 10; ++k) w.push_back({1 + static_cast<int>(rng() % (n - 1)), rng() % 2 ? 1 : -1});
        const BraidWord b(n, w);
        const BraidWord r = normalize(b);
        EXPECT_EQ(normalize(r), r);
        EXPECT_LE(r.letters.size(), b.letters.size());
        for (std::size_t k = 0; k + 1 < r.letters.size(); ++k) EXPECT_FALSE(r.letters[k] == r.letters[k + 1].inverse());
    }
}

TEST(Braid, RandomWalkPreservesTheKnot) {
    // the Alexander polynomial and the component count are invariants of the closure
    for (const char* word : {"1 -2 1 -2", "1 1 1", "-1 -1 2 -1 -2 -2"}) {
        const BraidWord b = parse_braid(word);
        const AlexanderPoly delta = alexander(b);
        WalkOptions opt;
        opt.seed = 9;
        opt.iterations = 60;
        int seen = 0;
        random_walk(b, opt, [&](const BraidWord& w) {
            ++seen;
            EXPECT_EQ(closure_components(w), 1) << format_braid(w);
            EXPECT_EQ(alexander(w), delta) << format_braid(w);
            return true;
        });
        EXPECT_GT(seen, 1);
    }
}

TEST(Braid, RandomWalkIsReproducible) {
    auto run = [](std::uint64_t seed) {
        WalkOptions opt;
        opt.seed = seed;
        opt.iterations = 40;
        std::vector<std::string> out;
        random_walk(parse_braid("1 -2 1 -2"), opt, [&](const BraidWord& w) {
            out.push_back(format_braid(w) + "/" + std::to_string(w.strands));
            return true;
        });
        return out;
    };
    EXPECT_EQ(run(4), run(4));
}

TEST(Diagram, SegmentsAndIncidences) {
    // a knot diagram with V crossings on n strands, every strand crossed, has 2V segments
    for (const char* word : {"1 1 1", "1 -2 1 -2", "1 1 -2 1 3 -2 3"}) {
        const DiagramGraph g = diagram(parse_braid(word));
        const int V = static_cast<int>(g.crossings.size());
        EXPECT_EQ(g.segment_count, 2 * V);
        auto inc = segment_incidences(g);
        for (int s = 0; s < g.segment_count; ++s) EXPECT_EQ(inc[s], 2) << word << " segment " << s;
        auto order = traversal_order(g);
        EXPECT_EQ(std::set<int>(order.begin(), order.end()).size(), static_cast<std::size_t>(g.segment_count));
        EXPECT_EQ(order.front(), g.bottoms[g.open_strand]);
    }
}

TEST(Diagram, CrossingWiring) {
    const DiagramGraph g = diagram(parse_braid("1 1", 2));
    ASSERT_EQ(g.crossings.size(), 2u);
    // outputs of the first crossing feed the second; the second closes onto the bottoms
    EXPECT_EQ(g.crossings[1].bl, g.crossings[0].tl);
    EXPECT_EQ(g.crossings[1].br, g.crossings[0].tr);
    EXPECT_EQ(g.crossings[1].tl, g.bottoms[0]);
    EXPECT_EQ(g.crossings[1].tr, g.bottoms[1]);
}
