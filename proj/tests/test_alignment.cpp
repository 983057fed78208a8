#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "orisvlc/alignment.hpp"
#include "orisvlc/metrics.hpp"
#include "orisvlc/precoding.hpp"

using namespace orisvlc;

TEST_CASE("alignment matrix: structural invariants") {
    AlignmentMatrix F(4, 3);
    CHECK_FALSE(F.fully_assigned());
    F.assign(0, 2);
    F.assign(1, 2);
    F.assign(2, 0);
    F.assign(3, 1);
    CHECK(F.fully_assigned());
    CHECK(F.per_user_counts() == std::vector<int>{1, 1, 2});

    const Eigen::MatrixXd dense = F.dense();
    for (int r = 0; r < 4; ++r) CHECK(dense.row(r).sum() == 1.0);
    CHECK(dense.sum() == 4.0);
    CHECK(F.user_vector(2) == Eigen::Vector4d(1, 1, 0, 0));

    CHECK_THROWS_AS(F.assign(4, 0), DimensionError);
    CHECK_THROWS_AS(F.assign(0, 3), DimensionError);
}

TEST_CASE("greedy: a single user takes every element regardless of the precoder") {
    Rng rng(1);
    const ChannelSet ch = test_helpers::random_channel_set(4, 7, 1, rng);
    const Eigen::MatrixXd P = test_helpers::random_matrix(4, 1, rng);
    const GreedyResult res = greedy_alignment(ch, P, 0.5);
    CHECK(res.alignment.fully_assigned());
    CHECK(res.alignment.per_user_counts() == std::vector<int>{7});
}

TEST_CASE("greedy: empty panel means no work") {
    Rng rng(2);
    const ChannelSet ch = test_helpers::random_channel_set(4, 0, 2, rng);
    const GreedyResult res = greedy_alignment(ch, test_helpers::random_matrix(4, 2, rng), 0.5);
    CHECK(res.alignment.num_elements() == 0);
    CHECK(res.sinr_evaluations == 0);
}

TEST_CASE("greedy: round-robin balances counts and scores M(M+1)/2 candidates") {
    Rng rng(3);
    const ChannelSet ch = test_helpers::random_channel_set(4, 6, 2, rng);
    const Eigen::MatrixXd P = random_feasible_precoder(4, 2, rng);
    const GreedyResult res = greedy_alignment(ch, P, 0.5);
    CHECK(res.alignment.per_user_counts() == std::vector<int>{3, 3});
    CHECK(res.sinr_evaluations == 21);

    for (int M : {1, 5, 12}) {
        const ChannelSet c = test_helpers::random_channel_set(3, M, 3, rng);
        const Eigen::MatrixXd Q = random_feasible_precoder(3, 3, rng);
        const GreedyResult r = greedy_alignment(c, Q, 0.5);
        CHECK(r.sinr_evaluations == static_cast<std::uint64_t>(M) * (M + 1) / 2);
        const auto counts = r.alignment.per_user_counts();
        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        CHECK(*hi - *lo <= 1);
        if (M % 3 == 0) CHECK(*hi == M / 3);
    }
}

TEST_CASE("ties resolve to the lowest element index and owner vector") {
    // all-zero reflected gains: every candidate scores the LOS-only SINR
    ChannelSet ch;
    ch.los = {Eigen::Vector2d(0.5, 0.2), Eigen::Vector2d(0.1, 0.6)};
    ch.nlos = {Eigen::MatrixXd::Zero(2, 5), Eigen::MatrixXd::Zero(2, 5)};
    Eigen::MatrixXd P(2, 2);
    P << 1.0, 0.0,
         0.0, 1.0;

    const AlignmentMatrix greedy = greedy_alignment(ch, P, 0.3).alignment;
    for (int r = 0; r < 5; ++r) {
        CHECK(greedy.owner(r) == r % 2); // elements taken in index order
    }

    ChannelSet small;
    small.los = ch.los;
    small.nlos = {Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 3)};
    const ExhaustiveResult res = exhaustive_alignment(small, P, 0.3);
    for (int r = 0; r < 3; ++r) {
        CHECK(res.alignment.owner(r) == 0); // lexicographically smallest of the ties
    }
}

TEST_CASE("greedy: deterministic for identical inputs") {
    Rng rng(4);
    const ChannelSet ch = test_helpers::random_channel_set(5, 9, 3, rng);
    const Eigen::MatrixXd P = random_feasible_precoder(5, 3, rng);
    CHECK(greedy_alignment(ch, P, 0.2).alignment == greedy_alignment(ch, P, 0.2).alignment);
}

TEST_CASE("greedy: incremental variant stays balanced and counts identically") {
    Rng rng(5);
    const ChannelSet ch = test_helpers::random_channel_set(4, 8, 2, rng);
    const Eigen::MatrixXd P = random_feasible_precoder(4, 2, rng);
    GreedyOptions opts;
    opts.incremental = true;
    const GreedyResult res = greedy_alignment(ch, P, 0.3, opts);
    CHECK(res.sinr_evaluations == 36);
    CHECK(res.alignment.per_user_counts() == std::vector<int>{4, 4});
}

TEST_CASE("exhaustive: single user reduces to the greedy assignment") {
    Rng rng(6);
    const ChannelSet ch = test_helpers::random_channel_set(3, 4, 1, rng);
    const Eigen::MatrixXd P = test_helpers::random_matrix(3, 1, rng);
    const ExhaustiveResult res = exhaustive_alignment(ch, P, 0.5);
    CHECK(res.assignments_evaluated == 1);
    CHECK(res.alignment == greedy_alignment(ch, P, 0.5).alignment);
}

TEST_CASE("exhaustive: two users, two elements, hand-enumerable") {
    // element 0 strongly serves user 1 (boosts its LED-1 coefficient);
    // element 1 strongly serves user 0 (boosts its LED-0 coefficient)
    ChannelSet ch;
    ch.los = {Eigen::Vector2d(0.5, 0.1), Eigen::Vector2d(0.1, 0.5)};
    Eigen::MatrixXd H0(2, 2), H1(2, 2);
    H0 << 0.01, 0.80,
          0.01, 0.01;
    H1 << 0.01, 0.01,
          0.90, 0.01;
    ch.nlos = {H0, H1};
    Eigen::MatrixXd P(2, 2);
    P << 1.0, 0.0,
         0.0, 1.0;
    const double noise = 0.2;

    const ExhaustiveResult res = exhaustive_alignment(ch, P, noise);
    CHECK(res.assignments_evaluated == 4);

    // enumerate the four assignments independently via the user-SINR route
    double best = -1.0;
    std::vector<int> best_owner;
    for (int o0 = 0; o0 < 2; ++o0) {
        for (int o1 = 0; o1 < 2; ++o1) {
            const AlignmentMatrix F = AlignmentMatrix::from_owners({o0, o1}, 2);
            const double s = mean_sinr(ch, F, P, noise);
            if (s > best) {
                best = s;
                best_owner = {o0, o1};
            }
        }
    }
    CHECK(res.best_mean_sinr == doctest::Approx(best).epsilon(1e-14));
    CHECK(res.alignment.owner(0) == best_owner[0]);
    CHECK(res.alignment.owner(1) == best_owner[1]);
    // the construction makes (element 0 -> user 1, element 1 -> user 0) optimal
    CHECK(res.alignment.owner(0) == 1);
    CHECK(res.alignment.owner(1) == 0);
}

TEST_CASE("exhaustive: K=2, M=8 enumerates 256 assignments and bounds greedy") {
    Rng rng(7);
    const ChannelSet ch = test_helpers::random_channel_set(4, 8, 2, rng);
    const Eigen::MatrixXd P = random_feasible_precoder(4, 2, rng);
    const ExhaustiveResult res = exhaustive_alignment(ch, P, 0.4);
    CHECK(res.assignments_evaluated == 256);
    const double greedy = mean_sinr(ch, greedy_alignment(ch, P, 0.4).alignment, P, 0.4);
    CHECK(greedy <= res.best_mean_sinr * (1.0 + 1e-12));
}

TEST_CASE("exhaustive: refuses oversized enumerations") {
    Rng rng(8);
    const ChannelSet ch = test_helpers::random_channel_set(3, 13, 3, rng); // 3^13 > 1e6
    CHECK_THROWS_AS(exhaustive_alignment(ch, test_helpers::random_matrix(3, 3, rng), 0.5),
                    LimitError);
}

TEST_CASE("random alignment: structure, determinism and uniformity") {
    const AlignmentMatrix a = random_alignment(10, 4, 99);
    CHECK(a.fully_assigned());
    CHECK(a == random_alignment(10, 4, 99));
    CHECK_FALSE(a == random_alignment(10, 4, 100));

    // 1e5 element draws; P(user 0) within 3 binomial sigmas of 1/4
    int hits = 0;
    const int draws = 10000, per_draw = 10;
    for (int s = 0; s < draws; ++s) {
        const AlignmentMatrix F = random_alignment(per_draw, 4, 1000 + s);
        for (int r = 0; r < per_draw; ++r) {
            if (F.owner(r) == 0) ++hits;
        }
    }
    const double n = static_cast<double>(draws) * per_draw;
    const double frac = hits / n;
    const double sigma = std::sqrt(0.25 * 0.75 / n);
    CHECK(std::abs(frac - 0.25) <= 3.0 * sigma);
}

TEST_CASE("greedy dominates random alignments on most scenes") {
    // Real room geometry: scenes differ by the user draw, as in the harness.
    const RoomBox room{4.0, 4.0, 3.0};
    Scene scene;
    scene.room = room;
    scene.leds = build_led_grid(room, 3, 3, 0.1);
    scene.oris = build_oris_grid(room, WallId::YMin, 2, 3, 0.1, 1.5);
    const OpticalParams optics;
    const double ref = los_gain(Luminaire{Vec3(2, 2, 3), Vec3(0, 0, -1)},
                                Receiver{Vec3(2, 2, 0.85), Vec3(0, 0, 1)}, optics);

    Rng rng(10);
    int wins = 0;
    const int scenes = 100;
    const double noise = 0.5;
    for (int s = 0; s < scenes; ++s) {
        scene.users = sample_users(room, 2, 0.85, 7000 + static_cast<std::uint64_t>(s));
        const ChannelSet ch = build_channels(scene, optics).scaled(1.0 / ref);
        const Eigen::MatrixXd P = random_feasible_precoder(9, 2, rng);
        const double greedy = mean_sinr(ch, greedy_alignment(ch, P, noise).alignment, P, noise);

        std::vector<double> randoms;
        randoms.reserve(100);
        for (int d = 0; d < 100; ++d) {
            randoms.push_back(
                mean_sinr(ch, random_alignment(6, 2, 100000 + 100 * s + d), P, noise));
        }
        std::nth_element(randoms.begin(), randoms.begin() + 50, randoms.end());
        if (greedy >= randoms[50]) ++wins;
    }
    CHECK(wins >= 95);
    MESSAGE("greedy beat the random-alignment median on ", wins, "/", scenes, " scenes");
}

TEST_CASE("greedy-to-exhaustive gap on small instances is measured and reported") {
    Rng rng(11);
    double worst = 1.0, mean = 0.0;
    const int instances = 30;
    for (int s = 0; s < instances; ++s) {
        const int K = (s % 2) ? 2 : 3;
        const int M = (s % 2) ? 8 : 6;
        const ChannelSet ch = test_helpers::random_channel_set(4, M, K, rng);
        const Eigen::MatrixXd P = random_feasible_precoder(4, K, rng);
        const double greedy = mean_sinr(ch, greedy_alignment(ch, P, 0.5).alignment, P, 0.5);
        const double optimum = exhaustive_alignment(ch, P, 0.5).best_mean_sinr;
        const double ratio = greedy / optimum;
        worst = std::min(worst, ratio);
        mean += ratio / instances;
        CHECK(ratio <= 1.0 + 1e-12); // brute force really is an upper bound
    }
    MESSAGE("greedy/exhaustive mean-SINR ratio over ", instances,
            " instances (K<=3, M<=8): mean=", mean, " worst=", worst);
}

TEST_CASE("alignment CSV dump lists every element") {
    AlignmentMatrix F = AlignmentMatrix::from_owners({1, 0, AlignmentMatrix::kUnassigned}, 2);
    std::ostringstream out;
    write_alignment_csv(F, out);
    CHECK(out.str() == "element_index,user_index\n0,1\n1,0\n2,-1\n");
}
