#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "fuzz_support.hpp"
#include "isac/binary_example.hpp"
#include "isac/simulate.hpp"

using namespace isac;

TEST_CASE("batches are seed-deterministic and complete") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    SampleBatch a = sample(ch, law, 50'000, 7);
    SampleBatch b = sample(ch, law, 50'000, 7);
    CHECK(a.counts == b.counts);
    SampleBatch c = sample(ch, law, 50'000, 8);
    CHECK(a.counts != c.counts);
    CHECK(std::accumulate(a.counts.begin(), a.counts.end(), 0LL) == 50'000);
    CHECK(a.cells() == 64);
}

TEST_CASE("stored cell probabilities equal the assembled joint") {
    auto [ch, law] = binary_example_channel({0.25, 0.6, 0.4, 0.3});
    SampleBatch b = sample(ch, law, 10, 1);
    JointPmf j = assemble_joint(law, ch);
    REQUIRE(b.probabilities.size() == j.cell_count());
    for (std::size_t i = 0; i < j.cell_count(); ++i)
        CHECK(b.probabilities[i] ==
              Catch::Approx(j.masses()[i]).epsilon(0).margin(1e-15));
}

TEST_CASE("an auxiliary V is marginalized out before sampling") {
    Stream s(81);
    fuzz::Alphabets al;
    ChannelSpec ch = fuzz::random_channel(s, al);
    InputLaw vlaw = fuzz::random_law_vax(s, 3, 2, 2);
    SampleBatch b = sample(ch, vlaw, 1000, 5);
    CHECK(b.cells() == 64);  // (A,X,S1,S2,Y1,Y2) only
    CHECK(std::accumulate(b.counts.begin(), b.counts.end(), 0LL) == 1000);
}

TEST_CASE("deterministic channels concentrate all samples on one cell") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 1.0, 0.0});
    // p=1, q=0 → (A,X) = (1,1) surely; kernels still mix S1.
    SampleBatch b = sample(ch, law, 1000, 3);
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            if (a != 1 || x != 1)
                for (int s1 = 0; s1 < 2; ++s1)
                    for (int s2 = 0; s2 < 2; ++s2)
                        for (int y1 = 0; y1 < 2; ++y1)
                            for (int y2 = 0; y2 < 2; ++y2)
                                CHECK(b.counts[b.flat(a, x, s1, s2, y1,
                                                      y2)] == 0);
}

TEST_CASE("empirical frequencies approach the law in L1") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    double l1_small = empirical_l1_gap(sample(ch, law, 1'000, 11));
    double l1_large = empirical_l1_gap(sample(ch, law, 1'000'000, 11));
    CHECK(l1_large < l1_small);
    CHECK(l1_large <= 0.02);
    std::vector<double> f =
        empirical_frequencies(sample(ch, law, 12345, 2));
    double sum = std::accumulate(f.begin(), f.end(), 0.0);
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("empirical distortions track the analytic floors") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    SimulationReport rep = simulate_report(ch, law, 1'000'000, 42);
    CHECK(rep.analytic_d1 == Catch::Approx(0.15).margin(1e-12));
    CHECK(rep.analytic_d2 == Catch::Approx(0.175).margin(1e-12));
    double bound1 =
        4.0 * std::sqrt(rep.analytic_d1 * (1 - rep.analytic_d1) / 1e6);
    double bound2 =
        4.0 * std::sqrt(rep.analytic_d2 * (1 - rep.analytic_d2) / 1e6);
    CHECK(std::abs(rep.empirical_d1 - rep.analytic_d1) <= bound1);
    CHECK(std::abs(rep.empirical_d2 - rep.analytic_d2) <= bound2);
    CHECK(rep.l1_gap <= 0.02);
}

TEST_CASE("empirical distortion of a batch is an exact weighted sum") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    SampleBatch b = sample(ch, law, 2'000, 9);
    EstimatorTable e1 = optimal_estimator(ch, law, 1);
    double manual = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = 0; s2 < 2; ++s2)
                    for (int y1 = 0; y1 < 2; ++y1)
                        for (int y2 = 0; y2 < 2; ++y2)
                            manual += static_cast<double>(b.counts[b.flat(
                                          a, x, s1, s2, y1, y2)]) *
                                      ch.d1(s1, e1.at(a, x, y1, y2));
    manual /= 2000.0;
    CHECK(empirical_distortion(b, ch, e1) ==
          Catch::Approx(manual).epsilon(0).margin(1e-15));
}

TEST_CASE("degenerate and invalid batches") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    SampleBatch empty = sample(ch, law, 0, 1);
    EstimatorTable e1 = optimal_estimator(ch, law, 1);
    CHECK(empirical_distortion(empty, ch, e1) == 0.0);
    CHECK(empirical_l1_gap(empty) == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(sample(ch, law, -5, 1), DomainError);

    EstimatorTable wrong = e1;
    wrong.Y1 = 3;
    CHECK_THROWS_AS(empirical_distortion(empty, ch, wrong),
                    AlphabetMismatch);
}
