#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fuzz_support.hpp"
#include "isac/channel.hpp"
#include "isac/channel_io.hpp"
#include "isac/pmf.hpp"
#include "isac/rng.hpp"

using namespace isac;

TEST_CASE("binary example state kernel entries") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    // Row a=0 over (s1,s2), s2 fastest: {λ, 0, (1−λ)(1−α), (1−λ)α}.
    CHECK(ch.state_prob(0, 0, 0) == Catch::Approx(0.3).margin(1e-15));
    CHECK(ch.state_prob(0, 1, 0) == 0.0);
    CHECK(ch.state_prob(1, 0, 0) == Catch::Approx(0.21).margin(1e-15));
    CHECK(ch.state_prob(1, 1, 0) == Catch::Approx(0.49).margin(1e-15));
    // Row a=1: {1−λ, 0, λ(1−α), λα}.
    CHECK(ch.state_prob(0, 0, 1) == Catch::Approx(0.7).margin(1e-15));
    CHECK(ch.state_prob(0, 1, 1) == 0.0);
    CHECK(ch.state_prob(1, 0, 1) == Catch::Approx(0.09).margin(1e-15));
    CHECK(ch.state_prob(1, 1, 1) == Catch::Approx(0.21).margin(1e-15));
    for (int a = 0; a < 2; ++a) {
        double sum = 0.0;
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) sum += ch.state_prob(s1, s2, a);
        CHECK(sum == Catch::Approx(1.0).margin(1e-15));
    }
    CHECK_NOTHROW(ch.validate());
    CHECK_NOTHROW(law.validate());
}

TEST_CASE("binary example state kernel rows sum to one on a parameter grid") {
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            auto [ch, law] =
                binary_example_channel({i / 4.0, j / 4.0, 0.5, 0.5});
            CHECK_NOTHROW(ch.validate());
        }
}

TEST_CASE("binary example outputs are the multiplicative maps") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int x = 0; x < 2; ++x)
                for (int y1 = 0; y1 < 2; ++y1)
                    for (int y2 = 0; y2 < 2; ++y2) {
                        double expect =
                            (y1 == s1 * x && y2 == s2 * x) ? 1.0 : 0.0;
                        CHECK(ch.output_prob(y1, y2, s1, s2, x) == expect);
                    }
}

TEST_CASE("degenerate corner: lambda = alpha = 0 forces S1=1, S2=0 at A=0") {
    auto [ch, law] = binary_example_channel({0.0, 0.0, 0.5, 0.5});
    CHECK(ch.state_prob(1, 0, 0) == 1.0);
    CHECK(ch.state_prob(0, 0, 0) == 0.0);
    CHECK(ch.state_prob(1, 1, 0) == 0.0);
}

TEST_CASE("binary example input law and action marginal") {
    double p = 0.3, q = 0.2;
    auto [ch, law] = binary_example_channel({0.5, 0.5, p, q});
    // P_XA products, stored over (a,x) with x fastest.
    CHECK(law.p_ax(0, 0) == Catch::Approx((1 - p) * (1 - q)).margin(1e-15));
    CHECK(law.p_ax(0, 1) == Catch::Approx(p * q).margin(1e-15));
    CHECK(law.p_ax(1, 0) == Catch::Approx((1 - p) * q).margin(1e-15));
    CHECK(law.p_ax(1, 1) == Catch::Approx(p * (1 - q)).margin(1e-15));

    JointPmf j = assemble_joint(law, ch);
    JointPmf pa = j.marginalize({"A"});
    CHECK(pa.mass_of({1}) ==
          Catch::Approx(convolve(p, q)).margin(1e-12));  // A ~ Bern(p∗q)
    JointPmf px = j.marginalize({"X"});
    CHECK(px.mass_of({1}) == Catch::Approx(p).margin(1e-12));
    // A = X ⊕ Bern(q): P(A≠X) = q.
    JointPmf pax = j.marginalize({"A", "X"});
    CHECK(pax.mass_of({0, 1}) + pax.mass_of({1, 0}) ==
          Catch::Approx(q).margin(1e-12));
}

TEST_CASE("binary example point mass at p=1, q=0") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 1.0, 0.0});
    CHECK(law.p_ax(1, 1) == 1.0);
    CHECK(law.p_ax(0, 0) == 0.0);
    JointPmf j = assemble_joint(law, ch);
    CHECK(j.marginalize({"X"}).mass_of({1}) ==
          Catch::Approx(1.0).margin(1e-12));
    CHECK(j.marginalize({"A"}).mass_of({1}) ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("binary example invariants across parameters") {
    Stream s(31);
    for (int it = 0; it < 25; ++it) {
        BinaryParams bp{s.next_unit(), s.next_unit(), s.next_unit(),
                        s.next_unit()};
        auto [ch, law] = binary_example_channel(bp);
        JointPmf j = assemble_joint(law, ch);
        // S2=1 implies S1=1: zero mass on (s1,s2) = (0,1).
        JointPmf ps = j.marginalize({"S1", "S2"});
        CHECK(ps.mass_of({0, 1}) == 0.0);
        // The state memory is carried entirely by S1.
        CHECK(j.conditional_mutual_information({"S2"}, {"A"}, {"S1"}) <=
              1e-10);
    }
}

TEST_CASE("binary example frozen marginal anchors") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    JointPmf j = assemble_joint(law, ch);
    CHECK(j.marginalize({"S2"}).mass_of({1}) ==
          Catch::Approx(0.35).margin(1e-12));
    // P(S2=1 | S1=1, A=a) = α for both actions.
    ConditionalKernel k = j.condition({"S2"}, {"S1", "A"});
    for (int a = 0; a < 2; ++a) {
        std::size_t row = static_cast<std::size_t>(1) * 2 + a;  // s1=1, A=a
        REQUIRE(k.row_defined(row));
        CHECK(k.prob(row, 1) == Catch::Approx(0.7).margin(1e-12));
    }
}

TEST_CASE("binary params are validated") {
    CHECK_THROWS_AS(binary_example_channel({-0.1, 0.5, 0.5, 0.5}),
                    DomainError);
    CHECK_THROWS_AS(binary_example_channel({0.5, 1.1, 0.5, 0.5}),
                    DomainError);
    CHECK_THROWS_AS(binary_example_channel({0.5, 0.5, std::nan(""), 0.5}),
                    DomainError);
}

TEST_CASE("assembled joint marginalizes back to the input law", "[fuzz]") {
    Stream s(32);
    for (int it = 0; it < 20; ++it) {
        fuzz::Alphabets al = fuzz::random_alphabets(s);
        ChannelSpec ch = fuzz::random_channel(s, al);
        InputLaw law = fuzz::random_law_ax(s, al.A, al.X);
        JointPmf j = assemble_joint(law, ch);
        CHECK(j.cell_count() ==
              static_cast<std::size_t>(al.A) * al.X * al.S1 * al.S2 * al.Y1 *
                  al.Y2);
        JointPmf pax = j.marginalize({"A", "X"});
        for (int a = 0; a < al.A; ++a)
            for (int x = 0; x < al.X; ++x)
                CHECK(pax.mass_of({a, x}) ==
                      Catch::Approx(law.p_ax(a, x)).margin(1e-12));
    }
}

TEST_CASE("auxiliary V respects its Markov chain", "[fuzz]") {
    Stream s(33);
    for (int it = 0; it < 20; ++it) {
        fuzz::Alphabets al = fuzz::random_alphabets(s);
        ChannelSpec ch = fuzz::random_channel(s, al);
        InputLaw law = fuzz::random_law_vax(s, 3, al.A, al.X);
        JointPmf j = assemble_joint(law, ch);
        // V − (A,X) − (S1,S2,Y1,Y2)
        CHECK(j.conditional_mutual_information(
                  {"V"}, {"Y1", "S1", "Y2", "S2"}, {"A", "X"}) <= 1e-10);
        JointPmf pvax = j.marginalize({"V", "A", "X"});
        for (int v = 0; v < 3; ++v)
            for (int a = 0; a < al.A; ++a)
                for (int x = 0; x < al.X; ++x)
                    CHECK(pvax.mass_of({v, a, x}) ==
                          Catch::Approx(law.p_vax(v, a, x)).margin(1e-12));
    }
}

TEST_CASE("deterministic kernels and point-mass law give a point-mass joint") {
    ChannelSpec ch;
    ch.A = ch.X = ch.S1 = ch.S2 = ch.Y1 = ch.Y2 = 2;
    ch.S1hat = ch.S2hat = 2;
    ch.state_kernel = {0, 0, 1, 0,   // a=0 → (s1,s2)=(1,0)
                       0, 1, 0, 0};  // a=1 → (0,1)
    ch.output_kernel.assign(8 * 4, 0.0);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int x = 0; x < 2; ++x) {
                std::size_t row = (static_cast<std::size_t>(s1) * 2 + s2) * 2 +
                                  static_cast<std::size_t>(x);
                // y1 = s1 XOR x, y2 = s2.
                ch.output_kernel[row * 4 +
                                 static_cast<std::size_t>(s1 ^ x) * 2 + s2] =
                    1.0;
            }
    ch.distortion1 = {0, 1, 1, 0};
    ch.distortion2 = {0, 1, 1, 0};
    InputLaw law;
    law.V = 0;
    law.A = law.X = 2;
    law.mass = {0, 0, 0, 1};  // (a,x) = (1,1)
    JointPmf j = assemble_joint(law, ch);
    CHECK(j.mass_of({1, 1, 0, 1, 1, 1}) == 1.0);  // a,x,s1,s2,y1=0^1,y2=s2
    CHECK(j.entropy({"A", "X", "S1", "S2", "Y1", "Y2"}) == 0.0);
}

TEST_CASE("alphabet mismatches are rejected") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    InputLaw bad = law;
    bad.A = 3;
    bad.mass.assign(6, 1.0 / 6);
    CHECK_THROWS_AS(assemble_joint(bad, ch), AlphabetMismatch);
}

TEST_CASE("channel validation names the offending row") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    ch.state_kernel[0] = 0.2;  // row 0 now sums to 0.9
    try {
        ch.validate();
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("state_kernel") != std::string::npos);
        CHECK(msg.find("row 0") != std::string::npos);
    }
}

TEST_CASE("spec files round-trip bit-stably") {
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    ChannelFile f;
    f.channel = ch;
    f.law = law;
    f.binary = BinaryParams{0.3, 0.7, 0.5, 0.5};
    std::string text = channel_json(f);
    ChannelFile g = parse_channel_json(text, "roundtrip");
    CHECK(g.channel.state_kernel == ch.state_kernel);
    CHECK(g.channel.output_kernel == ch.output_kernel);
    CHECK(g.channel.distortion1 == ch.distortion1);
    REQUIRE(g.law.has_value());
    CHECK(g.law->mass == law.mass);
    REQUIRE(g.binary.has_value());
    CHECK(g.binary->lambda == 0.3);
    CHECK(g.binary->q == 0.5);
    // Serialization is a fixed point.
    CHECK(channel_json(g) == text);
}

TEST_CASE("spec files round-trip an auxiliary law") {
    Stream s(34);
    fuzz::Alphabets al;
    ChannelSpec ch = fuzz::random_channel(s, al);
    ChannelFile f;
    f.channel = ch;
    f.law = fuzz::random_law_vax(s, 3, al.A, al.X);
    ChannelFile g = parse_channel_json(channel_json(f), "roundtrip");
    REQUIRE(g.law.has_value());
    CHECK(g.law->V == 3);
    CHECK(g.law->mass.size() == 12);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(g.law->mass[i] ==
              Catch::Approx(f.law->mass[i]).epsilon(0).margin(1e-15));
}

TEST_CASE("malformed spec content raises ParseError with location") {
    CHECK_THROWS_AS(parse_channel_json("not json at all", "bad.json"),
                    ParseError);
    CHECK_THROWS_AS(parse_channel_json("{}", "empty.json"), ParseError);
    auto [ch, law] = binary_example_channel({0.3, 0.7, 0.5, 0.5});
    ChannelFile f;
    f.channel = ch;
    ordered_json j = ordered_json::parse(channel_json(f));
    j["state_kernel"][0][0] = 0.2;  // row sums to 0.9
    try {
        parse_channel_json(j.dump(), "bad-row.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("row 0") != std::string::npos);
    }
}

TEST_CASE("file save and load are atomic and faithful") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "isac_test_channel";
    fs::create_directories(dir);
    fs::path file = dir / "bin.json";
    auto [ch, law] = binary_example_channel({0.4, 0.6, 0.25, 0.75});
    ChannelFile f;
    f.channel = ch;
    f.law = law;
    save_channel_file(file, f);
    ChannelFile g = load_channel_file(file);
    CHECK(g.channel.state_kernel == ch.state_kernel);
    CHECK_FALSE(fs::exists(file.string() + ".tmp"));  // temp renamed away
    CHECK_THROWS_AS(load_channel_file(dir / "missing.json"), IoError);
    fs::remove_all(dir);
}
