#include "sfar/sampling.hpp"
#include "sfar/signal_model.hpp"

#include <doctest.h>

#include <numbers>
#include <vector>

using namespace sfar;

TEST_CASE("uniform_support: m = n yields the full grid in canonical order") {
    SampleSupport s = uniform_support({8, 8}, 64, 0);
    REQUIRE(s.size() == 64);
    for (int i = 0; i < 64; ++i) {
        CHECK(s.positions[i].x == i / 8);
        CHECK(s.positions[i].y == i % 8);
    }
}

TEST_CASE("uniform_support: paper Example 1 sizing") {
    SampleSupport s = uniform_support({128, 128}, 1474, 1);
    CHECK(s.size() == 1474);
    s.validate();  // distinctness + ordering
    CHECK(sampling_ratio(s) == doctest::Approx(0.09).epsilon(1e-3));
}

TEST_CASE("uniform_support: out-of-range m raises a capacity error") {
    CHECK_THROWS_AS(uniform_support({8, 8}, 65, 0), CapacityError);
    CHECK_THROWS_AS(uniform_support({8, 8}, 0, 0), CapacityError);
}

TEST_CASE("uniform_support: deterministic per seed") {
    SampleSupport a = uniform_support({16, 16}, 40, 5);
    SampleSupport b = uniform_support({16, 16}, 40, 5);
    CHECK(a.positions == b.positions);
    SampleSupport c = uniform_support({16, 16}, 40, 6);
    CHECK(a.positions != c.positions);
}

TEST_CASE("uniform_support: per-cell inclusion frequency is uniform") {
    // 10000 draws of m=16 from an 8x8 grid: each cell expected at 0.25.
    std::vector<int> counts(64, 0);
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        SampleSupport s = uniform_support({8, 8}, 16, 1000 + t);
        for (const auto& p : s.positions) ++counts[p.x * 8 + p.y];
    }
    for (int c : counts) {
        double freq = static_cast<double>(c) / draws;
        CHECK(freq > 0.23);
        CHECK(freq < 0.27);
    }
}

TEST_CASE("extract: constant field") {
    Field f = Field::zeros({8, 8});
    for (auto& v : f.values) v = cplx(1.0, 0.0);
    SampleSupport s = uniform_support({8, 8}, 17, 2);
    Measurements m = extract(f, s);
    REQUIRE(m.size() == 17);
    for (const auto& v : m.values) CHECK(v == cplx(1.0, 0.0));
}

TEST_CASE("extract: full support flattens the field row-major") {
    Field f = synthesize(SignalModel{{8, 8}, {{2.0, 3, 5}}});
    Measurements m = extract(f, uniform_support({8, 8}, 64, 0));
    for (int i = 0; i < 64; ++i) CHECK(m.values[i] == f.values[i]);
}

TEST_CASE("extract: corner samples match pointwise evaluation") {
    SignalModel model{{8, 8}, {{1.3, 2, 7}, {0.5, 6, 1}}};
    Field f = synthesize(model);
    SampleSupport corners{{8, 8}, {{0, 0}, {0, 7}, {7, 0}, {7, 7}}};
    Measurements m = extract(f, corners);
    for (int j = 0; j < 4; ++j) {
        const auto& p = corners.positions[j];
        CHECK(std::abs(m.values[j] - evaluate_at(model, p.x, p.y)) < 1e-12);
    }
}

TEST_CASE("extract: dims mismatch raises a shape error") {
    Field f = Field::zeros({8, 8});
    SampleSupport s = uniform_support({16, 16}, 10, 0);
    CHECK_THROWS_AS(extract(f, s), ShapeError);
}

TEST_CASE("sampling_ratio values") {
    CHECK(sampling_ratio(uniform_support({8, 8}, 64, 0)) == 1.0);
    CHECK(sampling_ratio(uniform_support({8, 8}, 16, 0)) == 0.25);
    CHECK(sampling_ratio(uniform_support({128, 128}, 1474, 0)) ==
          doctest::Approx(1474.0 / 16384.0).epsilon(1e-15));
}

TEST_CASE("round trip: scatter-back of a full-support extraction") {
    Field f = synthesize(SignalModel{{8, 8}, {{1.0, 1, 2}, {2.0, 5, 5}}});
    Measurements m = extract(f, uniform_support({8, 8}, 64, 3));
    Field back = Field::zeros({8, 8});
    for (int j = 0; j < m.size(); ++j) {
        const auto& p = m.support.positions[j];
        back.at(p.x, p.y) = m.values[j];
    }
    CHECK(back.values == f.values);
}
