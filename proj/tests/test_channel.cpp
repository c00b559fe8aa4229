#include <doctest.h>

#include "mdofdm/channel.hpp"

using namespace mdofdm;

TEST_CASE("uniform correlation with rho 0 is the identity") {
    const ComplexMatrix r = uniform_correlation(4, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(r(i, j) == (i == j ? cplx{1.0} : cplx{}));
}

TEST_CASE("uniform correlation fills off-diagonal with rho") {
    const ComplexMatrix r = uniform_correlation(3, 0.5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(r(i, j) == (i == j ? cplx{1.0} : cplx{0.5}));
}

TEST_CASE("rho 1 yields the all-ones matrix, singular downstream") {
    const ComplexMatrix r = uniform_correlation(2, 1.0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(r(i, j) == cplx{1.0});
    CHECK_THROWS_AS(cholesky_lower(r), DecompositionError);
}

TEST_CASE("rho outside [0,1] is rejected") {
    CHECK_THROWS_AS(uniform_correlation(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(uniform_correlation(2, 1.1), std::invalid_argument);
}

TEST_CASE("uncorrelated channel equals the raw gaussian draw") {
    const ChannelConfig cfg{2, 2, 4, 0.0, 0.0};
    RandomStream s1(1, {0});
    RandomStream s2(1, {0});
    const ChannelRealization ch = generate_channel(cfg, s1);
    for (std::size_t k = 0; k < cfg.n_sc; ++k)
        for (std::size_t i = 0; i < cfg.n_rx; ++i)
            for (std::size_t j = 0; j < cfg.n_tx; ++j)
                CHECK(ch.per_subcarrier[k](i, j) == s2.next_cn01());
}

TEST_CASE("output shape and determinism") {
    const ChannelConfig cfg{4, 2, 8, 0.3, 0.2};
    RandomStream s1(77, {1});
    RandomStream s2(77, {1});
    const ChannelRealization a = generate_channel(cfg, s1);
    const ChannelRealization b = generate_channel(cfg, s2);
    REQUIRE(a.per_subcarrier.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(a.per_subcarrier[k].rows() == 2);
        CHECK(a.per_subcarrier[k].cols() == 4);
        CHECK(a.per_subcarrier[k].data() == b.per_subcarrier[k].data());
    }
}

TEST_CASE("entry power is unity under correlation") {
    const ChannelConfig cfg{4, 4, 1, 0.3, 0.2};
    RandomStream s(9, {2});
    double power = 0.0;
    const std::size_t trials = 100'000;
    for (std::size_t t = 0; t < trials; ++t) {
        const ChannelRealization ch = generate_channel(cfg, s);
        for (const cplx& z : ch.per_subcarrier[0].data()) power += std::norm(z);
    }
    power /= static_cast<double>(trials * 16);
    CHECK(power == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("transmit-side correlation matches rho_tx") {
    const ChannelConfig cfg{4, 4, 1, 0.3, 0.0};
    RandomStream s(10, {3});
    cplx acc{};
    std::size_t count = 0;
    const std::size_t trials = 100'000;
    for (std::size_t t = 0; t < trials; ++t) {
        const ComplexMatrix h = generate_channel(cfg, s).per_subcarrier[0];
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = a + 1; b < 4; ++b) {
                    acc += h(i, a) * std::conj(h(i, b));
                    ++count;
                }
    }
    const cplx corr = acc / static_cast<double>(count);
    CHECK(corr.real() == doctest::Approx(0.3).epsilon(0.07));
    CHECK(std::abs(corr.imag()) < 0.02);
}

TEST_CASE("subcarriers are drawn independently") {
    const ChannelConfig cfg{1, 1, 2, 0.0, 0.0};
    RandomStream s(11, {4});
    cplx acc{};
    const std::size_t trials = 100'000;
    for (std::size_t t = 0; t < trials; ++t) {
        const ChannelRealization ch = generate_channel(cfg, s);
        acc += ch.per_subcarrier[0](0, 0) * std::conj(ch.per_subcarrier[1](0, 0));
    }
    CHECK(std::abs(acc) / static_cast<double>(trials) <= 0.02);
}

TEST_CASE("siso degenerate case is scalar Rayleigh with unit power") {
    const ChannelConfig cfg{1, 1, 1, 0.0, 0.0};
    RandomStream s(12, {5});
    double power = 0.0;
    const std::size_t trials = 200'000;
    for (std::size_t t = 0; t < trials; ++t)
        power += std::norm(generate_channel(cfg, s).per_subcarrier[0](0, 0));
    CHECK(power / trials == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS(ChannelConfig{0, 1, 64, 0.0, 0.0}.validate());
    CHECK_THROWS(ChannelConfig{4, 1, 48, 0.0, 0.0}.validate());
    CHECK_THROWS(ChannelConfig{4, 1, 64, 1.0, 0.0}.validate());
}
