#include <doctest.h>

#include <random>
#include <sstream>

#include "contour/errors.hpp"
#include "contour/orbit.hpp"
#include "oracle.hpp"

using namespace contour;

namespace {

const ChainParams ex1{3, 5, 2};

SystemState random_admissible(const ChainParams& p, std::mt19937_64& gen) {
    while (true) {
        std::vector<Cell> cells(static_cast<std::size_t>(p.contours()));
        for (auto& c : cells) c = static_cast<Cell>(gen() % static_cast<std::uint64_t>(p.cells()));
        SystemState s(cells);
        if (is_admissible(s, p)) return s;
    }
}

}  // namespace

TEST_CASE("find_cycle: delayed cycle through (1,5,8)") {
    const auto a = find_cycle({1, 5, 8}, ex1);
    CHECK(a.transient_len == 0);
    CHECK(a.period == 21);
    CHECK(a.moves_per_cluster == std::vector<std::uint64_t>{20, 20, 20});
    CHECK(a.velocity == Rational(20, 21));
    CHECK(a.regime == Regime::DelayedCycle);
    CHECK(a.purity == DelayPurity::FirstOnly);
    CHECK(a.delay_log.size() == 3);
    CHECK(a.cycle_states.size() == 21);
    CHECK(a.cycle_states.front() == SystemState{1, 5, 8});
}

TEST_CASE("find_cycle: free movement and collapse") {
    const auto free = find_cycle({0, 0, 0}, ex1);
    CHECK(free.period == 10);
    CHECK(free.velocity == Rational(1));
    CHECK(free.regime == Regime::FreeMovement);
    CHECK(free.purity == DelayPurity::None);

    const ChainParams wide(3, 2, 3);
    const auto collapse = find_cycle({1, 1, 1}, wide);
    CHECK(collapse.transient_len == 1);
    CHECK(collapse.period == 1);
    CHECK(collapse.velocity == Rational(0));
    CHECK(collapse.regime == Regime::Collapse);
    CHECK(collapse.cycle_states.front() == SystemState{2, 2, 2});
}

TEST_CASE("the (1,5,8) trajectory matches the reference position sequences") {
    const std::vector<std::vector<int>> expected{
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 4, 5, 6, 7, 8, 9},
        {4, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3},
        {7, 8, 9, 0, 1, 2, 3, 4, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 5, 6},
    };
    SystemState s{1, 5, 8};
    for (std::size_t t = 0; t < 21; ++t) {
        for (std::size_t i = 0; i < 3; ++i) CHECK(s[i] == (expected[i][t] + 1) % 10);
        s = step(s, ex1).next;
    }
    CHECK(s == SystemState{1, 5, 8});
}

TEST_CASE("velocities") {
    auto v = velocities(find_cycle({1, 5, 8}, ex1));
    CHECK(v.uniform);
    CHECK(v.per_cluster == std::vector<Rational>(3, Rational(20, 21)));

    v = velocities(find_cycle({1, 1, 1}, ChainParams(3, 2, 3)));
    CHECK(v.uniform);
    CHECK(v.per_cluster == std::vector<Rational>(3, Rational(0)));

    const auto binary = find_cycle({0, 1, 1}, ChainParams(3, 1, 1));
    CHECK(binary.period == 3);
    CHECK(velocities(binary).per_cluster == std::vector<Rational>(3, Rational(2, 3)));

    CycleAnalysis uneven;
    uneven.period = 4;
    uneven.moves_per_cluster = {3, 2};
    CHECK_FALSE(velocities(uneven).uniform);
}

TEST_CASE("verify_delay_structure: first-type cycle") {
    const auto a = find_cycle({1, 5, 8}, ex1);
    const auto r = verify_delay_structure(a, ex1);
    CHECK(r.ok());
    CHECK(r.purity == DelayPurity::FirstOnly);
    REQUIRE(r.episodes.size() == 3);
    std::vector<std::uint64_t> starts(3);
    for (const auto& e : r.episodes) {
        CHECK(e.type == DelayType::First);
        CHECK(e.duration == 1);
        starts[e.cluster] = e.start;
        CHECK(delta(a.cycle_states[e.end], (e.cluster + 2) % 3, ex1) == 3);
    }
    CHECK((starts[1] + 21 - starts[0]) % 21 == 7);
    CHECK((starts[2] + 21 - starts[1]) % 21 == 7);
    CHECK(r.chained_pairs == 3);
    CHECK(r.equal_pairs == 3);
}

TEST_CASE("verify_delay_structure: mirrored cycle has second-type delays only") {
    const auto a = find_cycle({8, 5, 1}, ex1);
    CHECK(a.velocity == Rational(20, 21));
    const auto r = verify_delay_structure(a, ex1);
    CHECK(r.ok());
    CHECK(r.purity == DelayPurity::SecondOnly);
    REQUIRE_FALSE(r.episodes.empty());
    for (const auto& e : r.episodes) {
        CHECK(e.type == DelayType::Second);
        CHECK(delta(a.cycle_states[e.end], e.cluster, ex1) == 7);
    }
}

TEST_CASE("verify_delay_structure: binary chain") {
    const ChainParams binary(3, 1, 1);
    const auto a = find_cycle({0, 1, 1}, binary);
    const auto r = verify_delay_structure(a, binary);
    CHECK(r.ok());
    CHECK(r.purity == DelayPurity::FirstOnly);
    for (const auto& e : r.episodes) CHECK(delta(a.cycle_states[e.end], (e.cluster + 2) % 3, binary) == 0);
}

TEST_CASE("verify_delay_structure needs retained states") {
    CycleOptions opts;
    opts.keep_states = false;
    const auto a = find_cycle({1, 5, 8}, ex1, opts);
    CHECK(a.cycle_states.empty());
    CHECK_THROWS_AS(verify_delay_structure(a, ex1), ContractViolation);
    // free-movement cycles have nothing to check
    CHECK(verify_delay_structure(find_cycle({0, 0, 0}, ex1, opts), ex1).episodes.empty());
}

TEST_CASE("find_cycle errors") {
    CHECK_THROWS_AS(find_cycle({1, 6, 3}, ex1), InadmissibleState);
    CHECK_THROWS_AS(find_cycle({1, 6}, ex1), ContractViolation);
    CycleOptions tight;
    tight.budget = 5;
    CHECK_THROWS_AS(find_cycle({1, 5, 8}, ex1, tight), BudgetExceeded);
    tight.method = CycleMethod::Brent;
    CHECK_THROWS_AS(find_cycle({1, 5, 8}, ex1, tight), BudgetExceeded);
    tight.budget = 21;
    tight.method = CycleMethod::VisitedIndex;
    CHECK(find_cycle({1, 5, 8}, ex1, tight).period == 21);
}

TEST_CASE("property: visited index, Brent and the reference orbit agree") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 5);
        const int m = 1 + static_cast<int>(gen() % 4);
        const int l = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(2 * m - 1));
        const ChainParams p(n, m, l);
        const auto s = random_admissible(p, gen);

        CycleOptions idx, brent;
        idx.method = CycleMethod::VisitedIndex;
        brent.method = CycleMethod::Brent;
        const auto a = find_cycle(s, p, idx);
        const auto b = find_cycle(s, p, brent);
        const auto o = oracle::orbit(std::vector<int>(s.positions().begin(), s.positions().end()),
                                     {p.contours(), p.half_cells(), p.cluster_len()});

        REQUIRE(a.transient_len == b.transient_len);
        REQUIRE(a.period == b.period);
        REQUIRE(a.moves_per_cluster == b.moves_per_cluster);
        REQUIRE(a.delay_log == b.delay_log);
        REQUIRE(a.transient_len == o.transient);
        REQUIRE(a.period == o.period);
        for (int i = 0; i < n; ++i) REQUIRE(a.moves_per_cluster[i] == static_cast<std::uint64_t>(o.moves[i]));
        const auto [num, den] = oracle::velocity(o);
        REQUIRE(a.velocity == Rational(num, den));

        // regime classification invariants
        if (a.regime == Regime::Collapse) REQUIRE(a.period == 1);
        if (a.regime == Regime::FreeMovement) REQUIRE(a.period == static_cast<std::uint64_t>(2 * m));
        // determinism
        REQUIRE(find_cycle(s, p, idx).delay_log == a.delay_log);
    }
}

TEST_CASE("chains too large to encode fall back to Brent") {
    const ChainParams big(70, 1, 1);
    REQUIRE_FALSE(big.encodable());
    std::vector<Cell> cells(70, 1);
    cells[0] = 0;
    const auto a = find_cycle(SystemState(cells), big);
    CHECK(velocities(a).uniform);
    CHECK(a.regime == Regime::DelayedCycle);
    CHECK(a.velocity == Rational(69, 70));
}

TEST_CASE("write_trace") {
    std::ostringstream out;
    write_trace(out, {0, 0, 0}, ex1, 3);
    CHECK(out.str() ==
          "t,x0,x1,x2,moved,delays\n"
          "0,0,0,0,111,\n"
          "1,1,1,1,111,\n"
          "2,2,2,2,111,\n"
          "3,3,3,3,111,\n");

    std::ostringstream blocked_row;
    write_trace(blocked_row, {1, 5, 8}, ex1, 0);
    CHECK(blocked_row.str() == "t,x0,x1,x2,moved,delays\n0,1,5,8,101,1:first:0\n");
}
