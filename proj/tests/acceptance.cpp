// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance [--cli path/to/contour]

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "contour/cli.hpp"
#include "contour/harness.hpp"
#include "contour/orbit.hpp"
#include "contour/spectrum.hpp"
#include "oracle.hpp"

using namespace contour;

namespace {

// Exact arithmetic everywhere: every comparison below is equality.
constexpr std::uint64_t kGridBudget = 1'000'000;
constexpr int kBinaryMinN = 3;
constexpr int kBinaryMaxN = 8;

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
};

std::vector<ChainParams> grid() {
    std::vector<ChainParams> out;
    for (const auto& p : grid_points(parse_grid("N=2..5,m=1..4,l=1..2m-1")))
        if (p.state_space_size() <= kGridBudget) out.push_back(p);
    return out;
}

std::set<Rational> spectrum_set(const SpectrumReport& r) {
    std::set<Rational> out;
    for (const auto& e : r.entries) out.insert(e.velocity);
    return out;
}

std::string render(const std::set<Rational>& values) {
    std::string s = "{";
    for (const auto& v : values) s += (s.size() > 1 ? ", " : "") + v.to_string();
    return s + "}";
}

Outcome ac1_example() {
    Outcome o;
    const ChainParams p(3, 5, 2);
    const auto a = find_cycle({1, 5, 8}, p);
    if (a.period != 21) o.fail("period " + std::to_string(a.period));
    const auto v = velocities(a);
    if (!v.uniform || v.per_cluster[0] != Rational(20, 21)) o.fail("velocity " + a.velocity.to_string());
    if (a.purity != DelayPurity::FirstOnly) o.fail("delay type " + to_string(a.purity));

    const std::array<std::array<int, 21>, 3> expected{{
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 4, 5, 6, 7, 8, 9},
        {4, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3},
        {7, 8, 9, 0, 1, 2, 3, 4, 4, 5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 5, 6},
    }};
    SystemState s{1, 5, 8};
    for (std::size_t t = 0; t < 21; ++t) {
        for (std::size_t i = 0; i < 3; ++i)
            if (s[i] != (expected[i][t] + 1) % 10)
                o.fail("cluster " + std::to_string(i) + " differs at t=" + std::to_string(t));
        s = step(s, p).next;
    }
    if (o.pass) o.note = "period 21, v=20/21 uniform, first-type only, 63 positions match";
    return o;
}

Outcome ac2_mirror() {
    Outcome o;
    const ChainParams p(3, 5, 2);
    const auto a = find_cycle({8, 5, 1}, p);
    const auto v = velocities(a);
    if (!v.uniform || a.velocity != Rational(20, 21)) o.fail("velocity " + a.velocity.to_string());
    if (a.purity != DelayPurity::SecondOnly) o.fail("delay type " + to_string(a.purity));
    if (o.pass) o.note = "v=20/21, second-type only";
    return o;
}

Outcome ac3_spectrum() {
    Outcome o;
    const ChainParams p(3, 5, 2);
    const auto got = spectrum_set(empirical_spectrum(p, Exhaustive{kGridBudget}));
    const std::set<Rational> want{Rational(1), Rational(20, 21)};
    if (got != want) o.fail("spectrum " + render(got));

    // reference model over all 1000 states
    const oracle::Params op{3, 5, 2};
    std::set<Rational> ref;
    for (const auto& s : oracle::all_states(op))
        if (oracle::admissible(s, op)) {
            const auto [n, d] = oracle::velocity(oracle::orbit(s, op));
            ref.insert(Rational(n, d));
        }
    if (ref != want) o.fail("reference spectrum " + render(ref));
    if (o.pass) o.note = render(got);
    return o;
}

Outcome ac4_binary() {
    Outcome o;
    for (int n = kBinaryMinN; n <= kBinaryMaxN; ++n) {
        std::set<Rational> want;
        for (int k = 0; k <= n / 3; ++k) want.insert(Rational(n - k, n));
        const auto got = spectrum_set(empirical_spectrum(ChainParams(n, 1, 1), Exhaustive{kGridBudget}));
        if (got != want) o.fail("N=" + std::to_string(n) + ": " + render(got) + " != " + render(want));
    }
    if (o.pass) o.note = "N=3..8 match 1-k/N, k<=floor(N/3)";
    return o;
}

Outcome ac5_collapse(const std::vector<ChainParams>& points) {
    Outcome o;
    std::uint64_t states = 0;
    for (const auto& p : points) {
        const oracle::Params op{p.contours(), p.half_cells(), p.cluster_len()};
        const bool wide = p.cluster_len() > p.half_cells();
        for (const auto& s : oracle::all_states(op)) {
            if (!oracle::admissible(s, op)) continue;
            ++states;
            const auto orbit = oracle::orbit(s, op);
            const bool collapsed = orbit.period == 1 && orbit.moves[0] == 0;
            if (collapsed != wide) {
                std::ostringstream w;
                for (int x : s) w << x << ' ';
                o.fail(p.to_string() + " from " + w.str() + (wide ? "does not collapse" : "collapses"));
            }
        }
    }
    if (o.pass) o.note = std::to_string(points.size()) + " points, " + std::to_string(states) + " states";
    return o;
}

Outcome ac6_structure(const std::vector<ChainParams>& points) {
    Outcome o;
    std::uint64_t delayed = 0;
    for (const auto& p : points) {
        const auto survey = survey_state_space(p, kGridBudget);
        for (const auto& c : survey.cycles) {
            const auto& a = c.analysis;
            if (a.regime != Regime::DelayedCycle) continue;
            ++delayed;
            const auto where = p.to_string() + " cycle " + c.representative.to_string();
            const auto r = verify_delay_structure(a, p);
            if (r.purity == DelayPurity::Mixed) o.fail("(a) " + where);
            if (!r.delta_mismatches.empty()) o.fail("(b) " + where);
            if (!r.chain_breaks.empty()) o.fail("(c) " + where);
            if (!velocities(a).uniform) o.fail("(d) " + where);
            if (p.accounting_period() % static_cast<std::int64_t>(a.period) != 0) o.fail("(e) " + where);
        }
    }
    if (o.pass) o.note = std::to_string(delayed) + " delayed cycles, (a)-(e) hold";
    return o;
}

Outcome ac7_bounds(const std::vector<ChainParams>& points) {
    Outcome o;
    std::uint64_t built = 0;
    for (const auto& p : points) {
        if (p.cluster_len() > p.half_cells()) continue;
        const auto spectrum = empirical_spectrum(p, Exhaustive{kGridBudget});
        const auto candidates = candidate_velocities(p);
        std::size_t sub_unit = 0;
        for (const auto& e : spectrum.entries) {
            if (e.regime != Regime::DelayedCycle) continue;
            ++sub_unit;
            const bool strict = p.cluster_len() < p.half_cells();
            if (e.velocity >= Rational(1) || e.velocity < Rational(2, 3) || (strict && e.velocity == Rational(2, 3)))
                o.fail("T8 " + p.to_string() + " v=" + e.velocity.to_string());
            if (std::find(candidates.begin(), candidates.end(), e.velocity) == candidates.end())
                o.fail("candidates " + p.to_string() + " v=" + e.velocity.to_string());
        }
        if (sub_unit > static_cast<std::size_t>(p.contours() / 3)) o.fail("T9 " + p.to_string());

        const auto list = feasible_decompositions(p, DelayType::First, 1'000'000);
        if (!list.complete) o.fail("decomposition enumeration truncated at " + p.to_string());
        const auto total = p.accounting_period();
        for (const auto& d : list.items) {
            try {
                const auto a = find_cycle(construct_cycle_state(p, d), p);
                if (a.velocity != Rational(total - d.sum(), total)) o.fail("S6 velocity " + p.to_string());
                ++built;
            } catch (const std::exception& e) {
                o.fail("S6 " + p.to_string() + ": " + e.what());
            }
        }
    }
    if (o.pass) o.note = std::to_string(built) + " first-type decompositions realised";
    return o;
}

Outcome ac8_thresholds(const std::vector<ChainParams>& points) {
    Outcome o;
    int asserted = 0, boundary = 0;
    for (const auto& p : points) {
        const int n = p.contours(), m = p.half_cells(), l = p.cluster_len();
        const int bound = n % 2 ? m : 2 * m;
        if (n * l == bound) ++boundary;
        if (n * l >= bound) continue;
        ++asserted;
        const oracle::Params op{n, m, l};
        for (const auto& s : oracle::all_states(op)) {
            if (!oracle::admissible(s, op)) continue;
            const auto orbit = oracle::orbit(s, op);
            if (orbit.moves[0] != static_cast<int>(orbit.period)) o.fail(p.to_string() + " has a delayed cycle");
        }
    }
    if (o.pass)
        o.note = std::to_string(asserted) + " points hold, " + std::to_string(boundary) + " boundary points reported";
    return o;
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return out + "\n<status " + std::to_string(status) + ">";
}

std::string in_process(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return out.str() + "\n<status " + std::to_string(code) + ">";
}

Outcome ac9_determinism(const std::string& cli) {
    Outcome o;
    const std::vector<std::vector<std::string>> runs{
        {"spectrum", "-N", "3", "-m", "5", "-l", "2"},
        {"spectrum", "-N", "4", "-m", "6", "-l", "5", "--sample", "5000", "--seed", "42"},
        {"spectrum", "-N", "4", "-m", "3", "-l", "2", "--format", "csv"},
        {"verify", "--grid", "N=2..4,m=1..3", "--budget", "1000000"},
        {"verify", "--grid", "N=2..3,m=1..2", "--format", "csv"},
    };
    for (const auto& args : runs) {
        std::string joined;
        for (const auto& a : args) joined += " " + a;
        const auto first = in_process(args);
        if (in_process(args) != first) o.fail("in-process:" + joined);
        if (!cli.empty()) {
            const auto a = capture(cli + joined);
            const auto b = capture(cli + joined);
            if (a != b) o.fail("binary:" + joined);
            if (a != first) o.fail("binary vs in-process:" + joined);
        }
    }
    if (o.pass) o.note = std::to_string(runs.size()) + " commands byte-identical" + (cli.empty() ? " (in-process only)" : "");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    const auto points = grid();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 example reproduction", ac1_example},
        {"AC2 mirrored cycle", ac2_mirror},
        {"AC3 exhaustive spectrum (3,5,2)", ac3_spectrum},
        {"AC4 binary chain spectra", ac4_binary},
        {"AC5 collapse dichotomy", [&] { return ac5_collapse(points); }},
        {"AC6 cycle structure", [&] { return ac6_structure(points); }},
        {"AC7 spectrum bounds", [&] { return ac7_bounds(points); }},
        {"AC8 free-movement thresholds", [&] { return ac8_thresholds(points); }},
        {"AC9 determinism", [&] { return ac9_determinism(cli); }},
    };

    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.note << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
