#include "contour/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "contour/errors.hpp"
#include "contour/harness.hpp"
#include "contour/report.hpp"
#include "contour/spectrum.hpp"

namespace contour {

namespace {

struct ParamFlags {
    int contours = 0;
    int half_cells = 0;
    int cluster_len = 0;
};

struct Common {
    std::string format = "json";
    std::string out_path;
    unsigned workers = 0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
    cmd->add_option("-N,--contours", p.contours, "number of contours N (>= 2)")->required();
    cmd->add_option("-m,--half-cells", p.half_cells, "half the cells per contour, m (>= 1)")->required();
    cmd->add_option("-l,--cluster-len", p.cluster_len, "particles per cluster, l (1..2m-1)")->required();
}

void add_common_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", c.out_path, "write the document to PATH instead of stdout");
    cmd->add_option("--workers", c.workers, "worker threads (0 = all cores); output does not depend on it");
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "cannot parse '" + item + "' as an integer");
        }
    }
    if (values.empty() || text.back() == ',') throw CLI::ValidationError(what, "expected a comma-separated list");
    return values;
}

Json config_block(const std::string& command, const ParamFlags* p, const Common& c, Json options) {
    Json cfg;
    cfg["command"] = command;
    if (p) cfg["params"] = Json{{"contours", p->contours}, {"half_cells", p->half_cells}, {"cluster_len", p->cluster_len}};
    cfg["options"] = std::move(options);
    cfg["format"] = c.format;
    return cfg;
}

// For csv/text the configuration goes on a leading comment line.
std::string config_comment(const Json& cfg) { return "# " + cfg.dump() + "\n"; }

Json with_config(const Json& cfg, const Json& body) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = cfg;
    for (const auto& [key, value] : body.items())
        if (key != "schema_version") doc[key] = value;
    return doc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed chain of contours with cluster movement: simulation, spectra and claim verification", "contour"};
    app.require_subcommand(1);

    ParamFlags params;
    Common common;

    auto* simulate = app.add_subcommand("simulate", "follow a state to its limit cycle, or trace steps");
    std::string state_text;
    std::optional<std::uint64_t> steps;
    bool trace = false;
    std::string method = "auto";
    std::optional<std::uint64_t> step_budget;
    add_param_flags(simulate, params);
    add_common_flags(simulate, common);
    simulate->add_option("--state", state_text, "initial positions, e.g. 1,5,8")->required();
    simulate->add_option("--steps", steps, "number of steps to trace / take");
    simulate->add_flag("--trace", trace, "emit one row per step");
    simulate->add_option("--method", method, "cycle detection")->check(CLI::IsMember({"auto", "index", "brent"}));
    simulate->add_option("--budget", step_budget, "maximum steps while searching for the cycle");

    auto* spectrum = app.add_subcommand("spectrum", "velocity spectrum over initial states");
    std::uint64_t state_budget = kDefaultStateBudget;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 0;
    add_param_flags(spectrum, params);
    add_common_flags(spectrum, common);
    spectrum->add_option("--budget", state_budget, "maximum state-space size for exhaustive enumeration");
    spectrum->add_option("--sample", sample, "draw COUNT admissible states instead of enumerating");
    spectrum->add_option("--seed", seed, "seed for --sample");

    auto* verify = app.add_subcommand("verify", "check the structural claims over a parameter grid");
    std::string grid_text = "N=2..5,m=1..4,l=1..2m-1";
    add_common_flags(verify, common);
    verify->add_option("--grid", grid_text, "grid expression, e.g. N=2..5,m=1..4,l=1..2m-1");
    verify->add_option("--budget", state_budget, "maximum state-space size per grid point");

    auto* construct = app.add_subcommand("construct", "build a cycle state from a delay decomposition");
    std::string delays_text;
    std::string type_text = "first";
    add_param_flags(construct, params);
    add_common_flags(construct, common);
    construct->add_option("--delays", delays_text, "per-turn delays k1,k2,...")->required();
    construct->add_option("--type", type_text, "delay type")->check(CLI::IsMember({"first", "second"}));

    auto* candidates = app.add_subcommand("candidates", "velocities allowed by the period decomposition");
    add_param_flags(candidates, params);
    add_common_flags(candidates, common);

    std::vector<std::string> storage{"contour"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::string document;
    int code = kExitOk;
    try {
        auto make_params = [&] { return ChainParams(params.contours, params.half_cells, params.cluster_len); };
        const auto& fmt = common.format;

        if (simulate->parsed()) {
            const auto p = make_params();
            std::vector<int> cells;
            try {
                cells = parse_int_list(state_text, "--state");
            } catch (const CLI::ValidationError& e) {
                err << "error: " << e.what() << '\n';
                return kExitUsage;
            }
            const SystemState initial(cells);
            try {
                require_admissible(initial, p);
            } catch (const ContractViolation& e) {
                err << "error: " << e.what() << '\n';
                return kExitBadInput;
            }
            Json options{{"state", to_json(initial)},
                         {"steps", steps ? Json(*steps) : Json(nullptr)},
                         {"trace", trace},
                         {"method", method},
                         {"budget", step_budget ? Json(*step_budget) : Json(nullptr)}};
            const auto cfg = config_block("simulate", &params, common, options);
            CycleOptions copts;
            copts.budget = step_budget;
            copts.method = method == "index" ? CycleMethod::VisitedIndex
                           : method == "brent" ? CycleMethod::Brent
                                               : CycleMethod::Auto;
            copts.keep_states = false;

            if (trace) {
                const auto n_steps = steps ? *steps : [&] {
                    const auto a = find_cycle(initial, p, copts);
                    return a.transient_len + a.period;
                }();
                if (fmt == "json") {
                    Json rows = Json::array();
                    SystemState x = initial;
                    for (std::uint64_t t = 0; t <= n_steps; ++t) {
                        auto s = step(x, p);
                        Json delays = Json::array();
                        for (const auto& d : s.delays)
                            delays.push_back(Json{{"cluster", d.cluster}, {"type", to_string(d.type)}, {"node", d.node}});
                        Json moved = Json::array();
                        for (bool b : s.moved) moved.push_back(b);
                        rows.push_back(Json{{"t", t}, {"positions", to_json(x)}, {"moved", moved}, {"delays", delays}});
                        x = std::move(s.next);
                    }
                    document = with_config(cfg, Json{{"trace", rows}}).dump(2) + "\n";
                } else {
                    std::ostringstream ss;
                    write_trace(ss, initial, p, n_steps);
                    document = config_comment(cfg) + ss.str();
                }
            } else {
                const auto analysis = find_cycle(initial, p, copts);
                auto summary = cycle_summary(analysis, initial, p);
                if (steps) {
                    SystemState x = initial;
                    for (std::uint64_t t = 0; t < *steps; ++t) x = step(x, p).next;
                    summary["state_after_steps"] = to_json(x);
                }
                if (fmt == "json") {
                    document = with_config(cfg, summary).dump(2) + "\n";
                } else if (fmt == "csv") {
                    std::ostringstream ss;
                    ss << config_comment(cfg) << "N,m,l,initial,transient,period,velocity,regime,delay_type\n"
                       << p.contours() << ',' << p.half_cells() << ',' << p.cluster_len() << ','
                       << csv_field(initial.to_string()) << ',' << analysis.transient_len << ',' << analysis.period
                       << ',' << analysis.velocity.to_string() << ',' << to_string(analysis.regime) << ','
                       << to_string(analysis.purity) << '\n';
                    document = ss.str();
                } else {
                    document = config_comment(cfg) + cycle_summary_text(analysis, initial, p);
                }
            }
        } else if (spectrum->parsed()) {
            const auto p = make_params();
            Exploration exploration = sample ? Exploration{Sampled{*sample, seed}} : Exploration{Exhaustive{state_budget}};
            const auto cfg = config_block("spectrum", &params, common, to_json(exploration));
            const auto report = empirical_spectrum(p, exploration, common.workers);
            if (fmt == "json")
                document = with_config(cfg, to_json(report)).dump(2) + "\n";
            else
                document = config_comment(cfg) + (fmt == "csv" ? to_csv(report) : to_text(report));
        } else if (verify->parsed()) {
            auto grid = parse_grid(grid_text);
            grid.budget = state_budget;
            const auto cfg =
                config_block("verify", nullptr, common, Json{{"grid", grid.to_string()}, {"budget", state_budget}});
            grid_points(grid);  // validates every point before any computation
            const auto reports = run_suite(grid, common.workers);
            if (fmt == "json")
                document = with_config(cfg, to_json(reports, grid)).dump(2) + "\n";
            else
                document = config_comment(cfg) + (fmt == "csv" ? to_csv(reports) : to_text(reports));
            if (any_violation(reports)) code = kExitViolation;
        } else if (construct->parsed()) {
            const auto p = make_params();
            DelayDecomposition decomposition;
            try {
                decomposition.delays = parse_int_list(delays_text, "--delays");
            } catch (const CLI::ValidationError& e) {
                err << "error: " << e.what() << '\n';
                return kExitUsage;
            }
            decomposition.type = type_text == "second" ? DelayType::Second : DelayType::First;
            Json decomposition_json{{"type", type_text},
                                    {"turns", decomposition.delays.size()},
                                    {"delays", decomposition.delays}};
            const auto cfg = config_block("construct", &params, common, decomposition_json);
            const auto state = construct_cycle_state(p, decomposition);
            const auto analysis = find_cycle(state, p, {.budget = std::nullopt, .method = CycleMethod::Auto, .keep_states = false});
            if (fmt == "json") {
                Json body{{"decomposition", decomposition_json}, {"state", to_json(state)}, {"cycle", cycle_summary(analysis, state, p)}};
                document = with_config(cfg, body).dump(2) + "\n";
            } else if (fmt == "csv") {
                std::ostringstream ss;
                ss << config_comment(cfg) << "N,m,l,type,delays,state,period,velocity,delay_type\n"
                   << p.contours() << ',' << p.half_cells() << ',' << p.cluster_len() << ',' << type_text << ','
                   << csv_field(delays_text) << ',' << csv_field(state.to_string()) << ',' << analysis.period << ','
                   << analysis.velocity.to_string() << ',' << to_string(analysis.purity) << '\n';
                document = ss.str();
            } else {
                document = config_comment(cfg) + "state " + state.to_string() + "\n" +
                           cycle_summary_text(analysis, state, p);
            }
        } else if (candidates->parsed()) {
            const auto p = make_params();
            const auto cfg = config_block("candidates", &params, common, Json::object());
            const auto values = candidate_velocities(p);
            if (fmt == "json") {
                Json list = Json::array();
                for (const auto& v : values) list.push_back(v.to_string());
                document = with_config(cfg, Json{{"params", to_json(p)}, {"candidates", list}}).dump(2) + "\n";
            } else {
                std::string body = fmt == "csv" ? "N,m,l,velocity\n" : "candidates " + p.to_string() + ":";
                for (const auto& v : values)
                    body += fmt == "csv" ? std::to_string(p.contours()) + "," + std::to_string(p.half_cells()) + "," +
                                               std::to_string(p.cluster_len()) + "," + v.to_string() + "\n"
                                         : " " + v.to_string();
                document = config_comment(cfg) + body + (fmt == "csv" ? "" : "\n");
            }
        }
    } catch (const InadmissibleState& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const InfeasibleDecomposition& e) {
        err << "error: infeasible decomposition: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitBadInput;
    } catch (const ConstructionFailed& e) {
        err << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (common.out_path.empty()) {
        out << document;
    } else {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << common.out_path << " for writing\n";
            return kExitUsage;
        }
        file << document;
    }
    return code;
}

}  // namespace contour
