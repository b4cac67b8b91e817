#include "maplan/domain_io.hpp"
#include "maplan/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace maplan;

// Exit codes: 0 success, 1 input error, 2 unsolvable/invalid, 3 irreparable,
// 4 budget limit, 5 step limit.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnsolvable = 2;
constexpr int kExitIrreparable = 3;
constexpr int kExitLimit = 4;
constexpr int kExitStepLimit = 5;

struct SourceOpts {
    std::string domain_file;
    std::string family;
    int agents = 0;
    uint64_t seed = 0;
    int locations = 0, packages = 0, waypoints = 0, samples = 0, targets = 0,
        directions = 0;
};

void add_source_flags(CLI::App *cmd, SourceOpts &opts) {
    cmd->add_option("--domain-file", opts.domain_file, "problem file to load");
    cmd->add_option("--family", opts.family,
                    "benchmark family: logistics|rovers|satellites");
    cmd->add_option("--agents", opts.agents, "agent count (family mode)");
    cmd->add_option("--seed", opts.seed, "generator / episode seed");
    cmd->add_option("--locations", opts.locations, "logistics: places per city");
    cmd->add_option("--packages", opts.packages, "logistics: package count");
    cmd->add_option("--waypoints", opts.waypoints, "rovers: waypoints per rover");
    cmd->add_option("--samples", opts.samples, "rovers: samples per rover");
    cmd->add_option("--targets", opts.targets, "satellites: targets per satellite");
    cmd->add_option("--directions", opts.directions, "satellites: directions per satellite");
}

ProblemSource resolve_source(const SourceOpts &opts) {
    if (!opts.domain_file.empty() && !opts.family.empty())
        throw std::runtime_error("give either --domain-file or --family, not both");
    if (!opts.domain_file.empty())
        return source_from_file(opts.domain_file);
    if (opts.family.empty())
        throw std::runtime_error("need --domain-file or --family");
    auto fam = family_from(opts.family);
    if (!fam)
        throw std::runtime_error("unknown family '" + opts.family + "'");
    BenchmarkParams params = default_params(*fam);
    params.seed = opts.seed;
    if (opts.agents)
        params.agent_count = opts.agents;
    if (opts.locations)
        params.locations = opts.locations;
    if (opts.packages)
        params.packages = opts.packages;
    if (opts.waypoints)
        params.waypoints = opts.waypoints;
    if (opts.samples)
        params.samples = opts.samples;
    if (opts.targets)
        params.targets = opts.targets;
    if (opts.directions)
        params.directions = opts.directions;
    return source_from_params(params);
}

struct LimitOpts {
    int max_delta = -1;
    long long budget = -1;
    long long csp_budget = -1;
};

void add_limit_flags(CLI::App *cmd, LimitOpts &opts) {
    cmd->add_option("--max-delta", opts.max_delta, "coordination-slot cap (default 4)");
    cmd->add_option("--budget", opts.budget, "single-agent expansions per leg");
    cmd->add_option("--csp-budget", opts.csp_budget, "CSP option attempts per level");
}

Limits resolve_limits(const LimitOpts &opts) {
    Limits limits;
    if (opts.max_delta >= 0)
        limits.max_delta = opts.max_delta;
    if (opts.budget >= 0)
        limits.leg_budget = static_cast<uint64_t>(opts.budget);
    if (opts.csp_budget >= 0)
        limits.csp_budget = static_cast<uint64_t>(opts.csp_budget);
    return limits;
}

int cmd_plan(const SourceOpts &source_opts, const LimitOpts &limit_opts,
             const std::string &out_path, const std::string &dump_messages, bool timings) {
    ProblemSource source = resolve_source(source_opts);
    Problem problem = source.load();
    Limits limits = resolve_limits(limit_opts);
    limits.record_messages = !dump_messages.empty();
    PlanResult result = ma_plan(problem, limits);
    if (!dump_messages.empty())
        write_file(dump_messages, message_trace_csv(result.message_trace));

    std::ostringstream metrics;
    metrics << "status="
            << (result.status == PlanStatus::Solved        ? "solved"
                : result.status == PlanStatus::Unsolvable  ? "unsolvable"
                                                           : "limit")
            << " delta=" << result.delta_used << " steps=" << result.plan.length()
            << " messages=" << result.ledger.total() << " propose=" << result.ledger.propose
            << " backtrack=" << result.ledger.backtrack
            << " broadcast=" << result.ledger.broadcast
            << " expansions=" << result.stats.expansions;
    if (timings)
        metrics << " wall_ms=" << static_cast<long long>(result.wall_seconds * 1000);
    metrics << '\n';

    if (result.status != PlanStatus::Solved) {
        std::cout << "cause="
                  << (result.status == PlanStatus::Unsolvable ? "unsolvable" : "limit")
                  << '\n'
                  << metrics.str();
        return result.status == PlanStatus::Unsolvable ? kExitUnsolvable : kExitLimit;
    }
    std::string csv = serialize_plan(problem, result.plan);
    if (out_path.empty()) {
        std::cout << csv;
        std::cerr << metrics.str();
    } else {
        write_file(out_path, csv);
        std::cout << metrics.str();
    }
    return kExitOk;
}

int cmd_episode(const SourceOpts &source_opts, const LimitOpts &limit_opts,
                const std::string &strategy_name, const std::string &failure_name,
                double p, int c, const std::string &out_path, bool verbose, bool timings) {
    ProblemSource source = resolve_source(source_opts);
    Problem problem = source.load();
    auto strategy = repair_strategy_from(strategy_name);
    if (!strategy)
        throw std::runtime_error("unknown strategy '" + strategy_name + "'");
    auto kind = failure_kind_from(failure_name);
    if (!kind)
        throw std::runtime_error("unknown failure kind '" + failure_name + "'");
    FailureModel model;
    model.kind = *kind;
    model.p = p;
    model.c = c;
    if (model.p < 0 || model.p > 1)
        throw std::runtime_error("--p must be in [0,1]");
    if (model.kind == FailureKind::StatePerturbation && model.c < 1)
        throw std::runtime_error("--c must be >= 1 for perturbations");

    EpisodeReport report =
        run_episode(problem, *strategy, model, resolve_limits(limit_opts), source_opts.seed);
    std::string csv = episode_csv_header(timings) + episode_csv_row(report, timings);
    if (out_path.empty())
        std::cout << csv;
    else
        write_file(out_path, csv);
    if (verbose)
        std::cerr << episode_detail_json(report);

    if (report.reached_goal)
        return kExitOk;
    std::cout << "cause=" << to_string(report.termination) << '\n';
    switch (report.termination) {
    case EpisodeTermination::Unsolvable: return kExitUnsolvable;
    case EpisodeTermination::Irreparable: return kExitIrreparable;
    case EpisodeTermination::LimitExceeded: return kExitLimit;
    case EpisodeTermination::StepLimit: return kExitStepLimit;
    default: return kExitUnsolvable;
    }
}

int cmd_sweep(const std::string &spec_path, const std::string &out_dir, int jobs) {
    SweepSpec spec = parse_sweep_spec(read_file(spec_path));
    SweepResult result = run_sweep(spec, jobs);
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/raw.csv", raw_csv(result));
    write_file(out_dir + "/aggregate.csv", aggregate_csv(result));
    write_file(out_dir + "/summary.txt", summary_table(result));
    std::cout << summary_table(result);
    return kExitOk;
}

int cmd_validate(const SourceOpts &source_opts, const std::string &plan_path) {
    ProblemSource source = resolve_source(source_opts);
    Problem problem = source.load();
    Plan plan = parse_plan(read_file(plan_path), problem);
    auto violation = validate_plan(problem, plan);
    if (!violation) {
        std::cout << "valid\n";
        return kExitOk;
    }
    const char *kind = violation->kind == ViolationKind::WellFormed   ? "well-formed"
                       : violation->kind == ViolationKind::Feasibility ? "feasibility"
                                                                       : "goal";
    std::cout << "violation=" << kind << " step=" << violation->step << '\n';
    return kExitUnsolvable;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"grounded multi-agent planning, plan repair and failure simulation"};
    app.require_subcommand(1);

    SourceOpts source;
    LimitOpts limits;
    std::string out_path, dump_messages, strategy = "replan", failure = "none";
    std::string spec_path, plan_path, out_dir = "sweep-out";
    double p = 0.0;
    int c = 1, jobs = 0;
    bool verbose = false, timings = false;

    CLI::App *plan = app.add_subcommand("plan", "plan a problem and write the plan CSV");
    add_source_flags(plan, source);
    add_limit_flags(plan, limits);
    plan->add_option("--out", out_path, "plan CSV path (default: stdout)");
    plan->add_option("--dump-messages", dump_messages, "write the message audit CSV");
    plan->add_flag("--timings", timings, "include wall-clock timings in output");

    CLI::App *episode =
        app.add_subcommand("episode", "execute one failure-injected episode");
    add_source_flags(episode, source);
    add_limit_flags(episode, limits);
    episode->add_option("--strategy", strategy, "replan|bot|lazy|repeated-lazy");
    episode->add_option("--failure", failure, "none|action|perturb");
    episode->add_option("--p", p, "per-step failure probability");
    episode->add_option("--c", c, "perturbation magnitude");
    episode->add_option("--out", out_path, "episode CSV path (default: stdout)");
    episode->add_flag("--verbose", verbose, "per-repair JSON detail on stderr");
    episode->add_flag("--timings", timings, "include wall-clock timings in output");

    CLI::App *sweep = app.add_subcommand("sweep", "run a sweep spec and aggregate");
    sweep->add_option("--spec", spec_path, "sweep spec file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "parallel episode jobs (0 = hardware)");

    CLI::App *validate = app.add_subcommand("validate", "check a plan against a problem");
    add_source_flags(validate, source);
    validate->add_option("--plan", plan_path, "plan CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed())
            return cmd_plan(source, limits, out_path, dump_messages, timings);
        if (episode->parsed())
            return cmd_episode(source, limits, strategy, failure, p, c, out_path, verbose,
                               timings);
        if (sweep->parsed())
            return cmd_sweep(spec_path, out_dir, jobs);
        if (validate->parsed())
            return cmd_validate(source, plan_path);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
