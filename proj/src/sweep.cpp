#include "maplan/sweep.hpp"

#include "maplan/domain_io.hpp"
#include "maplan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maplan {

Problem ProblemSource::load() const {
    if (is_file)
        return load_problem(path);
    return generate_benchmark(params);
}

ProblemSource source_from_file(std::string path) {
    ProblemSource src;
    src.is_file = true;
    src.path = std::move(path);
    size_t slash = src.path.find_last_of('/');
    std::string stem = slash == std::string::npos ? src.path : src.path.substr(slash + 1);
    size_t dot = stem.find_last_of('.');
    src.label = dot == std::string::npos ? stem : stem.substr(0, dot);
    return src;
}

ProblemSource source_from_params(const BenchmarkParams &params) {
    ProblemSource src;
    src.params = params;
    std::ostringstream label;
    label << to_string(params.family) << "_a" << params.agent_count;
    switch (params.family) {
    case Family::Logistics:
        label << "_l" << params.locations << "_k" << params.packages;
        break;
    case Family::Rovers:
        label << "_w" << params.waypoints << "_m" << params.samples;
        break;
    case Family::Satellites:
        label << "_d" << params.directions << "_t" << params.targets;
        break;
    }
    label << "_s" << params.seed;
    src.label = label.str();
    return src;
}

namespace {

long long expect_int(const Sexpr &node) {
    if (node.is_list)
        node.fail("expected a number");
    try {
        return std::stoll(node.atom);
    } catch (...) {
        node.fail("expected a number, got '" + node.atom + "'");
    }
}

double expect_double(const Sexpr &node) {
    if (node.is_list)
        node.fail("expected a number");
    try {
        return std::stod(node.atom);
    } catch (...) {
        node.fail("expected a number, got '" + node.atom + "'");
    }
}

BenchmarkParams parse_family_source(const Sexpr &node) {
    auto fam = family_from(node.at(1).atom);
    if (!fam)
        node.at(1).fail("unknown family '" + node.at(1).atom + "'");
    BenchmarkParams params = default_params(*fam);
    for (size_t i = 2; i + 1 < node.items.size(); i += 2) {
        const std::string &key = node.at(i).atom;
        const Sexpr &val = node.at(i + 1);
        if (key == ":agents")
            params.agent_count = static_cast<int>(expect_int(val));
        else if (key == ":seed")
            params.seed = static_cast<uint64_t>(expect_int(val));
        else if (key == ":locations")
            params.locations = static_cast<int>(expect_int(val));
        else if (key == ":packages")
            params.packages = static_cast<int>(expect_int(val));
        else if (key == ":waypoints")
            params.waypoints = static_cast<int>(expect_int(val));
        else if (key == ":samples")
            params.samples = static_cast<int>(expect_int(val));
        else if (key == ":targets")
            params.targets = static_cast<int>(expect_int(val));
        else if (key == ":directions")
            params.directions = static_cast<int>(expect_int(val));
        else
            node.at(i).fail("unknown family knob '" + key + "'");
    }
    return params;
}

void parse_limits(const Sexpr &sec, Limits &limits) {
    for (size_t i = 1; i + 1 < sec.items.size(); i += 2) {
        const std::string &key = sec.at(i).atom;
        const Sexpr &val = sec.at(i + 1);
        if (key == ":max-delta")
            limits.max_delta = static_cast<int>(expect_int(val));
        else if (key == ":leg-budget")
            limits.leg_budget = static_cast<uint64_t>(expect_int(val));
        else if (key == ":csp-budget")
            limits.csp_budget = static_cast<uint64_t>(expect_int(val));
        else
            sec.at(i).fail("unknown limit '" + key + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string format_ratio(const MetricAgg &m) {
    if (!m.has_ratio)
        return "";
    if (std::isinf(m.ratio_to_replan))
        return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", m.ratio_to_replan);
    return buf;
}

MetricAgg aggregate_metric(const std::vector<double> &values) {
    MetricAgg m;
    if (values.empty())
        return m;
    m.min = m.max = values[0];
    double sum = 0;
    for (double v : values) {
        sum += v;
        m.min = std::min(m.min, v);
        m.max = std::max(m.max, v);
    }
    m.mean = sum / static_cast<double>(values.size());
    double sq = 0;
    for (double v : values)
        sq += (v - m.mean) * (v - m.mean);
    m.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    return m;
}

void attach_ratio(MetricAgg &m, double replan_mean) {
    m.has_ratio = true;
    if (replan_mean == 0.0)
        m.ratio_to_replan = m.mean == 0.0 ? 1.0 : INFINITY;
    else
        m.ratio_to_replan = m.mean / replan_mean;
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string &text) {
    Sexpr root = parse_sexpr(text);
    if (!root.is_list || root.items.empty() || !root.at(0).is_symbol("sweep"))
        root.fail("expected (sweep ...)");
    SweepSpec spec;
    for (size_t i = 1; i < root.items.size(); ++i) {
        const Sexpr &sec = root.items[i];
        if (!sec.is_list || sec.items.empty())
            sec.fail("expected a (:section ...) block");
        const std::string &tag = sec.at(0).atom;
        if (tag == ":problems") {
            for (size_t k = 1; k < sec.items.size(); ++k) {
                const Sexpr &src = sec.items[k];
                if (!src.is_list || src.items.empty())
                    src.fail("expected (family ...) or (file ...)");
                if (src.at(0).is_symbol("family")) {
                    spec.problems.push_back(source_from_params(parse_family_source(src)));
                } else if (src.at(0).is_symbol("file")) {
                    spec.problems.push_back(source_from_file(src.at(1).atom));
                } else {
                    src.fail("expected (family ...) or (file ...)");
                }
            }
        } else if (tag == ":strategies") {
            for (size_t k = 1; k < sec.items.size(); ++k) {
                auto s = repair_strategy_from(sec.at(k).atom);
                if (!s)
                    sec.at(k).fail("unknown strategy '" + sec.at(k).atom + "'");
                spec.strategies.push_back(*s);
            }
        } else if (tag == ":p") {
            for (size_t k = 1; k < sec.items.size(); ++k)
                spec.p_values.push_back(expect_double(sec.at(k)));
        } else if (tag == ":reps") {
            spec.repetitions = static_cast<int>(expect_int(sec.at(1)));
        } else if (tag == ":base-seed") {
            spec.base_seed = static_cast<uint64_t>(expect_int(sec.at(1)));
        } else if (tag == ":failure") {
            auto f = failure_kind_from(sec.at(1).atom);
            if (!f)
                sec.at(1).fail("unknown failure kind '" + sec.at(1).atom + "'");
            spec.failure = *f;
        } else if (tag == ":c") {
            spec.c = static_cast<int>(expect_int(sec.at(1)));
        } else if (tag == ":limits") {
            parse_limits(sec, spec.limits);
        } else {
            sec.fail("unknown section '" + tag + "'");
        }
    }
    if (spec.problems.empty() || spec.strategies.empty() || spec.p_values.empty())
        throw std::runtime_error("sweep spec needs :problems, :strategies and :p");
    if (spec.repetitions < 1)
        throw std::runtime_error("sweep spec needs :reps >= 1");
    return spec;
}

uint64_t sweep_episode_seed(const SweepSpec &spec, size_t cell_index, int rep) {
    return derive_seed(spec.base_seed,
                       cell_index * static_cast<size_t>(spec.repetitions) +
                           static_cast<size_t>(rep));
}

SweepResult run_sweep(const SweepSpec &spec, int jobs) {
    std::vector<Problem> problems;
    problems.reserve(spec.problems.size());
    for (const auto &src : spec.problems)
        problems.push_back(src.load());

    struct Job {
        size_t problem;
        size_t cell;
        RepairStrategy strategy;
        double p;
        int rep;
    };
    std::vector<Job> jobs_list;
    size_t cell = 0;
    for (size_t pi = 0; pi < spec.problems.size(); ++pi)
        for (RepairStrategy strat : spec.strategies)
            for (double p : spec.p_values) {
                for (int rep = 0; rep < spec.repetitions; ++rep)
                    jobs_list.push_back(Job{pi, cell, strat, p, rep});
                ++cell;
            }

    SweepResult result;
    result.rows.resize(jobs_list.size());

#ifdef _OPENMP
    if (jobs > 0)
        omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic) if (jobs != 1)
#endif
    for (long long ji = 0; ji < static_cast<long long>(jobs_list.size()); ++ji) {
        const Job &job = jobs_list[ji];
        FailureModel model;
        model.kind = spec.failure;
        model.p = job.p;
        model.c = spec.c;
        uint64_t seed = sweep_episode_seed(spec, job.cell, job.rep);
        EpisodeReport report =
            run_episode(problems[job.problem], job.strategy, model, spec.limits, seed);
        result.rows[ji] = RawRow{spec.problems[job.problem].label, job.strategy, job.p,
                                 job.rep, std::move(report)};
    }

    // Aggregate in cell order; ratios against the replan cell of the same
    // (problem, p) when present.
    size_t reps = static_cast<size_t>(spec.repetitions);
    auto cell_rows = [&](size_t cell_index) {
        return result.rows.begin() + static_cast<long>(cell_index * reps);
    };
    size_t cells_per_problem = spec.strategies.size() * spec.p_values.size();
    for (size_t pi = 0; pi < spec.problems.size(); ++pi) {
        for (size_t si = 0; si < spec.strategies.size(); ++si) {
            for (size_t vi = 0; vi < spec.p_values.size(); ++vi) {
                size_t cell_index =
                    pi * cells_per_problem + si * spec.p_values.size() + vi;
                AggregateRow agg;
                agg.problem = spec.problems[pi].label;
                agg.strategy = spec.strategies[si];
                agg.p = spec.p_values[vi];
                std::vector<double> msgs, lens, exps;
                for (size_t r = 0; r < reps; ++r) {
                    const EpisodeReport &rep = (cell_rows(cell_index) + r)->report;
                    msgs.push_back(static_cast<double>(rep.messages.total()));
                    lens.push_back(static_cast<double>(rep.execution_length));
                    exps.push_back(static_cast<double>(rep.expansions));
                }
                agg.messages = aggregate_metric(msgs);
                agg.execution_length = aggregate_metric(lens);
                agg.expansions = aggregate_metric(exps);
                // Locate the replan cell for this (problem, p).
                for (size_t rsi = 0; rsi < spec.strategies.size(); ++rsi) {
                    if (spec.strategies[rsi] != RepairStrategy::Replan)
                        continue;
                    size_t rcell = pi * cells_per_problem + rsi * spec.p_values.size() + vi;
                    std::vector<double> rmsgs, rlens, rexps;
                    for (size_t r = 0; r < reps; ++r) {
                        const EpisodeReport &rep = (cell_rows(rcell) + r)->report;
                        rmsgs.push_back(static_cast<double>(rep.messages.total()));
                        rlens.push_back(static_cast<double>(rep.execution_length));
                        rexps.push_back(static_cast<double>(rep.expansions));
                    }
                    attach_ratio(agg.messages, aggregate_metric(rmsgs).mean);
                    attach_ratio(agg.execution_length, aggregate_metric(rlens).mean);
                    attach_ratio(agg.expansions, aggregate_metric(rexps).mean);
                    break;
                }
                result.aggregates.push_back(std::move(agg));
            }
        }
    }
    return result;
}

std::string raw_csv(const SweepResult &result) {
    std::ostringstream out;
    out << "problem,strategy,p,rep,seed,reached_goal,termination,execution_length,"
           "messages_total,propose,backtrack,broadcast,expansions,repairs,weak_failures\n";
    for (const RawRow &row : result.rows) {
        const EpisodeReport &r = row.report;
        out << row.problem << ',' << to_string(row.strategy) << ',' << format_double(row.p)
            << ',' << row.rep << ',' << r.seed << ',' << (r.reached_goal ? 1 : 0) << ','
            << to_string(r.termination) << ',' << r.execution_length << ','
            << r.messages.total() << ',' << r.messages.propose << ','
            << r.messages.backtrack << ',' << r.messages.broadcast << ',' << r.expansions
            << ',' << r.repair_events.size() << ',' << r.weak_failures << '\n';
    }
    return out.str();
}

std::string aggregate_csv(const SweepResult &result) {
    std::ostringstream out;
    out << "problem,strategy,p,"
           "msg_mean,msg_min,msg_max,msg_sd,msg_ratio,"
           "len_mean,len_min,len_max,len_sd,len_ratio,"
           "exp_mean,exp_min,exp_max,exp_sd,exp_ratio\n";
    auto metric = [&](const MetricAgg &m) {
        out << format_double(m.mean) << ',' << format_double(m.min) << ','
            << format_double(m.max) << ',' << format_double(m.stddev) << ','
            << format_ratio(m);
    };
    for (const AggregateRow &row : result.aggregates) {
        out << row.problem << ',' << to_string(row.strategy) << ',' << format_double(row.p)
            << ',';
        metric(row.messages);
        out << ',';
        metric(row.execution_length);
        out << ',';
        metric(row.expansions);
        out << '\n';
    }
    return out.str();
}

double mean_message_ratio(const SweepResult &result, const std::string &problem,
                          RepairStrategy strategy) {
    double sum = 0;
    int count = 0;
    for (const AggregateRow &row : result.aggregates)
        if (row.problem == problem && row.strategy == strategy && row.messages.has_ratio) {
            sum += row.messages.ratio_to_replan;
            ++count;
        }
    return count ? sum / count : NAN;
}

double mean_execution_ratio(const SweepResult &result, const std::string &problem,
                            RepairStrategy strategy) {
    double sum = 0;
    int count = 0;
    for (const AggregateRow &row : result.aggregates)
        if (row.problem == problem && row.strategy == strategy &&
            row.execution_length.has_ratio) {
            sum += row.execution_length.ratio_to_replan;
            ++count;
        }
    return count ? sum / count : NAN;
}

std::string summary_table(const SweepResult &result) {
    std::ostringstream out;
    out << "message ratio to replan (mean over repetitions)\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %-14s %8s %10s\n", "problem", "strategy", "p",
                  "msg_ratio");
    out << buf;
    for (const AggregateRow &row : result.aggregates) {
        if (row.strategy == RepairStrategy::Replan || !row.messages.has_ratio)
            continue;
        std::snprintf(buf, sizeof buf, "%-28s %-14s %8.3f %10.4f\n", row.problem.c_str(),
                      to_string(row.strategy), row.p, row.messages.ratio_to_replan);
        out << buf;
    }
    out << "\nsweep-wide mean message ratio\n";
    std::vector<std::pair<std::string, RepairStrategy>> seen;
    for (const AggregateRow &row : result.aggregates) {
        if (row.strategy == RepairStrategy::Replan || !row.messages.has_ratio)
            continue;
        auto key = std::make_pair(row.problem, row.strategy);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            continue;
        seen.push_back(key);
        std::snprintf(buf, sizeof buf, "%-28s %-14s %10.4f\n", row.problem.c_str(),
                      to_string(row.strategy),
                      mean_message_ratio(result, row.problem, row.strategy));
        out << buf;
    }
    return out.str();
}

}  // namespace maplan
