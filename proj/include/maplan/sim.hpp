#pragma once

#include "maplan/repair.hpp"
#include "maplan/rng.hpp"

namespace maplan {

enum class FailureKind { None, ActionFailure, StatePerturbation };

const char *to_string(FailureKind k);
std::optional<FailureKind> failure_kind_from(const std::string &name);

struct FailureModel {
    FailureKind kind = FailureKind::None;
    double p = 0.0;     // per-step failure probability
    int c = 1;          // perturbation magnitude (terms removed and added)
    int max_drops = 1;  // individual actions dropped per action failure
};

struct InjectedFailure {
    FailureKind kind;
    AgentId dropped_agent = kNoAgent;  // first dropped part (action failures)
};

// One execution step in the simulated dynamic environment: with probability
// 1-p the joint action applies as in the ideal environment; otherwise the
// configured failure is injected. Perturbed states stay consistent: adding
// a term first removes its complement.
std::pair<State, std::optional<InjectedFailure>> execute_fail(const Problem &p,
                                                              const State &s,
                                                              const JointAction &j,
                                                              const FailureModel &model,
                                                              Rng &rng);

struct RepairEvent {
    int step;  // failed step in the plan being executed at the time
    RepairStatus status;
    bool fallback_replan;
    MessageLedger ledger;
    uint64_t expansions;
};

enum class EpisodeTermination { Goal, Unsolvable, Irreparable, LimitExceeded, StepLimit };

const char *to_string(EpisodeTermination t);

struct EpisodeReport {
    uint64_t seed = 0;
    RepairStrategy strategy = RepairStrategy::Replan;
    FailureModel model;
    bool reached_goal = false;
    EpisodeTermination termination = EpisodeTermination::Goal;
    int execution_length = 0;  // executed joint actions
    int weak_failures = 0;
    MessageLedger messages;    // initial planning plus all repairs
    uint64_t expansions = 0;
    double planning_wall_seconds = 0;
    std::vector<MessageLedger> call_ledgers;  // per planning call
    std::vector<RepairEvent> repair_events;
};

// Execute-monitor-repair: plan, execute step by step, detect strong
// failures (inapplicable joint action, or plan exhaustion short of the
// goal) and invoke the selected repair strategy, restarting at the repaired
// plan's first step. Weak failures are recorded but not acted on.
EpisodeReport run_episode(const Problem &p, RepairStrategy strategy,
                          const FailureModel &model, const Limits &limits, uint64_t seed);

// One CSV row per episode; the header is part of the documented interface.
// Wall time is emitted only when `timings` is set, keeping default output
// byte-stable across reruns.
std::string episode_csv_header(bool timings = false);
std::string episode_csv_row(const EpisodeReport &r, bool timings = false);

// Per-repair-event detail, one JSON object per line.
std::string episode_detail_json(const EpisodeReport &r);

}  // namespace maplan
