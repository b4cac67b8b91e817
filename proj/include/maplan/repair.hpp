#pragma once

#include "maplan/planner.hpp"

namespace maplan {

enum class RepairStrategy { Replan, BackOnTrack, SimpleLazy, RepeatedLazy };

const char *to_string(RepairStrategy s);
std::optional<RepairStrategy> repair_strategy_from(const std::string &name);

// A failed execution: the plan being executed, the step whose joint action
// turned out inapplicable (|plan|+1 when the plan ran out short of the
// goal), the observed state, and the nominal trace of the plan from its
// adoption state.
struct RepairProblem {
    const Problem *problem = nullptr;
    Plan plan;
    std::vector<State> trace;
    State failed_state;
    int failed_step = 1;
};

RepairProblem make_repair_problem(const Problem &p, const Plan &plan,
                                  const State &adoption_state, const State &failed_state,
                                  int failed_step);

enum class RepairStatus { Repaired, Irreparable, LimitExceeded };

struct RepairOutcome {
    RepairStatus status = RepairStatus::Irreparable;
    RepairStrategy strategy = RepairStrategy::Replan;
    Plan plan;                     // solves (A, s_f, S_g) when Repaired
    bool fallback_replan = false;  // back-on-track fell back to replanning
    int suffix_start = -1;         // back-on-track: first reused original step
    int remainder_length = -1;     // lazy: length of the executable remainder
    int delta_used = -1;
    MessageLedger ledger;
    SearchStats stats;
    double wall_seconds = 0;
};

// Replanning baseline: MA-Plan on (A, s_f, S_g).
RepairOutcome replan(const RepairProblem &rp, const Limits &limits);

// Back-on-track: plan from s_f to any nominal trace state (disjunctive
// goal, one solver run), then reuse the original suffix. States already
// containing a trace state short-circuit without planning. Falls back to
// replanning when no trace state is reachable but the goal still is.
RepairOutcome back_on_track(const RepairProblem &rp, const Limits &limits);

// The executable remainder of `plan` from step k in state s_f: each part
// kept iff individually applicable in the evolving state, epsilon otherwise.
std::pair<Plan, State> executable_remainder(const Problem &p, const Plan &plan, int k,
                                            const State &s_f);

// Simple lazy repair: execute the remainder, then plan from its end state
// to the goal. Incomplete by design: the remainder may drive the system to
// a dead end even when replanning from s_f would succeed.
RepairOutcome simple_lazy(const RepairProblem &rp, const Limits &limits);

// Repeated lazy repair across multiple failures of one execution: a new
// failure inside the preserved remainder discards the previous repair
// suffix and repairs the reference plan instead.
class RepeatedLazySession {
public:
    RepeatedLazySession(const Problem &p, Plan initial_plan)
        : problem_(&p), ref_plan_(std::move(initial_plan)), base_(1) {}

    RepairOutcome repair(const RepairProblem &rp, const Limits &limits);

    const Plan &reference_plan() const { return ref_plan_; }
    // Length of the preserved-remainder part of the current plan.
    int remainder_boundary() const { return ref_plan_.length() - base_ + 1; }

private:
    const Problem *problem_;
    Plan ref_plan_;
    int base_;  // reference step the current remainder starts at
};

}  // namespace maplan
