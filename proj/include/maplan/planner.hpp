#pragma once

#include "maplan/csp.hpp"

namespace maplan {

enum class PlanStatus { Solved, Unsolvable, LimitExceeded };

struct PlanResult {
    PlanStatus status = PlanStatus::Unsolvable;
    Plan plan;            // meaningful when Solved; always validates
    int delta_used = -1;  // least satisfiable level
    int trace_index = -1; // matched alternative for disjunctive goals
    MessageLedger ledger; // accumulated across all explored levels
    SearchStats stats;
    double wall_seconds = 0;
    bool budget_hit = false;
    std::vector<MessageRecord> message_trace;  // when limits.record_messages
};

// Builds a well-formed synchronous plan from a satisfying assignment and
// the agents' gap plans: filled slots are placed at strictly increasing
// global steps, each agent's private segments left-justified after its
// previous landmark, everything else padded with epsilon.
Plan assemble(const CoordinationCsp &csp, const Assignment &a,
              const std::vector<LocalResult> &agent_plans);

// The coordination-level loop: iterate delta = 0, 1, ... and return the
// plan reconstructed at the first satisfiable level. Level 0 handles
// uncoordinated problems without any message traffic.
PlanResult ma_plan(const Problem &p, const State &init, const GoalForm &goal,
                   const Limits &limits);
PlanResult ma_plan(const Problem &p, const Limits &limits);

}  // namespace maplan
