#pragma once

#include "maplan/local_planner.hpp"
#include "maplan/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace maplan {

struct Limits {
    int max_delta = 4;
    uint64_t leg_budget = 100000;    // single-agent expansions per leg
    uint64_t csp_budget = 2000000;   // option attempts per CSP level
    int step_limit_factor = 20;      // episode bound: factor * |P0| + base
    int step_limit_base = 50;
    bool record_messages = false;    // keep the per-message audit trace
};

struct MessageLedger {
    uint64_t propose = 0;
    uint64_t backtrack = 0;
    uint64_t broadcast = 0;

    uint64_t total() const { return propose + backtrack + broadcast; }
    void add(const MessageLedger &o) {
        propose += o.propose;
        backtrack += o.backtrack;
        broadcast += o.broadcast;
    }
};

enum class MessageKind { Propose, Backtrack, SolutionBroadcast };

// One simulated inter-agent message, for the audit dump.
struct MessageRecord {
    MessageKind kind;
    AgentId from;
    AgentId to;
    uint64_t step;  // option-attempt counter at send time
};

std::string message_trace_csv(const std::vector<MessageRecord> &trace);

// Goal of a planning call: either a term set that must hold at the end, or
// a disjunction over full states (the back-on-track trace targets, matched
// by state inclusion).
struct GoalForm {
    bool disjunctive = false;
    TermSet conjunctive;
    std::vector<TermSet> alternatives;

    static GoalForm terms(TermSet t) {
        GoalForm g;
        g.conjunctive = std::move(t);
        return g;
    }
    static GoalForm any_of(std::vector<TermSet> alts) {
        GoalForm g;
        g.disjunctive = true;
        g.alternatives = std::move(alts);
        return g;
    }
};

// One slot-variable option: a public action of some agent, or the no-op
// marker (action == kEpsilon) meaning the slot is unused.
struct CspOption {
    AgentId owner;
    ActionId action;
};

struct SlotFill {
    AgentId agent;
    ActionId action;
    bool operator==(const SlotFill &o) const {
        return agent == o.agent && action == o.action;
    }
};

struct Assignment {
    // One entry per coordination slot; nullopt encodes the no-op marker.
    std::vector<std::optional<SlotFill>> slots;
    // Per public goal term: supporting slot (1-based) or 0 for the initial
    // state.
    std::vector<std::pair<Term, int>> goal_support;
    // Selected trace state for disjunctive goals, -1 otherwise.
    int trace_index = -1;

    bool operator==(const Assignment &o) const {
        return slots == o.slots && goal_support == o.goal_support &&
               trace_index == o.trace_index;
    }
};

// The delta-slot coordination problem: slot variables over all public
// actions plus the no-op marker, goal-support variables for public goal
// terms, and (for disjunctive goals) a leading trace-choice variable.
class CoordinationCsp {
public:
    const Problem *problem = nullptr;
    PublicInfo pub;
    TermSet init_terms;
    GoalForm goal;
    int delta = 0;

    std::vector<CspOption> slot_options;  // agent-major order, no-op last

    // Conjunctive decomposition: public terms become goal-support
    // variables, private terms go to the owning agent's share. Orphan terms
    // (atoms no action mentions) are checked against init once.
    std::vector<Term> gs_terms;
    std::vector<AgentId> gs_owners;
    std::vector<TermSet> goal_shares;  // per agent
    bool statically_unsat = false;

    // Disjunctive goals: viable trace indices in search order (by global
    // relaxed distance from init, later indices preferred on ties).
    std::vector<int> alt_order;

    size_t slot_domain_size() const { return slot_options.size(); }

    // Share / goal-support terms for a selected alternative.
    TermSet share_for(AgentId agent, int trace_index) const;
    std::vector<Term> gs_terms_for(int trace_index) const;
    AgentId owner_of_term(Term t) const;

    // Does `state` satisfy the goal form?
    bool goal_holds(const TermSet &state) const;

private:
    friend CoordinationCsp build_csp(const Problem &, const PublicInfo &, const State &,
                                     const GoalForm &, int);
    std::vector<AgentId> highest_mentioner_;  // per atom
};

CoordinationCsp build_csp(const Problem &p, const PublicInfo &pub, const State &init,
                          const GoalForm &goal, int delta);
// Convenience: the problem's own init and goal.
CoordinationCsp build_csp(const Problem &p, int delta);

struct CoordViolation {
    Term term;
    int slot;  // 1-based consumer slot
};

// The coordination constraint over a complete slot assignment: every public
// precondition term of every assigned action has an earlier supporter (slot
// effect or init) that no slot in between invalidates.
std::optional<CoordViolation> check_coordination(const CoordinationCsp &csp,
                                                 const Assignment &a);

// Memoized internal-planning results, shared across the levels of one
// MA-Plan run. Cache hits cost no messages and no search effort.
class InternalCache {
public:
    // prefix_only: feasibility of the landmark chain alone (empty goal),
    // used to prune partial slot assignments.
    const LocalResult &get(const CoordinationCsp &csp, AgentId agent,
                           const std::vector<ActionId> &landmarks, int trace_index,
                           uint64_t leg_budget, SearchStats &run_stats,
                           bool prefix_only = false);

private:
    using Key = std::tuple<AgentId, int, bool, std::vector<ActionId>>;
    std::map<Key, LocalResult> cache_;
};

struct InternalViolation {
    AgentId agent;
    bool budget_exceeded = false;
};

// The internal planning constraint: every agent's landmark-and-goal-share
// local problem must be solvable within budget.
std::optional<InternalViolation> check_internal(const CoordinationCsp &csp,
                                                const Assignment &a, const Limits &limits,
                                                InternalCache &cache,
                                                SearchStats &run_stats);

enum class CspStatus { Satisfiable, Unsatisfiable, BudgetExceeded };

struct CspResult {
    CspStatus status = CspStatus::Unsatisfiable;
    Assignment assignment;
    std::vector<LocalResult> agent_plans;  // per agent, for the solution
    MessageLedger ledger;
    SearchStats stats;
    bool budget_hit = false;  // some internal check exhausted its leg budget
    std::vector<MessageRecord> trace;  // filled only when recording
};

// Simulated synchronous backtracking over the CSP variables. Deterministic;
// messages are counted exactly when the current partial assignment moves
// between distinct agents (see docs/discsp-accounting.md). A found solution
// costs n-1 additional broadcast messages unless the variable set is empty.
CspResult solve_discsp(const CoordinationCsp &csp, const Limits &limits,
                       InternalCache &cache, bool record_trace = false);

// Exhaustive variant for oracle tests: visits every consistent complete
// assignment in protocol order.
void solve_discsp_enumerate(const CoordinationCsp &csp, const Limits &limits,
                            InternalCache &cache,
                            const std::function<void(const Assignment &)> &on_solution);

}  // namespace maplan
