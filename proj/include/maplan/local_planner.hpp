#pragma once

#include "maplan/model.hpp"

#include <limits>
#include <vector>

namespace maplan {

inline constexpr int kInfiniteCost = std::numeric_limits<int>::max() / 4;

struct SearchStats {
    uint64_t expansions = 0;
    uint64_t generated = 0;

    void add(const SearchStats &o) {
        expansions += o.expansions;
        generated += o.generated;
    }
};

// Additive delete-relaxation estimate over unit-cost actions. Negative
// preconditions and negative goal terms are treated as free; returns
// kInfiniteCost when some positive goal atom is unreachable in the
// relaxation.
int h_add(const Problem &p, const std::vector<ActionId> &actions, const TermSet &state,
          const TermSet &goal);

// The agent-local planning problem with landmarks: the agent's public
// actions in coordination order, gaps to be filled with private actions
// only.
struct LocalProblem {
    const Problem *problem = nullptr;
    AgentId agent = kNoAgent;
    TermSet init;                      // projected to the agent's atom scope
    std::vector<ActionId> landmarks;   // the agent's slot actions, slot order
    TermSet goal;                      // the agent's share of the global goal
    boost::dynamic_bitset<> scope;     // atoms mentioned by the agent's actions
    boost::dynamic_bitset<> public_atoms;
    std::vector<ActionId> private_actions;
};

LocalProblem make_local_problem(const Problem &p, const PublicInfo &pub, AgentId agent,
                                const std::vector<ActionId> &landmarks,
                                const TermSet &goal_share, const State &global_init);

enum class LocalStatus { Solved, Unsolvable, BudgetExceeded };

struct LocalSolution {
    // landmarks.size()+1 private segments: segments[i] precedes landmark
    // i+1, the last one follows the final landmark.
    std::vector<std::vector<ActionId>> segments;
    TermSet end_state;
};

struct LocalResult {
    LocalStatus status = LocalStatus::Unsolvable;
    LocalSolution solution;  // meaningful only when Solved
    SearchStats stats;
};

// Fills the gaps leg by leg, committing each leg's end state. Each segment
// is a shortest private plan for its leg given the committed predecessor
// state (cost-ordered best-first search, h_add for pruning and
// tie-breaking). The expansion budget applies per leg.
LocalResult solve_local(const LocalProblem &lp, uint64_t leg_budget);

}  // namespace maplan
