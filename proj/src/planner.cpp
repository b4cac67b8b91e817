#include "maplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace maplan {

Plan assemble(const CoordinationCsp &csp, const Assignment &a,
              const std::vector<LocalResult> &agent_plans) {
    const Problem &p = *csp.problem;
    int n = p.agent_count();

    struct Placed {
        AgentId agent;
        ActionId action;
        int step;
    };
    std::vector<Placed> placed;
    std::vector<int> last_landmark_step(n, 0);
    std::vector<size_t> segment_cursor(n, 0);
    int prev_slot_step = 0;

    for (const auto &slot : a.slots) {
        if (!slot)
            continue;
        AgentId ag = slot->agent;
        const auto &segments = agent_plans[ag].solution.segments;
        int seg_len = static_cast<int>(segments[segment_cursor[ag]].size());
        int step = std::max(prev_slot_step + 1, last_landmark_step[ag] + seg_len + 1);
        placed.push_back(Placed{ag, slot->action, step});
        prev_slot_step = step;
        last_landmark_step[ag] = step;
        ++segment_cursor[ag];
    }

    int length = 0;
    for (AgentId ag = 0; ag < n; ++ag) {
        const auto &segments = agent_plans[ag].solution.segments;
        if (segment_cursor[ag] + 1 != segments.size())
            throw std::logic_error("assemble: segment count does not match slot assignment");
        length = std::max(length, last_landmark_step[ag] +
                                      static_cast<int>(segments.back().size()));
    }

    std::vector<JointAction> steps(length, p.all_epsilon());
    std::vector<int> cursor(n, 0);  // step of the agent's previous landmark
    std::vector<size_t> seg_index(n, 0);
    auto lay_segment = [&](AgentId ag, const std::vector<ActionId> &segment) {
        for (ActionId act : segment) {
            steps[cursor[ag]][ag] = act;  // cursor is 0-based step of next cell
            ++cursor[ag];
        }
    };
    for (const Placed &pl : placed) {
        const auto &segments = agent_plans[pl.agent].solution.segments;
        lay_segment(pl.agent, segments[seg_index[pl.agent]]);
        steps[pl.step - 1][pl.agent] = pl.action;
        cursor[pl.agent] = pl.step;
        ++seg_index[pl.agent];
    }
    for (AgentId ag = 0; ag < n; ++ag)
        lay_segment(ag, agent_plans[ag].solution.segments.back());

    return Plan(n, std::move(steps));
}

PlanResult ma_plan(const Problem &p, const State &init, const GoalForm &goal,
                   const Limits &limits) {
    auto start = std::chrono::steady_clock::now();
    PublicInfo pub = classify_public(p);
    InternalCache cache;
    PlanResult result;

    for (int delta = 0; delta <= limits.max_delta; ++delta) {
        CoordinationCsp csp = build_csp(p, pub, init, goal, delta);
        CspResult r = solve_discsp(csp, limits, cache, limits.record_messages);
        result.ledger.add(r.ledger);
        result.stats.add(r.stats);
        result.budget_hit = result.budget_hit || r.budget_hit;
        if (limits.record_messages)
            result.message_trace.insert(result.message_trace.end(), r.trace.begin(),
                                        r.trace.end());
        if (r.status == CspStatus::BudgetExceeded) {
            result.status = PlanStatus::LimitExceeded;
            break;
        }
        if (r.status == CspStatus::Satisfiable) {
            result.plan = assemble(csp, r.assignment, r.agent_plans);
            result.delta_used = delta;
            result.trace_index = r.assignment.trace_index;
            result.status = PlanStatus::Solved;
            State final_state = State(csp.init_terms);
            for (int k = 1; k <= result.plan.length(); ++k) {
                final_state = apply_joint(p, final_state, result.plan.step(k));
                if (!final_state.defined())
                    throw std::logic_error("ma_plan: assembled plan is infeasible");
            }
            if (!csp.goal_holds(final_state.terms()))
                throw std::logic_error("ma_plan: assembled plan misses the goal");
            break;
        }
    }
    if (result.status == PlanStatus::Unsolvable && result.budget_hit)
        result.status = PlanStatus::LimitExceeded;  // cannot certify unsolvability

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

PlanResult ma_plan(const Problem &p, const Limits &limits) {
    return ma_plan(p, p.init, GoalForm::terms(p.goal), limits);
}

}  // namespace maplan
