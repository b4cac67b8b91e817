#include "maplan/repair.hpp"

#include <chrono>
#include <stdexcept>

namespace maplan {

const char *to_string(RepairStrategy s) {
    switch (s) {
    case RepairStrategy::Replan: return "replan";
    case RepairStrategy::BackOnTrack: return "bot";
    case RepairStrategy::SimpleLazy: return "lazy";
    case RepairStrategy::RepeatedLazy: return "repeated-lazy";
    }
    return "?";
}

std::optional<RepairStrategy> repair_strategy_from(const std::string &name) {
    if (name == "replan")
        return RepairStrategy::Replan;
    if (name == "bot")
        return RepairStrategy::BackOnTrack;
    if (name == "lazy")
        return RepairStrategy::SimpleLazy;
    if (name == "repeated-lazy")
        return RepairStrategy::RepeatedLazy;
    return std::nullopt;
}

RepairProblem make_repair_problem(const Problem &p, const Plan &plan,
                                  const State &adoption_state, const State &failed_state,
                                  int failed_step) {
    if (failed_step < 1 || failed_step > plan.length() + 1)
        throw std::invalid_argument("make_repair_problem: failed step out of range");
    if (!failed_state.defined())
        throw std::invalid_argument("make_repair_problem: undefined failed state");
    RepairProblem rp;
    rp.problem = &p;
    rp.plan = plan;
    rp.trace = nominal_trace(p, adoption_state, plan);
    rp.failed_state = failed_state;
    rp.failed_step = failed_step;
    return rp;
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void absorb(RepairOutcome &out, const PlanResult &r) {
    out.ledger.add(r.ledger);
    out.stats.add(r.stats);
    out.delta_used = r.delta_used;
}

}  // namespace

RepairOutcome replan(const RepairProblem &rp, const Limits &limits) {
    Timer timer;
    RepairOutcome out;
    out.strategy = RepairStrategy::Replan;
    PlanResult r = ma_plan(*rp.problem, rp.failed_state,
                           GoalForm::terms(rp.problem->goal), limits);
    absorb(out, r);
    switch (r.status) {
    case PlanStatus::Solved:
        out.status = RepairStatus::Repaired;
        out.plan = std::move(r.plan);
        break;
    case PlanStatus::Unsolvable:
        out.status = RepairStatus::Irreparable;
        break;
    case PlanStatus::LimitExceeded:
        out.status = RepairStatus::LimitExceeded;
        break;
    }
    out.wall_seconds = timer.elapsed();
    return out;
}

RepairOutcome back_on_track(const RepairProblem &rp, const Limits &limits) {
    Timer timer;
    RepairOutcome out;
    out.strategy = RepairStrategy::BackOnTrack;
    const Problem &p = *rp.problem;
    int m = static_cast<int>(rp.trace.size()) - 1;

    // Already on track: reuse the latest suffix without any planning.
    for (int j = m; j >= 0; --j) {
        if (rp.trace[j].terms().is_subset_of(rp.failed_state.terms())) {
            out.status = RepairStatus::Repaired;
            out.plan = suffix(rp.plan, j + 1);
            out.suffix_start = j + 1;
            out.wall_seconds = timer.elapsed();
            return out;
        }
    }

    std::vector<TermSet> alternatives;
    alternatives.reserve(rp.trace.size());
    for (const State &s : rp.trace)
        alternatives.push_back(s.terms());
    PlanResult r =
        ma_plan(p, rp.failed_state, GoalForm::any_of(std::move(alternatives)), limits);
    absorb(out, r);
    if (r.status == PlanStatus::Solved) {
        out.status = RepairStatus::Repaired;
        out.suffix_start = r.trace_index + 1;
        out.plan = concat(r.plan, suffix(rp.plan, r.trace_index + 1));
        out.wall_seconds = timer.elapsed();
        return out;
    }
    if (r.status == PlanStatus::LimitExceeded) {
        out.status = RepairStatus::LimitExceeded;
        out.wall_seconds = timer.elapsed();
        return out;
    }

    // No trace state is reachable; any plan solving (A, s_f, S_g) is still a
    // (non-proper) back-on-track repair, so fall back to replanning.
    PlanResult rr = ma_plan(p, rp.failed_state, GoalForm::terms(p.goal), limits);
    out.ledger.add(rr.ledger);
    out.stats.add(rr.stats);
    out.delta_used = rr.delta_used;
    out.fallback_replan = true;
    switch (rr.status) {
    case PlanStatus::Solved:
        out.status = RepairStatus::Repaired;
        out.plan = std::move(rr.plan);
        break;
    case PlanStatus::Unsolvable:
        out.status = RepairStatus::Irreparable;
        break;
    case PlanStatus::LimitExceeded:
        out.status = RepairStatus::LimitExceeded;
        break;
    }
    out.wall_seconds = timer.elapsed();
    return out;
}

std::pair<Plan, State> executable_remainder(const Problem &p, const Plan &plan, int k,
                                            const State &s_f) {
    if (k < 1 || k > plan.length() + 1)
        throw std::invalid_argument("executable_remainder: step out of range");
    if (!s_f.defined())
        throw std::invalid_argument("executable_remainder: undefined state");
    Plan remainder(p.agent_count());
    State state = s_f;
    for (int i = k; i <= plan.length(); ++i) {
        JointAction kept(p.agent_count(), kEpsilon);
        for (int ag = 0; ag < p.agent_count(); ++ag) {
            ActionId part = plan.step(i)[ag];
            if (p.action(part).pre.is_subset_of(state.terms()))
                kept[ag] = part;
        }
        state = apply_joint(p, state, kept);
        if (!state.defined())
            throw std::logic_error("executable_remainder: rebuilt step inapplicable");
        remainder.push_step(std::move(kept));
    }
    return {std::move(remainder), std::move(state)};
}

RepairOutcome simple_lazy(const RepairProblem &rp, const Limits &limits) {
    Timer timer;
    RepairOutcome out;
    out.strategy = RepairStrategy::SimpleLazy;
    auto [remainder, s_lazy] =
        executable_remainder(*rp.problem, rp.plan, rp.failed_step, rp.failed_state);
    out.remainder_length = remainder.length();
    PlanResult r =
        ma_plan(*rp.problem, s_lazy, GoalForm::terms(rp.problem->goal), limits);
    absorb(out, r);
    switch (r.status) {
    case PlanStatus::Solved:
        out.status = RepairStatus::Repaired;
        out.plan = concat(remainder, r.plan);
        break;
    case PlanStatus::Unsolvable:
        // The remainder may have diverged beyond recovery; that is the
        // documented incompleteness of the lazy approach.
        out.status = RepairStatus::Irreparable;
        break;
    case PlanStatus::LimitExceeded:
        out.status = RepairStatus::LimitExceeded;
        break;
    }
    out.wall_seconds = timer.elapsed();
    return out;
}

RepairOutcome RepeatedLazySession::repair(const RepairProblem &rp, const Limits &limits) {
    RepairOutcome out;
    if (rp.failed_step <= remainder_boundary()) {
        // The failure hit the preserved remainder: discard the previous
        // repair suffix and repair the reference plan instead. The position
        // in the current plan is translated to its reference step, so the
        // preserved window advances with execution progress.
        int ref_step = base_ + rp.failed_step - 1;
        RepairProblem target = rp;
        target.plan = ref_plan_;
        target.failed_step = ref_step;
        out = simple_lazy(target, limits);
        if (out.status == RepairStatus::Repaired)
            base_ = ref_step;
    } else {
        out = simple_lazy(rp, limits);
        if (out.status == RepairStatus::Repaired) {
            ref_plan_ = rp.plan;
            base_ = rp.failed_step;
        }
    }
    out.strategy = RepairStrategy::RepeatedLazy;
    return out;
}

}  // namespace maplan
