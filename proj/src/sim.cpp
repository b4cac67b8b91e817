#include "maplan/sim.hpp"

#include <json.hpp>

#include <sstream>

namespace maplan {

const char *to_string(FailureKind k) {
    switch (k) {
    case FailureKind::None: return "none";
    case FailureKind::ActionFailure: return "action";
    case FailureKind::StatePerturbation: return "perturb";
    }
    return "?";
}

std::optional<FailureKind> failure_kind_from(const std::string &name) {
    if (name == "none")
        return FailureKind::None;
    if (name == "action")
        return FailureKind::ActionFailure;
    if (name == "perturb")
        return FailureKind::StatePerturbation;
    return std::nullopt;
}

const char *to_string(EpisodeTermination t) {
    switch (t) {
    case EpisodeTermination::Goal: return "goal";
    case EpisodeTermination::Unsolvable: return "unsolvable";
    case EpisodeTermination::Irreparable: return "irreparable";
    case EpisodeTermination::LimitExceeded: return "limit";
    case EpisodeTermination::StepLimit: return "step-limit";
    }
    return "?";
}

std::pair<State, std::optional<InjectedFailure>> execute_fail(const Problem &p,
                                                              const State &s,
                                                              const JointAction &j,
                                                              const FailureModel &model,
                                                              Rng &rng) {
    if (model.kind == FailureKind::None || rng.uniform01() >= model.p)
        return {apply_joint(p, s, j), std::nullopt};

    if (model.kind == FailureKind::ActionFailure) {
        std::vector<int> candidates;
        for (int ag = 0; ag < p.agent_count(); ++ag)
            if (j[ag] != kEpsilon)
                candidates.push_back(ag);
        if (candidates.empty())
            return {apply_joint(p, s, j), std::nullopt};
        JointAction modified = j;
        InjectedFailure failure{FailureKind::ActionFailure, kNoAgent};
        int drops = std::min<int>(model.max_drops, static_cast<int>(candidates.size()));
        for (int d = 0; d < drops; ++d) {
            int pick = rng.below_int(static_cast<int>(candidates.size()));
            int agent = candidates[pick];
            candidates.erase(candidates.begin() + pick);
            modified[agent] = kEpsilon;
            if (failure.dropped_agent == kNoAgent)
                failure.dropped_agent = agent;
        }
        return {apply_joint(p, s, modified), failure};
    }

    // State perturbation: apply, then remove c present terms and add c terms
    // drawn from the whole language, restoring consistency on each insertion.
    State applied = apply_joint(p, s, j);
    TermSet terms = applied.terms();
    for (int r = 0; r < model.c; ++r) {
        auto present = terms.terms();
        if (present.empty())
            break;
        terms.erase(present[rng.below_int(static_cast<int>(present.size()))]);
    }
    for (int r = 0; r < model.c; ++r) {
        uint64_t pick = rng.below(2 * p.atom_count());
        Term t(static_cast<AtomId>(pick >> 1), (pick & 1) != 0);
        terms.erase(t.negate());
        terms.insert(t);
    }
    return {State(std::move(terms)), InjectedFailure{FailureKind::StatePerturbation}};
}

EpisodeReport run_episode(const Problem &p, RepairStrategy strategy,
                          const FailureModel &model, const Limits &limits, uint64_t seed) {
    EpisodeReport report;
    report.seed = seed;
    report.strategy = strategy;
    report.model = model;
    Rng rng(seed);

    PlanResult initial = ma_plan(p, limits);
    report.messages.add(initial.ledger);
    report.expansions += initial.stats.expansions;
    report.planning_wall_seconds += initial.wall_seconds;
    report.call_ledgers.push_back(initial.ledger);
    if (initial.status != PlanStatus::Solved) {
        report.termination = initial.status == PlanStatus::Unsolvable
                                 ? EpisodeTermination::Unsolvable
                                 : EpisodeTermination::LimitExceeded;
        return report;
    }

    Plan plan = initial.plan;
    State adoption_state = p.init;
    State s = p.init;
    int step = 1;
    const int step_limit = limits.step_limit_factor * plan.length() + limits.step_limit_base;

    RepeatedLazySession session(p, plan);

    auto invoke_repair = [&](int k) -> bool {
        RepairProblem rp = make_repair_problem(p, plan, adoption_state, s, k);
        RepairOutcome out;
        switch (strategy) {
        case RepairStrategy::Replan: out = replan(rp, limits); break;
        case RepairStrategy::BackOnTrack: out = back_on_track(rp, limits); break;
        case RepairStrategy::SimpleLazy: out = simple_lazy(rp, limits); break;
        case RepairStrategy::RepeatedLazy: out = session.repair(rp, limits); break;
        }
        report.messages.add(out.ledger);
        report.expansions += out.stats.expansions;
        report.planning_wall_seconds += out.wall_seconds;
        report.call_ledgers.push_back(out.ledger);
        report.repair_events.push_back(RepairEvent{k, out.status, out.fallback_replan,
                                                   out.ledger, out.stats.expansions});
        if (out.status != RepairStatus::Repaired) {
            report.termination = out.status == RepairStatus::Irreparable
                                     ? EpisodeTermination::Irreparable
                                     : EpisodeTermination::LimitExceeded;
            return false;
        }
        plan = std::move(out.plan);
        adoption_state = s;
        step = 1;
        return true;
    };

    for (;;) {
        if (step > plan.length()) {
            if (p.goal.is_subset_of(s.terms())) {
                report.reached_goal = true;
                report.termination = EpisodeTermination::Goal;
                return report;
            }
            // The plan ran out short of the goal: handle it like a strong
            // failure one step past the end.
            if (!invoke_repair(plan.length() + 1))
                return report;
            continue;
        }
        const JointAction &joint = plan.step(step);
        bool all_idle = true;
        for (ActionId a : joint)
            if (a != kEpsilon)
                all_idle = false;
        if (all_idle) {
            // Nobody acts: nothing is executed, so no failure can occur.
            ++step;
            continue;
        }
        if (!joint_pre(p, joint).is_subset_of(s.terms())) {
            if (!invoke_repair(step))
                return report;
            continue;
        }
        if (report.execution_length >= step_limit) {
            report.termination = EpisodeTermination::StepLimit;
            return report;
        }
        TermSet expected_eff = joint_eff(p, joint);
        auto [next, injected] = execute_fail(p, s, joint, model, rng);
        ++report.execution_length;
        s = next;
        if (!expected_eff.is_subset_of(s.terms()))
            ++report.weak_failures;
        ++step;
    }
}

std::string episode_csv_header(bool timings) {
    std::string h =
        "seed,strategy,failure,p,c,reached_goal,termination,execution_length,"
        "messages_total,propose,backtrack,broadcast,expansions,repairs,weak_failures";
    if (timings)
        h += ",wall_ms";
    return h + "\n";
}

std::string episode_csv_row(const EpisodeReport &r, bool timings) {
    std::ostringstream out;
    out << r.seed << ',' << to_string(r.strategy) << ',' << to_string(r.model.kind) << ','
        << r.model.p << ',' << r.model.c << ',' << (r.reached_goal ? 1 : 0) << ','
        << to_string(r.termination) << ',' << r.execution_length << ','
        << r.messages.total() << ',' << r.messages.propose << ',' << r.messages.backtrack
        << ',' << r.messages.broadcast << ',' << r.expansions << ','
        << r.repair_events.size() << ',' << r.weak_failures;
    if (timings)
        out << ',' << static_cast<long long>(r.planning_wall_seconds * 1000.0);
    out << '\n';
    return out.str();
}

std::string episode_detail_json(const EpisodeReport &r) {
    std::ostringstream out;
    for (const RepairEvent &ev : r.repair_events) {
        nlohmann::json j;
        j["step"] = ev.step;
        j["status"] = ev.status == RepairStatus::Repaired     ? "repaired"
                      : ev.status == RepairStatus::Irreparable ? "irreparable"
                                                               : "limit";
        j["fallback_replan"] = ev.fallback_replan;
        j["messages"] = {{"total", ev.ledger.total()},
                         {"propose", ev.ledger.propose},
                         {"backtrack", ev.ledger.backtrack},
                         {"broadcast", ev.ledger.broadcast}};
        j["expansions"] = ev.expansions;
        out << j.dump() << '\n';
    }
    return out.str();
}

}  // namespace maplan
