#include "maplan/csp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace maplan {

std::string message_trace_csv(const std::vector<MessageRecord> &trace) {
    std::ostringstream out;
    out << "kind,from,to,step\n";
    for (const MessageRecord &m : trace) {
        const char *kind = m.kind == MessageKind::Propose ? "propose"
                           : m.kind == MessageKind::Backtrack ? "backtrack"
                                                              : "broadcast";
        out << kind << ',' << m.from << ',' << m.to << ',' << m.step << '\n';
    }
    return out.str();
}

TermSet CoordinationCsp::share_for(AgentId agent, int trace_index) const {
    const TermSet &source =
        trace_index >= 0 ? goal.alternatives[trace_index] : goal.conjunctive;
    TermSet share(problem->atom_count());
    for (Term t : source.terms())
        if (!pub.public_atoms.test(t.atom) && pub.atom_owner[t.atom] == agent)
            share.insert(t);
    return share;
}

std::vector<Term> CoordinationCsp::gs_terms_for(int trace_index) const {
    if (trace_index < 0)
        return gs_terms;
    std::vector<Term> out;
    for (Term t : goal.alternatives[trace_index].terms())
        if (pub.public_atoms.test(t.atom))
            out.push_back(t);
    return out;
}

AgentId CoordinationCsp::owner_of_term(Term t) const {
    return highest_mentioner_[t.atom];
}

bool CoordinationCsp::goal_holds(const TermSet &state) const {
    if (!goal.disjunctive)
        return goal.conjunctive.is_subset_of(state);
    for (const TermSet &alt : goal.alternatives)
        if (alt.is_subset_of(state))
            return true;
    return false;
}

CoordinationCsp build_csp(const Problem &p, const PublicInfo &pub, const State &init,
                          const GoalForm &goal, int delta) {
    if (delta < 0)
        throw std::invalid_argument("build_csp: delta must be nonnegative");
    if (!init.defined())
        throw std::invalid_argument("build_csp: undefined initial state");
    CoordinationCsp csp;
    csp.problem = &p;
    csp.pub = pub;
    csp.init_terms = init.terms();
    csp.goal = goal;
    csp.delta = delta;

    for (AgentId a = 0; a < p.agent_count(); ++a)
        for (ActionId id : p.agents[a].actions)
            if (pub.public_action[id])
                csp.slot_options.push_back(CspOption{a, id});
    csp.slot_options.push_back(CspOption{0, kEpsilon});  // no-op marker

    csp.highest_mentioner_.assign(p.atom_count(), kNoAgent);
    for (ActionId id = 1; id < p.actions.size(); ++id) {
        const GroundAction &act = p.action(id);
        auto atoms = act.pre.atoms() | act.eff.atoms();
        for (size_t atom = atoms.find_first(); atom != boost::dynamic_bitset<>::npos;
             atom = atoms.find_next(atom))
            csp.highest_mentioner_[atom] = std::max(csp.highest_mentioner_[atom], act.agent);
    }

    csp.goal_shares.assign(p.agent_count(), TermSet(p.atom_count()));
    if (!goal.disjunctive) {
        for (Term t : goal.conjunctive.terms()) {
            if (pub.public_atoms.test(t.atom)) {
                csp.gs_terms.push_back(t);
                csp.gs_owners.push_back(csp.highest_mentioner_[t.atom]);
            } else if (pub.atom_owner[t.atom] != kNoAgent) {
                csp.goal_shares[pub.atom_owner[t.atom]].insert(t);
            } else if (!csp.init_terms.contains(t)) {
                // No action mentions the atom, so no plan can establish it.
                csp.statically_unsat = true;
            }
        }
    } else {
        // Viable alternatives: orphan terms must already hold and the
        // positive terms must be relaxed-reachable. Ordered by global
        // relaxed distance, later trace states preferred on ties.
        std::vector<ActionId> all_actions;
        for (ActionId id = 1; id < p.actions.size(); ++id)
            all_actions.push_back(id);
        std::vector<std::pair<int, int>> ranked;  // (h, -j)
        for (int j = 0; j < static_cast<int>(goal.alternatives.size()); ++j) {
            const TermSet &alt = goal.alternatives[j];
            bool viable = true;
            for (Term t : alt.terms())
                if (!pub.public_atoms.test(t.atom) && pub.atom_owner[t.atom] == kNoAgent &&
                    !csp.init_terms.contains(t)) {
                    viable = false;
                    break;
                }
            if (!viable)
                continue;
            int h = h_add(p, all_actions, csp.init_terms, alt);
            if (h >= kInfiniteCost)
                continue;
            ranked.emplace_back(h, -j);
        }
        std::sort(ranked.begin(), ranked.end());
        for (auto [h, negj] : ranked)
            csp.alt_order.push_back(-negj);
        if (csp.alt_order.empty())
            csp.statically_unsat = true;
    }
    return csp;
}

CoordinationCsp build_csp(const Problem &p, int delta) {
    return build_csp(p, classify_public(p), p.init, GoalForm::terms(p.goal), delta);
}

namespace {

// Backward support scan: does `term` hold right before (0-based) slot
// `upto` given the filled slots so far?
bool term_supported(const CoordinationCsp &csp,
                    const std::vector<std::optional<SlotFill>> &slots, int upto, Term term) {
    for (int k = upto - 1; k >= 0; --k) {
        if (!slots[k])
            continue;
        const TermSet &eff = csp.problem->action(slots[k]->action).eff;
        if (eff.contains(term))
            return true;
        if (eff.contains(term.negate()))
            return false;
    }
    return csp.init_terms.contains(term);
}

std::optional<Term> slot_unsupported_term(const CoordinationCsp &csp,
                                          const std::vector<std::optional<SlotFill>> &slots,
                                          int index, ActionId action) {
    if (action == kEpsilon)
        return std::nullopt;
    for (Term t : csp.problem->action(action).pre.terms())
        if (csp.pub.public_atoms.test(t.atom) && !term_supported(csp, slots, index, t))
            return t;
    return std::nullopt;
}

bool gs_option_valid(const CoordinationCsp &csp,
                     const std::vector<std::optional<SlotFill>> &slots, Term term,
                     int supporter) {
    if (supporter == 0) {
        if (!csp.init_terms.contains(term))
            return false;
        for (const auto &slot : slots)
            if (slot && csp.problem->action(slot->action).eff.contains(term.negate()))
                return false;
        return true;
    }
    const auto &slot = slots[supporter - 1];
    if (!slot || !csp.problem->action(slot->action).eff.contains(term))
        return false;
    for (size_t k = supporter; k < slots.size(); ++k)
        if (slots[k] && csp.problem->action(slots[k]->action).eff.contains(term.negate()))
            return false;
    return true;
}

std::vector<ActionId> landmarks_for(const std::vector<std::optional<SlotFill>> &slots,
                                    AgentId agent) {
    std::vector<ActionId> lms;
    for (const auto &slot : slots)
        if (slot && slot->agent == agent)
            lms.push_back(slot->action);
    return lms;
}

std::optional<InternalViolation> internal_violation(
    const CoordinationCsp &csp, const std::vector<std::optional<SlotFill>> &slots,
    int trace_index, const Limits &limits, InternalCache &cache, SearchStats &stats,
    bool *budget_hit) {
    for (AgentId agent = 0; agent < csp.problem->agent_count(); ++agent) {
        const LocalResult &res = cache.get(csp, agent, landmarks_for(slots, agent),
                                           trace_index, limits.leg_budget, stats);
        if (res.status != LocalStatus::Solved) {
            bool budget = res.status == LocalStatus::BudgetExceeded;
            if (budget && budget_hit)
                *budget_hit = true;
            return InternalViolation{agent, budget};
        }
    }
    return std::nullopt;
}

// Synchronous backtracking over the ordered variable list. The current
// partial assignment is "held" by one agent at a time; each transfer to a
// different agent costs one message (Propose moving forward, Backtrack when
// unwinding a dead end). Constraint evaluation happens at the holder and is
// free, as is the memoized internal-planning computation.
struct Walker {
    const CoordinationCsp &csp;
    const Limits &limits;
    InternalCache &cache;
    bool record;
    const std::function<void(const Assignment &)> *enumerate_cb;

    CspResult result;
    AgentId holder = 0;
    uint64_t attempts = 0;

    int base() const { return csp.goal.disjunctive ? 1 : 0; }
    int n() const { return csp.problem->agent_count(); }

    std::vector<std::optional<SlotFill>> slots;
    int trace_index = -1;
    std::vector<Term> gs_terms;
    std::vector<int> gs_choice;

    Walker(const CoordinationCsp &c, const Limits &l, InternalCache &ch, bool rec,
           const std::function<void(const Assignment &)> *cb)
        : csp(c), limits(l), cache(ch), record(rec), enumerate_cb(cb) {
        slots.assign(csp.delta, std::nullopt);
        if (!csp.goal.disjunctive)
            gs_terms = csp.gs_terms;
        gs_choice.assign(gs_terms.size(), -1);
    }

    void transfer(AgentId to, MessageKind kind) {
        if (to != holder) {
            if (kind == MessageKind::Propose)
                ++result.ledger.propose;
            else
                ++result.ledger.backtrack;
            if (record)
                result.trace.push_back(MessageRecord{kind, holder, to, attempts});
            holder = to;
        }
    }

    int var_count() const { return base() + csp.delta + static_cast<int>(gs_terms.size()); }

    int option_count(int pos) const {
        if (csp.goal.disjunctive && pos == 0)
            return static_cast<int>(csp.alt_order.size());
        if (pos < base() + csp.delta)
            return static_cast<int>(csp.slot_options.size());
        return csp.delta + 1;  // supporters: slots delta..1, then init
    }

    AgentId option_owner(int pos, int cursor) const {
        if (csp.goal.disjunctive && pos == 0)
            return 0;
        if (pos < base() + csp.delta)
            return csp.slot_options[cursor].owner;
        return csp.owner_of_term(gs_terms[pos - base() - csp.delta]);
    }

    AgentId assigned_owner(int pos) const {
        if (csp.goal.disjunctive && pos == 0)
            return 0;
        if (pos < base() + csp.delta) {
            const auto &slot = slots[pos - base()];
            return slot ? slot->agent : 0;
        }
        return csp.owner_of_term(gs_terms[pos - base() - csp.delta]);
    }

    // Tries option `cursor` at variable `pos`; assigns it when consistent.
    bool try_option(int pos, int cursor) {
        if (csp.goal.disjunctive && pos == 0) {
            trace_index = csp.alt_order[cursor];
            gs_terms = csp.gs_terms_for(trace_index);
            gs_choice.assign(gs_terms.size(), -1);
            if (csp.delta == 0 &&
                internal_violation(csp, slots, trace_index, limits, cache, result.stats,
                                   &result.budget_hit))
                return false;
            return true;
        }
        if (pos < base() + csp.delta) {
            int s = pos - base();
            const CspOption &opt = csp.slot_options[cursor];
            // Unused slots trail: a real action may not follow a no-op.
            if (opt.action != kEpsilon && s > 0 && !slots[s - 1])
                return false;
            if (slot_unsupported_term(csp, slots, s, opt.action))
                return false;
            slots[s] = opt.action == kEpsilon ? std::nullopt
                                              : std::optional<SlotFill>(SlotFill{
                                                    opt.owner, opt.action});
            if (s + 1 == csp.delta) {
                if (internal_violation(csp, slots, trace_index, limits, cache,
                                       result.stats, &result.budget_hit)) {
                    slots[s] = std::nullopt;
                    return false;
                }
            } else if (opt.action != kEpsilon) {
                // The owner's landmark chain so far must itself be locally
                // executable; committed legs make this prune sound.
                const LocalResult &res =
                    cache.get(csp, opt.owner, landmarks_for(slots, opt.owner),
                              trace_index, limits.leg_budget, result.stats, true);
                if (res.status != LocalStatus::Solved) {
                    if (res.status == LocalStatus::BudgetExceeded)
                        result.budget_hit = true;
                    slots[s] = std::nullopt;
                    return false;
                }
            }
            return true;
        }
        int g = pos - base() - csp.delta;
        int supporter = cursor < csp.delta ? csp.delta - cursor : 0;
        if (!gs_option_valid(csp, slots, gs_terms[g], supporter))
            return false;
        gs_choice[g] = supporter;
        return true;
    }

    void unassign(int pos) {
        if (csp.goal.disjunctive && pos == 0) {
            trace_index = -1;
            if (csp.delta == 0) {
                gs_terms.clear();
                gs_choice.clear();
            }
            return;
        }
        if (pos < base() + csp.delta) {
            slots[pos - base()] = std::nullopt;
            return;
        }
        gs_choice[pos - base() - csp.delta] = -1;
    }

    Assignment snapshot() const {
        Assignment a;
        a.slots = slots;
        a.trace_index = trace_index;
        for (size_t g = 0; g < gs_terms.size(); ++g)
            a.goal_support.emplace_back(gs_terms[g], gs_choice[g]);
        return a;
    }

    // The solution is announced only when solving it actually spanned
    // agents: some variable of the solved CSP belongs to an agent other
    // than the first. A solve whose variables are all the first agent's
    // (or that had no variables at all) completes without communication.
    bool multi_agent_vars() const {
        for (const auto &slot : slots)
            if (slot && slot->agent != 0)
                return true;
        for (size_t g = 0; g < gs_terms.size(); ++g)
            if (csp.owner_of_term(gs_terms[g]) != 0)
                return true;
        return false;
    }

    void finish_solution() {
        result.status = CspStatus::Satisfiable;
        result.assignment = snapshot();
        if (multi_agent_vars() && n() >= 2) {
            result.ledger.broadcast += n() - 1;
            if (record)
                for (AgentId to = 0; to < n(); ++to)
                    if (to != holder)
                        result.trace.push_back(
                            MessageRecord{MessageKind::SolutionBroadcast, holder, to, attempts});
        }
        for (AgentId agent = 0; agent < n(); ++agent)
            result.agent_plans.push_back(cache.get(csp, agent,
                                                   landmarks_for(slots, agent), trace_index,
                                                   limits.leg_budget, result.stats));
    }

    void run() {
        if (csp.statically_unsat) {
            result.status = CspStatus::Unsatisfiable;
            return;
        }
        // With no slot variable to anchor it, the internal constraint of a
        // conjunctive level is checked up front; each agent discovers its
        // own part locally, so no messages arise.
        if (!csp.goal.disjunctive && csp.delta == 0) {
            if (internal_violation(csp, slots, -1, limits, cache, result.stats,
                                   &result.budget_hit)) {
                result.status = CspStatus::Unsatisfiable;
                return;
            }
            if (gs_terms.empty()) {
                if (enumerate_cb)
                    (*enumerate_cb)(snapshot());
                finish_solution();
                return;
            }
        }

        std::vector<int> cursors(1, 0);
        int pos = 0;
        while (true) {
            if (pos < 0) {
                result.status = CspStatus::Unsatisfiable;
                return;
            }
            if (cursors[pos] >= option_count(pos)) {
                // Dead end: hand the partial assignment back to the owner
                // of the previous variable's current value.
                --pos;
                cursors.pop_back();
                if (pos >= 0) {
                    transfer(assigned_owner(pos), MessageKind::Backtrack);
                    unassign(pos);
                }
                continue;
            }
            int cursor = cursors[pos]++;
            if (++attempts > limits.csp_budget) {
                result.status = CspStatus::BudgetExceeded;
                return;
            }
            transfer(option_owner(pos, cursor), MessageKind::Propose);
            if (!try_option(pos, cursor))
                continue;
            if (pos + 1 == var_count()) {
                if (enumerate_cb) {
                    (*enumerate_cb)(snapshot());
                    unassign(pos);
                    continue;
                }
                finish_solution();
                return;
            }
            ++pos;
            cursors.push_back(0);
        }
    }
};

}  // namespace

std::optional<CoordViolation> check_coordination(const CoordinationCsp &csp,
                                                 const Assignment &a) {
    for (int s = 0; s < static_cast<int>(a.slots.size()); ++s) {
        if (!a.slots[s])
            continue;
        if (auto t = slot_unsupported_term(csp, a.slots, s, a.slots[s]->action))
            return CoordViolation{*t, s + 1};
    }
    return std::nullopt;
}

const LocalResult &InternalCache::get(const CoordinationCsp &csp, AgentId agent,
                                      const std::vector<ActionId> &landmarks,
                                      int trace_index, uint64_t leg_budget,
                                      SearchStats &run_stats, bool prefix_only) {
    Key key{agent, prefix_only ? -1 : trace_index, prefix_only, landmarks};
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    TermSet share = prefix_only ? TermSet(csp.problem->atom_count())
                                : csp.share_for(agent, trace_index);
    LocalProblem lp = make_local_problem(*csp.problem, csp.pub, agent, landmarks,
                                         std::move(share), State(csp.init_terms));
    LocalResult res = solve_local(lp, leg_budget);
    run_stats.add(res.stats);
    return cache_.emplace(std::move(key), std::move(res)).first->second;
}

std::optional<InternalViolation> check_internal(const CoordinationCsp &csp,
                                                const Assignment &a, const Limits &limits,
                                                InternalCache &cache,
                                                SearchStats &run_stats) {
    return internal_violation(csp, a.slots, a.trace_index, limits, cache, run_stats,
                              nullptr);
}

CspResult solve_discsp(const CoordinationCsp &csp, const Limits &limits,
                       InternalCache &cache, bool record_trace) {
    Walker w(csp, limits, cache, record_trace, nullptr);
    w.run();
    return std::move(w.result);
}

void solve_discsp_enumerate(const CoordinationCsp &csp, const Limits &limits,
                            InternalCache &cache,
                            const std::function<void(const Assignment &)> &on_solution) {
    Walker w(csp, limits, cache, false, &on_solution);
    w.run();
}

}  // namespace maplan
