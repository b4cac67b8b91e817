#include "maplan/local_planner.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace maplan {

int h_add(const Problem &p, const std::vector<ActionId> &actions, const TermSet &state,
          const TermSet &goal) {
    size_t atoms = p.atom_count();
    std::vector<int> cost(atoms, kInfiniteCost);
    const auto &pos = state.positives();
    for (size_t a = pos.find_first(); a != boost::dynamic_bitset<>::npos;
         a = pos.find_next(a))
        cost[a] = 0;

    // Bellman-Ford style fixpoint; the action set is small enough that the
    // quadratic loop is never the bottleneck.
    bool changed = true;
    while (changed) {
        changed = false;
        for (ActionId id : actions) {
            const GroundAction &act = p.action(id);
            long total = 1;
            const auto &need = act.pre.positives();
            for (size_t a = need.find_first(); a != boost::dynamic_bitset<>::npos;
                 a = need.find_next(a)) {
                total += cost[a];
                if (total >= kInfiniteCost) {
                    total = kInfiniteCost;
                    break;
                }
            }
            if (total >= kInfiniteCost)
                continue;
            const auto &adds = act.eff.positives();
            for (size_t a = adds.find_first(); a != boost::dynamic_bitset<>::npos;
                 a = adds.find_next(a)) {
                if (total < cost[a]) {
                    cost[a] = static_cast<int>(total);
                    changed = true;
                }
            }
        }
    }

    long h = 0;
    const auto &want = goal.positives();
    for (size_t a = want.find_first(); a != boost::dynamic_bitset<>::npos;
         a = want.find_next(a)) {
        if (cost[a] >= kInfiniteCost)
            return kInfiniteCost;
        h += cost[a];
    }
    return static_cast<int>(std::min<long>(h, kInfiniteCost));
}

LocalProblem make_local_problem(const Problem &p, const PublicInfo &pub, AgentId agent,
                                const std::vector<ActionId> &landmarks,
                                const TermSet &goal_share, const State &global_init) {
    LocalProblem lp;
    lp.problem = &p;
    lp.agent = agent;
    lp.landmarks = landmarks;
    lp.goal = goal_share;
    lp.scope.resize(p.atom_count());
    for (ActionId id : p.agents[agent].actions) {
        const GroundAction &act = p.action(id);
        lp.scope |= act.pre.atoms() | act.eff.atoms();
        if (!pub.public_action[id])
            lp.private_actions.push_back(id);
    }
    lp.public_atoms = pub.public_atoms;

    TermSet init(p.atom_count());
    for (Term t : global_init.terms().terms())
        if (lp.scope.test(t.atom))
            init.insert(t);
    lp.init = std::move(init);
    return lp;
}

namespace {

struct TermSetHash {
    size_t operator()(const TermSet &s) const { return s.hash(); }
};

struct SearchNode {
    TermSet state;
    int g = 0;
    int h = 0;
    uint64_t seq = 0;
    int parent = -1;
    ActionId via = kEpsilon;
};

struct NodeOrder {
    const std::vector<SearchNode> *nodes;
    // Min-heap on (g, h, seq): cost-ordered so each leg is shortest, h_add
    // breaking ties toward promising states, seq making the order total.
    bool operator()(int a, int b) const {
        const SearchNode &x = (*nodes)[a], &y = (*nodes)[b];
        if (x.g != y.g)
            return x.g > y.g;
        if (x.h != y.h)
            return x.h > y.h;
        return x.seq > y.seq;
    }
};

// Applies a landmark to the local state. Public precondition terms are
// granted (they are the coordination layer's obligation); private
// preconditions must already hold.
TermSet apply_landmark(const LocalProblem &lp, const TermSet &state, ActionId id) {
    const GroundAction &act = lp.problem->action(id);
    TermSet s = state;
    for (Term t : act.pre.terms())
        if (lp.public_atoms.test(t.atom)) {
            s.erase(t.negate());
            s.insert(t);
        }
    s.unite(act.eff);
    s.subtract(act.eff.negated());
    return s;
}

TermSet private_pre(const LocalProblem &lp, ActionId id) {
    TermSet s = lp.problem->action(id).pre;
    for (Term t : s.terms())
        if (lp.public_atoms.test(t.atom))
            s.erase(t);
    return s;
}

// Shortest private plan from `start` to a state satisfying `target`
// (subset test, negative terms included; h_add sees only the positives).
LocalStatus search_leg(const LocalProblem &lp, const TermSet &start, const TermSet &target,
                       uint64_t budget, SearchStats &stats,
                       std::vector<ActionId> &out_actions, TermSet &out_state) {
    const Problem &p = *lp.problem;
    std::vector<SearchNode> nodes;
    std::priority_queue<int, std::vector<int>, NodeOrder> open(NodeOrder{&nodes});
    std::unordered_set<TermSet, TermSetHash> closed;
    uint64_t seq = 0;

    int h0 = h_add(p, lp.private_actions, start, target);
    if (h0 >= kInfiniteCost)
        return LocalStatus::Unsolvable;
    nodes.push_back(SearchNode{start, 0, h0, seq++, -1, kEpsilon});
    open.push(0);
    uint64_t expansions = 0;

    while (!open.empty()) {
        int idx = open.top();
        open.pop();
        if (closed.count(nodes[idx].state))
            continue;
        if (target.is_subset_of(nodes[idx].state)) {
            std::vector<ActionId> path;
            for (int at = idx; nodes[at].parent >= 0; at = nodes[at].parent)
                path.push_back(nodes[at].via);
            std::reverse(path.begin(), path.end());
            out_actions = std::move(path);
            out_state = nodes[idx].state;
            stats.expansions += expansions;
            return LocalStatus::Solved;
        }
        closed.insert(nodes[idx].state);
        if (++expansions > budget) {
            stats.expansions += expansions;
            return LocalStatus::BudgetExceeded;
        }
        TermSet here = nodes[idx].state;
        int g = nodes[idx].g;
        for (ActionId a : lp.private_actions) {
            const GroundAction &act = p.action(a);
            if (!act.pre.is_subset_of(here))
                continue;
            TermSet succ = here;
            succ.unite(act.eff);
            succ.subtract(act.eff.negated());
            if (closed.count(succ))
                continue;
            int h = h_add(p, lp.private_actions, succ, target);
            if (h >= kInfiniteCost)
                continue;
            nodes.push_back(SearchNode{std::move(succ), g + 1, h, seq++, idx, a});
            open.push(static_cast<int>(nodes.size()) - 1);
            ++stats.generated;
        }
    }
    stats.expansions += expansions;
    return LocalStatus::Unsolvable;
}

}  // namespace

LocalResult solve_local(const LocalProblem &lp, uint64_t leg_budget) {
    LocalResult result;
    TermSet state = lp.init;
    for (size_t leg = 0; leg < lp.landmarks.size(); ++leg) {
        ActionId lm = lp.landmarks[leg];
        std::vector<ActionId> segment;
        TermSet reached;
        LocalStatus st = search_leg(lp, state, private_pre(lp, lm), leg_budget,
                                    result.stats, segment, reached);
        if (st != LocalStatus::Solved) {
            result.status = st;
            return result;
        }
        result.solution.segments.push_back(std::move(segment));
        state = apply_landmark(lp, reached, lm);
    }
    std::vector<ActionId> tail;
    TermSet final_state;
    LocalStatus st =
        search_leg(lp, state, lp.goal, leg_budget, result.stats, tail, final_state);
    if (st != LocalStatus::Solved) {
        result.status = st;
        result.solution.segments.clear();
        return result;
    }
    result.solution.segments.push_back(std::move(tail));
    result.solution.end_state = std::move(final_state);
    result.status = LocalStatus::Solved;
    return result;
}

}  // namespace maplan
