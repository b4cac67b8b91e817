#include "maplan/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace maplan {

std::vector<Term> TermSet::terms() const {
    std::vector<Term> out;
    for (size_t a = pos_.find_first(); a != boost::dynamic_bitset<>::npos;
         a = pos_.find_next(a))
        out.emplace_back(static_cast<AtomId>(a), false);
    for (size_t a = neg_.find_first(); a != boost::dynamic_bitset<>::npos;
         a = neg_.find_next(a))
        out.emplace_back(static_cast<AtomId>(a), true);
    std::sort(out.begin(), out.end());
    return out;
}

size_t TermSet::hash() const {
    size_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](const boost::dynamic_bitset<> &b) {
        std::vector<boost::dynamic_bitset<>::block_type> blocks(b.num_blocks());
        boost::to_block_range(b, blocks.begin());
        for (auto w : blocks)
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(pos_);
    mix(neg_);
    return h;
}

std::optional<ActionId> Problem::find_action(const std::string &label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<AtomId> Problem::find_atom(const std::string &name) const {
    auto it = atom_index_.find(name);
    if (it == atom_index_.end())
        return std::nullopt;
    return it->second;
}

void Problem::rebuild_indices() {
    label_index_.clear();
    atom_index_.clear();
    for (ActionId a = 0; a < actions.size(); ++a)
        label_index_[actions[a].label] = a;
    for (AtomId p = 0; p < atom_names.size(); ++p)
        atom_index_[atom_names[p]] = p;
}

ProblemBuilder::ProblemBuilder(std::string problem_name) {
    problem_.name = std::move(problem_name);
    GroundAction eps;
    eps.label = "eps";
    problem_.actions.push_back(eps);
}

AtomId ProblemBuilder::add_atom(const std::string &name) {
    if (problem_.find_atom(name))
        throw std::invalid_argument("duplicate atom: " + name);
    problem_.atom_names.push_back(name);
    problem_.rebuild_indices();
    return static_cast<AtomId>(problem_.atom_names.size() - 1);
}

AtomId ProblemBuilder::atom(const std::string &name) const {
    auto id = problem_.find_atom(name);
    if (!id)
        throw std::invalid_argument("unknown atom: " + name);
    return *id;
}

AgentId ProblemBuilder::add_agent(const std::string &name) {
    for (const auto &ag : problem_.agents)
        if (ag.name == name)
            throw std::invalid_argument("duplicate agent: " + name);
    problem_.agents.push_back(Agent{name, {}});
    return static_cast<AgentId>(problem_.agents.size() - 1);
}

namespace {
TermSet make_set(size_t atoms, const std::vector<Term> &terms, const char *what) {
    TermSet s(atoms);
    for (Term t : terms) {
        if (t.atom >= atoms)
            throw std::invalid_argument(std::string(what) + ": atom id out of range");
        s.insert(t);
    }
    if (!s.consistent())
        throw std::invalid_argument(std::string(what) + ": inconsistent term set");
    return s;
}
}  // namespace

ActionId ProblemBuilder::add_action(AgentId agent, const std::string &label,
                                    const std::vector<Term> &pre,
                                    const std::vector<Term> &eff) {
    if (agent < 0 || agent >= problem_.agent_count())
        throw std::invalid_argument("add_action: bad agent id");
    if (label == "eps" || problem_.find_action(label))
        throw std::invalid_argument("duplicate action label: " + label);
    GroundAction a;
    a.label = label;
    a.agent = agent;
    a.pre = make_set(problem_.atom_count(), pre, ("action " + label + " pre").c_str());
    a.eff = make_set(problem_.atom_count(), eff, ("action " + label + " eff").c_str());
    problem_.actions.push_back(std::move(a));
    ActionId id = static_cast<ActionId>(problem_.actions.size() - 1);
    problem_.agents[agent].actions.push_back(id);
    problem_.rebuild_indices();
    return id;
}

void ProblemBuilder::set_init(const std::vector<Term> &terms) {
    problem_.init = State(make_set(problem_.atom_count(), terms, "init"));
}

void ProblemBuilder::set_goal(const std::vector<Term> &terms) {
    problem_.goal = make_set(problem_.atom_count(), terms, "goal");
}

Problem ProblemBuilder::build() {
    if (built_)
        throw std::logic_error("ProblemBuilder::build called twice");
    built_ = true;
    if (!problem_.init.defined())
        problem_.init = State(TermSet(problem_.atom_count()));
    if (problem_.goal.universe_size() != problem_.atom_count())
        problem_.goal = TermSet(problem_.atom_count());
    // Epsilon's sets must match the universe width.
    problem_.actions[kEpsilon].pre = TermSet(problem_.atom_count());
    problem_.actions[kEpsilon].eff = TermSet(problem_.atom_count());
    problem_.rebuild_indices();
    return std::move(problem_);
}

State apply(const State &s, const GroundAction &a) {
    if (!s.defined())
        return State::undefined();
    if (!a.pre.is_subset_of(s.terms()))
        return State::undefined();
    TermSet r = s.terms();
    r.unite(a.eff);
    r.subtract(a.eff.negated());
    return State(std::move(r));
}

State apply(const Problem &p, const State &s, ActionId a) {
    return apply(s, p.action(a));
}

TermSet joint_pre(const Problem &p, const JointAction &j) {
    TermSet u = p.empty_terms();
    for (ActionId a : j)
        u.unite(p.action(a).pre);
    if (!u.consistent())
        throw std::invalid_argument("ill-formed joint action: inconsistent union preconditions");
    return u;
}

TermSet joint_eff(const Problem &p, const JointAction &j) {
    TermSet u = p.empty_terms();
    for (ActionId a : j)
        u.unite(p.action(a).eff);
    if (!u.consistent())
        throw std::invalid_argument("ill-formed joint action: inconsistent union effects");
    return u;
}

bool joint_well_formed(const Problem &p, const JointAction &j) {
    TermSet pre = p.empty_terms(), eff = p.empty_terms();
    for (ActionId a : j) {
        pre.unite(p.action(a).pre);
        eff.unite(p.action(a).eff);
    }
    return pre.consistent() && eff.consistent();
}

State apply_joint(const Problem &p, const State &s, const JointAction &j) {
    TermSet pre = joint_pre(p, j);
    TermSet eff = joint_eff(p, j);
    if (!s.defined())
        return State::undefined();
    if (!pre.is_subset_of(s.terms()))
        return State::undefined();
    TermSet r = s.terms();
    r.unite(eff);
    r.subtract(eff.negated());
    return State(std::move(r));
}

Plan concat(const Plan &a, const Plan &b) {
    if (a.agent_count() != b.agent_count())
        throw std::invalid_argument("concat: agent-count mismatch");
    std::vector<JointAction> steps = a.steps();
    steps.insert(steps.end(), b.steps().begin(), b.steps().end());
    return Plan(a.agent_count(), std::move(steps));
}

Plan fragment(const Plan &p, int i, int j) {
    if (i < 1 || j < i || j > p.length())
        throw std::out_of_range("fragment: indices out of range");
    std::vector<JointAction> steps(p.steps().begin() + (i - 1), p.steps().begin() + j);
    return Plan(p.agent_count(), std::move(steps));
}

Plan suffix(const Plan &p, int i) {
    if (i < 1)
        throw std::out_of_range("suffix: index out of range");
    if (i > p.length())
        return Plan(p.agent_count());
    return fragment(p, i, p.length());
}

Plan prefix(const Plan &p, int j) {
    if (j < 0 || j > p.length())
        throw std::out_of_range("prefix: index out of range");
    if (j == 0)
        return Plan(p.agent_count());
    return fragment(p, 1, j);
}

int plan_diff(const Plan &a, const Plan &b) {
    if (a.agent_count() != b.agent_count())
        throw std::invalid_argument("plan_diff: agent-count mismatch");
    int n = a.agent_count();
    int len = std::max(a.length(), b.length());
    int d = 0;
    for (int k = 1; k <= len; ++k) {
        for (int i = 0; i < n; ++i) {
            ActionId x = k <= a.length() ? a.step(k)[i] : kEpsilon;
            ActionId y = k <= b.length() ? b.step(k)[i] : kEpsilon;
            if (x != y)
                ++d;
        }
    }
    return d;
}

PublicInfo classify_public(const Problem &p) {
    size_t atoms = p.atom_count();
    PublicInfo info;
    info.public_action.assign(p.actions.size(), false);
    info.public_atoms.resize(atoms);
    info.atom_owner.assign(atoms, kNoAgent);

    // mentioned[i] = atoms occurring in agent i's actions (negation-stripped).
    std::vector<boost::dynamic_bitset<>> mentioned(p.agents.size(),
                                                   boost::dynamic_bitset<>(atoms));
    for (ActionId a = 1; a < p.actions.size(); ++a) {
        const GroundAction &act = p.actions[a];
        mentioned[act.agent] |= act.pre.atoms() | act.eff.atoms();
    }
    boost::dynamic_bitset<> seen(atoms), shared(atoms);
    for (const auto &m : mentioned) {
        shared |= seen & m;
        seen |= m;
    }
    info.public_atoms = shared;
    for (size_t atom = 0; atom < atoms; ++atom) {
        if (shared.test(atom))
            continue;
        for (AgentId i = 0; i < p.agent_count(); ++i)
            if (mentioned[i].test(atom)) {
                info.atom_owner[atom] = i;
                break;
            }
    }
    for (ActionId a = 1; a < p.actions.size(); ++a) {
        const GroundAction &act = p.actions[a];
        info.public_action[a] = (act.pre.atoms() | act.eff.atoms()).intersects(shared);
    }
    return info;
}

std::vector<ActionId> PublicInfo::public_actions() const {
    std::vector<ActionId> out;
    for (ActionId a = 0; a < public_action.size(); ++a)
        if (public_action[a])
            out.push_back(a);
    return out;
}

std::optional<Violation> validate_plan_from(const Problem &p, const State &from,
                                            const Plan &plan) {
    if (plan.agent_count() != p.agent_count())
        return Violation{ViolationKind::WellFormed, 0};
    for (int k = 1; k <= plan.length(); ++k) {
        const JointAction &j = plan.step(k);
        if (static_cast<int>(j.size()) != p.agent_count())
            return Violation{ViolationKind::WellFormed, k};
        for (int i = 0; i < p.agent_count(); ++i) {
            ActionId a = j[i];
            if (a >= p.actions.size())
                return Violation{ViolationKind::WellFormed, k};
            if (a != kEpsilon && p.action(a).agent != i)
                return Violation{ViolationKind::WellFormed, k};
        }
    }
    State s = from;
    for (int k = 1; k <= plan.length(); ++k) {
        if (!joint_well_formed(p, plan.step(k)))
            return Violation{ViolationKind::Feasibility, k};
        s = apply_joint(p, s, plan.step(k));
        if (!s.defined())
            return Violation{ViolationKind::Feasibility, k};
    }
    if (!p.goal.is_subset_of(s.terms()))
        return Violation{ViolationKind::Goal, plan.length()};
    return std::nullopt;
}

std::optional<Violation> validate_plan(const Problem &p, const Plan &plan) {
    return validate_plan_from(p, p.init, plan);
}

std::vector<State> nominal_trace(const Problem &p, const State &from, const Plan &plan) {
    std::vector<State> trace;
    trace.reserve(plan.length() + 1);
    trace.push_back(from);
    for (int k = 1; k <= plan.length(); ++k) {
        trace.push_back(apply_joint(p, trace.back(), plan.step(k)));
        if (!trace.back().defined())
            throw std::logic_error("nominal_trace: plan is infeasible at step " +
                                   std::to_string(k));
    }
    return trace;
}

std::optional<int> min_coordination_k(const Plan &plan,
                                      const std::vector<bool> &public_action) {
    bool any = false;
    int longest_gap = 0, gap = 0;
    for (int k = 1; k <= plan.length(); ++k) {
        bool has_public = false;
        for (ActionId a : plan.step(k))
            if (a < public_action.size() && public_action[a])
                has_public = true;
        if (has_public) {
            any = true;
            gap = 0;
        } else {
            ++gap;
            longest_gap = std::max(longest_gap, gap);
        }
    }
    if (!any)
        return std::nullopt;
    return longest_gap + 1;
}

bool is_compressible(const Problem &p, const Plan &plan, int max_len) {
    if (plan.length() > max_len)
        throw std::invalid_argument("is_compressible: plan exceeds the oracle size bound");
    if (validate_plan(p, plan))
        throw std::invalid_argument("is_compressible: plan does not solve the problem");
    for (int i = 1; i <= plan.length(); ++i) {
        for (int j = i; j <= plan.length(); ++j) {
            Plan shorter = concat(prefix(plan, i - 1), suffix(plan, j + 1));
            if (!validate_plan(p, shorter))
                return true;
        }
    }
    return false;
}

}  // namespace maplan
