#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace maplan {

using AtomId = uint32_t;
using ActionId = uint32_t;
using AgentId = int;

// Action table slot 0 is always the empty action epsilon.
inline constexpr ActionId kEpsilon = 0;
inline constexpr AgentId kNoAgent = -1;

// A signed atom. Negation is an involution by construction.
struct Term {
    AtomId atom = 0;
    bool negated = false;

    Term() = default;
    Term(AtomId a, bool n) : atom(a), negated(n) {}
    Term negate() const { return Term(atom, !negated); }
    bool operator==(const Term &o) const { return atom == o.atom && negated == o.negated; }
    bool operator<(const Term &o) const {
        return atom != o.atom ? atom < o.atom : negated < o.negated;
    }
};

// Consistent set of terms over a fixed atom universe, stored as two
// bit-vectors (positive and negative occurrences).
class TermSet {
public:
    TermSet() = default;
    explicit TermSet(size_t atom_count) : pos_(atom_count), neg_(atom_count) {}

    size_t universe_size() const { return pos_.size(); }
    bool empty() const { return pos_.none() && neg_.none(); }
    size_t count() const { return pos_.count() + neg_.count(); }

    bool contains(Term t) const { return t.negated ? neg_.test(t.atom) : pos_.test(t.atom); }
    void insert(Term t) { (t.negated ? neg_ : pos_).set(t.atom); }
    void erase(Term t) { (t.negated ? neg_ : pos_).reset(t.atom); }

    // t in s iff negate(t) not in s fails only when some atom appears with
    // both signs.
    bool consistent() const { return !pos_.intersects(neg_); }

    bool is_subset_of(const TermSet &o) const {
        return pos_.is_subset_of(o.pos_) && neg_.is_subset_of(o.neg_);
    }
    bool intersects(const TermSet &o) const {
        return pos_.intersects(o.pos_) || neg_.intersects(o.neg_);
    }

    // Set of terms with every sign flipped.
    TermSet negated() const {
        TermSet r;
        r.pos_ = neg_;
        r.neg_ = pos_;
        return r;
    }

    void unite(const TermSet &o) {
        pos_ |= o.pos_;
        neg_ |= o.neg_;
    }
    void subtract(const TermSet &o) {
        pos_ -= o.pos_;
        neg_ -= o.neg_;
    }
    void intersect(const TermSet &o) {
        pos_ &= o.pos_;
        neg_ &= o.neg_;
    }

    // Atoms mentioned with either sign.
    boost::dynamic_bitset<> atoms() const { return pos_ | neg_; }
    const boost::dynamic_bitset<> &positives() const { return pos_; }
    const boost::dynamic_bitset<> &negatives() const { return neg_; }

    std::vector<Term> terms() const;

    bool operator==(const TermSet &o) const { return pos_ == o.pos_ && neg_ == o.neg_; }
    size_t hash() const;

private:
    boost::dynamic_bitset<> pos_;
    boost::dynamic_bitset<> neg_;
};

// A state is either a consistent term set or the distinguished undefined
// state reached by applying an inapplicable action.
class State {
public:
    State() = default;
    explicit State(TermSet terms) : defined_(true), terms_(std::move(terms)) {}

    static State undefined() { return State(); }

    bool defined() const { return defined_; }
    const TermSet &terms() const { return terms_; }

    bool operator==(const State &o) const {
        if (defined_ != o.defined_)
            return false;
        return !defined_ || terms_ == o.terms_;
    }

private:
    bool defined_ = false;
    TermSet terms_;
};

struct GroundAction {
    std::string label;
    AgentId agent = kNoAgent;  // kNoAgent only for epsilon
    TermSet pre;
    TermSet eff;
};

struct Agent {
    std::string name;
    std::vector<ActionId> actions;  // excludes epsilon
};

// One action per agent, indexed by agent id. Epsilon parts are allowed
// everywhere.
using JointAction = std::vector<ActionId>;

// Step-major view of the plan matrix: steps[k][i] is the action of agent i
// in step k+1 (the external API mirrors the 1-based step indexing).
class Plan {
public:
    Plan() = default;
    explicit Plan(int agent_count) : agent_count_(agent_count) {}
    Plan(int agent_count, std::vector<JointAction> steps)
        : agent_count_(agent_count), steps_(std::move(steps)) {}

    int agent_count() const { return agent_count_; }
    int length() const { return static_cast<int>(steps_.size()); }
    bool empty() const { return steps_.empty(); }

    const JointAction &step(int k) const { return steps_[k - 1]; }  // 1-based
    const std::vector<JointAction> &steps() const { return steps_; }

    void push_step(JointAction j) { steps_.push_back(std::move(j)); }

    bool operator==(const Plan &o) const {
        return agent_count_ == o.agent_count_ && steps_ == o.steps_;
    }

private:
    int agent_count_ = 0;
    std::vector<JointAction> steps_;
};

class Problem {
public:
    std::string name;
    std::vector<std::string> atom_names;
    std::vector<GroundAction> actions;  // [0] is epsilon
    std::vector<Agent> agents;
    State init;
    TermSet goal;

    size_t atom_count() const { return atom_names.size(); }
    int agent_count() const { return static_cast<int>(agents.size()); }
    const GroundAction &action(ActionId a) const { return actions[a]; }

    std::optional<ActionId> find_action(const std::string &label) const;
    std::optional<AtomId> find_atom(const std::string &name) const;

    TermSet empty_terms() const { return TermSet(atom_count()); }
    JointAction all_epsilon() const { return JointAction(agents.size(), kEpsilon); }

    void rebuild_indices();

private:
    std::unordered_map<std::string, ActionId> label_index_;
    std::unordered_map<std::string, AtomId> atom_index_;
};

// Incremental construction with the validity checks the formalism requires
// (consistent pre/eff/init/goal, unique labels, per-agent ownership).
class ProblemBuilder {
public:
    explicit ProblemBuilder(std::string problem_name = "problem");

    AtomId add_atom(const std::string &name);
    AtomId atom(const std::string &name) const;  // throws on unknown
    AgentId add_agent(const std::string &name);
    ActionId add_action(AgentId agent, const std::string &label,
                        const std::vector<Term> &pre, const std::vector<Term> &eff);
    void set_init(const std::vector<Term> &terms);
    void set_goal(const std::vector<Term> &terms);

    Problem build();

private:
    Problem problem_;
    bool built_ = false;
};

// --- state/plan algebra -----------------------------------------------------

// The transformation operator: undefined input propagates, unmet
// preconditions yield the undefined state.
State apply(const State &s, const GroundAction &a);
State apply(const Problem &p, const State &s, ActionId a);

// Union preconditions and effects of a joint action. Throws
// std::invalid_argument when either union is inconsistent (ill-formed
// joint action).
TermSet joint_pre(const Problem &p, const JointAction &j);
TermSet joint_eff(const Problem &p, const JointAction &j);
bool joint_well_formed(const Problem &p, const JointAction &j);

State apply_joint(const Problem &p, const State &s, const JointAction &j);

Plan concat(const Plan &a, const Plan &b);

// 1-based inclusive fragment; requires 1 <= i <= j <= |p|.
Plan fragment(const Plan &p, int i, int j);
// Total suffix: i beyond |p| yields the empty plan.
Plan suffix(const Plan &p, int i);
Plan prefix(const Plan &p, int j);  // steps 1..j (j = 0 gives the empty plan)

// Number of position-wise differing cells, the shorter plan padded with
// epsilon steps.
int plan_diff(const Plan &a, const Plan &b);

struct PublicInfo {
    // Indexed by ActionId / AtomId.
    std::vector<bool> public_action;
    boost::dynamic_bitset<> public_atoms;
    // Atoms mentioned by exactly one agent's actions; owner per atom
    // (kNoAgent when unmentioned or shared).
    std::vector<AgentId> atom_owner;

    std::vector<ActionId> public_actions() const;
};

// §-level partition of the action set into public and private actions, plus
// the shared-atom bookkeeping the planner layers need.
PublicInfo classify_public(const Problem &p);

enum class ViolationKind { WellFormed, Feasibility, Goal };

struct Violation {
    ViolationKind kind;
    int step = 0;  // 1-based; 0 when not tied to a step
};

// Valid plans return nullopt; otherwise the first violated condition.
std::optional<Violation> validate_plan(const Problem &p, const Plan &plan);
std::optional<Violation> validate_plan_from(const Problem &p, const State &from,
                                            const Plan &plan);

// Ideal-environment execution trace: trace[0] = from, trace[k] after step k.
// Throws std::logic_error if the chain hits the undefined state.
std::vector<State> nominal_trace(const Problem &p, const State &from, const Plan &plan);

// Smallest k such that every length-k fragment contains a public action;
// nullopt when the plan has no public action at all.
std::optional<int> min_coordination_k(const Plan &plan, const std::vector<bool> &public_action);

// Brute-force compressibility oracle: some contiguous fragment can be
// removed with the remainder still solving the problem. Throws
// std::invalid_argument beyond the size bound.
bool is_compressible(const Problem &p, const Plan &plan, int max_len = 12);

}  // namespace maplan
