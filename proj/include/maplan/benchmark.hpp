#pragma once

#include "maplan/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace maplan {

// --- lifted domain representation, used only by the generators ------------

struct ObjectDecl {
    std::string name;
    std::string type;
};

struct AtomSchema {
    std::string predicate;
    std::vector<std::string> param_types;
};

// Argument of a term pattern: a schema parameter, the bound agent object,
// or a fixed object.
struct ArgRef {
    int param = -1;       // >= 0: parameter index
    bool self = false;    // the binding's own object
    std::string literal;  // fixed object name when neither

    static ArgRef p(int i) { return ArgRef{i, false, {}}; }
    static ArgRef me() { return ArgRef{-1, true, {}}; }
    static ArgRef obj(std::string name) { return ArgRef{-1, false, std::move(name)}; }
};

struct TermPattern {
    bool negated = false;
    std::string predicate;
    std::vector<ArgRef> args;
};

struct ActionSchema {
    std::string role;  // matched against an agent binding's role or name
    std::string name;
    std::vector<std::string> param_types;
    std::vector<TermPattern> pre, eff;
    // Structural constraint over (self object, substituted parameters);
    // empty means accept all type-compatible tuples.
    std::function<bool(const std::string &, const std::vector<std::string> &)> filter;
};

struct AgentBinding {
    std::string agent;  // agent name, also its self object
    std::string role;
};

struct GroundTermSpec {
    bool negated = false;
    std::string predicate;
    std::vector<std::string> args;
};

struct DomainSpec {
    std::string name;
    std::vector<ObjectDecl> objects;  // declaration order fixes grounding order
    std::vector<AtomSchema> atom_schemas;
    std::vector<ActionSchema> action_schemas;
    std::vector<AgentBinding> agent_bindings;
    std::vector<GroundTermSpec> init;
    std::vector<GroundTermSpec> goal;
};

// Deterministic grounding: objects substitute into typed parameters in
// declaration order, atom and action names are qualified with their
// argument objects (actions also with the owning agent).
Problem ground(const DomainSpec &spec);

// --- benchmark families ----------------------------------------------------

enum class Family { Logistics, Rovers, Satellites };

const char *to_string(Family f);
std::optional<Family> family_from(const std::string &name);

struct BenchmarkParams {
    Family family = Family::Logistics;
    int agent_count = 3;  // logistics/rovers default 3, satellites 2-5
    uint64_t seed = 0;
    // Size knobs; each family reads the ones that apply to it.
    int locations = 3;  // logistics: places per city (airport + depots)
    int packages = 1;   // logistics: first 1-2 cross cities, the rest local
    int waypoints = 4;  // rovers: waypoints per rover
    int samples = 2;    // rovers: samples per rover
    int targets = 2;    // satellites: observation targets per satellite
    int directions = 4; // satellites: pointing directions per satellite
};

BenchmarkParams default_params(Family f);

DomainSpec make_domain_spec(const BenchmarkParams &params);
Problem generate_benchmark(const BenchmarkParams &params);

}  // namespace maplan
