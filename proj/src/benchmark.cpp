#include "maplan/benchmark.hpp"

#include "maplan/rng.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace maplan {

namespace {

std::string join_name(const std::string &base, const std::vector<std::string> &args) {
    std::string out = base;
    for (const auto &a : args) {
        out += '_';
        out += a;
    }
    return out;
}

std::vector<std::string> objects_of_type(const DomainSpec &spec, const std::string &type) {
    std::vector<std::string> out;
    for (const ObjectDecl &o : spec.objects)
        if (o.type == type)
            out.push_back(o.name);
    return out;
}

// Enumerates type-compatible parameter tuples in declaration order,
// rightmost parameter varying fastest.
void enumerate_tuples(const DomainSpec &spec, const std::vector<std::string> &types,
                      const std::function<void(const std::vector<std::string> &)> &emit) {
    std::vector<std::vector<std::string>> pools;
    for (const auto &t : types) {
        pools.push_back(objects_of_type(spec, t));
        if (pools.back().empty())
            return;
    }
    std::vector<std::string> tuple(types.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == types.size()) {
            emit(tuple);
            return;
        }
        for (const auto &obj : pools[i]) {
            tuple[i] = obj;
            rec(i + 1);
        }
    };
    rec(0);
}

std::string resolve_arg(const ArgRef &arg, const std::string &self,
                        const std::vector<std::string> &params) {
    if (arg.self)
        return self;
    if (arg.param >= 0) {
        if (arg.param >= static_cast<int>(params.size()))
            throw std::logic_error("schema argument references a missing parameter");
        return params[arg.param];
    }
    return arg.literal;
}

Term resolve_term(const TermPattern &tp, const std::string &self,
                  const std::vector<std::string> &params, const ProblemBuilder &b) {
    std::vector<std::string> args;
    for (const ArgRef &a : tp.args)
        args.push_back(resolve_arg(a, self, params));
    return Term(b.atom(join_name(tp.predicate, args)), tp.negated);
}

}  // namespace

Problem ground(const DomainSpec &spec) {
    ProblemBuilder b(spec.name);
    for (const AtomSchema &as : spec.atom_schemas)
        enumerate_tuples(spec, as.param_types, [&](const std::vector<std::string> &tuple) {
            b.add_atom(join_name(as.predicate, tuple));
        });

    for (const AgentBinding &binding : spec.agent_bindings) {
        AgentId agent = b.add_agent(binding.agent);
        for (const ActionSchema &schema : spec.action_schemas) {
            if (schema.role != binding.role && schema.role != binding.agent)
                continue;
            enumerate_tuples(spec, schema.param_types,
                             [&](const std::vector<std::string> &params) {
                                 if (schema.filter && !schema.filter(binding.agent, params))
                                     return;
                                 std::vector<Term> pre, eff;
                                 for (const TermPattern &tp : schema.pre)
                                     pre.push_back(resolve_term(tp, binding.agent, params, b));
                                 for (const TermPattern &tp : schema.eff)
                                     eff.push_back(resolve_term(tp, binding.agent, params, b));
                                 std::string label = binding.agent + "_" +
                                                     join_name(schema.name, params);
                                 b.add_action(agent, label, pre, eff);
                             });
        }
    }

    std::vector<Term> init, goal;
    for (const GroundTermSpec &g : spec.init)
        init.emplace_back(b.atom(join_name(g.predicate, g.args)), g.negated);
    for (const GroundTermSpec &g : spec.goal)
        goal.emplace_back(b.atom(join_name(g.predicate, g.args)), g.negated);
    b.set_init(init);
    b.set_goal(goal);
    return b.build();
}

const char *to_string(Family f) {
    switch (f) {
    case Family::Logistics: return "logistics";
    case Family::Rovers: return "rovers";
    case Family::Satellites: return "satellites";
    }
    return "?";
}

std::optional<Family> family_from(const std::string &name) {
    if (name == "logistics")
        return Family::Logistics;
    if (name == "rovers")
        return Family::Rovers;
    if (name == "satellites")
        return Family::Satellites;
    return std::nullopt;
}

BenchmarkParams default_params(Family f) {
    BenchmarkParams p;
    p.family = f;
    switch (f) {
    case Family::Logistics:
        p.agent_count = 3;
        break;
    case Family::Rovers:
        p.agent_count = 3;
        break;
    case Family::Satellites:
        p.agent_count = 3;  // paper range 2-5
        break;
    }
    return p;
}

namespace {

void check_params(const BenchmarkParams &p) {
    if (p.agent_count < 2 || p.agent_count > 6)
        throw std::invalid_argument("benchmark: agent_count must be in 2..6");
    switch (p.family) {
    case Family::Logistics:
        if (p.locations < 2)
            throw std::invalid_argument("logistics: need at least 2 places per city");
        if (p.packages < 1)
            throw std::invalid_argument("logistics: need at least one package");
        break;
    case Family::Rovers:
        if (p.waypoints < 2)
            throw std::invalid_argument("rovers: need at least 2 waypoints");
        if (p.samples < 1)
            throw std::invalid_argument("rovers: need at least one sample");
        break;
    case Family::Satellites:
        if (p.directions < 2)
            throw std::invalid_argument("satellites: need at least 2 directions");
        if (p.targets < 1)
            throw std::invalid_argument("satellites: need at least one target");
        break;
    }
}

// Tightly coordinated family: trucks confined to their cities, one plane
// between the airports; package handoffs at airports are the shared atoms.
// Package 0 crosses city 0 -> 1, package 1 (if any) crosses 1 -> 0, the
// rest stay inside one city as purely private work.
DomainSpec logistics_spec(const BenchmarkParams &p) {
    Rng rng(derive_seed(p.seed, 0x10615));
    DomainSpec spec;
    spec.name = "logistics";
    int trucks = p.agent_count - 1;
    int cities = std::max(2, trucks);
    int depots = p.locations - 1;

    std::vector<std::vector<std::string>> city_places(cities);
    std::vector<std::string> airports;
    for (int c = 0; c < cities; ++c) {
        std::string air = "air" + std::to_string(c);
        airports.push_back(air);
        spec.objects.push_back(ObjectDecl{air, "place"});
        city_places[c].push_back(air);
        for (int l = 1; l <= depots; ++l) {
            std::string loc = "loc" + std::to_string(c) + "_" + std::to_string(l);
            spec.objects.push_back(ObjectDecl{loc, "place"});
            city_places[c].push_back(loc);
        }
    }
    for (int t = 0; t < trucks; ++t) {
        spec.objects.push_back(ObjectDecl{"t" + std::to_string(t), "truck"});
        for (int r = 1; r <= p.targets; ++r)
            spec.objects.push_back(ObjectDecl{
                "r" + std::to_string(t) + "_" + std::to_string(r), "report"});
    }
    spec.objects.push_back(ObjectDecl{"plane", "plane"});
    for (int k = 0; k < p.packages; ++k)
        spec.objects.push_back(ObjectDecl{"p" + std::to_string(k), "package"});

    spec.atom_schemas = {
        AtomSchema{"tat", {"truck", "place"}},
        AtomSchema{"aat", {"plane", "place"}},
        AtomSchema{"at", {"package", "place"}},
        AtomSchema{"int", {"package", "truck"}},
        AtomSchema{"ina", {"package", "plane"}},
        AtomSchema{"rep", {"report"}},
    };

    // Package routes: (src city, dst city, src place, dst place).
    struct Route {
        int src_city, dst_city;
        std::string src, dst;
    };
    auto seeded_place = [&](int city, bool allow_airport, bool depot_preferred) {
        const auto &places = city_places[city];
        if (depot_preferred && static_cast<int>(places.size()) > 1)
            return places[1 + rng.below_int(static_cast<int>(places.size()) - 1)];
        if (!allow_airport)
            return places[1 + rng.below_int(static_cast<int>(places.size()) - 1)];
        return places[rng.below_int(static_cast<int>(places.size()))];
    };
    std::vector<Route> routes;
    for (int k = 0; k < p.packages; ++k) {
        Route r;
        if (k == 0 || k == 1) {
            // Air freight: a truck feeds the source airport, the plane hauls
            // to the destination airport. Opposite directions keep the two
            // handoff chains independent.
            r.src_city = k == 0 ? 0 : 1;
            r.dst_city = k == 0 ? 1 : 0;
            bool src_has_truck = r.src_city < trucks;
            r.src = src_has_truck ? seeded_place(r.src_city, false, true)
                                  : city_places[r.src_city][0];
            r.dst = city_places[r.dst_city][0];
        } else {
            r.src_city = r.dst_city = (k - 2) % trucks;
            const auto &places = city_places[r.src_city];
            int src = rng.below_int(static_cast<int>(places.size()));
            int dst = rng.below_int(static_cast<int>(places.size()) - 1);
            if (dst >= src)
                ++dst;
            r.src = places[src];
            r.dst = places[dst];
        }
        routes.push_back(r);
    }

    auto city_of = [city_places, cities](const std::string &place) {
        for (int c = 0; c < cities; ++c)
            for (const auto &pl : city_places[c])
                if (pl == place)
                    return c;
        return -1;
    };
    auto chain_pos = [city_places](int city, const std::string &place) {
        const auto &places = city_places[city];
        for (size_t i = 0; i < places.size(); ++i)
            if (places[i] == place)
                return static_cast<int>(i);
        return -1;
    };
    auto truck_city = [](const std::string &truck) {
        return std::stoi(truck.substr(1));
    };
    auto pkg_index = [](const std::string &pkg) { return std::stoi(pkg.substr(1)); };
    auto is_airport = [](const std::string &place) { return place[0] == 'a'; };
    // A truck serves a package only where ground transport is needed; a leg
    // that starts or ends at the airport is the plane's business alone.
    auto relevant = [routes, pkg_index, is_airport](const std::string &pkg, int city) {
        const Route &r = routes[pkg_index(pkg)];
        if (r.src_city == city && !is_airport(r.src))
            return true;
        return r.dst_city == city && !is_airport(r.dst);
    };

    ActionSchema drive;
    drive.role = "truck";
    drive.name = "drive";
    drive.param_types = {"place", "place"};
    drive.pre = {TermPattern{false, "tat", {ArgRef::me(), ArgRef::p(0)}}};
    drive.eff = {TermPattern{false, "tat", {ArgRef::me(), ArgRef::p(1)}},
                 TermPattern{true, "tat", {ArgRef::me(), ArgRef::p(0)}}};
    drive.filter = [city_of, chain_pos, truck_city](const std::string &self,
                                                    const std::vector<std::string> &a) {
        int c = truck_city(self);
        if (city_of(a[0]) != c || city_of(a[1]) != c)
            return false;
        return std::abs(chain_pos(c, a[0]) - chain_pos(c, a[1])) == 1;
    };
    spec.action_schemas.push_back(drive);

    ActionSchema load;
    load.role = "truck";
    load.name = "load";
    load.param_types = {"package", "place"};
    load.pre = {TermPattern{false, "at", {ArgRef::p(0), ArgRef::p(1)}},
                TermPattern{false, "tat", {ArgRef::me(), ArgRef::p(1)}}};
    load.eff = {TermPattern{false, "int", {ArgRef::p(0), ArgRef::me()}},
                TermPattern{true, "at", {ArgRef::p(0), ArgRef::p(1)}}};
    load.filter = [city_of, truck_city, relevant](const std::string &self,
                                                  const std::vector<std::string> &a) {
        int c = truck_city(self);
        return city_of(a[1]) == c && relevant(a[0], c);
    };
    spec.action_schemas.push_back(load);

    ActionSchema unload;
    unload.role = "truck";
    unload.name = "unload";
    unload.param_types = {"package", "place"};
    unload.pre = {TermPattern{false, "int", {ArgRef::p(0), ArgRef::me()}},
                  TermPattern{false, "tat", {ArgRef::me(), ArgRef::p(1)}}};
    unload.eff = {TermPattern{false, "at", {ArgRef::p(0), ArgRef::p(1)}},
                  TermPattern{true, "int", {ArgRef::p(0), ArgRef::me()}}};
    unload.filter = load.filter;
    spec.action_schemas.push_back(unload);

    // Per-truck status reports filed from the home airport: independent
    // one-step obligations at the natural end of a truck's route.
    ActionSchema report;
    report.role = "truck";
    report.name = "report";
    report.param_types = {"report", "place"};
    report.pre = {TermPattern{false, "tat", {ArgRef::me(), ArgRef::p(1)}}};
    report.eff = {TermPattern{false, "rep", {ArgRef::p(0)}}};
    report.filter = [truck_city, is_airport, city_of](const std::string &self,
                                                      const std::vector<std::string> &a) {
        int c = truck_city(self);
        return a[0][1] == self[1] && is_airport(a[1]) && city_of(a[1]) == c;
    };
    spec.action_schemas.push_back(report);

    // Charter flights: the plane flies a leg only with that leg's cargo
    // aboard, so a starved handoff leaves it parked rather than shuttling.
    ActionSchema fly;
    fly.role = "plane";
    fly.name = "fly";
    fly.param_types = {"package", "place", "place"};
    fly.pre = {TermPattern{false, "aat", {ArgRef::me(), ArgRef::p(1)}},
               TermPattern{false, "ina", {ArgRef::p(0), ArgRef::me()}}};
    fly.eff = {TermPattern{false, "aat", {ArgRef::me(), ArgRef::p(2)}},
               TermPattern{true, "aat", {ArgRef::me(), ArgRef::p(1)}}};
    fly.filter = [routes, pkg_index, is_airport, city_of](
                     const std::string &, const std::vector<std::string> &a) {
        if (!is_airport(a[1]) || !is_airport(a[2]) || a[1] == a[2])
            return false;
        const Route &r = routes[pkg_index(a[0])];
        if (r.src_city == r.dst_city)
            return false;
        return city_of(a[1]) == r.src_city && city_of(a[2]) == r.dst_city;
    };
    spec.action_schemas.push_back(fly);

    auto cross_airport = [routes, pkg_index, is_airport, city_of](
                             const std::string &pkg, const std::string &place) {
        if (!is_airport(place))
            return false;
        const Route &r = routes[pkg_index(pkg)];
        if (r.src_city == r.dst_city)
            return false;  // local package, the plane never touches it
        int c = city_of(place);
        return c == r.src_city || c == r.dst_city;
    };
    ActionSchema aload;
    aload.role = "plane";
    aload.name = "load";
    aload.param_types = {"package", "place"};
    aload.pre = {TermPattern{false, "at", {ArgRef::p(0), ArgRef::p(1)}},
                 TermPattern{false, "aat", {ArgRef::me(), ArgRef::p(1)}}};
    aload.eff = {TermPattern{false, "ina", {ArgRef::p(0), ArgRef::me()}},
                 TermPattern{true, "at", {ArgRef::p(0), ArgRef::p(1)}}};
    aload.filter = [cross_airport](const std::string &, const std::vector<std::string> &a) {
        return cross_airport(a[0], a[1]);
    };
    spec.action_schemas.push_back(aload);

    ActionSchema aunload;
    aunload.role = "plane";
    aunload.name = "unload";
    aunload.param_types = {"package", "place"};
    aunload.pre = {TermPattern{false, "ina", {ArgRef::p(0), ArgRef::me()}},
                   TermPattern{false, "aat", {ArgRef::me(), ArgRef::p(1)}}};
    aunload.eff = {TermPattern{false, "at", {ArgRef::p(0), ArgRef::p(1)}},
                   TermPattern{true, "ina", {ArgRef::p(0), ArgRef::me()}}};
    aunload.filter = aload.filter;
    spec.action_schemas.push_back(aunload);

    for (int t = 0; t < trucks; ++t)
        spec.agent_bindings.push_back(AgentBinding{"t" + std::to_string(t), "truck"});
    spec.agent_bindings.push_back(AgentBinding{"plane", "plane"});

    for (int t = 0; t < trucks; ++t) {
        const auto &places = city_places[t];
        spec.init.push_back(GroundTermSpec{
            false, "tat",
            {"t" + std::to_string(t), places[rng.below_int(static_cast<int>(places.size()))]}});
    }
    // The plane starts where the first pickup happens.
    spec.init.push_back(GroundTermSpec{
        false, "aat", {"plane", airports[routes[0].src_city]}});
    for (int k = 0; k < p.packages; ++k)
        spec.init.push_back(
            GroundTermSpec{false, "at", {"p" + std::to_string(k), routes[k].src}});
    for (int k = 0; k < p.packages; ++k)
        spec.goal.push_back(
            GroundTermSpec{false, "at", {"p" + std::to_string(k), routes[k].dst}});
    for (int t = 0; t < trucks; ++t)
        for (int r = 1; r <= p.targets; ++r)
            spec.goal.push_back(GroundTermSpec{
                false, "rep", {"r" + std::to_string(t) + "_" + std::to_string(r)}});
    return spec;
}

// Loosely coordinated family: each rover navigates its own waypoint chain
// and samples privately; the single shared channel forces the uploads into
// a fixed relay order at the very end of the plans.
DomainSpec rovers_spec(const BenchmarkParams &p) {
    Rng rng(derive_seed(p.seed, 0x2073));
    DomainSpec spec;
    spec.name = "rovers";
    int n = p.agent_count;

    for (int r = 0; r < n; ++r) {
        spec.objects.push_back(ObjectDecl{"r" + std::to_string(r), "rover"});
        for (int w = 0; w < p.waypoints; ++w)
            spec.objects.push_back(ObjectDecl{
                "w" + std::to_string(r) + "_" + std::to_string(w), "waypoint"});
        for (int s = 0; s < p.samples; ++s)
            spec.objects.push_back(ObjectDecl{
                "s" + std::to_string(r) + "_" + std::to_string(s), "sample"});
    }
    for (int c = 0; c <= n; ++c)
        spec.objects.push_back(ObjectDecl{"ch" + std::to_string(c), "channel"});

    spec.atom_schemas = {
        AtomSchema{"rat", {"rover", "waypoint"}},
        AtomSchema{"have", {"rover", "sample"}},
        AtomSchema{"sent", {"rover"}},
        AtomSchema{"chan", {"channel"}},
    };

    auto owner_index = [](const std::string &obj) {
        size_t us = obj.find('_');
        return std::stoi(obj.substr(1, us == std::string::npos ? std::string::npos : us - 1));
    };
    auto wp_pos = [](const std::string &wp) { return std::stoi(wp.substr(wp.find('_') + 1)); };

    // Seeded sample locations per rover.
    std::map<std::string, std::string> sample_at;
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < p.samples; ++s)
            sample_at["s" + std::to_string(r) + "_" + std::to_string(s)] =
                "w" + std::to_string(r) + "_" + std::to_string(rng.below_int(p.waypoints));

    ActionSchema move;
    move.role = "rover";
    move.name = "move";
    move.param_types = {"waypoint", "waypoint"};
    move.pre = {TermPattern{false, "rat", {ArgRef::me(), ArgRef::p(0)}}};
    move.eff = {TermPattern{false, "rat", {ArgRef::me(), ArgRef::p(1)}},
                TermPattern{true, "rat", {ArgRef::me(), ArgRef::p(0)}}};
    move.filter = [owner_index, wp_pos](const std::string &self,
                                        const std::vector<std::string> &a) {
        int r = owner_index(self);
        if (owner_index(a[0]) != r || owner_index(a[1]) != r)
            return false;
        return std::abs(wp_pos(a[0]) - wp_pos(a[1])) == 1;
    };
    spec.action_schemas.push_back(move);

    ActionSchema take;
    take.role = "rover";
    take.name = "take";
    take.param_types = {"sample", "waypoint"};
    take.pre = {TermPattern{false, "rat", {ArgRef::me(), ArgRef::p(1)}}};
    take.eff = {TermPattern{false, "have", {ArgRef::me(), ArgRef::p(0)}}};
    take.filter = [owner_index, sample_at](const std::string &self,
                                           const std::vector<std::string> &a) {
        return owner_index(a[0]) == owner_index(self) && sample_at.at(a[0]) == a[1];
    };
    spec.action_schemas.push_back(take);

    // Per-rover upload through the shared relay channel.
    for (int r = 0; r < n; ++r) {
        std::string rover = "r" + std::to_string(r);
        ActionSchema upload;
        upload.role = rover;
        upload.name = "upload";
        upload.pre.push_back(
            TermPattern{false, "chan", {ArgRef::obj("ch" + std::to_string(r))}});
        for (int s = 0; s < p.samples; ++s)
            upload.pre.push_back(TermPattern{
                false, "have",
                {ArgRef::me(), ArgRef::obj("s" + std::to_string(r) + "_" + std::to_string(s))}});
        upload.eff = {
            TermPattern{false, "sent", {ArgRef::me()}},
            TermPattern{true, "chan", {ArgRef::obj("ch" + std::to_string(r))}},
            TermPattern{false, "chan", {ArgRef::obj("ch" + std::to_string(r + 1))}},
        };
        spec.action_schemas.push_back(upload);
    }

    for (int r = 0; r < n; ++r)
        spec.agent_bindings.push_back(AgentBinding{"r" + std::to_string(r), "rover"});

    for (int r = 0; r < n; ++r)
        spec.init.push_back(GroundTermSpec{
            false, "rat",
            {"r" + std::to_string(r),
             "w" + std::to_string(r) + "_" + std::to_string(rng.below_int(p.waypoints))}});
    spec.init.push_back(GroundTermSpec{false, "chan", {"ch0"}});
    for (int r = 0; r < n; ++r)
        spec.goal.push_back(GroundTermSpec{false, "sent", {"r" + std::to_string(r)}});
    return spec;
}

// Uncoordinated family: every satellite turns through its own directions
// and images its own targets; no atom is shared between agents.
DomainSpec satellites_spec(const BenchmarkParams &p) {
    Rng rng(derive_seed(p.seed, 0x5a7));
    DomainSpec spec;
    spec.name = "satellites";
    int n = p.agent_count;

    for (int s = 0; s < n; ++s) {
        spec.objects.push_back(ObjectDecl{"sat" + std::to_string(s), "satellite"});
        for (int d = 0; d < p.directions; ++d)
            spec.objects.push_back(ObjectDecl{
                "d" + std::to_string(s) + "_" + std::to_string(d), "direction"});
        for (int t = 0; t < p.targets; ++t)
            spec.objects.push_back(ObjectDecl{
                "tgt" + std::to_string(s) + "_" + std::to_string(t), "target"});
    }

    spec.atom_schemas = {
        AtomSchema{"point", {"satellite", "direction"}},
        AtomSchema{"img", {"satellite", "target"}},
    };

    auto owner_index = [](const std::string &obj) {
        size_t start = obj.find_first_of("0123456789");
        size_t us = obj.find('_');
        return std::stoi(obj.substr(start, us == std::string::npos ? std::string::npos
                                                                   : us - start));
    };
    auto dir_pos = [](const std::string &d) { return std::stoi(d.substr(d.find('_') + 1)); };

    std::map<std::string, std::string> target_dir;
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < p.targets; ++t)
            target_dir["tgt" + std::to_string(s) + "_" + std::to_string(t)] =
                "d" + std::to_string(s) + "_" + std::to_string(rng.below_int(p.directions));

    ActionSchema turn;
    turn.role = "satellite";
    turn.name = "turn";
    turn.param_types = {"direction", "direction"};
    turn.pre = {TermPattern{false, "point", {ArgRef::me(), ArgRef::p(0)}}};
    turn.eff = {TermPattern{false, "point", {ArgRef::me(), ArgRef::p(1)}},
                TermPattern{true, "point", {ArgRef::me(), ArgRef::p(0)}}};
    turn.filter = [owner_index, dir_pos](const std::string &self,
                                         const std::vector<std::string> &a) {
        int s = owner_index(self);
        if (owner_index(a[0]) != s || owner_index(a[1]) != s)
            return false;
        return std::abs(dir_pos(a[0]) - dir_pos(a[1])) == 1;
    };
    spec.action_schemas.push_back(turn);

    ActionSchema image;
    image.role = "satellite";
    image.name = "image";
    image.param_types = {"target", "direction"};
    image.pre = {TermPattern{false, "point", {ArgRef::me(), ArgRef::p(1)}}};
    image.eff = {TermPattern{false, "img", {ArgRef::me(), ArgRef::p(0)}}};
    image.filter = [owner_index, target_dir](const std::string &self,
                                             const std::vector<std::string> &a) {
        return owner_index(a[0]) == owner_index(self) && target_dir.at(a[0]) == a[1];
    };
    spec.action_schemas.push_back(image);

    for (int s = 0; s < n; ++s)
        spec.agent_bindings.push_back(AgentBinding{"sat" + std::to_string(s), "satellite"});

    for (int s = 0; s < n; ++s)
        spec.init.push_back(GroundTermSpec{
            false, "point",
            {"sat" + std::to_string(s),
             "d" + std::to_string(s) + "_" + std::to_string(rng.below_int(p.directions))}});
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < p.targets; ++t)
            spec.goal.push_back(GroundTermSpec{
                false, "img",
                {"sat" + std::to_string(s), "tgt" + std::to_string(s) + "_" + std::to_string(t)}});
    return spec;
}

}  // namespace

DomainSpec make_domain_spec(const BenchmarkParams &params) {
    check_params(params);
    switch (params.family) {
    case Family::Logistics: return logistics_spec(params);
    case Family::Rovers: return rovers_spec(params);
    case Family::Satellites: return satellites_spec(params);
    }
    throw std::logic_error("unknown family");
}

Problem generate_benchmark(const BenchmarkParams &params) {
    return ground(make_domain_spec(params));
}

}  // namespace maplan
