#include "aoplkit/config.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "aoplkit/errors.h"
#include "json.hpp"

namespace aoplkit {

using nlohmann::json;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

Term loc_term(long long l) { return Term::integer(l); }
Term sym(const std::string &s) { return Term::symbol(s); }

FluentLiteral lit(const Domain &d, const Term &t, bool v) {
    int id = d.fluent_id(t);
    if (id < 0)
        throw ConfigError("fluents", "unknown fluent " + t.str());
    return {id, v};
}

State initial_state(const Domain &d) {
    return State{d.statics, std::vector<bool>(d.fluents.size(), false)};
}

void add_all_fluents(Domain &d) {
    for (const Schema &s : d.sig.fluents)
        for (const Term &t : d.sig.instances(s))
            d.add_fluent(t);
}

// ---- JSON helpers: every failure names its key path

const json &need(const json &j, const std::string &key, const std::string &path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(path.empty() ? key : path + "." + key, "missing required key");
    return j.at(key);
}

template <class T>
T as(const json &j, const std::string &path) {
    try {
        return j.get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(path, std::string("wrong type: ") + e.what());
    }
}

template <class T>
T get(const json &j, const std::string &key, const std::string &path) {
    return as<T>(need(j, key, path), path.empty() ? key : path + "." + key);
}

template <class T>
T get_or(const json &j, const std::string &key, T fallback, const std::string &path) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null())
        return fallback;
    return as<T>(j.at(key), path.empty() ? key : path + "." + key);
}

json parse_json(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("<document>", e.what());
    }
}

std::string idx(const std::string &k, std::size_t i) { return k + "[" + std::to_string(i) + "]"; }

const std::set<std::string> kModes = {"emergency", "non-emergency", "risky", "normal"};

std::string check_mode(const std::string &m) {
    if (kModes.count(m) || m.rfind("bounded:", 0) == 0)
        return m;
    throw ConfigError("mode", "unknown mode '" + m + "'");
}

}  // namespace

// ---------------------------------------------------------------- traffic

LoadedProblem build_traffic(const TrafficConfig &c) {
    auto d = std::make_shared<Domain>();
    d->kind = "traffic";
    std::set<long long> locs(c.locations.begin(), c.locations.end());
    auto check_loc = [&](long long l, const std::string &key) {
        if (!locs.count(l))
            throw ConfigError(key, "unknown location " + std::to_string(l));
    };
    if (c.locations.empty())
        throw ConfigError("locations", "no locations declared");
    if (c.speeds.empty())
        throw ConfigError("speeds", "no speeds declared");
    if (c.horizon < 1)
        throw ConfigError("horizon", "horizon must be at least 1");
    check_loc(c.initial, "initial");
    check_loc(c.goal, "goal");

    auto &sorts = d->sig.sorts;
    for (long long l : c.locations)
        sorts["location"].push_back(loc_term(l));
    std::vector<long long> speeds = c.speeds;
    std::sort(speeds.begin(), speeds.end());
    speeds.erase(std::unique(speeds.begin(), speeds.end()), speeds.end());
    for (long long s : speeds)
        sorts["speed"].push_back(Term::integer(s));
    std::set<long long> limits;
    for (const auto &e : c.edges)
        limits.insert(e.speed_limit);
    for (long long l : limits)
        sorts["limit"].push_back(Term::integer(l));
    if (limits.empty())
        sorts["limit"].push_back(Term::integer(0));
    for (const char *col : {"green", "yellow", "red"})
        sorts["color"].push_back(sym(col));

    d->sig.statics = {{"connected", {"location", "location"}},
                      {"speed_limit", {"location", "location", "limit"}},
                      {"do_not_enter", {"location", "location"}},
                      {"stop_sign", {"location"}}};
    d->sig.fluents = {{"at", {"location"}},
                      {"stopped_at", {"location"}},
                      {"light", {"location", "color"}},
                      {"pedestrians_are_crossing", {"location"}},
                      {"school_bus_stopped", {"location", "location"}}};
    d->sig.actions = {{"drive", {"location", "location", "speed"}}, {"stop", {"location"}}};

    auto statics = std::make_shared<StaticFacts>();
    struct Directed {
        long long from, to;
        long long cap;
    };
    std::vector<Directed> directed;
    std::set<std::pair<long long, long long>> seen_edges;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto &e = c.edges[i];
        check_loc(e.from, idx("edges", i) + ".from");
        check_loc(e.to, idx("edges", i) + ".to");
        if (e.from == e.to)
            throw ConfigError(idx("edges", i), "self loop");
        long long cap = e.max_speed.value_or(kInf);
        auto add = [&](long long a, long long b) {
            if (!seen_edges.insert({a, b}).second)
                throw ConfigError(idx("edges", i), "duplicate edge " + std::to_string(a) + "->" +
                                                       std::to_string(b));
            directed.push_back({a, b, cap});
            statics->add(Term::symbol("connected", {loc_term(a), loc_term(b)}));
            statics->add(Term::symbol("speed_limit",
                                      {loc_term(a), loc_term(b), Term::integer(e.speed_limit)}));
        };
        add(e.from, e.to);
        if (e.bidirectional)
            add(e.to, e.from);
    }
    for (std::size_t i = 0; i < c.signs.size(); ++i) {
        const auto &s = c.signs[i];
        check_loc(s.loc, idx("signs", i) + ".loc");
        if (s.type == "stop") {
            statics->add(Term::symbol("stop_sign", {loc_term(s.loc)}));
        } else if (s.type == "do_not_enter") {
            if (!s.from)
                throw ConfigError(idx("signs", i) + ".from", "do_not_enter needs 'from'");
            check_loc(*s.from, idx("signs", i) + ".from");
            statics->add(Term::symbol("do_not_enter", {loc_term(*s.from), loc_term(s.loc)}));
        } else {
            throw ConfigError(idx("signs", i) + ".type", "unknown sign type '" + s.type + "'");
        }
    }
    d->statics = statics;
    add_all_fluents(*d);

    // Canonical action order: drives by descending speed, then stops.
    std::sort(directed.begin(), directed.end(), [](const Directed &a, const Directed &b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (auto it = speeds.rbegin(); it != speeds.rend(); ++it)
        for (const Directed &e : directed) {
            GroundAction a;
            a.term = Term::symbol("drive", {loc_term(e.from), loc_term(e.to), Term::integer(*it)});
            a.physically_possible = *it <= e.cap;
            a.preconditions = {{lit(*d, Term::symbol("at", {loc_term(e.from)}), true)}};
            a.effects = {{{},
                          {lit(*d, Term::symbol("at", {loc_term(e.to)}), true),
                           lit(*d, Term::symbol("at", {loc_term(e.from)}), false),
                           lit(*d, Term::symbol("stopped_at", {loc_term(e.from)}), false)}}};
            d->add_action(std::move(a));
        }
    for (long long l : c.locations) {
        GroundAction a;
        a.term = Term::symbol("stop", {loc_term(l)});
        a.preconditions = {{lit(*d, Term::symbol("at", {loc_term(l)}), true)}};
        a.effects = {{{}, {lit(*d, Term::symbol("stopped_at", {loc_term(l)}), true)}}};
        d->add_action(std::move(a));
    }
    d->model.allow_wait = false;

    // Exogenous timeline. Lights persist until changed; pedestrians and the
    // school bus are present only at their listed steps.
    int last = c.horizon;
    for (const auto &l : c.lights) last = std::max(last, l.step);
    for (const auto &p : c.pedestrians) last = std::max(last, p.step);
    for (const auto &b : c.school_bus) last = std::max(last, b.step);
    ++last;
    auto &tl = d->model.timeline;
    for (std::size_t i = 0; i < c.lights.size(); ++i) {
        const auto &l = c.lights[i];
        check_loc(l.loc, idx("lights", i) + ".loc");
        if (l.color != "green" && l.color != "yellow" && l.color != "red")
            throw ConfigError(idx("lights", i) + ".color", "unknown color '" + l.color + "'");
        if (l.step < 0)
            throw ConfigError(idx("lights", i) + ".step", "negative step");
        for (const char *col : {"green", "yellow", "red"})
            tl[l.step].push_back(
                lit(*d, Term::symbol("light", {loc_term(l.loc), sym(col)}), l.color == col));
    }
    std::map<long long, std::set<int>> peds;
    for (std::size_t i = 0; i < c.pedestrians.size(); ++i) {
        check_loc(c.pedestrians[i].a, idx("pedestrians", i) + ".loc");
        peds[c.pedestrians[i].a].insert(c.pedestrians[i].step);
    }
    for (const auto &[loc, steps] : peds)
        for (int t = 0; t <= last; ++t)
            tl[t].push_back(lit(*d, Term::symbol("pedestrians_are_crossing", {loc_term(loc)}),
                                steps.count(t) != 0));
    std::map<std::pair<long long, long long>, std::set<int>> buses;
    for (std::size_t i = 0; i < c.school_bus.size(); ++i) {
        const auto &b = c.school_bus[i];
        check_loc(b.a, idx("school_bus", i) + ".between[0]");
        check_loc(b.b, idx("school_bus", i) + ".between[1]");
        buses[{b.a, b.b}].insert(b.step);
        buses[{b.b, b.a}].insert(b.step);
    }
    for (const auto &[pair, steps] : buses)
        for (int t = 0; t <= last; ++t)
            tl[t].push_back(lit(*d,
                                Term::symbol("school_bus_stopped",
                                             {loc_term(pair.first), loc_term(pair.second)}),
                                steps.count(t) != 0));

    d->durations.entries = {{"drive", 2, 56, kInf, 5},
                            {"drive", 2, 36, 55, 10},
                            {"drive", 2, -kInf, 35, 15},
                            {"stop", -1, 0, 0, 2}};

    LoadedProblem lp;
    lp.problem.name = c.name;
    lp.problem.initial = initial_state(*d);
    lp.problem.initial.fluents[d->fluent_id(Term::symbol("at", {loc_term(c.initial)}))] = true;
    apply_timeline(*d, lp.problem.initial, 0);
    lp.problem.goal = {lit(*d, Term::symbol("at", {loc_term(c.goal)}), true)};
    lp.problem.horizon = c.horizon;
    lp.problem.mode = check_mode(c.mode);
    lp.domain = d;
    return lp;
}

TrafficConfig parse_traffic_config(const std::string &text) {
    json j = parse_json(text);
    TrafficConfig c;
    c.name = get_or<std::string>(j, "name", "", "");
    c.locations = get<std::vector<long long>>(j, "locations", "");
    const json &edges = need(j, "edges", "");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string p = idx("edges", i);
        TrafficEdge e;
        e.from = get<long long>(edges[i], "from", p);
        e.to = get<long long>(edges[i], "to", p);
        e.speed_limit = get<long long>(edges[i], "speed_limit", p);
        e.bidirectional = get_or<bool>(edges[i], "bidirectional", true, p);
        if (edges[i].contains("max_speed") && !edges[i]["max_speed"].is_null())
            e.max_speed = get<long long>(edges[i], "max_speed", p);
        c.edges.push_back(e);
    }
    if (j.contains("signs"))
        for (std::size_t i = 0; i < j["signs"].size(); ++i) {
            const json &s = j["signs"][i];
            std::string p = idx("signs", i);
            TrafficSign sg;
            sg.loc = get<long long>(s, "loc", p);
            sg.type = get<std::string>(s, "type", p);
            if (s.contains("from") && !s["from"].is_null())
                sg.from = get<long long>(s, "from", p);
            c.signs.push_back(sg);
        }
    if (j.contains("lights"))
        for (std::size_t i = 0; i < j["lights"].size(); ++i) {
            const json &l = j["lights"][i];
            std::string p = idx("lights", i);
            c.lights.push_back({get<long long>(l, "loc", p), get<int>(l, "step", p),
                                get<std::string>(l, "color", p)});
        }
    if (j.contains("pedestrians"))
        for (std::size_t i = 0; i < j["pedestrians"].size(); ++i) {
            const json &e = j["pedestrians"][i];
            std::string p = idx("pedestrians", i);
            long long l = get<long long>(e, "loc", p);
            c.pedestrians.push_back({l, l, get<int>(e, "step", p)});
        }
    if (j.contains("school_bus"))
        for (std::size_t i = 0; i < j["school_bus"].size(); ++i) {
            const json &e = j["school_bus"][i];
            std::string p = idx("school_bus", i);
            auto between = get<std::vector<long long>>(e, "between", p);
            if (between.size() != 2)
                throw ConfigError(p + ".between", "expected two locations");
            c.school_bus.push_back({between[0], between[1], get<int>(e, "step", p)});
        }
    if (j.contains("speeds"))
        c.speeds = get<std::vector<long long>>(j, "speeds", "");
    c.initial = get<long long>(j, "initial", "");
    c.goal = get<long long>(j, "goal", "");
    c.horizon = get_or<int>(j, "horizon", 8, "");
    c.mode = get_or<std::string>(j, "mode", "emergency", "");
    return c;
}

// ---------------------------------------------------------------- rooms

LoadedProblem build_rooms(const RoomsConfig &c) {
    auto d = std::make_shared<Domain>();
    d->kind = "rooms";
    std::set<std::string> rooms(c.rooms.begin(), c.rooms.end());
    auto check_room = [&](const std::string &r, const std::string &key) {
        if (!rooms.count(r))
            throw ConfigError(key, "unknown room '" + r + "'");
    };
    if (c.rooms.empty())
        throw ConfigError("rooms", "no rooms declared");
    if (c.horizon < 1)
        throw ConfigError("horizon", "horizon must be at least 1");
    if (c.badge_uses_max < 0)
        throw ConfigError("agent.badge_uses_max", "must be nonnegative");
    check_room(c.start, "agent.start");
    check_room(c.goal, "goal");

    auto &sorts = d->sig.sorts;
    for (const auto &r : c.rooms)
        sorts["room"].push_back(sym(r));
    std::vector<std::string> keys;
    auto add_key = [&](const std::string &k) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            keys.push_back(k);
    };
    for (const auto &door : c.doors)
        if (door.key)
            add_key(*door.key);
    for (const auto &k : c.keys)
        add_key(k);
    sorts["key"];
    for (const auto &k : keys)
        sorts["key"].push_back(sym(k));
    sorts["door"];
    for (std::size_t i = 0; i < c.doors.size(); ++i)
        sorts["door"].push_back(sym("d" + std::to_string(i)));
    int locked_count = static_cast<int>(
        std::count_if(c.doors.begin(), c.doors.end(), [](const RoomsDoor &x) { return x.locked; }));
    int max_count = std::max({1, locked_count, c.badge_uses_max});
    for (int n = 1; n <= max_count; ++n)
        sorts["count"].push_back(Term::integer(n));

    d->sig.statics = {{"door", {"door", "room", "room"}},
                      {"wrong_way", {"room", "room"}},
                      {"fits", {"key", "door"}},
                      {"has_key", {"key"}},
                      {"has_badge", {}},
                      {"protective_equipment", {}},
                      {"fire", {"room"}},
                      {"contaminated", {"room"}},
                      {"badge_cap", {"count"}}};
    d->sig.fluents = {{"in", {"room"}}, {"locked", {"door"}}, {"badge_used_at_least", {"count"}}};
    d->sig.actions = {{"move", {"room", "room"}}, {"open_door", {"door"}}, {"open_with_badge", {"door"}}};

    auto statics = std::make_shared<StaticFacts>();
    for (std::size_t i = 0; i < c.doors.size(); ++i) {
        const auto &door = c.doors[i];
        check_room(door.from, idx("doors", i) + ".from");
        check_room(door.to, idx("doors", i) + ".to");
        if (door.from == door.to)
            throw ConfigError(idx("doors", i), "door connects a room to itself");
        Term dt = sym("d" + std::to_string(i));
        statics->add(Term::symbol("door", {dt, sym(door.from), sym(door.to)}));
        statics->add(Term::symbol("door", {dt, sym(door.to), sym(door.from)}));
        if (door.oneway)
            statics->add(Term::symbol("wrong_way", {sym(door.to), sym(door.from)}));
        if (door.key)
            statics->add(Term::symbol("fits", {sym(*door.key), dt}));
        if (door.key && !door.locked)
            throw ConfigError(idx("doors", i) + ".key", "key given for an unlocked door");
    }
    for (const auto &k : c.keys)
        statics->add(Term::symbol("has_key", {sym(k)}));
    if (c.has_badge)
        statics->add(sym("has_badge"));
    if (c.protective_equipment)
        statics->add(sym("protective_equipment"));
    for (std::size_t i = 0; i < c.hazards.size(); ++i) {
        const auto &[room, kind] = c.hazards[i];
        check_room(room, idx("hazards", i) + ".room");
        if (kind != "fire" && kind != "contaminated")
            throw ConfigError(idx("hazards", i) + ".kind", "unknown hazard '" + kind + "'");
        statics->add(Term::symbol(kind, {sym(room)}));
    }
    if (c.badge_uses_max >= 1)
        statics->add(Term::symbol("badge_cap", {Term::integer(c.badge_uses_max)}));
    d->statics = statics;
    add_all_fluents(*d);

    auto in = [&](const std::string &r, bool v) { return lit(*d, Term::symbol("in", {sym(r)}), v); };
    auto locked = [&](std::size_t i, bool v) {
        return lit(*d, Term::symbol("locked", {sym("d" + std::to_string(i))}), v);
    };
    auto used = [&](int n, bool v) {
        return lit(*d, Term::symbol("badge_used_at_least", {Term::integer(n)}), v);
    };

    // move(R1, R2) for every door orientation, in door order.
    std::vector<std::pair<std::string, std::string>> moves;
    for (const auto &door : c.doors)
        for (auto pr : {std::pair{door.from, door.to}, std::pair{door.to, door.from}})
            if (std::find(moves.begin(), moves.end(), pr) == moves.end())
                moves.push_back(pr);
    for (const auto &[r1, r2] : moves) {
        GroundAction a;
        a.term = Term::symbol("move", {sym(r1), sym(r2)});
        for (std::size_t i = 0; i < c.doors.size(); ++i) {
            const auto &door = c.doors[i];
            bool joins = (door.from == r1 && door.to == r2) || (door.from == r2 && door.to == r1);
            if (joins)
                a.preconditions.push_back({in(r1, true), locked(i, false)});
        }
        a.effects = {{{}, {in(r2, true), in(r1, false)}}};
        d->add_action(std::move(a));
    }
    for (std::size_t i = 0; i < c.doors.size(); ++i) {
        const auto &door = c.doors[i];
        GroundAction a;
        a.term = Term::symbol("open_door", {sym("d" + std::to_string(i))});
        a.physically_possible =
            door.key && std::find(c.keys.begin(), c.keys.end(), *door.key) != c.keys.end();
        a.preconditions = {{in(door.from, true), locked(i, true)}, {in(door.to, true), locked(i, true)}};
        a.effects = {{{}, {locked(i, false)}}};
        d->add_action(std::move(a));
    }
    for (std::size_t i = 0; i < c.doors.size(); ++i) {
        const auto &door = c.doors[i];
        GroundAction a;
        a.term = Term::symbol("open_with_badge", {sym("d" + std::to_string(i))});
        a.physically_possible = c.has_badge;
        a.preconditions = {{in(door.from, true), locked(i, true)}, {in(door.to, true), locked(i, true)}};
        if (c.physical_badge_cap) {
            if (c.badge_uses_max == 0)
                a.physically_possible = false;
            else
                for (auto &conj : a.preconditions)
                    conj.push_back(used(c.badge_uses_max, false));
        }
        a.effects = {{{}, {locked(i, false)}}};
        // Counter: the first unset level becomes set.
        for (int n = 1; n <= max_count; ++n) {
            ConditionalEffect e;
            if (n > 1)
                e.when.push_back(used(n - 1, true));
            e.when.push_back(used(n, false));
            e.set.push_back(used(n, true));
            a.effects.push_back(std::move(e));
        }
        d->add_action(std::move(a));
    }
    d->model.allow_wait = true;
    d->durations.entries = {{"move", -1, 0, 0, 1}, {"open_door", -1, 0, 0, 1}, {"open_with_badge", -1, 0, 0, 1}};
    d->durations.wait = 0;

    LoadedProblem lp;
    lp.problem.name = c.name;
    lp.problem.initial = initial_state(*d);
    lp.problem.initial.fluents[in(c.start, true).fluent] = true;
    for (std::size_t i = 0; i < c.doors.size(); ++i)
        if (c.doors[i].locked)
            lp.problem.initial.fluents[locked(i, true).fluent] = true;
    lp.problem.goal = {in(c.goal, true)};
    lp.problem.horizon = c.horizon;
    lp.problem.mode = check_mode(c.mode);
    lp.domain = d;
    return lp;
}

RoomsConfig parse_rooms_config(const std::string &text) {
    json j = parse_json(text);
    RoomsConfig c;
    c.name = get_or<std::string>(j, "name", "", "");
    c.rooms = get<std::vector<std::string>>(j, "rooms", "");
    if (j.contains("doors"))
        for (std::size_t i = 0; i < j["doors"].size(); ++i) {
            const json &dj = j["doors"][i];
            std::string p = idx("doors", i);
            RoomsDoor door;
            door.from = get<std::string>(dj, "from", p);
            door.to = get<std::string>(dj, "to", p);
            door.oneway = get_or<bool>(dj, "oneway", false, p);
            door.locked = get_or<bool>(dj, "locked", false, p);
            if (dj.contains("key") && !dj["key"].is_null())
                door.key = get<std::string>(dj, "key", p);
            c.doors.push_back(door);
        }
    const json &agent = need(j, "agent", "");
    c.start = get<std::string>(agent, "start", "agent");
    c.keys = get_or<std::vector<std::string>>(agent, "keys", {}, "agent");
    c.has_badge = get_or<bool>(agent, "has_badge", false, "agent");
    c.badge_uses_max = get_or<int>(agent, "badge_uses_max", 3, "agent");
    c.protective_equipment = get_or<bool>(agent, "protective_equipment", false, "agent");
    c.physical_badge_cap = get_or<bool>(j, "physical_badge_cap", false, "");
    if (j.contains("hazards"))
        for (std::size_t i = 0; i < j["hazards"].size(); ++i) {
            const json &h = j["hazards"][i];
            std::string p = idx("hazards", i);
            c.hazards.emplace_back(get<std::string>(h, "room", p), get<std::string>(h, "kind", p));
        }
    c.goal = get<std::string>(j, "goal", "");
    c.horizon = get_or<int>(j, "horizon", 12, "");
    c.mode = get_or<std::string>(j, "mode", "non-emergency", "");
    return c;
}

LoadedProblem load_problem(const std::string &text) {
    json j = parse_json(text);
    std::string dom = get<std::string>(j, "domain", "");
    if (dom == "traffic")
        return build_traffic(parse_traffic_config(text));
    if (dom == "rooms")
        return build_rooms(parse_rooms_config(text));
    throw ConfigError("domain", "unknown domain '" + dom + "'");
}

LoadedProblem load_problem_file(const std::string &path) { return load_problem(read_file(path)); }

}  // namespace aoplkit
