#ifndef AOPLKIT_CONFIG_H
#define AOPLKIT_CONFIG_H

#include <optional>
#include <string>
#include <vector>

#include "aoplkit/domain.h"

namespace aoplkit {

struct TrafficEdge {
    long long from = 0;
    long long to = 0;
    long long speed_limit = 0;
    bool bidirectional = true;
    // Physical cap on driving speed along the edge (road condition).
    std::optional<long long> max_speed;
};

struct TrafficSign {
    long long loc = 0;
    std::string type;  // "stop" or "do_not_enter"
    std::optional<long long> from;  // do_not_enter: entering loc from here
};

struct TrafficLight {
    long long loc = 0;
    int step = 0;
    std::string color;
};

struct TrafficEvent {
    long long a = 0;
    long long b = 0;  // == a for pedestrians
    int step = 0;
};

struct TrafficConfig {
    std::string name;
    std::vector<long long> locations;
    std::vector<TrafficEdge> edges;
    std::vector<TrafficSign> signs;
    std::vector<TrafficLight> lights;
    std::vector<TrafficEvent> pedestrians;
    std::vector<TrafficEvent> school_bus;
    std::vector<long long> speeds{15, 25, 35, 45, 65, 85};
    long long initial = 0;
    long long goal = 0;
    int horizon = 8;
    std::string mode = "emergency";
};

struct RoomsDoor {
    std::string from;
    std::string to;
    bool oneway = false;
    bool locked = false;
    std::optional<std::string> key;
};

struct RoomsConfig {
    std::string name;
    std::vector<std::string> rooms;
    std::vector<RoomsDoor> doors;
    std::string start;
    std::vector<std::string> keys;
    bool has_badge = false;
    int badge_uses_max = 3;
    bool protective_equipment = false;
    bool physical_badge_cap = false;
    std::vector<std::pair<std::string, std::string>> hazards;  // room, kind
    std::string goal;
    int horizon = 12;
    std::string mode = "non-emergency";
};

LoadedProblem build_traffic(const TrafficConfig &c);
LoadedProblem build_rooms(const RoomsConfig &c);

TrafficConfig parse_traffic_config(const std::string &json_text);
RoomsConfig parse_rooms_config(const std::string &json_text);

// Dispatches on the "domain" key ("traffic" or "rooms"); ConfigError names
// the offending key.
LoadedProblem load_problem(const std::string &json_text);
LoadedProblem load_problem_file(const std::string &path);

std::string read_file(const std::string &path);

}  // namespace aoplkit

#endif
