#include "pitchrl/events.hpp"

#include <stdexcept>

#include <json.hpp>

#include "pitchrl/io.hpp"

namespace pitchrl {

using nlohmann::json;

std::string action_name(ActionLabel a) {
    switch (a) {
        case ActionLabel::pass: return "pass";
        case ActionLabel::through_pass: return "through_pass";
        case ActionLabel::shot: return "shot";
        case ActionLabel::cross: return "cross";
        case ActionLabel::dribble: return "dribble";
        case ActionLabel::defensive_action: return "defensive_action";
        case ActionLabel::idle_on_ball: return "idle_on_ball";
        case ActionLabel::stay: return "stay";
        default: {
            const int k = static_cast<int>(a) - 7;
            return "move_" + std::to_string(45 * k);
        }
    }
}

ActionLabel map_provider_action(const std::string& provider) {
    if (provider == "pass") return ActionLabel::pass;
    if (provider == "through_pass" || provider == "through_ball")
        return ActionLabel::through_pass;
    if (provider == "shot" || provider == "goal") return ActionLabel::shot;
    if (provider == "cross") return ActionLabel::cross;
    if (provider == "dribble" || provider == "carry" || provider == "take_on")
        return ActionLabel::dribble;
    if (provider == "interception" || provider == "clearance" || provider == "tackle" ||
        provider == "block" || provider == "defensive_action")
        return ActionLabel::defensive_action;
    throw std::invalid_argument("map_provider_action: unmappable action '" + provider + "'");
}

namespace {

EventRecord parse_event(const json& j) {
    EventRecord e;
    e.timestamp = j.at("timestamp_s").get<double>();
    e.action_type = j.at("action_type").get<std::string>();
    e.player_id = j.at("player_id").get<std::int64_t>();
    e.team = team_from_name(j.at("team").get<std::string>());
    e.position = {j.at("x_m").get<double>(), j.at("y_m").get<double>()};
    e.possession_id = j.at("possession_id").get<std::int64_t>();
    return e;
}

json event_to_json(const EventRecord& e) {
    return json{{"timestamp_s", e.timestamp}, {"action_type", e.action_type},
                {"player_id", e.player_id},   {"team", team_name(e.team)},
                {"x_m", e.position.x},        {"y_m", e.position.y},
                {"possession_id", e.possession_id}};
}

}  // namespace

EventsFile read_events_json(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": invalid JSON: " + ex.what());
    }
    EventsFile out;
    const json* arr = nullptr;
    if (doc.is_array()) {
        arr = &doc;
    } else if (doc.is_object()) {
        if (doc.contains("formation_home"))
            out.formation_home = doc.at("formation_home").get<std::string>();
        if (doc.contains("formation_away"))
            out.formation_away = doc.at("formation_away").get<std::string>();
        arr = &doc.at("events");
        if (!arr->is_array()) throw std::runtime_error(path + ": \"events\" must be an array");
    } else {
        throw std::runtime_error(path + ": expected an array or object of events");
    }
    out.events.reserve(arr->size());
    for (const auto& j : *arr) {
        try {
            out.events.push_back(parse_event(j));
        } catch (const json::exception& ex) {
            throw std::runtime_error(path + ": event " + std::to_string(out.events.size()) +
                                     ": " + ex.what());
        }
    }
    for (std::size_t i = 1; i < out.events.size(); ++i)
        if (out.events[i].timestamp < out.events[i - 1].timestamp)
            throw std::runtime_error(path + ": event timestamps decrease at index " +
                                     std::to_string(i));
    return out;
}

void write_events_json(const std::string& path, const EventsFile& file) {
    json doc;
    doc["formation_home"] = file.formation_home;
    doc["formation_away"] = file.formation_away;
    json arr = json::array();
    for (std::size_t i = 0; i < file.events.size(); ++i) {
        if (i > 0 && file.events[i].timestamp < file.events[i - 1].timestamp)
            throw std::invalid_argument(path + ": event timestamps decrease at index " +
                                        std::to_string(i));
        arr.push_back(event_to_json(file.events[i]));
    }
    doc["events"] = std::move(arr);
    write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace pitchrl
