#include "pitchrl/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pitchrl/kinematics.hpp"
#include "pitchrl/rules.hpp"

namespace pitchrl {

std::vector<FrameSnapshot> assemble_frames(const std::vector<TrackingRow>& rows,
                                           const Roster& roster, double frame_rate,
                                           const PitchConfig& pitch) {
    if (rows.empty()) throw std::invalid_argument("assemble_frames: no rows");
    if (frame_rate <= 0.0) throw std::invalid_argument("assemble_frames: frame_rate <= 0");

    std::vector<std::int64_t> frame_ids;
    std::vector<double> timestamps;
    for (const auto& r : rows) {
        if (frame_ids.empty() || r.frame != frame_ids.back()) {
            if (!frame_ids.empty() && r.frame < frame_ids.back())
                throw std::invalid_argument("assemble_frames: rows not grouped by "
                                            "nondecreasing frame at frame " +
                                            std::to_string(r.frame));
            frame_ids.push_back(r.frame);
            timestamps.push_back(r.timestamp_s);
        } else if (r.timestamp_s != timestamps.back()) {
            throw std::invalid_argument("assemble_frames: conflicting timestamps in frame " +
                                        std::to_string(r.frame));
        }
    }
    const int n = static_cast<int>(frame_ids.size());

    struct ObjectSeries {
        std::string team;
        int jersey = 0;
        std::vector<std::optional<Vec2>> positions;
    };
    std::map<std::int64_t, ObjectSeries> objects;
    {
        int fi = 0;
        for (const auto& r : rows) {
            while (frame_ids[fi] != r.frame) ++fi;
            auto [it, inserted] = objects.try_emplace(r.object_id);
            ObjectSeries& obj = it->second;
            if (inserted) {
                obj.team = r.team;
                obj.jersey = r.jersey;
                obj.positions.assign(n, std::nullopt);
            } else if (obj.team != r.team || obj.jersey != r.jersey) {
                throw std::invalid_argument("assemble_frames: object " +
                                            std::to_string(r.object_id) +
                                            " changes team or jersey");
            }
            obj.positions[fi] = Vec2{r.x_m, r.y_m};
        }
    }

    std::vector<FrameSnapshot> frames(n);
    for (int fi = 0; fi < n; ++fi) {
        frames[fi].frame_index = frame_ids[fi];
        frames[fi].timestamp = timestamps[fi];
    }

    bool saw_ball = false;
    for (const auto& [object_id, obj] : objects) {
        const KinematicsResult kin = compute_kinematics(obj.positions, frame_rate);
        if (obj.team == "ball") {
            saw_ball = true;
            for (int fi = 0; fi < n; ++fi) {
                frames[fi].ball.position = kin.positions[fi];
                frames[fi].ball.velocity = kin.velocities[fi];
            }
            continue;
        }
        PlayerState p;
        p.player_id = object_id;
        p.team = team_from_name(obj.team);
        p.jersey = obj.jersey;
        auto hit = roster.find(object_id);
        p.height_cm = hit != roster.end() ? hit->second : 180.0;
        for (int fi = 0; fi < n; ++fi) {
            p.position = kin.positions[fi];
            p.velocity = kin.velocities[fi];
            p.acceleration = kin.accelerations[fi];
            p.visible = !kin.long_gap[fi];
            frames[fi].players.push_back(p);
        }
    }
    if (!saw_ball) throw std::invalid_argument("assemble_frames: no ball rows");

    for (auto& frame : frames) {
        std::sort(frame.players.begin(), frame.players.end(),
                  [](const PlayerState& a, const PlayerState& b) {
                      if (a.team != b.team) return a.team == Team::home;
                      return a.jersey < b.jersey;
                  });
        frame.validate(pitch);
    }
    return frames;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::goal: return "goal";
        case Outcome::conceded_next: return "conceded_next";
        case Outcome::other: return "other";
        default: return "unresolved";
    }
}

AlignedStream sync_events_tracking(const std::vector<EventRecord>& events,
                                   std::vector<FrameSnapshot> frames,
                                   const SyncParams& params) {
    for (std::size_t i = 1; i < frames.size(); ++i)
        if (frames[i].timestamp <= frames[i - 1].timestamp)
            throw std::invalid_argument("sync_events_tracking: frame timestamps not increasing");

    AlignedStream out;
    out.frames = std::move(frames);
    const std::size_t n = out.frames.size();
    out.events_at.assign(n, {});
    out.possession_id.assign(n, std::nullopt);
    out.contexts.assign(n, {});
    if (n == 0) {
        out.dropped_events = static_cast<int>(events.size());
        return out;
    }

    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = out.frames[i].timestamp;

    for (int ei = 0; ei < static_cast<int>(events.size()); ++ei) {
        const double t = events[ei].timestamp;
        auto it = std::lower_bound(ts.begin(), ts.end(), t);
        std::size_t hi = it - ts.begin();
        std::size_t best;
        if (hi == 0) {
            best = 0;
        } else if (hi == n) {
            best = n - 1;
        } else {
            const double d_lo = t - ts[hi - 1];
            const double d_hi = ts[hi] - t;
            best = d_lo <= d_hi ? hi - 1 : hi;  // ties to the earlier frame
        }
        if (std::abs(ts[best] - t) > params.max_event_gap_s) {
            ++out.dropped_events;
            continue;
        }
        out.events_at[best].push_back(ei);
    }

    // Forward sweep: possession context from the most recent attached event.
    int last_event = -1;
    std::vector<int> prev_event(n, -1);
    for (std::size_t f = 0; f < n; ++f) {
        if (!out.events_at[f].empty()) last_event = out.events_at[f].back();
        prev_event[f] = last_event;
        if (last_event >= 0) {
            const EventRecord& e = events[last_event];
            out.frames[f].possession_team = e.team;
            out.frames[f].on_ball_player = e.player_id;
            out.possession_id[f] = e.possession_id;
            out.frames[f].attack_direction =
                e.team == Team::home ? AttackDirection::plus_x : AttackDirection::minus_x;
        }
    }

    // Backward sweep for the next attached event, then contexts.
    std::vector<int> next_event(n, -1);
    int coming = -1;
    for (std::size_t f = n; f-- > 0;) {
        next_event[f] = coming;
        if (!out.events_at[f].empty()) coming = out.events_at[f].front();
    }
    for (std::size_t f = 0; f < n; ++f) {
        StateContext ctx;
        if (prev_event[f] >= 0 && next_event[f] >= 0 &&
            events[prev_event[f]].team != events[next_event[f]].team) {
            ctx.kind = ContextKind::inter;
            ctx.transition = true;  // the possession team is losing the ball
        }
        out.contexts[f] = ctx;
    }
    return out;
}

std::vector<PossessionSequence> segment_sequences(const AlignedStream& stream,
                                                  const std::vector<EventRecord>& events,
                                                  const SegmentParams& params) {
    if (params.min_frames < 1 || params.max_frames < params.min_frames)
        throw std::invalid_argument("segment_sequences: bad frame limits");

    std::vector<PossessionSequence> seqs;
    const std::size_t n = stream.frames.size();
    std::size_t i = 0;
    while (i < n) {
        if (!stream.possession_id[i].has_value()) {
            ++i;
            continue;
        }
        const std::int64_t pid = *stream.possession_id[i];
        std::size_t j = i;
        while (j < n && stream.possession_id[j].has_value() && *stream.possession_id[j] == pid)
            ++j;
        const std::size_t run = j - i;
        if (run >= static_cast<std::size_t>(params.min_frames)) {
            const std::size_t keep = std::min(run, static_cast<std::size_t>(params.max_frames));
            PossessionSequence seq;
            seq.possession_id = pid;
            if (!stream.frames[i].possession_team.has_value())
                throw std::logic_error("segment_sequences: possession frame without team");
            seq.team = *stream.frames[i].possession_team;
            seq.frames.reserve(keep);
            for (std::size_t f = i; f < i + keep; ++f) {
                if (stream.frames[f].possession_team != seq.team)
                    throw std::runtime_error(
                        "segment_sequences: possession_id " + std::to_string(pid) +
                        " spans both teams");
                seq.frames.push_back(normalize_attack_direction(stream.frames[f]));
                seq.contexts.push_back(stream.contexts[f]);
                seq.events_at.push_back(stream.events_at[f]);
            }
            for (std::size_t local = 0; local < seq.events_at.size(); ++local)
                for (int ei : seq.events_at[local])
                    if (map_provider_action(events[ei].action_type) == ActionLabel::shot)
                        seq.shot_frames.push_back(static_cast<int>(local));
            seqs.push_back(std::move(seq));
        }
        i = j;
    }

    for (std::size_t s = 0; s < seqs.size(); ++s) {
        bool goal = false;
        for (const auto& frame_events : seqs[s].events_at)
            for (int ei : frame_events)
                if (events[ei].action_type == "goal") goal = true;
        seqs[s].outcome = goal ? Outcome::goal : Outcome::other;
    }
    for (std::size_t s = 0; s + 1 < seqs.size(); ++s) {
        if (seqs[s].outcome == Outcome::goal) continue;
        if (seqs[s + 1].team != seqs[s].team && seqs[s + 1].outcome == Outcome::goal)
            seqs[s].outcome = Outcome::conceded_next;
    }
    return seqs;
}

void label_actions(PossessionSequence& seq, const std::vector<EventRecord>& events,
                   const LabelParams& params) {
    if (params.v_stay < 0.0 || params.window_s <= 0.0 || params.frame_rate <= 0.0)
        throw std::invalid_argument("label_actions: bad parameters");
    const int T = static_cast<int>(seq.frames.size());
    if (T == 0) return;
    const int W = std::max(1, static_cast<int>(std::lround(params.window_s * params.frame_rate)));

    seq.labels.clear();
    for (const auto& p : seq.frames[0].players)
        seq.labels[p.player_id] = std::vector<ActionLabel>(T, ActionLabel::stay);

    constexpr double kPi = 3.14159265358979323846;
    for (int t = 0; t < T; ++t) {
        const FrameSnapshot& frame = seq.frames[t];
        std::map<std::int64_t, ActionLabel> event_labels;
        for (int ei : seq.events_at[t])
            event_labels[events[ei].player_id] = map_provider_action(events[ei].action_type);

        for (const auto& p : frame.players) {
            auto lit = seq.labels.find(p.player_id);
            if (lit == seq.labels.end())
                throw std::runtime_error("label_actions: player " +
                                         std::to_string(p.player_id) +
                                         " appears mid-sequence");
            const bool is_carrier =
                frame.on_ball_player.has_value() && *frame.on_ball_player == p.player_id;
            if (is_carrier) {
                // Only the carrier takes an on-ball class; a same-frame event
                // by anyone else would clash with that player's off-ball mask.
                auto eit = event_labels.find(p.player_id);
                lit->second[t] = eit != event_labels.end() ? eit->second
                                                           : ActionLabel::idle_on_ball;
                continue;
            }
            int i = t, j = std::min(t + W, T - 1);
            if (j == i) {
                i = std::max(0, t - W);
                j = t;
            }
            const PlayerState* pi = seq.frames[i].find_player(p.player_id);
            const PlayerState* pj = seq.frames[j].find_player(p.player_id);
            const double dt = seq.frames[j].timestamp - seq.frames[i].timestamp;
            Vec2 disp = pj->position - pi->position;
            const double speed = dt > 0.0 ? disp.norm() / dt : 0.0;
            if (speed < params.v_stay) {
                lit->second[t] = ActionLabel::stay;
            } else {
                const double angle = std::atan2(disp.y, disp.x);
                const int k = static_cast<int>(std::llround(angle / (kPi / 4.0)));
                lit->second[t] = move_action(k);
            }
        }
    }
}

}  // namespace pitchrl
