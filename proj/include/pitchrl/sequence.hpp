#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pitchrl/events.hpp"
#include "pitchrl/state.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

struct SyncParams {
    double max_event_gap_s = 1.0;
};

/// Groups tracking rows into per-frame snapshots with velocities and
/// accelerations derived by compute_kinematics over each object's series.
/// Heights come from the roster (180 cm when absent); frames bridged across
/// long tracking gaps mark the player not visible. Rows must be grouped by
/// nondecreasing frame index and every frame must carry the ball.
std::vector<FrameSnapshot> assemble_frames(const std::vector<TrackingRow>& rows,
                                           const Roster& roster, double frame_rate,
                                           const PitchConfig& pitch);

/// Tracking frames with events attached and possession context swept forward
/// from the most recent attached event. Frames before the first event carry
/// no possession.
struct AlignedStream {
    std::vector<FrameSnapshot> frames;
    std::vector<std::vector<int>> events_at;  // indices into the event list, per frame
    std::vector<std::optional<std::int64_t>> possession_id;
    std::vector<StateContext> contexts;
    int dropped_events = 0;
};

/// Attaches each event to the nearest frame by timestamp (ties go to the
/// earlier frame); events farther than max_event_gap_s from any frame are
/// dropped and counted. Possession team, carrier, and possession id follow
/// the most recent attached event. The context is inter on frames lying
/// between events of different teams. Raw frames are oriented home toward +x,
/// so attack_direction is set from the possession team.
AlignedStream sync_events_tracking(const std::vector<EventRecord>& events,
                                   std::vector<FrameSnapshot> frames,
                                   const SyncParams& params = {});

enum class Outcome { goal, conceded_next, other, unresolved };
std::string outcome_name(Outcome o);

struct SegmentParams {
    int min_frames = 30;
    int max_frames = 600;
};

/// One attacking possession, attack-direction normalized.
struct PossessionSequence {
    std::int64_t possession_id = 0;
    Team team = Team::home;
    std::vector<FrameSnapshot> frames;
    std::vector<StateContext> contexts;
    std::vector<std::vector<int>> events_at;  // global event indices per local frame
    std::map<std::int64_t, std::vector<ActionLabel>> labels;  // player -> per-frame label
    Outcome outcome = Outcome::unresolved;
    std::vector<int> shot_frames;  // local frame indices
};

/// Cuts the stream into contiguous possession_id runs, discards runs shorter
/// than min_frames, truncates at max_frames, normalizes attack direction,
/// and resolves outcomes: a "goal" event in the retained frames marks a goal;
/// a sequence followed by the other team's goal sequence is conceded_next;
/// everything else is other.
std::vector<PossessionSequence> segment_sequences(const AlignedStream& stream,
                                                  const std::vector<EventRecord>& events,
                                                  const SegmentParams& params = {});

struct LabelParams {
    double v_stay = 0.5;     // m/s
    double window_s = 1.0;   // forward displacement window
    double frame_rate = 25.0;
};

/// Fills seq.labels: the carrier takes the event class at event frames and
/// idle_on_ball between events; everyone else takes stay or the nearest of 8
/// directions from their displacement over the forward window (backward at
/// the sequence end).
void label_actions(PossessionSequence& seq, const std::vector<EventRecord>& events,
                   const LabelParams& params = {});

}  // namespace pitchrl
