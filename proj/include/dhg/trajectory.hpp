#pragma once

#include <vector>

#include "dhg/pieces.hpp"
#include "dhg/signal.hpp"

namespace dhg {

struct TrajectorySegment {
  double start;
  Mode mode;
  Piece piece;
};

// Analog trajectory pasted from per-mode closed-form pieces; segment i is
// valid on [start_i, start_{i+1}).
class Trajectory {
 public:
  Trajectory(std::vector<TrajectorySegment> segments, double horizon);

  const std::vector<TrajectorySegment>& segments() const { return segments_; }
  double horizon() const { return horizon_; }
  const TrajectorySegment& segment_at(double t) const;
  double output(double t) const;
  StateVector state(double t) const;

 private:
  std::vector<TrajectorySegment> segments_;
  double horizon_;
};

// Digital level of a piece immediately after its start time: the sign of
// v - xi, or the direction of motion when v equals xi.
bool start_level(const Piece& p, double xi);

// Transitions of Theta(output) produced by a piece that starts while the
// digitized output is `incoming_level`: possibly one at the start time,
// then every threshold crossing in (t0, horizon]. The search never depends
// on where the piece is later cut off.
std::vector<Transition> piece_transitions(const Piece& p, double xi,
                                          bool incoming_level, double horizon);

// Theta(x(t)) with Theta(v) = 1 iff v > xi.
BinarySignal threshold_digitize(const Trajectory& trajectory, double xi);

}  // namespace dhg
