#pragma once

#include "fieldcover/tracks.hpp"

namespace fieldcover {

enum class TurnKind { Omega, Pi, Tee };

// Three-point turn length variants. Paper (the default) evaluates the
// arccos argument as (d + 2)/(4 r), with a fixed 2 m clearance term;
// Normalized scales the clearance with the radius, (d + 2 r)/(4 r), which
// keeps the argument dimensionless and the length scale covariant.
enum class TeeFormula { Paper, Normalized };

struct TurnCost {
    double length = 0.0;
    TurnKind kind = TurnKind::Omega;
};

// Loop turn, valid for 0 < d <= 2*r_min. Throws std::domain_error outside.
double omega_length(double d, double r_min);

// Rounded-corner turn, valid for d >= 2*r_min. Throws std::domain_error.
double pi_length(double d, double r_min);

// Three-point turn with reversing. Valid while the arccos argument stays in
// [-1, 1]; throws std::domain_error otherwise.
double tee_length(double d, double r_min, TeeFormula formula = TeeFormula::Paper);

// Shortest feasible maneuver for a center distance d: the rounded-corner
// turn whenever d >= 2*r_min, otherwise the shorter of the loop turn and
// (for reverse-capable machines, within its domain) the three-point turn.
// Ties go to the loop turn.
TurnCost min_turn(double d, const MachineSpec& spec, TeeFormula formula = TeeFormula::Paper);

const char* turn_kind_name(TurnKind kind);

}  // namespace fieldcover
