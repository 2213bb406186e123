#include "fieldcover/turns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fieldcover {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive_radius(double r_min) {
    if (!(r_min > 0.0)) throw std::domain_error("turn maneuver requires r_min > 0");
}
}  // namespace

double omega_length(double d, double r_min) {
    require_positive_radius(r_min);
    if (!(d > 0.0) || d > 2.0 * r_min)
        throw std::domain_error("loop turn requires 0 < d <= 2*r_min");
    const double arg = (2.0 * r_min + d) / (4.0 * r_min);
    return r_min * (3.0 * kPi - 4.0 * std::asin(arg));
}

double pi_length(double d, double r_min) {
    require_positive_radius(r_min);
    if (d < 2.0 * r_min) throw std::domain_error("rounded-corner turn requires d >= 2*r_min");
    return d + (kPi - 2.0) * r_min;
}

double tee_length(double d, double r_min, TeeFormula formula) {
    require_positive_radius(r_min);
    const double numerator = formula == TeeFormula::Paper ? d + 2.0 : d + 2.0 * r_min;
    const double arg = numerator / (4.0 * r_min);
    if (arg < -1.0 || arg > 1.0)
        throw std::domain_error("three-point turn arccos argument outside [-1, 1]");
    return r_min * (2.0 * kPi + std::acos(arg));
}

TurnCost min_turn(double d, const MachineSpec& spec, TeeFormula formula) {
    require_positive_radius(spec.r_min);
    if (!(d > 0.0)) throw std::domain_error("min_turn requires d > 0");
    if (d >= 2.0 * spec.r_min) return {pi_length(d, spec.r_min), TurnKind::Pi};

    bool any = false;
    TurnCost best;
    const double omega = omega_length(d, spec.r_min);
    best = {omega, TurnKind::Omega};
    any = true;
    if (spec.reverse_capable) {
        try {
            const double tee = tee_length(d, spec.r_min, formula);
            if (tee < best.length) best = {tee, TurnKind::Tee};
        } catch (const std::domain_error&) {
            // three-point turn not executable at this d; keep the loop turn
        }
    }
    if (!any) throw std::domain_error("no feasible maneuver between these tracks");
    return best;
}

const char* turn_kind_name(TurnKind kind) {
    switch (kind) {
        case TurnKind::Omega: return "omega";
        case TurnKind::Pi: return "pi";
        case TurnKind::Tee: return "tee";
    }
    return "?";
}

}  // namespace fieldcover
