#pragma once

#include <utility>

#include "secondspecies/errors.hpp"
#include "secondspecies/vec2.hpp"

// Planar Kepler problem with unit gravitational parameter, H = |v|^2/2 - 1/|x|,
// and Lambert connecting arcs at fixed energy / fixed time of flight.
//
// Conventions:
//  * Connecting ellipses are normalized to semimajor axis a = 1 by the scaling
//    x -> (-2E) x; the second focus is the intersection of the circles
//    |x_-| + |x_- - F| = 2, |x_+| + |x_+ - F| = 2 on the left of the directed
//    segment x_- -> x_+.  The right-branch family is not implemented.
//  * The revolution index n counts full turns around the origin,
//    n = floor(total polar sweep / 2pi); n >= 0 is counterclockwise travel,
//    n < 0 clockwise.  sgn 0 = 1 in the action formula.

namespace secsp {

inline constexpr double kPi = 3.14159265358979323846;

// W(s) = (1/2) sqrt((4-s)s) + 2 atan sqrt(s/(4-s)) on [0,4]; W(4) = pi by limit.
// Evaluated as chi + sin(chi), chi = 2 asin(sqrt(s)/2), which is exact at both ends.
double lambert_W(double s);
double lambert_W_d1(double s);  // dW/ds = (1/2) sqrt((4-s)/s), s in (0,4)
double lambert_W_d2(double s);  // d2W/ds2 = -1 / (s^{3/2} sqrt(4-s))

// The transversality domain X: || |x_+| - |x_-| || < |x_+ - x_-| < 4 - |x_-| - |x_+|.
bool in_domain_X(Vec2 x_minus, Vec2 x_plus);

// Second focus of the a = 1 connecting ellipse, left of the segment x_- -> x_+.
// Throws DomainError outside X.
Vec2 second_focus(Vec2 x_minus, Vec2 x_plus);

// Maupertuis action of the simple counterclockwise arc at a = 1 (E = -1/2),
// f = W(s_+) +/- W(s_-) with the sign fixed by the arc angle (minus on (0,pi]).
double lambert_f(Vec2 x_minus, Vec2 x_plus);

// Maupertuis action J_n(E, x_-, x_+) of the n-revolution connecting orbit.
// Requires E < 0 and (-2E)(x_-, x_+) in X.
double action_J(int n, double E, Vec2 x_minus, Vec2 x_plus);

// tau_n = dJ_n/dE, the time of flight, in closed form.
double time_of_flight(int n, double E, Vec2 x_minus, Vec2 x_plus);

// d tau / dE = d^2 J / dE^2, in closed form.
double time_of_flight_dE(int n, double E, Vec2 x_minus, Vec2 x_plus);

// Geometry of the connecting arc Gamma_n(E, x_-, x_+) in physical scale.
// Positions on the arc are point(u) for eccentric anomaly u in [u0, u1]
// (u decreasing for clockwise arcs, u1 < u0).
struct EllipseArc {
    double a = 1.0;        // semimajor axis, = 1/(-2E)
    double e = 0.0;        // eccentricity
    Vec2 center;           // ellipse center (physical scale)
    Vec2 axis_major;       // unit vector, center -> periapsis
    double u0 = 0.0;       // eccentric anomaly at x_-
    double u1 = 0.0;       // eccentric anomaly at x_+ including revolutions
    bool clockwise = false;

    Vec2 point(double u) const;     // position at eccentric anomaly u
    Vec2 velocity(double u) const;  // velocity at u in traversal direction
    double tof() const;             // time of flight along the arc
    double radius(double u) const { return a * (1.0 - e * std::cos(u)); }
};

EllipseArc build_arc(int n, double E, Vec2 x_minus, Vec2 x_plus);

// One Lambert connecting orbit with its actions and endpoint momenta.
struct LambertArc {
    int n = 0;
    double energy = 0.0;   // unit-Kepler orbital energy, < 0
    double tof = 0.0;      // time of flight
    Vec2 x_minus, x_plus;
    Vec2 second_focus;     // physical scale (of the a = 1/(-2E) ellipse)
    double action_J = 0.0; // Maupertuis action J_n
    double action_F = 0.0; // Hamilton action F_n = J_n - tof * energy
    Vec2 y_minus, y_plus;  // endpoint velocities (= momenta of the unit problem)
    EllipseArc geometry;
};

// Assemble the full LambertArc at fixed energy.
LambertArc make_arc_fixed_energy(int n, double E, Vec2 x_minus, Vec2 x_plus);

// Solve Lambert's problem at fixed time of flight: find E < 0 with
// tau_n(E, x_-, x_+) = tau.  Throws NoSolutionError with the attainable
// tau-range if tau is outside it.
LambertArc solve_fixed_time(int n, double tau, Vec2 x_minus, Vec2 x_plus);

// The attainable open tau-interval of D_n at these endpoints (lo may be 0, hi
// may be +inf for |n| >= 1).
std::pair<double, double> tof_range(int n, Vec2 x_minus, Vec2 x_plus);

// Endpoint momenta (y_-, y_+): y_+ = dF_n/dx_+, y_- = -dF_n/dx_-.
std::pair<Vec2, Vec2> endpoint_momenta(const LambertArc& arc);

struct KeplerState {
    Vec2 position;
    Vec2 velocity;
};

// Advance a unit-Kepler state by time t.  Bound orbits use Kepler's equation;
// throws SingularityError for rectilinear motion reaching the origin in [0,t],
// and DomainError for unbound states.
KeplerState propagate_kepler(const KeplerState& state, double t);

}  // namespace secsp
