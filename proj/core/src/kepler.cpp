#include "secondspecies/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace secsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scale-invariant Lambert data of an endpoint pair.
struct PairGeometry {
    double s_plus;   // |x_-| + |x_+| + |x_- - x_+|
    double s_minus;  // |x_-| + |x_+| - |x_- - x_+|
    double sigma;    // -1 for arc angle in (0,pi], +1 for [pi,2pi)
};

PairGeometry pair_geometry(Vec2 xm, Vec2 xp) {
    const double rm = xm.norm(), rp = xp.norm();
    const double c = (xp - xm).norm();
    // Arc angle of the counterclockwise simple arc, in (0, 2pi).
    double theta = xp.arg() - xm.arg();
    theta -= 2.0 * kPi * std::floor(theta / (2.0 * kPi));
    PairGeometry g;
    g.s_plus = rm + rp + c;
    g.s_minus = std::max(rm + rp - c, 0.0);
    g.sigma = (theta > kPi) ? 1.0 : -1.0;
    return g;
}

void require_domain_X(Vec2 xm, Vec2 xp) {
    if (!in_domain_X(xm, xp)) {
        throw DomainError("endpoint pair outside the Lambert domain X");
    }
}

// phi(k) = 2pi|n| + sgn(n) (W(k s_+) + sigma W(k s_-)) and its k-derivatives,
// so that J_n = k^{-1/2} phi(k) with k = -2E.
struct PhiEval {
    double phi, dphi, d2phi;
};

PhiEval eval_phi(int n, double k, const PairGeometry& g, int derivs) {
    const double sg = (n >= 0) ? 1.0 : -1.0;  // sgn 0 = 1
    PhiEval out{};
    out.phi = 2.0 * kPi * std::abs(n) +
              sg * (lambert_W(k * g.s_plus) + g.sigma * lambert_W(k * g.s_minus));
    if (derivs >= 1) {
        out.dphi = sg * (lambert_W_d1(k * g.s_plus) * g.s_plus +
                         g.sigma * lambert_W_d1(k * g.s_minus) * g.s_minus);
    }
    if (derivs >= 2) {
        out.d2phi = sg * (lambert_W_d2(k * g.s_plus) * g.s_plus * g.s_plus +
                          g.sigma * lambert_W_d2(k * g.s_minus) * g.s_minus * g.s_minus);
    }
    return out;
}

double tau_of_k(int n, double k, const PairGeometry& g) {
    const PhiEval p = eval_phi(n, k, g, 1);
    return std::pow(k, -1.5) * p.phi - 2.0 * std::pow(k, -0.5) * p.dphi;
}

// d tau / dk (note dE = -dk/2).
double dtau_dk(int n, double k, const PairGeometry& g) {
    const PhiEval p = eval_phi(n, k, g, 2);
    return -1.5 * std::pow(k, -2.5) * p.phi + 2.0 * std::pow(k, -1.5) * p.dphi -
           2.0 * std::pow(k, -0.5) * p.d2phi;
}

// Parabolic-limit time of flight (k -> 0) for n = 0 arcs (Barker's equation).
double barker_time(const PairGeometry& g) {
    return (std::pow(g.s_plus, 1.5) + g.sigma * std::pow(g.s_minus, 1.5)) / 6.0;
}

void check_energy_domain(double E, Vec2 xm, Vec2 xp) {
    if (!(E < 0.0)) throw DomainError("connecting orbits require E < 0");
    const double k = -2.0 * E;
    if (!in_domain_X(xm * k, xp * k)) {
        throw DomainError("scaled endpoint pair outside X_E");
    }
}

double wrap_positive(double angle) {
    angle = std::fmod(angle, 2.0 * kPi);
    if (angle <= 0.0) angle += 2.0 * kPi;
    return angle;
}

// Solve Kepler's equation u - e sin u = M for u, e in [0,1).
double solve_kepler_eq(double M, double e) {
    const double two_pi = 2.0 * kPi;
    const double M0 = M - two_pi * std::round(M / two_pi);
    double u = M0 + 0.85 * e * ((std::sin(M0) >= 0.0) ? 1.0 : -1.0);
    for (int it = 0; it < 60; ++it) {
        const double f = u - e * std::sin(u) - M0;
        const double fp = 1.0 - e * std::cos(u);
        const double du = f / fp;
        u -= du;
        if (std::abs(du) < 1e-15) break;
    }
    return u + (M - M0);
}

}  // namespace

double lambert_W(double s) {
    if (s < 0.0 || s > 4.0) throw DomainError("lambert_W argument outside [0,4]");
    const double chi = 2.0 * std::asin(0.5 * std::sqrt(s));
    return chi + std::sin(chi);
}

double lambert_W_d1(double s) {
    if (s <= 0.0 || s > 4.0) throw DomainError("lambert_W_d1 argument outside (0,4]");
    return 0.5 * std::sqrt(std::max(4.0 - s, 0.0) / s);
}

double lambert_W_d2(double s) {
    if (s <= 0.0 || s >= 4.0) throw DomainError("lambert_W_d2 argument outside (0,4)");
    return -1.0 / (std::pow(s, 1.5) * std::sqrt(4.0 - s));
}

bool in_domain_X(Vec2 xm, Vec2 xp) {
    const double rm = xm.norm(), rp = xp.norm();
    if (!(rm > 0.0) || !(rp > 0.0)) return false;
    const double c = (xp - xm).norm();
    return std::abs(rp - rm) < c && c < 4.0 - rm - rp;
}

Vec2 second_focus(Vec2 xm, Vec2 xp) {
    require_domain_X(xm, xp);
    const double r1 = 2.0 - xm.norm();
    const double r2 = 2.0 - xp.norm();
    const Vec2 d = xp - xm;
    const double dist = d.norm();
    const double along = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    const double h2 = r1 * r1 - along * along;
    if (!(h2 > 0.0)) throw DomainError("second_focus: circles tangent or disjoint");
    const Vec2 e = d / dist;
    return xm + along * e + std::sqrt(h2) * e.perp();
}

double lambert_f(Vec2 xm, Vec2 xp) {
    require_domain_X(xm, xp);
    const PairGeometry g = pair_geometry(xm, xp);
    return lambert_W(g.s_plus) + g.sigma * lambert_W(g.s_minus);
}

double action_J(int n, double E, Vec2 xm, Vec2 xp) {
    check_energy_domain(E, xm, xp);
    const double k = -2.0 * E;
    const PairGeometry g = pair_geometry(xm, xp);
    return std::pow(k, -0.5) * eval_phi(n, k, g, 0).phi;
}

double time_of_flight(int n, double E, Vec2 xm, Vec2 xp) {
    check_energy_domain(E, xm, xp);
    const PairGeometry g = pair_geometry(xm, xp);
    return tau_of_k(n, -2.0 * E, g);
}

double time_of_flight_dE(int n, double E, Vec2 xm, Vec2 xp) {
    check_energy_domain(E, xm, xp);
    const double k = -2.0 * E;
    const PairGeometry g = pair_geometry(xm, xp);
    const PhiEval p = eval_phi(n, k, g, 2);
    return 3.0 * std::pow(k, -2.5) * p.phi - 4.0 * std::pow(k, -1.5) * p.dphi +
           4.0 * std::pow(k, -0.5) * p.d2phi;
}

Vec2 EllipseArc::point(double u) const {
    const double b = std::sqrt(1.0 - e * e);
    return center + a * std::cos(u) * axis_major +
           a * b * std::sin(u) * axis_major.perp();
}

Vec2 EllipseArc::velocity(double u) const {
    const double b = std::sqrt(1.0 - e * e);
    Vec2 tangent = -std::sin(u) * axis_major + b * std::cos(u) * axis_major.perp();
    tangent = tangent.unit();
    if (clockwise) tangent = -tangent;
    const double r = radius(u);
    return std::sqrt(std::max(2.0 / r - 1.0 / a, 0.0)) * tangent;
}

double EllipseArc::tof() const {
    const double m0 = u0 - e * std::sin(u0);
    const double m1 = u1 - e * std::sin(u1);
    return std::pow(a, 1.5) * std::abs(m1 - m0);
}

EllipseArc build_arc(int n, double E, Vec2 xm, Vec2 xp) {
    check_energy_domain(E, xm, xp);
    const double k = -2.0 * E;
    const Vec2 Xm = xm * k, Xp = xp * k;  // unit a = 1 scale
    const Vec2 F = second_focus(Xm, Xp);

    EllipseArc arc;
    arc.a = 1.0 / k;
    arc.e = 0.5 * F.norm();
    arc.axis_major = (arc.e > 1e-14) ? (-F).unit() : Xm.unit();
    arc.center = (F * 0.5) / k;
    arc.clockwise = n < 0;

    const double b = std::sqrt(1.0 - arc.e * arc.e);
    auto anomaly = [&](Vec2 X) {
        const Vec2 w = X - F * 0.5;
        return std::atan2(w.dot(arc.axis_major.perp()) / b, w.dot(arc.axis_major));
    };
    const double um = anomaly(Xm);
    const double sweep = wrap_positive(anomaly(Xp) - um);
    arc.u0 = um;
    arc.u1 = um + sweep + 2.0 * kPi * n;  // n < 0 turns the sweep clockwise
    return arc;
}

LambertArc make_arc_fixed_energy(int n, double E, Vec2 xm, Vec2 xp) {
    LambertArc arc;
    arc.n = n;
    arc.energy = E;
    arc.x_minus = xm;
    arc.x_plus = xp;
    arc.geometry = build_arc(n, E, xm, xp);
    arc.second_focus = arc.geometry.center * 2.0;
    arc.tof = time_of_flight(n, E, xm, xp);
    arc.action_J = action_J(n, E, xm, xp);
    arc.action_F = arc.action_J - arc.tof * E;
    arc.y_minus = arc.geometry.velocity(arc.geometry.u0);
    arc.y_plus = arc.geometry.velocity(arc.geometry.u1);
    return arc;
}

std::pair<double, double> tof_range(int n, Vec2 xm, Vec2 xp) {
    require_domain_X(xm, xp);  // pair must be admissible for some E
    const PairGeometry g = pair_geometry(xm, xp);
    const double k_max = 4.0 / g.s_plus;
    const double tau_at_kmax = tau_of_k(n, k_max, g);
    if (n == 0) {
        // Monotone increasing in k: from the parabolic limit up to the X_E boundary.
        return {barker_time(g), tau_at_kmax};
    }
    if (n < 0) {
        return {tau_at_kmax, kInf};
    }
    // n >= 1: tau decreases from +inf, with a possible upturn in a thin layer
    // near k_max where d2J/dE2 changes sign.  Locate the minimum.
    double lo = 0.5 * k_max, hi = k_max * (1.0 - 1e-13);
    if (dtau_dk(n, lo, g) >= 0.0) {
        return {tau_of_k(n, lo * (1.0 + 1e-9), g), kInf};
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dtau_dk(n, mid, g) < 0.0 ? lo : hi) = mid;
    }
    return {tau_of_k(n, 0.5 * (lo + hi), g), kInf};
}

LambertArc solve_fixed_time(int n, double tau, Vec2 xm, Vec2 xp) {
    require_domain_X(xm, xp);
    const PairGeometry g = pair_geometry(xm, xp);
    const double k_max = 4.0 / g.s_plus;
    if (!(tau > 0.0)) throw DomainError("time of flight must be positive");

    // Bracket tau on a k-grid refined toward both ends of (0, k_max).
    std::vector<double> grid;
    for (double t = 1e-7; t < 0.01; t *= 10.0) grid.push_back(t);
    for (int i = 1; i <= 96; ++i) grid.push_back(i / 97.0);
    for (double t = 1e-3; t > 1e-13; t *= 0.1) grid.push_back(1.0 - t);
    std::sort(grid.begin(), grid.end());

    double k_lo = 0.0, k_hi = 0.0, f_lo = 0.0;
    bool bracketed = false;
    double prev_k = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (const double t : grid) {
        const double k = k_max * t;
        const double f = tau_of_k(n, k, g) - tau;
        if (have_prev && ((prev_f < 0.0) != (f < 0.0))) {
            k_lo = prev_k;
            k_hi = k;
            f_lo = prev_f;
            bracketed = true;
            break;  // smallest-k root: the branch joined to the tau -> inf family
        }
        prev_k = k;
        prev_f = f;
        have_prev = true;
    }
    if (!bracketed) {
        const auto range = tof_range(n, xm, xp);
        throw NoSolutionError("no connecting orbit attains this time of flight",
                              range.first, range.second);
    }

    // Safeguarded Newton on tau(k) - tau.
    double k = 0.5 * (k_lo + k_hi);
    for (int it = 0; it < 200; ++it) {
        const double f = tau_of_k(n, k, g) - tau;
        if ((f < 0.0) == (f_lo < 0.0)) {
            k_lo = k;
            f_lo = f;
        } else {
            k_hi = k;
        }
        const double deriv = dtau_dk(n, k, g);
        double k_next = k - f / deriv;
        if (!(k_next > std::min(k_lo, k_hi)) || !(k_next < std::max(k_lo, k_hi))) {
            k_next = 0.5 * (k_lo + k_hi);
        }
        const double step = std::abs(k_next - k);
        k = k_next;
        if (std::abs(f) <= 1e-12 * std::max(1.0, tau) && step <= 1e-14 * k) break;
    }
    return make_arc_fixed_energy(n, -0.5 * k, xm, xp);
}

std::pair<Vec2, Vec2> endpoint_momenta(const LambertArc& arc) {
    return {arc.geometry.velocity(arc.geometry.u0), arc.geometry.velocity(arc.geometry.u1)};
}

KeplerState propagate_kepler(const KeplerState& state, double t) {
    const double r = state.position.norm();
    if (!(r > 0.0)) throw SingularityError("propagate_kepler: state at the origin");
    const double E = 0.5 * state.velocity.norm2() - 1.0 / r;
    if (!(E < 0.0)) throw DomainError("propagate_kepler: unbound state");
    const double a = -0.5 / E;
    const double L = state.position.cross(state.velocity);

    // Laplace-Runge-Lenz vector (mu = 1): e_vec = (|v|^2 - 1/r) x - (x.v) v.
    const Vec2 evec = (state.velocity.norm2() - 1.0 / r) * state.position -
                      state.position.dot(state.velocity) * state.velocity;
    const double e = evec.norm();

    const double q_peri = a * (1.0 - e);
    if (std::abs(L) < 1e-12 * std::sqrt(a) && q_peri < 1e-10 * a) {
        // Rectilinear orbit: collision if periapsis passage occurs within [0,t].
        const double n_mean = std::pow(a, -1.5);
        const Vec2 ea0 = state.position.unit();
        const double cosu = (1.0 - r / a);  // e ~= 1
        const double u_abs = std::acos(std::clamp(cosu, -1.0, 1.0));
        const double u_now = (state.position.dot(state.velocity) >= 0.0) ? u_abs : -u_abs;
        const double M_now = u_now - e * std::sin(u_now);
        const double M_collision = (M_now <= 0.0) ? 0.0 : 2.0 * kPi;  // next pericenter
        const double dt_coll = (M_collision - M_now) / n_mean;
        (void)ea0;
        if (t >= dt_coll - 1e-12) {
            throw SingularityError("propagate_kepler: rectilinear collision with the origin");
        }
    }

    Vec2 ea = (e > 1e-14) ? evec.unit() : Vec2{1.0, 0.0};
    Vec2 eb = ea.perp();
    if (L < 0.0) eb = -eb;  // retrograde: keep u increasing with time
    const double b = std::sqrt(std::max(1.0 - e * e, 0.0));

    const Vec2 w = state.position;
    const double cosu = w.dot(ea) / a + e;
    const double sinu = (b > 0.0) ? w.dot(eb) / (a * b)
                                  : ((state.position.dot(state.velocity) >= 0.0) ? 1.0 : -1.0) *
                                        std::sqrt(std::max(1.0 - cosu * cosu, 0.0));
    const double u0 = std::atan2(sinu, cosu);

    const double n_mean = std::pow(a, -1.5);
    const double M1 = (u0 - e * std::sin(u0)) + n_mean * t;
    const double u1 = solve_kepler_eq(M1, e);

    KeplerState out;
    out.position = a * ((std::cos(u1) - e) * ea + b * std::sin(u1) * eb);
    const double rdot_scale = a * n_mean / (1.0 - e * std::cos(u1));
    out.velocity = rdot_scale * (-std::sin(u1) * ea + b * std::cos(u1) * eb);
    return out;
}

}  // namespace secsp
