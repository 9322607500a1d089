#ifndef QCHD_CLOSED_FORMS_H
#define QCHD_CLOSED_FORMS_H

#include <string>
#include <utility>

#include "qchd/channels.h"

namespace qchd {

// Closed-form exponent ingredients for the qubit examples. Logs are base 2.

/// (1-q/2)^a (q/2)^(1-a) + (1-q/2)^(1-a) (q/2)^a: the trace overlap of the two
/// antipodal depolarized outputs. q in (0, 1], alpha in [0, 1].
double depolarizing_overlap(double q, double alpha);

/// Exact second alpha-derivative of depolarizing_overlap, ln^2(q/(2-q)) times the overlap.
double depolarizing_overlap_second_derivative(double q, double alpha);

/// Discrimination power of depolarizing(q): -(1-q) log2(q/(2-q)); +inf at q = 0.
double depolarizing_power(double q);

/// Stationary point of -log2 overlap(alpha) - alpha a - (1-alpha) b, the
/// maximiser of the Chernoff objective for the depolarizing channel. Requires
/// |a - b| <= depolarizing_power(q) (ABOutOfRange otherwise); q in (0, 1).
double depolarizing_chernoff_alpha(double q, double a, double b);

/// Bloch vectors (+-sqrt(1-gamma), 0, gamma) of the outputs of amplitude_damping(gamma)
/// on the inputs |+>, |->: the reference pair of the amplitude-damping example.
std::pair<Vec3, Vec3> amplitude_damping_reference_outputs(double gamma);

/// Trace overlap Tr rho1^alpha rho2^(1-alpha) of the reference pair in the printed
/// eigenvector form. gamma in (0, 1), alpha in (0, 1).
double amplitude_damping_overlap(double gamma, double alpha);

/// Printed closed form of D(rho1||rho2) for the reference pair, gamma in (0, 1).
double amplitude_damping_reference_stein(double gamma);

/// Closed form vs matrix evaluation of the same quantity.
struct ClosedFormCheck {
    double closed_form = 0.0;
    double oracle = 0.0;
    double tolerance = 0.0;

    double difference() const;
    bool agrees() const;
    /// The value to use downstream: the oracle whenever the two disagree.
    double trusted() const;
    /// One-line verdict; on disagreement names the closed form as the suspect.
    std::string report(const std::string &what) const;
};

/// amplitude_damping_overlap against Tr rho1^alpha rho2^(1-alpha) computed from
/// the reference outputs by eigendecomposition.
ClosedFormCheck check_amplitude_damping_overlap(double gamma, double alpha, double tolerance = 1e-6);

}  // namespace qchd

#endif
