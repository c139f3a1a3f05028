#pragma once

#include "gradsos/eliminate.hpp"
#include "gradsos/grobner.hpp"
#include "gradsos/rur.hpp"
#include "gradsos/univsos.hpp"

#include <optional>
#include <string>
#include <variant>

namespace gradsos {

// Certificate that f = sum_j c_j q_j(x1)^2 + sum_i phi_i * (x_i - v_i(x1))
// in the working frame.  When `cov` is set the working frame is y = T x and
// the stored data certifies g(y) = f(T^-1 y); the identity for f itself is
// recovered by substituting y = T x, which adds the phi1 * w(y1) term:
//   f(x) = sum c_j q_j(u)^2 + phi1(Tx) w(u) + sum phi_i(Tx) (x_i - v_i(u)),
// with u = x1 + j x2 + ... + j^(n-1) xn.
struct PolyCertificate {
    unsigned nvars = 1;
    unsigned degree = 0;  // deg f
    ShapeBasis shape;     // working-frame w, v
    WeightedSOS sos;      // squares in t = first working-frame coordinate
    std::vector<MPoly> phi;  // working-frame multipliers of (x_i - v_i), i = 2..n
    std::optional<ChangeOfVariables> cov;
    MPoly phi1{1};  // working-frame multiplier of w; zero unless cov

    UPoly h;  // restriction of f to the critical variety, h(t) = f(t, v(t))
    double t_h_ms = 0, t_sos_ms = 0;
};

// Certificate that (w')^d * f = sum_j c_j q_j(x1)^2 + sum_i N_i/(w')^(e_i) *
// (w'(x1) x_i - kappa_i(x1)) with d = deg f, in the working frame (as above,
// `cov` moves the identity to y-coordinates; param then has lambda_j = 0).
struct FracCertificate {
    unsigned nvars = 1;
    unsigned degree = 0;  // deg f; also the power of w' clearing denominators
    RationalParam param;
    WeightedSOS sos;
    std::vector<FracPoly> phi;  // cofactor of (w' x_i - kappa_i), i = 2..n
    std::optional<ChangeOfVariables> cov;

    UPoly h;  // hbar(t) = (w')^d f(t, kappa_2/w', ..., kappa_n/w')
    double t_h_ms = 0, t_sos_ms = 0;
};

using Certificate = std::variant<PolyCertificate, FracCertificate>;

// Restriction route: shape basis of the gradient ideal, h(t) = f(t, v(t)),
// weighted SOS of h, multipliers from the expansion of f - sos against the
// shape basis.  Assumes f attains its infimum; certifies f >= 0 on R^n.
PolyCertificate sos_shape(const MPoly& f);

// Parametrized route: rational parametrization of the critical points,
// hbar = (w')^d f(x1, kappa/w'), weighted SOS of hbar, cofactors from the
// elimination.  Same attainment assumption.
FracCertificate sos_grad(const MPoly& f);

// Exact re-check of a (possibly untrusted) certificate against f.  Never
// throws on bad certificates; every failure is reported in the flags.
struct VerifyReport {
    bool identity_holds = false;
    bool weights_positive = false;
    bool multipliers_in_gradient_ideal = false;
    bool attainment_assumed = true;  // caveat carried by every certificate
    std::string detail;              // first failure, for diagnostics

    bool pass() const { return identity_holds && weights_positive && multipliers_in_gradient_ideal; }
};
VerifyReport verify(const MPoly& f, const PolyCertificate& cert);
VerifyReport verify(const MPoly& f, const FracCertificate& cert);
VerifyReport verify(const MPoly& f, const Certificate& cert);

struct Metrics {
    unsigned delta = 0;   // number of critical points counted with multiplicity
    unsigned d_h = 0;     // degree of the univariate restriction
    unsigned tau_h = 0;   // height of the univariate restriction
    unsigned tau_sos = 0; // height of the weighted SOS
    double t_h_ms = 0;    // time to reach the univariate restriction
    double t_sos_ms = 0;  // time for its SOS decomposition
};
Metrics bitsize_metrics(const Certificate& cert);

}  // namespace gradsos
