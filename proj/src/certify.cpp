#include "gradsos/certify.hpp"

#include "gradsos/errors.hpp"
#include "gradsos/univar.hpp"

#include <chrono>
#include <utility>

namespace gradsos {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// The curve restriction is univariate; a negativity proof for it refutes
// nonnegativity of f itself (under attainment), so rewrap the exception.
WeightedSOS sos_on_curve(const UPoly& h) {
    try {
        return weighted_sos(h);
    } catch (const NotNonnegative& e) {
        throw NotNonnegativeOnCriticalCurve(e.what());
    }
}

UPoly sos_as_upoly(const WeightedSOS& sos) {
    UPoly acc;
    for (const auto& [c, q] : sos.terms) acc += (q * q).scaled(c);
    return acc;
}

MPoly sos_as_mpoly(const WeightedSOS& sos, unsigned nvars) {
    return MPoly::from_upoly(sos_as_upoly(sos), 1, nvars);
}

GradientShape radical_shape(const MPoly& f) {
    GradientShape gs = shape_of_gradient_ideal(f);
    if (!is_radical_shape(gs.sb))
        throw HypothesisViolated("gradient ideal is not radical: repeated factor in w");
    return gs;
}

}  // namespace

PolyCertificate sos_shape(const MPoly& f) {
    auto t0 = Clock::now();
    GradientShape gs = radical_shape(f);
    UPoly one(Rational(1));
    PolyCertificate cert;
    cert.nvars = f.nvars();
    cert.degree = static_cast<unsigned>(std::max(f.total_degree(), 0));
    cert.shape = gs.sb;
    cert.cov = gs.cov;
    cert.h = eliminate(gs.work, one, gs.sb.v).r_num;
    cert.t_h_ms = ms_since(t0);

    auto t1 = Clock::now();
    cert.sos = sos_on_curve(cert.h);
    cert.t_sos_ms = ms_since(t1);

    // f - sum c q^2 vanishes under x_i <- v_i (the restriction is matched
    // exactly), so it expands over the shape relations with no remainder
    MPoly diff = gs.work - sos_as_mpoly(cert.sos, f.nvars());
    Elimination em = eliminate(diff, one, gs.sb.v);
    if (!em.r_num.is_zero())
        throw Error("internal: curve restriction failed to cancel");
    cert.phi.reserve(em.phi.size());
    for (auto& fp : em.phi) cert.phi.push_back(std::move(fp.num));
    cert.phi1 = MPoly(f.nvars());  // this route never needs a multiple of w
    return cert;
}

FracCertificate sos_grad(const MPoly& f) {
    auto t0 = Clock::now();
    GradientShape gs = radical_shape(f);
    FracCertificate cert;
    cert.nvars = f.nvars();
    cert.degree = static_cast<unsigned>(std::max(f.total_degree(), 0));
    cert.param = shape_to_param(gs.sb);
    cert.cov = gs.cov;

    UPoly wp = cert.param.w.derivative();
    MPoly cleared = gs.work * MPoly::from_upoly(wp.pow(cert.degree), 1, f.nvars());
    std::vector<UPoly> tail(cert.param.kappa.begin() + 1, cert.param.kappa.end());
    Elimination el = eliminate(cleared, wp, tail);
    cert.h = exact_div(el.r_num, wp.pow(el.r_pow));
    cert.t_h_ms = ms_since(t0);

    auto t1 = Clock::now();
    cert.sos = sos_on_curve(cert.h);
    cert.t_sos_ms = ms_since(t1);

    cert.phi.reserve(el.phi.size());
    for (auto& fp : el.phi) cert.phi.push_back(FracPoly{std::move(fp.num), fp.a0_pow + 1});
    return cert;
}

VerifyReport verify(const MPoly& f, const PolyCertificate& cert) {
    VerifyReport rep;
    try {
        rep.weights_positive = true;
        for (const auto& [c, q] : cert.sos.terms)
            if (c <= 0) {
                rep.weights_positive = false;
                rep.detail = "nonpositive square weight";
            }

        unsigned n = f.nvars();
        if (cert.nvars != n || cert.shape.nvars != n || cert.shape.v.size() + 1 != n ||
            cert.phi.size() + 1 != n || (cert.cov && cert.cov->nvars != n)) {
            rep.detail = "certificate arity does not match the input";
            return rep;
        }
        MPoly g = cert.cov ? apply_change_of_variables(f, *cert.cov, true) : f;
        if (static_cast<int>(cert.degree) != g.total_degree()) {
            rep.detail = "recorded degree does not match the input";
            return rep;
        }

        MPoly rhs = sos_as_mpoly(cert.sos, n);
        rhs += cert.phi1 * MPoly::from_upoly(cert.shape.w, 1, n);
        for (unsigned i = 0; i + 1 < n; ++i)
            rhs += cert.phi[i] *
                   (MPoly::variable(i + 2, n) - MPoly::from_upoly(cert.shape.v[i], 1, n));
        if (g != rhs) {
            rep.detail = "polynomial identity does not hold";
            return rep;
        }
        rep.identity_holds = true;

        auto gb = buchberger_lex(gradient_ideal(g));
        std::vector<MPoly> gens;
        gens.push_back(MPoly::from_upoly(cert.shape.w, 1, n));
        for (unsigned i = 0; i + 1 < n; ++i)
            gens.push_back(MPoly::variable(i + 2, n) -
                           MPoly::from_upoly(cert.shape.v[i], 1, n));
        for (const auto& gen : gens)
            if (!normal_form(gen, gb).is_zero()) {
                rep.detail = "a multiplier relation is not in the gradient ideal";
                return rep;
            }
        rep.multipliers_in_gradient_ideal = true;
    } catch (const std::exception& e) {
        rep.detail = std::string("verification error: ") + e.what();
    }
    return rep;
}

VerifyReport verify(const MPoly& f, const FracCertificate& cert) {
    VerifyReport rep;
    try {
        rep.weights_positive = true;
        for (const auto& [c, q] : cert.sos.terms)
            if (c <= 0) {
                rep.weights_positive = false;
                rep.detail = "nonpositive square weight";
            }

        unsigned n = f.nvars();
        if (cert.nvars != n || cert.param.nvars != n || cert.param.kappa.size() != n ||
            cert.phi.size() + 1 != n || (cert.cov && cert.cov->nvars != n)) {
            rep.detail = "certificate arity does not match the input";
            return rep;
        }
        if (cert.param.lambda_j != 0) {
            rep.detail = "parametrization is not in the working frame";
            return rep;
        }
        MPoly g = cert.cov ? apply_change_of_variables(f, *cert.cov, true) : f;
        if (static_cast<int>(cert.degree) != g.total_degree()) {
            rep.detail = "recorded degree does not match the input";
            return rep;
        }
        if (cert.degree % 2 != 0) {
            rep.detail = "denominator-clearing power is odd";
            return rep;
        }

        UPoly wp = cert.param.w.derivative();
        unsigned E = 0;
        for (const auto& fp : cert.phi) E = std::max(E, fp.a0_pow);
        MPoly lhs = g * MPoly::from_upoly(wp.pow(cert.degree + E), 1, n);
        MPoly rhs = MPoly::from_upoly(sos_as_upoly(cert.sos) * wp.pow(E), 1, n);
        for (unsigned i = 0; i + 1 < n; ++i) {
            MPoly rel = MPoly::variable(i + 2, n) * MPoly::from_upoly(wp, 1, n) -
                        MPoly::from_upoly(cert.param.kappa[i + 1], 1, n);
            rhs += cert.phi[i].num * MPoly::from_upoly(wp.pow(E - cert.phi[i].a0_pow), 1, n) * rel;
        }
        if (lhs != rhs) {
            rep.detail = "cleared polynomial identity does not hold";
            return rep;
        }
        rep.identity_holds = true;

        auto gb = buchberger_lex(gradient_ideal(g));
        for (unsigned i = 0; i < n; ++i) {
            MPoly rel = MPoly::variable(i + 1, n) * MPoly::from_upoly(wp, 1, n) -
                        MPoly::from_upoly(cert.param.kappa[i], 1, n);
            if (!normal_form(rel, gb).is_zero()) {
                rep.detail = "a parametrization relation is not in the gradient ideal";
                return rep;
            }
        }
        rep.multipliers_in_gradient_ideal = true;
    } catch (const std::exception& e) {
        rep.detail = std::string("verification error: ") + e.what();
    }
    return rep;
}

VerifyReport verify(const MPoly& f, const Certificate& cert) {
    return std::visit([&](const auto& c) { return verify(f, c); }, cert);
}

Metrics bitsize_metrics(const Certificate& cert) {
    Metrics m;
    std::visit(
        [&](const auto& c) {
            m.d_h = static_cast<unsigned>(std::max(c.h.degree(), 0));
            m.tau_h = height(c.h);
            m.tau_sos = height(c.sos);
            m.t_h_ms = c.t_h_ms;
            m.t_sos_ms = c.t_sos_ms;
        },
        cert);
    if (const auto* p = std::get_if<PolyCertificate>(&cert)) m.delta = p->shape.delta();
    if (const auto* q = std::get_if<FracCertificate>(&cert))
        m.delta = static_cast<unsigned>(std::max(q->param.w.degree(), 0));
    return m;
}

}  // namespace gradsos
