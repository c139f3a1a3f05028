#include "gradsos/certio.hpp"

#include "gradsos/errors.hpp"

#include <cctype>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace gradsos {

namespace {

struct Line {
    std::size_t off;  // byte offset of the first nonspace character
    std::string text;
};

// nonempty lines with surrounding whitespace stripped, offsets preserved
std::vector<Line> split_lines(const std::string& text, std::size_t& end_off) {
    std::vector<Line> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::size_t stop = nl == std::string::npos ? text.size() : nl;
        std::size_t b = pos, e = stop;
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        if (b < e) out.push_back({b, text.substr(b, e - b)});
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    end_off = text.size();
    return out;
}

class CertParser {
  public:
    CertParser(const std::vector<Line>& ls, std::size_t end_off) : ls_(ls), end_(end_off) {}

    bool done() const { return i_ == ls_.size(); }
    const Line& next() {
        if (done()) throw ParseError("unexpected end of certificate", end_);
        return ls_[i_++];
    }

    // consume "TAG ... END" and return the inner lines
    std::vector<Line> section(const std::string& tag) {
        const Line& head = next();
        if (head.text != tag)
            throw ParseError("expected section " + tag + ", found '" + head.text + "'", head.off);
        std::vector<Line> inner;
        for (;;) {
            const Line& l = next();
            if (l.text == "END") return inner;
            inner.push_back(l);
        }
    }

  private:
    const std::vector<Line>& ls_;
    std::size_t end_;
    std::size_t i_ = 0;
};

std::string field_value(const Line& l, const std::string& key) {
    std::size_t eq = l.text.find('=');
    if (eq == std::string::npos || l.text.substr(0, eq).find(key) != 0)
        throw ParseError("expected field '" + key + "'", l.off);
    std::string name = l.text.substr(0, eq);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (name != key) throw ParseError("expected field '" + key + "'", l.off);
    std::size_t b = eq + 1;
    while (b < l.text.size() && l.text[b] == ' ') ++b;
    if (b == l.text.size()) throw ParseError("missing value for '" + key + "'", l.off);
    return l.text.substr(b);
}

unsigned uint_field(const Line& l, const std::string& key) {
    std::string v = field_value(l, key);
    std::size_t used = 0;
    unsigned long r = 0;
    try {
        r = std::stoul(v, &used);
    } catch (const std::exception&) {
        throw ParseError("bad integer for '" + key + "'", l.off);
    }
    if (used != v.size() || r > 0xffffffffUL)
        throw ParseError("bad integer for '" + key + "'", l.off);
    return static_cast<unsigned>(r);
}

double double_field(const Line& l, const std::string& key) {
    std::string v = field_value(l, key);
    std::size_t used = 0;
    double r = 0;
    try {
        r = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ParseError("bad number for '" + key + "'", l.off);
    }
    if (used != v.size()) throw ParseError("bad number for '" + key + "'", l.off);
    return r;
}

Rational parse_rational_at(const std::string& s, std::size_t off) {
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t dn = digits(i);
    if (dn == i) throw ParseError("expected a rational number", off + i);
    std::string num = s.substr(0, dn);
    if (dn == s.size()) return Rational(Int(num));
    if (s[dn] != '/') throw ParseError("malformed rational number", off + dn);
    std::size_t de = digits(dn + 1);
    if (de == dn + 1 || de != s.size()) throw ParseError("malformed rational number", off + dn + 1);
    Int den(s.substr(dn + 1, de - dn - 1));
    if (den == 0) throw ParseError("zero denominator", off + dn + 1);
    return Rational(Int(num), den);
}

// rebase an inner polynomial-parse failure to the certificate offset
MPoly parse_poly_at(const std::string& s, unsigned nvars, std::size_t off) {
    try {
        return parse_poly(s, nvars);
    } catch (const ParseError& e) {
        throw ParseError("bad polynomial", off + e.offset);
    }
}

UPoly parse_upoly_at(const std::string& s, std::size_t off) {
    return parse_poly_at(s, 1, off).to_upoly(1);
}

// "left : right" with the first colon as the separator
std::pair<std::string, std::string> split_colon(const Line& l, std::size_t& right_off) {
    std::size_t c = l.text.find(':');
    if (c == std::string::npos) throw ParseError("expected 'left : right'", l.off);
    std::size_t le = c;
    while (le > 0 && l.text[le - 1] == ' ') --le;
    std::size_t rb = c + 1;
    while (rb < l.text.size() && l.text[rb] == ' ') ++rb;
    if (le == 0 || rb == l.text.size()) throw ParseError("expected 'left : right'", l.off);
    right_off = l.off + rb;
    return {l.text.substr(0, le), l.text.substr(rb)};
}

void write_meta(std::ostringstream& os, const Certificate& cert) {
    Metrics m = bitsize_metrics(cert);
    os << "META\n";
    os << "algorithm = pc1\n";
    os << "d_h = " << m.d_h << "\n";
    os << "tau_h = " << m.tau_h << "\n";
    os << "tau_sos = " << m.tau_sos << "\n";
    os << std::setprecision(17);
    os << "t_h_ms = " << m.t_h_ms << "\n";
    os << "t_sos_ms = " << m.t_sos_ms << "\n";
    os << "END\n";
}

void write_sos(std::ostringstream& os, const WeightedSOS& sos) {
    os << "SOS\n";
    for (const auto& [c, q] : sos.terms) os << to_string(c) << " : " << to_string(q) << "\n";
    os << "END\n";
}

struct MetaData {
    unsigned d_h = 0, tau_h = 0, tau_sos = 0;
    double t_h = 0, t_sos = 0;
};

MetaData parse_meta(const std::vector<Line>& meta) {
    if (meta.size() != 6) {
        std::size_t off = meta.empty() ? 0 : meta.front().off;
        throw ParseError("META must list algorithm, d_h, tau_h, tau_sos, t_h_ms, t_sos_ms", off);
    }
    if (field_value(meta[0], "algorithm") != "pc1")
        throw ParseError("unknown algorithm", meta[0].off);
    MetaData md;
    md.d_h = uint_field(meta[1], "d_h");
    md.tau_h = uint_field(meta[2], "tau_h");
    md.tau_sos = uint_field(meta[3], "tau_sos");
    md.t_h = double_field(meta[4], "t_h_ms");
    md.t_sos = double_field(meta[5], "t_sos_ms");
    return md;
}

// the stored squares reproduce the curve restriction exactly, so h is
// recovered from the SOS section instead of being serialized
UPoly reconstruct_h(const WeightedSOS& sos) {
    UPoly acc;
    for (const auto& [c, q] : sos.terms) acc += (q * q).scaled(c);
    return acc;
}

void check_meta(const MetaData& md, const UPoly& h, const WeightedSOS& sos, std::size_t off) {
    if (md.d_h != static_cast<unsigned>(std::max(h.degree(), 0)))
        throw ParseError("d_h does not match the stored squares", off);
    if (md.tau_h != height(h)) throw ParseError("tau_h does not match the stored squares", off);
    if (md.tau_sos != height(sos)) throw ParseError("tau_sos does not match the stored squares", off);
}

}  // namespace

ProblemInput parse_problem(const std::string& text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) throw ParseError("expected a 'nvars = k' header line", pos);
    std::string head = text.substr(pos, nl - pos);
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
    Line hl{pos, head};
    unsigned nvars = uint_field(hl, "nvars");
    if (nvars == 0) throw ParseError("nvars must be positive", pos);
    std::string body = text.substr(nl + 1);
    ProblemInput in;
    in.nvars = nvars;
    in.f = parse_poly_at(body, nvars, nl + 1);
    return in;
}

std::string write_certificate(const Certificate& cert) {
    std::ostringstream os;
    if (const auto* p = std::get_if<PolyCertificate>(&cert)) {
        os << "FIELDS\n";
        os << "mode = poly\n";
        os << "nvars = " << p->nvars << "\n";
        os << "degree = " << p->degree << "\n";
        os << "delta = " << p->shape.delta() << "\n";
        if (p->cov) os << "cov_j = " << p->cov->j << "\n";
        os << "END\n";
        os << "W\n" << to_string(p->shape.w) << "\nEND\n";
        os << "V\n";
        for (const auto& v : p->shape.v) os << to_string(v) << "\n";
        os << "END\n";
        write_sos(os, p->sos);
        os << "PHI\n";
        if (p->cov) os << to_string(p->phi1) << "\n";
        for (const auto& m : p->phi) os << to_string(m) << "\n";
        os << "END\n";
    } else {
        const auto& q = std::get<FracCertificate>(cert);
        os << "FIELDS\n";
        os << "mode = frac\n";
        os << "nvars = " << q.nvars << "\n";
        os << "degree = " << q.degree << "\n";
        os << "delta = " << std::max(q.param.w.degree(), 0) << "\n";
        if (q.cov) os << "cov_j = " << q.cov->j << "\n";
        os << "END\n";
        os << "W\n" << to_string(q.param.w) << "\nEND\n";
        os << "KAPPA\n";
        for (const auto& k : q.param.kappa) os << to_string(k) << "\n";
        os << "END\n";
        write_sos(os, q.sos);
        os << "PHI\n";
        for (const auto& fp : q.phi) os << fp.a0_pow << " : " << to_string(fp.num) << "\n";
        os << "END\n";
    }
    write_meta(os, cert);
    return os.str();
}

Certificate parse_certificate(const std::string& text) {
    std::size_t end_off = 0;
    std::vector<Line> lines = split_lines(text, end_off);
    CertParser cp(lines, end_off);

    std::vector<Line> fields = cp.section("FIELDS");
    if (fields.size() < 4) {
        std::size_t off = fields.empty() ? 0 : fields.front().off;
        throw ParseError("FIELDS must list mode, nvars, degree, delta", off);
    }
    std::string mode = field_value(fields[0], "mode");
    if (mode != "poly" && mode != "frac") throw ParseError("mode must be poly or frac", fields[0].off);
    unsigned nvars = uint_field(fields[1], "nvars");
    if (nvars == 0) throw ParseError("nvars must be positive", fields[1].off);
    unsigned degree = uint_field(fields[2], "degree");
    unsigned delta = uint_field(fields[3], "delta");
    std::optional<ChangeOfVariables> cov;
    if (fields.size() == 5) {
        unsigned j = uint_field(fields[4], "cov_j");
        if (j == 0) throw ParseError("cov_j must be positive", fields[4].off);
        cov = ChangeOfVariables{j, nvars};
    } else if (fields.size() > 5) {
        throw ParseError("unexpected extra field", fields[5].off);
    }

    std::vector<Line> wsec = cp.section("W");
    if (wsec.size() != 1) {
        std::size_t off = wsec.empty() ? 0 : wsec[1].off;
        throw ParseError("W must hold exactly one polynomial", off);
    }
    UPoly w = parse_upoly_at(wsec[0].text, wsec[0].off);
    if (delta != static_cast<unsigned>(std::max(w.degree(), 0)))
        throw ParseError("delta does not match the degree of w", wsec[0].off);

    auto check_tail_degree = [&](const UPoly& p, std::size_t off) {
        if (p.degree() >= w.degree())
            throw ParseError("entry degree must stay below the degree of w", off);
    };

    if (mode == "poly") {
        PolyCertificate cert;
        cert.nvars = nvars;
        cert.degree = degree;
        cert.cov = cov;
        cert.shape.nvars = nvars;
        cert.shape.w = w;
        std::vector<Line> vsec = cp.section("V");
        if (vsec.size() != nvars - 1)
            throw ParseError("V must hold one entry per variable after the first",
                             vsec.empty() ? end_off : vsec.front().off);
        for (const auto& l : vsec) {
            UPoly v = parse_upoly_at(l.text, l.off);
            check_tail_degree(v, l.off);
            cert.shape.v.push_back(v);
        }
        std::vector<Line> ssec = cp.section("SOS");
        for (const auto& l : ssec) {
            std::size_t roff = 0;
            auto [lhs, rhs] = split_colon(l, roff);
            cert.sos.terms.emplace_back(parse_rational_at(lhs, l.off), parse_upoly_at(rhs, roff));
        }
        std::vector<Line> psec = cp.section("PHI");
        unsigned expect = nvars - 1 + (cov ? 1u : 0u);
        if (psec.size() != expect)
            throw ParseError("PHI holds one multiplier per relation",
                             psec.empty() ? end_off : psec.front().off);
        std::size_t at = 0;
        cert.phi1 = MPoly(nvars);
        if (cov) cert.phi1 = parse_poly_at(psec[0].text, nvars, psec[0].off), at = 1;
        for (; at < psec.size(); ++at)
            cert.phi.push_back(parse_poly_at(psec[at].text, nvars, psec[at].off));
        std::vector<Line> meta = cp.section("META");
        MetaData md = parse_meta(meta);
        cert.h = reconstruct_h(cert.sos);
        check_meta(md, cert.h, cert.sos, meta[1].off);
        cert.t_h_ms = md.t_h;
        cert.t_sos_ms = md.t_sos;
        if (!cp.done()) throw ParseError("trailing content after META", cp.next().off);
        return Certificate{std::move(cert)};
    }

    FracCertificate cert;
    cert.nvars = nvars;
    cert.degree = degree;
    cert.cov = cov;
    cert.param.nvars = nvars;
    cert.param.lambda_j = 0;
    cert.param.w = w;
    std::vector<Line> ksec = cp.section("KAPPA");
    if (ksec.size() != nvars)
        throw ParseError("KAPPA must hold one entry per variable",
                         ksec.empty() ? end_off : ksec.front().off);
    for (const auto& l : ksec) {
        UPoly k = parse_upoly_at(l.text, l.off);
        check_tail_degree(k, l.off);
        cert.param.kappa.push_back(k);
    }
    std::vector<Line> ssec = cp.section("SOS");
    for (const auto& l : ssec) {
        std::size_t roff = 0;
        auto [lhs, rhs] = split_colon(l, roff);
        cert.sos.terms.emplace_back(parse_rational_at(lhs, l.off), parse_upoly_at(rhs, roff));
    }
    std::vector<Line> psec = cp.section("PHI");
    if (psec.size() != nvars - 1)
        throw ParseError("PHI holds one cofactor per eliminated variable",
                         psec.empty() ? end_off : psec.front().off);
    for (const auto& l : psec) {
        std::size_t roff = 0;
        auto [lhs, rhs] = split_colon(l, roff);
        std::size_t used = 0;
        unsigned long e = 0;
        try {
            e = std::stoul(lhs, &used);
        } catch (const std::exception&) {
            throw ParseError("bad cofactor exponent", l.off);
        }
        if (used != lhs.size()) throw ParseError("bad cofactor exponent", l.off);
        cert.phi.push_back(FracPoly{parse_poly_at(rhs, nvars, roff), static_cast<unsigned>(e)});
    }
    std::vector<Line> meta = cp.section("META");
    MetaData md = parse_meta(meta);
    cert.h = reconstruct_h(cert.sos);
    check_meta(md, cert.h, cert.sos, meta[1].off);
    cert.t_h_ms = md.t_h;
    cert.t_sos_ms = md.t_sos;
    if (!cp.done()) throw ParseError("trailing content after META", cp.next().off);
    return Certificate{std::move(cert)};
}

}  // namespace gradsos
