#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "measures.hpp"
#include "scaled.hpp"

namespace drs {

// ---- numbers ---------------------------------------------------------------

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// "re+imi" / "re-imi" with shortest round-trip parts.
inline std::string format_complex(cplx z) {
    std::string s = format_double(z.real());
    s += std::signbit(z.imag()) ? "-" : "+";
    s += format_double(std::abs(z.imag()));
    s += "i";
    return s;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

inline bool parse_real(std::string_view s, double& out) {
    if (s.empty()) return false;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || s.front() == '+' || s.front() == '-') return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return false;
    if (neg) out = -out;
    return true;
}

}  // namespace detail

inline double parse_real(const std::string& text) {
    double v;
    if (!detail::parse_real(detail::trim(text), v)) throw InvalidArgument("not a real number: '" + text + "'");
    return v;
}

/// Accepts "re,im", "a+bi", "a-bi", "bi", "i", or a plain real.
inline cplx parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    auto fail = [&]() -> cplx { throw InvalidArgument("not a complex number: '" + text + "'"); };
    if (s.empty()) return fail();
    if (const auto comma = s.find(','); comma != std::string::npos) {
        double re, im;
        if (!detail::parse_real(std::string_view(s).substr(0, comma), re) ||
            !detail::parse_real(std::string_view(s).substr(comma + 1), im)) {
            return fail();
        }
        return {re, im};
    }
    if (s.back() != 'i') {
        double re;
        if (!detail::parse_real(s, re)) return fail();
        return {re, 0.0};
    }
    s.pop_back();
    // split at the last sign that is neither leading nor part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
    double re = 0.0, im;
    if (!re_part.empty() && !detail::parse_real(re_part, re)) return fail();
    if (!detail::parse_real(im_part, im)) return fail();
    return {re, im};
}

// ---- f-spec ------------------------------------------------------------------

/// Either a spherical combination sum c_i phi(mu_i), or a named radial profile:
///   gauss            e^{-t^2}
///   exp(a)           e^{-a t}
///   indicator(R)     1 for t < R, 0 beyond
struct FSpec {
    std::vector<SphericalCombination::Term> terms;
    std::string profile;
    double parameter = 0.0;

    bool is_profile() const { return !profile.empty(); }
};

inline FSpec parse_fspec(const std::string& text) {
    FSpec out;
    const std::string s = detail::trim(text);
    auto fail = [&](const std::string& why) { throw InvalidArgument("f-spec '" + text + "': " + why); };
    if (s.empty()) fail("empty");
    if (s == "gauss") {
        out.profile = "gauss";
        return out;
    }
    for (const char* name : {"exp", "indicator"}) {
        const std::string head = std::string(name) + "(";
        if (s.rfind(head, 0) == 0) {
            if (s.back() != ')') fail("missing ')'");
            out.profile = name;
            out.parameter = parse_real(s.substr(head.size(), s.size() - head.size() - 1));
            if (!(out.parameter > 0.0)) fail("profile parameter must be positive");
            return out;
        }
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto at = s.find("phi(", pos);
        if (at == std::string::npos) fail("expected phi(...) at offset " + std::to_string(pos));
        std::string coeff = detail::trim(std::string_view(s).substr(pos, at - pos));
        cplx c = 1.0;
        if (!coeff.empty()) {
            if (coeff.back() != '*') fail("coefficient must be followed by '*'");
            coeff.pop_back();
            c = parse_complex(coeff);
        }
        const auto close = s.find(')', at);
        if (close == std::string::npos) fail("missing ')'");
        const cplx mu = parse_complex(s.substr(at + 4, close - at - 4));
        out.terms.push_back({mu, c});
        pos = close + 1;
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == s.size()) break;
        if (s[pos] != '+') fail("terms must be joined by '+'");
        ++pos;
        if (detail::trim(std::string_view(s).substr(pos)).empty()) fail("dangling '+'");
    }
    return out;
}

inline RadialProfile make_profile(const FSpec& f) {
    if (f.profile == "gauss") return {[](double t) { return cplx(std::exp(-t * t)); }, std::nullopt, {}};
    if (f.profile == "exp") {
        const double a = f.parameter;
        return {[a](double t) { return cplx(std::exp(-a * t)); }, std::nullopt, {}};
    }
    if (f.profile == "indicator") {
        const double R = f.parameter;
        return {[R](double t) { return cplx(t < R ? 1.0 : 0.0); }, R, {R}};
    }
    throw InvalidArgument("unknown radial profile '" + f.profile + "'");
}

// ---- experiment configuration ---------------------------------------------------

/// Settings of one experiment.  Defaults:
///   m = 2, k = 1                     space
///   lambda = 1+0i                    spectral parameter of the normalisation
///   f = phi(1+0i)+phi(2+0i)          function (f-spec grammar)
///   avg = sphere                     sphere | ball | annulus
///   schedule = grid                  grid: admissible radii on [tmax/2, tmax] with spacing step;
///                                    constructed: t_n / ball / annulus sequences with count entries
///   d = 1, delta = 1                 annulus width parameters
///   count = 40, tmax = 60, step = 0.05
///   s_grid = 0:2:21                  lo:hi:points
///   tol_conv = 1e-6, tol_osc = 1e-3  classifier thresholds
///   line_annulus = false             annulus radii (r, r + d) on a line
///   out =                            output path; empty for stdout
struct ExperimentConfig {
    int m = 2;
    int k = 1;
    cplx lambda{1.0, 0.0};
    std::string f = "phi(1+0i)+phi(2+0i)";
    std::string avg = "sphere";
    std::string schedule = "grid";
    double d = 1.0;
    double delta = 1.0;
    int count = 40;
    double tmax = 60.0;
    double step = 0.05;
    std::string s_grid = "0:2:21";
    double tol_conv = 1e-6;
    double tol_osc = 1e-3;
    bool line_annulus = false;
    std::string out;

    static const std::vector<std::string>& keys() {
        static const std::vector<std::string> k{"m",    "k",     "lambda", "f",     "avg",    "schedule",
                                                "d",    "delta", "count",  "tmax",  "step",   "s_grid",
                                                "tol_conv", "tol_osc", "line_annulus", "out"};
        return k;
    }

    /// Assigns one field from text; throws ConfigError naming the field.
    void set(const std::string& key, const std::string& raw) {
        const std::string v = detail::trim(raw);
        auto integer = [&]() {
            int x;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
                throw ConfigError("field '" + key + "': not an integer: '" + v + "'");
            }
            return x;
        };
        auto real = [&]() {
            double x;
            if (!detail::parse_real(v, x)) throw ConfigError("field '" + key + "': not a number: '" + v + "'");
            return x;
        };
        auto choice = [&](std::initializer_list<const char*> allowed) {
            for (const char* a : allowed) {
                if (v == a) return v;
            }
            throw ConfigError("field '" + key + "': unexpected value '" + v + "'");
        };
        try {
            if (key == "m") m = integer();
            else if (key == "k") k = integer();
            else if (key == "lambda") lambda = parse_complex(v);
            else if (key == "f") { parse_fspec(v); f = v; }
            else if (key == "avg") avg = choice({"sphere", "ball", "annulus"});
            else if (key == "schedule") schedule = choice({"grid", "constructed"});
            else if (key == "d") d = real();
            else if (key == "delta") delta = real();
            else if (key == "count") count = integer();
            else if (key == "tmax") tmax = real();
            else if (key == "step") step = real();
            else if (key == "s_grid") { parse_grid(v); s_grid = v; }
            else if (key == "tol_conv") tol_conv = real();
            else if (key == "tol_osc") tol_osc = real();
            else if (key == "line_annulus") line_annulus = choice({"true", "false"}) == "true";
            else if (key == "out") out = v;
            else throw ConfigError("unknown key '" + key + "'");
        } catch (const InvalidArgument& e) {
            throw ConfigError("field '" + key + "': " + e.what());
        }
    }

    std::string get(const std::string& key) const {
        if (key == "m") return std::to_string(m);
        if (key == "k") return std::to_string(k);
        if (key == "lambda") return format_complex(lambda);
        if (key == "f") return f;
        if (key == "avg") return avg;
        if (key == "schedule") return schedule;
        if (key == "d") return format_double(d);
        if (key == "delta") return format_double(delta);
        if (key == "count") return std::to_string(count);
        if (key == "tmax") return format_double(tmax);
        if (key == "step") return format_double(step);
        if (key == "s_grid") return s_grid;
        if (key == "tol_conv") return format_double(tol_conv);
        if (key == "tol_osc") return format_double(tol_osc);
        if (key == "line_annulus") return line_annulus ? "true" : "false";
        if (key == "out") return out;
        throw ConfigError("unknown key '" + key + "'");
    }

    std::string serialize() const {
        std::string s;
        for (const auto& key : keys()) s += key + " = " + get(key) + "\n";
        return s;
    }

    /// Applies "key = value" lines; '#' starts a comment.  Errors carry the line number.
    void apply_text(const std::string& text, const std::string& origin = "config") {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (detail::trim(line).empty()) continue;
            const auto eq = line.find('=');
            try {
                if (eq == std::string::npos) throw ConfigError("expected 'key = value'");
                set(detail::trim(std::string_view(line).substr(0, eq)), line.substr(eq + 1));
            } catch (const ConfigError& e) {
                throw ConfigError(origin + ":" + std::to_string(no) + ": " + e.what());
            }
        }
    }

    void apply_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        apply_text(ss.str(), path);
    }

    static ExperimentConfig parse(const std::string& text) {
        ExperimentConfig c;
        c.apply_text(text);
        return c;
    }

    /// "lo:hi:points" as an evenly spaced list.
    static std::vector<double> parse_grid(const std::string& spec) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw InvalidArgument("s grid must be lo:hi:points");
        const double lo = parse_real(parts[0]), hi = parse_real(parts[1]);
        const double pts = parse_real(parts[2]);
        if (!(lo >= 0.0) || !(hi >= lo) || !(pts >= 1.0) || pts != std::floor(pts)) {
            throw InvalidArgument("s grid needs 0 <= lo <= hi and a positive integer point count");
        }
        const int n = static_cast<int>(pts);
        std::vector<double> g;
        for (int i = 0; i < n; ++i) g.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return g;
    }

    bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace drs
