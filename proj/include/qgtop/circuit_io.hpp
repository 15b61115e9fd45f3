#pragma once

// Circuit file grammar:
//
//   qubits N
//   segment duration=FLOAT [global_phase=FLOAT] [ramp=NAME]
//   term COEFF PAULI        # attaches to the most recent segment
//   cycles RATIONAL         # e.g. 1, 2, 1/2
//
// '#' starts a comment, blank lines are skipped, floats are plain decimals.
// Ramp names resolve to the built-ins {const, tent, trapezoid} first, then to
// a caller-supplied lookup (the CLI wires this to NAME.csv sidecar files next
// to the circuit). canonical_circuit is a fixed point of parse -> serialize:
// terms come out merged, sorted by Pauli string, at 17 significant digits,
// with the identity component first and defaulted fields omitted.

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "evolution.hpp"

namespace qgtop {

struct ParseError : std::runtime_error {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                             ": " + msg),
          line(line_),
          col(col_) {}
};

using RampLookup = std::function<std::optional<RampProfile>(const std::string&)>;

namespace detail {

struct Tok {
    std::string text;
    int col = 1;
};

inline std::vector<Tok> tokenize_line(const std::string& raw) {
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

inline double parse_float_tok(const Tok& t, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.text.c_str(), &end);
    if (t.text.empty() || end != t.text.c_str() + t.text.size() || !std::isfinite(v))
        throw ParseError(line, t.col, std::string("expected a finite ") + what + ", got '" +
                                          t.text + "'");
    return v;
}

inline long long parse_int_tok(const std::string& s, int line, int col, const char* what) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ParseError(line, col, std::string("expected an integer ") + what + ", got '" + s +
                                        "'");
    return v;
}

inline bool valid_ramp_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline Schedule parse_circuit(const std::string& text, const RampLookup& custom_ramps = {}) {
    Schedule sched;
    sched.qubits = 0;  // unset until the header arrives
    bool have_header = false;
    bool have_cycles = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::vector<detail::Tok> toks = detail::tokenize_line(raw);
        if (toks.empty()) continue;
        const detail::Tok& kw = toks[0];

        if (kw.text == "qubits") {
            if (have_header) throw ParseError(line_no, kw.col, "duplicate qubits header");
            if (toks.size() != 2)
                throw ParseError(line_no, kw.col, "usage: qubits N");
            const long long n =
                detail::parse_int_tok(toks[1].text, line_no, toks[1].col, "qubit count");
            if (n < 1 || n > 4)
                throw ParseError(line_no, toks[1].col, "qubits must be between 1 and 4");
            sched.qubits = static_cast<int>(n);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError(line_no, kw.col, "missing qubits header before '" + kw.text + "'");

        if (kw.text == "segment") {
            Segment seg;
            seg.hamiltonian.qubits = sched.qubits;
            seg.duration = 0.0;
            bool have_duration = false, have_phase = false, have_ramp = false;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const std::string& t = toks[i].text;
                const std::size_t eq = t.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw ParseError(line_no, toks[i].col,
                                     "expected key=value in segment line, got '" + t + "'");
                const std::string key = t.substr(0, eq);
                const detail::Tok val{t.substr(eq + 1), toks[i].col + static_cast<int>(eq) + 1};
                if (key == "duration") {
                    if (have_duration)
                        throw ParseError(line_no, toks[i].col, "duplicate duration");
                    seg.duration = detail::parse_float_tok(val, line_no, "duration");
                    if (!(seg.duration > 0.0))
                        throw ParseError(line_no, val.col, "duration must be > 0");
                    have_duration = true;
                } else if (key == "global_phase") {
                    if (have_phase)
                        throw ParseError(line_no, toks[i].col, "duplicate global_phase");
                    seg.global_phase = detail::parse_float_tok(val, line_no, "global_phase");
                    have_phase = true;
                } else if (key == "ramp") {
                    if (have_ramp) throw ParseError(line_no, toks[i].col, "duplicate ramp");
                    if (!detail::valid_ramp_name(val.text))
                        throw ParseError(line_no, val.col, "invalid ramp name '" + val.text + "'");
                    std::optional<RampProfile> rp = RampProfile::builtin(val.text);
                    if (!rp && custom_ramps) rp = custom_ramps(val.text);
                    if (!rp)
                        throw ParseError(line_no, val.col, "unknown ramp '" + val.text + "'");
                    try {
                        rp->validate();
                    } catch (const std::exception& e) {
                        throw ParseError(line_no, val.col,
                                         "ramp '" + val.text + "': " + e.what());
                    }
                    seg.ramp = std::move(rp);
                    have_ramp = true;
                } else {
                    throw ParseError(line_no, toks[i].col, "unknown segment key '" + key + "'");
                }
            }
            if (!have_duration) throw ParseError(line_no, kw.col, "segment needs duration=");
            sched.segments.push_back(std::move(seg));
            continue;
        }

        if (kw.text == "term") {
            if (sched.segments.empty())
                throw ParseError(line_no, kw.col, "term before any segment");
            if (toks.size() != 3)
                throw ParseError(line_no, kw.col, "usage: term COEFF PAULI");
            const double coeff = detail::parse_float_tok(toks[1], line_no, "coefficient");
            const std::string& letters = toks[2].text;
            if (static_cast<int>(letters.size()) != sched.qubits)
                throw ParseError(line_no, toks[2].col,
                                 "Pauli string length " + std::to_string(letters.size()) +
                                     " does not match qubits " + std::to_string(sched.qubits));
            bool all_identity = true;
            for (std::size_t i = 0; i < letters.size(); ++i) {
                const char c = letters[i];
                if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                    throw ParseError(line_no, toks[2].col + static_cast<int>(i),
                                     std::string("invalid Pauli letter '") + c + "'");
                if (c != 'I') all_identity = false;
            }
            HamiltonianSpec& h = sched.segments.back().hamiltonian;
            if (all_identity) {
                h.identity_coefficient += coeff;
            } else {
                bool merged = false;
                for (PauliTerm& t : h.terms)
                    if (t.letters == letters) {
                        t.coefficient += coeff;  // duplicates combine; zero sums stay
                        merged = true;
                        break;
                    }
                if (!merged) h.terms.push_back({coeff, letters});
            }
            continue;
        }

        if (kw.text == "cycles") {
            if (have_cycles) throw ParseError(line_no, kw.col, "duplicate cycles");
            if (toks.size() != 2)
                throw ParseError(line_no, kw.col, "usage: cycles N or cycles N/D");
            const std::string& s = toks[1].text;
            const std::size_t slash = s.find('/');
            long long num = 0, den = 1;
            if (slash == std::string::npos) {
                num = detail::parse_int_tok(s, line_no, toks[1].col, "cycle count");
            } else {
                num = detail::parse_int_tok(s.substr(0, slash), line_no, toks[1].col,
                                            "cycle numerator");
                den = detail::parse_int_tok(s.substr(slash + 1), line_no,
                                            toks[1].col + static_cast<int>(slash) + 1,
                                            "cycle denominator");
            }
            if (num <= 0 || den <= 0)
                throw ParseError(line_no, toks[1].col, "cycles must be positive");
            sched.cycles = Rational{num, den};
            have_cycles = true;
            continue;
        }

        throw ParseError(line_no, kw.col, "unknown keyword '" + kw.text + "'");
    }

    if (!have_header) throw ParseError(line_no + 1, 1, "missing qubits header");
    validate(sched);  // segment presence, coefficients, cycle semantics
    return sched;
}

inline Schedule load_circuit(const std::filesystem::path& path,
                             const RampLookup& custom_ramps = {}) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open circuit file: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_circuit(ss.str(), custom_ramps);
}

// Two-column CSV (u, lambda) -> ramp profile named after the file stem.
inline RampProfile load_ramp_csv(const std::string& name, const std::string& text) {
    RampProfile rp;
    rp.name = name;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        bool blank = true;
        for (char c : raw)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        const std::size_t comma = raw.find(',');
        if (comma == std::string::npos)
            throw ParseError(line_no, 1, "ramp CSV row needs two comma-separated columns");
        const detail::Tok a{raw.substr(0, comma), 1};
        const detail::Tok b{raw.substr(comma + 1), static_cast<int>(comma) + 2};
        rp.points.emplace_back(detail::parse_float_tok(a, line_no, "ramp clock"),
                               detail::parse_float_tok(b, line_no, "ramp strength"));
    }
    try {
        rp.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument("ramp '" + name + "': " + e.what());
    }
    return rp;
}

// Resolves ramp=NAME to NAME.csv in `dir`; built-ins take precedence upstream.
inline RampLookup sidecar_ramp_lookup(const std::filesystem::path& dir) {
    return [dir](const std::string& name) -> std::optional<RampProfile> {
        const std::filesystem::path p = dir / (name + ".csv");
        std::ifstream f(p);
        if (!f) return std::nullopt;
        std::ostringstream ss;
        ss << f.rdbuf();
        return load_ramp_csv(name, ss.str());
    };
}

// ---- numeric literals shared with the CLI ----

inline double parse_double_literal(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw std::invalid_argument(what + ": expected a finite number, got '" + s + "'");
    return v;
}

// Complex literal: re, imj, or re+imj / re-imj (e.g. "0.5-0.25j", "1j", "-j").
inline Cmplx parse_complex_literal(std::string t) {
    t.erase(std::remove_if(t.begin(), t.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            t.end());
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    if (t.back() != 'j' && t.back() != 'J')
        return {parse_double_literal(t, "complex literal"), 0.0};
    const std::string body = t.substr(0, t.size() - 1);
    // Split before the sign of the imaginary part; skip position 0 and
    // exponent signs.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double_literal(s, "complex literal");
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    return {parse_double_literal(body.substr(0, split), "complex literal"),
            imag_of(body.substr(split))};
}

// Comma-separated amplitudes in basis order |0...0>, |0...1>, ...
inline State parse_state_literal(const std::string& s, int dim) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        parts.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(parts.size()) != dim)
        throw std::invalid_argument("state: expected " + std::to_string(dim) +
                                    " comma-separated amplitudes, got " +
                                    std::to_string(parts.size()));
    State psi(dim);
    for (int i = 0; i < dim; ++i) psi[i] = parse_complex_literal(parts[i]);
    return psi;
}

// "LO:HI:STEP" inclusive grid; a bare number is a one-point grid.
inline std::vector<double> parse_float_grid(const std::string& s, const std::string& what) {
    const std::size_t c1 = s.find(':');
    if (c1 == std::string::npos) return {parse_double_literal(s, what)};
    const std::size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument(what + ": expected LO:HI:STEP, got '" + s + "'");
    const double lo = parse_double_literal(s.substr(0, c1), what);
    const double hi = parse_double_literal(s.substr(c1 + 1, c2 - c1 - 1), what);
    const double step = parse_double_literal(s.substr(c2 + 1), what);
    if (!(step > 0.0)) throw std::invalid_argument(what + ": STEP must be > 0");
    if (hi < lo - 1e-12) throw std::invalid_argument(what + ": HI must be >= LO");
    const long long n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (n > 100000) throw std::invalid_argument(what + ": grid too large");
    std::vector<double> out;
    for (long long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

inline std::string canonical_circuit(const Schedule& sched) {
    validate(sched);
    std::ostringstream out;
    out << "qubits " << sched.qubits << "\n";
    for (const Segment& seg : sched.segments) {
        out << "segment duration=" << detail::format_full(seg.duration);
        if (seg.global_phase != 0.0)
            out << " global_phase=" << detail::format_full(seg.global_phase);
        if (seg.ramp) out << " ramp=" << seg.ramp->name;
        out << "\n";
        double identity = seg.hamiltonian.identity_coefficient;
        std::map<std::string, double> merged;
        for (const PauliTerm& t : seg.hamiltonian.terms) {
            if (t.letters.find_first_not_of('I') == std::string::npos)
                identity += t.coefficient;
            else
                merged[t.letters] += t.coefficient;
        }
        if (identity != 0.0)
            out << "term " << detail::format_full(identity) << " "
                << std::string(sched.qubits, 'I') << "\n";
        for (const auto& [letters, coeff] : merged)
            out << "term " << detail::format_full(coeff) << " " << letters << "\n";
    }
    out << "cycles " << sched.cycles.str() << "\n";
    return out.str();
}

}  // namespace qgtop
