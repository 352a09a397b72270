// Command-line front end: setup-file parsing, a small expression parser for
// module elements, dispatch to the library operations, and human/JSON
// reports. Exit codes: 0 success, 1 invalid input, 2 internal consistency
// failure.
//
// JSON reports use the envelope
//   {command, setup_digest, result, certificates, anomalies}
// with alphabetically ordered keys, no floats, arbitrary-precision integers
// as decimal strings and rationals as "p/q".
#pragma once

#include "lattice.hpp"
#include "cohomology.hpp"
#include "sigma.hpp"
#include "stabilizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace metafp::cli {

using nlohmann::json;

struct CliError : std::runtime_error {
    explicit CliError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// parsing helpers

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw CliError("zero denominator in rational: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw CliError("cannot parse rational: " + s);
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::vector<Rat> parse_character(const std::string& s) {
    std::vector<Rat> out;
    for (const std::string& p : split(s, ',')) out.push_back(parse_rat(p));
    return out;
}

/// Rational function in x over Z, used by the expression parser.
struct RatFunc {
    Poly num, den{Poly::constant(Int{1})};

    void reduce() {
        if (num.is_zero()) {
            den = Poly::constant(Int{1});
            return;
        }
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0 || g.coeff(0) != 1) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
        if (den.leading() < 0) {
            num = -num;
            den = -den;
        }
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        RatFunc r{a.num * b.den + b.num * a.den, a.den * b.den};
        r.reduce();
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        RatFunc r{a.num * b.den - b.num * a.den, a.den * b.den};
        r.reduce();
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        RatFunc r{a.num * b.num, a.den * b.den};
        r.reduce();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num.is_zero()) throw CliError("division by zero in expression");
        RatFunc r{a.num * b.den, a.den * b.num};
        r.reduce();
        return r;
    }
};

/// Recursive-descent parser for expressions like "(x^2+x)/(x+1)" or
/// "2*x - 1/2".
class ExprParser {
public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw CliError("trailing input in expression: " + s_.substr(pos_));
        return r;
    }

private:
    RatFunc expr() {
        RatFunc r = term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                r = r + term();
            } else if (peek() == '-') {
                ++pos_;
                r = r - term();
            } else {
                return r;
            }
        }
    }
    RatFunc term() {
        RatFunc r = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                r = r * factor();
            } else if (peek() == '/') {
                ++pos_;
                r = r / factor();
            } else {
                return r;
            }
        }
    }
    RatFunc factor() {
        RatFunc b = base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos_;
            }
            std::string digits = read_digits();
            if (digits.empty()) throw CliError("exponent expected in expression");
            long e = std::stol(digits);
            RatFunc r{Poly::constant(Int{1}), Poly::constant(Int{1})};
            for (long i = 0; i < e; ++i) r = r * b;
            if (neg) {
                RatFunc one{Poly::constant(Int{1}), Poly::constant(Int{1})};
                r = one / r;
            }
            return r;
        }
        return b;
    }
    RatFunc base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            skip_ws();
            if (peek() != ')') throw CliError("missing ')' in expression");
            ++pos_;
            return r;
        }
        if (c == '-') {
            ++pos_;
            RatFunc r = factor();
            return RatFunc{Poly{}, Poly::constant(Int{1})} - r;
        }
        if (c == 'x') {
            ++pos_;
            return {Poly::variable(), Poly::constant(Int{1})};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits();
            return {Poly::constant(Int(digits)), Poly::constant(Int{1})};
        }
        throw CliError(std::string("unexpected character in expression: ") + (c ? std::string(1, c) : "<end>"));
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    std::string read_digits() {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d.push_back(s_[pos_++]);
        return d;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

/// Converts p/q to a localized element; the denominator must be invertible
/// in the localization (a product of the block polynomials and a k-smooth
/// constant).
inline Localized to_localized(const SetupPtr& setup, const RatFunc& rf) {
    Localized num = Localized::from_poly(setup, rf.num);
    Localized den = Localized::from_poly(setup, rf.den);
    try {
        return num * den.unit_inverse();
    } catch (const std::domain_error&) {
        throw CliError("denominator " + rf.den.str() + " is not invertible in the localized ring");
    }
}

inline Localized parse_element(const SetupPtr& setup, const std::string& text) {
    return to_localized(setup, ExprParser(text).parse());
}

// ---------------------------------------------------------------------------
// setup files

inline Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw CliError("polynomial must be an array of ascending coefficients");
    std::vector<Int> c;
    for (const auto& e : j) {
        if (e.is_number_integer()) c.push_back(Int(e.get<long long>()));
        else if (e.is_string()) c.push_back(Int(e.get<std::string>()));
        else throw CliError("polynomial coefficients must be integers or decimal strings");
    }
    return Poly(std::move(c));
}

inline RawSetup raw_setup_from_json(const json& j) {
    RawSetup raw;
    if (!j.is_object()) throw CliError("setup file must contain a JSON object");
    if (!j.contains("k")) throw CliError("setup file is missing \"k\"");
    if (j["k"].is_number_integer()) raw.k = Int(j["k"].get<long long>());
    else if (j["k"].is_string()) raw.k = Int(j["k"].get<std::string>());
    else throw CliError("\"k\" must be an integer or a decimal string");
    if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty())
        throw CliError("setup file needs a non-empty \"blocks\" array");
    for (const auto& jb : j["blocks"]) {
        Block blk;
        if (!jb.is_object() || !jb.contains("polys"))
            throw CliError("each block must be an object with a \"polys\" array");
        for (const auto& jp : jb["polys"]) blk.polys.push_back(poly_from_json(jp));
        if (jb.contains("assert_irreducible")) blk.assert_irreducible = jb["assert_irreducible"].get<bool>();
        raw.blocks.push_back(std::move(blk));
    }
    if (j.contains("free_rank")) raw.free_rank = j["free_rank"].get<long>();
    return raw;
}

inline RawSetup load_raw_setup(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open setup file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw CliError("setup file " + path + ": " + e.what());
    }
    return raw_setup_from_json(j);
}

inline std::string setup_digest(const RawSetup& raw) {
    std::ostringstream os;
    os << raw.k.str() << "|" << raw.free_rank;
    for (const Block& b : raw.blocks) {
        os << "|";
        for (const Poly& p : b.polys) {
            for (const Int& c : p.coeffs()) os << c.str() << ",";
            os << ";";
        }
        os << (b.assert_irreducible ? "!" : "");
    }
    std::string s = os.str();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

// ---------------------------------------------------------------------------
// JSON rendering

inline json rat_json(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline json character_json(const Character& c) {
    json a = json::array();
    for (const Rat& x : c) a.push_back(rat_json(x));
    return a;
}

inline json extint_json(const ExtInt& v) { return v.str(); }

inline json violations_json(const std::vector<Violation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back({{"code", v.code}, {"detail", v.detail}});
    return a;
}

/// Names a primitive character when it matches one of the standard ones.
inline std::string character_name(const SetupPtr& setup, const Character& chi) {
    Character prim = primitive(chi);
    for (const VEntry& e : standard_characters(setup))
        if (primitive(e.chi) == prim) return e.name;
    if (prim.size() == static_cast<std::size_t>(setup->rank_q)) {
        Character vm1(prim.size(), Rat{0});
        vm1[0] = 1;
        if (prim == vm1) return "v-1";
    }
    return character_str(prim);
}

struct Report {
    std::string command;
    std::string digest;
    json result = json::object();
    json certificates = json::array();
    json anomalies = json::array();
    std::string human;
    int exit_code = 0;

    json to_json() const {
        return {{"anomalies", anomalies},
                {"certificates", certificates},
                {"command", command},
                {"result", result},
                {"setup_digest", digest}};
    }
};

// ---------------------------------------------------------------------------
// shared option block

struct CommonOpts {
    std::string setup_path;
    bool json_output = false;
};

inline SetupPtr require_valid_setup(const CommonOpts& opts, Report& rep) {
    if (opts.setup_path.empty()) throw CliError("--setup FILE is required");
    RawSetup raw = load_raw_setup(opts.setup_path);
    rep.digest = setup_digest(raw);
    ValidationResult vr = validate_setup(raw);
    if (!vr.ok()) {
        std::ostringstream os;
        os << "invalid setup:";
        for (const auto& v : vr.violations) os << "\n  [" << v.code << "] " << v.detail;
        throw CliError(os.str());
    }
    return vr.setup;
}

inline ValuationId parse_valuation(const SetupPtr& setup, const std::string& name) {
    if (name == "w") return ValuationId::degree();
    if (name.size() >= 2 && name[0] == 'v') {
        try {
            long i = std::stol(name.substr(1));
            return ValuationId::fadic(*setup, i);
        } catch (const std::invalid_argument&) {
        }
    }
    if (name.rfind("p:", 0) == 0) return ValuationId::padic(Int(name.substr(2)));
    throw CliError("unknown valuation '" + name + "' (use w, v0..vn, or p:PRIME)");
}

// ---------------------------------------------------------------------------
// subcommand implementations

inline void cmd_validate(const CommonOpts& opts, Report& rep) {
    RawSetup raw = load_raw_setup(opts.setup_path);
    rep.digest = setup_digest(raw);
    ValidationResult vr = validate_setup(raw);
    json degrees = json::array();
    std::ostringstream human;
    if (vr.ok()) {
        for (const Block& b : vr.setup->blocks) {
            json blk = json::array();
            for (const Poly& p : b.polys) blk.push_back(p.degree());
            degrees.push_back(blk);
        }
        rep.result = {{"valid", true},
                      {"k", vr.setup->k.str()},
                      {"free_rank", vr.setup->free_rank},
                      {"block_degrees", degrees},
                      {"beta", vr.setup->beta},
                      {"min_block_rank", vr.setup->min_block_rank},
                      {"violations", json::array()},
                      {"notes", vr.notes}};
        human << "valid: k=" << vr.setup->k.str() << ", block degrees [";
        const auto& d = vr.setup->degrees;
        for (std::size_t i = 0; i < d.size(); ++i) human << (i ? "," : "") << d[i];
        human << "], beta=" << vr.setup->beta;
        for (const auto& note : vr.notes) human << "\nnote: " << note;
    } else {
        rep.result = {{"valid", false}, {"violations", violations_json(vr.violations)}, {"notes", vr.notes}};
        human << "invalid:";
        for (const auto& v : vr.violations) human << "\n  [" << v.code << "] " << v.detail;
        rep.exit_code = 1;
    }
    rep.human = human.str();
}

inline void cmd_val(const CommonOpts& opts, const std::string& valuation_name,
                    const std::string& elem_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    ValuationId v = parse_valuation(setup, valuation_name);
    Localized e = parse_element(setup, elem_text);
    ExtInt val = valuation(v, e);
    rep.result = {{"valuation", v.name()}, {"element", e.str()}, {"value", extint_json(val)}};
    rep.human = v.name() + "(" + e.str() + ") = " + val.str();
}

inline void cmd_chars(const CommonOpts& opts, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    auto V = standard_characters(setup);
    json arr = json::array();
    std::ostringstream human;
    Character sum(static_cast<std::size_t>(setup->rank_q), Rat{0});
    human << "basis order: (";
    auto names = setup->basis_names();
    for (std::size_t i = 0; i < names.size(); ++i) human << (i ? "," : "") << names[i];
    human << ")\n";
    for (const VEntry& e : V) {
        Int g{0};
        for (const Rat& x : e.chi) g = int_gcd(g, numerator(x));
        arr.push_back({{"name", e.name},
                       {"chi", character_json(e.chi)},
                       {"q_v", e.q_v.str(*setup)},
                       {"discrete", g == 1}});
        sum = add(sum, e.chi);
        human << e.name << " = " << character_str(e.chi) << ", q_v = " << e.q_v.str(*setup) << "\n";
    }
    bool sum_zero = is_zero_vector(sum);
    rep.result = {{"characters", arr}, {"sum", character_json(sum)}, {"sum_zero", sum_zero}};
    human << "sum over V: " << character_str(sum) << (sum_zero ? " (zero)" : "");
    rep.human = human.str();
}

inline json witness_json(const SetupPtr& setup, const Witness& w) {
    json terms = json::array();
    for (const auto& [c, q] : w.terms) {
        json exps = json::array();
        for (long e : q.exps) exps.push_back(e);
        terms.push_back({{"coeff", c.str()}, {"monomial", q.str(*setup)}, {"exponents", exps}});
    }
    return {{"terms", terms}, {"pretty", w.str(*setup)}};
}

inline void cmd_witness(const CommonOpts& opts, const std::string& char_text,
                        const std::string& bounds_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    Character chi = parse_character(char_text);
    if (chi.size() != static_cast<std::size_t>(setup->rank_q))
        throw CliError("character must have " + std::to_string(setup->rank_q) + " coordinates");
    if (is_zero_vector(chi)) throw CliError("the zero vector is not a character");
    SearchBounds bounds;
    if (!bounds_text.empty()) {
        auto parts = split(bounds_text, ',');
        if (parts.size() != 2) throw CliError("--bounds expects \"support,exp_box\"");
        bounds.support = std::stol(parts[0]);
        bounds.exp_box = std::stol(parts[1]);
    }
    SigmaVerdict verdict = search_centralizer_witness(setup, chi, bounds);
    json res = {{"character", character_json(chi)},
                {"bounds", {{"support", bounds.support}, {"exp_box", bounds.exp_box}}},
                {"verdict", verdict.in_sigma() ? "in_sigma" : "no_witness_within_bounds"}};
    std::ostringstream human;
    if (verdict.in_sigma()) {
        res["witness"] = witness_json(setup, *verdict.witness);
        rep.certificates.push_back(res["witness"]);
        human << "in Sigma_A: witness lambda = " << verdict.witness->str(*setup);
    } else {
        human << "no witness within bounds (support <= " << bounds.support << ", exponent box "
              << bounds.exp_box << "); membership is undecided";
    }
    rep.result = std::move(res);
    rep.human = human.str();
}

inline ConeFamily family_by_name(const SetupPtr& setup, const std::string& name) {
    if (name == "theoremb") {
        if (setup->block_count() != 1 || setup->n() != 2)
            throw CliError("--family theoremb requires the n = 2 instance");
        return sigma_complement_family(2);
    }
    if (name == "V" || name == "v") return standard_ray_family(setup);
    throw CliError("unknown family '" + name + "' (use theoremb or V)");
}

inline void cmd_tame(const CommonOpts& opts, long m, const std::string& family_name, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    ConeFamily fam = family_by_name(setup, family_name);
    TameResult tr = check_m_tame(fam, m);
    std::ostringstream human;
    human << m << "-tame: " << (tr.tame ? "true" : "false");
    json res = {{"m", m}, {"family", family_name}, {"tame", tr.tame}};
    if (!tr.tame) {
        json cert = json::array();
        std::vector<std::string> names;
        // display order: w, v-1, v0, ..., vn, then everything else
        std::vector<Character> sorted = tr.certificate;
        auto rank = [&](const Character& c) {
            std::string n = character_name(setup, c);
            if (n == "w") return -2L;
            if (n == "v-1") return -1L;
            if (n.size() > 1 && n[0] == 'v') {
                try {
                    return std::stol(n.substr(1));
                } catch (const std::exception&) {
                }
            }
            return std::numeric_limits<long>::max();
        };
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](const Character& a, const Character& b) { return rank(a) < rank(b); });
        for (const Character& c : sorted) {
            cert.push_back(character_json(c));
            names.push_back(character_name(setup, c));
        }
        json cones = json::array();
        for (std::size_t i : tr.cone_indices) cones.push_back(fam.cones[i].name);
        rep.certificates.push_back({{"characters", cert}, {"names", names}, {"cones", cones}});
        bool plain_zero = plain_sum_is_zero(tr.certificate);
        res["certificate_names"] = names;
        res["certificate_plain_sum_zero"] = plain_zero;
        human << ", certificate: ";
        for (std::size_t i = 0; i < names.size(); ++i) human << (i ? "+" : "") << names[i];
        human << "=0";
    }
    rep.result = std::move(res);
    rep.human = human.str();
}

inline void cmd_verify_theoremb(const CommonOpts& opts, const std::string& bounds_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    SearchBounds bounds;
    if (!bounds_text.empty()) {
        auto parts = split(bounds_text, ',');
        if (parts.size() != 2) throw CliError("--bounds expects \"support,exp_box\"");
        bounds.support = std::stol(parts[0]);
        bounds.exp_box = std::stol(parts[1]);
    }
    VerifyReport report = verify_sigma_complement(setup, bounds);
    json rows = json::array();
    for (const VerifyRow& row : report.rows) {
        json r = {{"class", character_json(row.chi)},
                  {"in_family", row.in_family},
                  {"verdict", row.verdict.in_sigma() ? "in_sigma" : "no_witness_within_bounds"}};
        if (row.verdict.in_sigma()) r["witness"] = row.verdict.witness->str(*setup);
        rows.push_back(std::move(r));
    }
    for (std::size_t i : report.hard_anomalies)
        rep.anomalies.push_back({{"kind", "witness_inside_declared_complement"},
                                 {"class", character_json(report.rows[i].chi)}});
    for (std::size_t i : report.soft_anomalies)
        rep.anomalies.push_back({{"kind", "no_witness_outside_declared_complement"},
                                 {"class", character_json(report.rows[i].chi)}});
    rep.result = {{"classes", report.rows.size()},
                  {"rows", rows},
                  {"hard_anomalies", report.hard_anomalies.size()},
                  {"soft_anomalies", report.soft_anomalies.size()},
                  {"consistent", report.consistent()},
                  {"clean", report.clean()}};
    std::ostringstream human;
    std::size_t inf = 0;
    for (const VerifyRow& r : report.rows)
        if (r.in_family) ++inf;
    human << report.rows.size() << " classes checked: " << inf << " in the declared complement, "
          << (report.rows.size() - inf) << " outside\n";
    for (const VerifyRow& r : report.rows) {
        human << "  " << character_str(r.chi) << (r.in_family ? "  [complement] " : "  [sigma]      ")
              << (r.verdict.in_sigma() ? "witness " + r.verdict.witness->str(*setup)
                                       : "no witness within bounds")
              << "\n";
    }
    human << "hard anomalies: " << report.hard_anomalies.size()
          << ", soft anomalies: " << report.soft_anomalies.size();
    rep.human = human.str();
    if (!report.consistent()) rep.exit_code = 2;
}

inline void cmd_tree_ball(const CommonOpts& opts, const std::string& valuation_name,
                          const std::string& seeds_text, const std::string& window_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    ValuationId v = parse_valuation(setup, valuation_name.empty() ? "v0" : valuation_name);
    TreeContext ctx = make_tree_context(setup, v);
    std::vector<Localized> seeds;
    for (const std::string& s : split(seeds_text, ',')) seeds.push_back(parse_element(setup, s));
    auto wparts = split(window_text, ',');
    if (wparts.size() != 2) throw CliError("--window expects \"lo,hi\"");
    long lo = std::stol(wparts[0]), hi = std::stol(wparts[1]);
    TreeBall ball = tree_ball(ctx, seeds, lo, hi);
    json verts = json::array();
    for (const auto& vert : ball.vertices) {
        json sd = json::array();
        for (std::size_t s : vert.seeds) sd.push_back(s);
        verts.push_back({{"z", vert.z}, {"seeds", sd}, {"label", vert.label.str()}});
    }
    json edges = json::array();
    for (auto [a, b] : ball.edges) edges.push_back({a, b});
    rep.result = {{"valuation", v.name()},
                  {"window", {lo, hi}},
                  {"vertex_count", ball.vertices.size()},
                  {"edge_count", ball.edges.size()},
                  {"is_tree", ball.is_tree()},
                  {"vertices", verts},
                  {"edges", edges}};
    std::ostringstream human;
    human << "ball in Gamma_" << v.name() << " over window [" << lo << "," << hi << "]: "
          << ball.vertices.size() << " vertices, " << ball.edges.size() << " edges"
          << (ball.is_tree() ? " (tree)" : "");
    rep.human = human.str();
}

inline void cmd_orbits(const CommonOpts& opts, const std::string& point_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    auto reps = orbit_reps(setup);
    json arr = json::array();
    for (const LatticePoint& p : reps) {
        json c = json::array();
        for (const Int& x : p.coords) c.push_back(x.str());
        arr.push_back(c);
    }
    rep.result = {{"count", reps.size()}, {"representatives", arr}};
    std::ostringstream human;
    human << reps.size() << " orbit representatives: s_w in [0," << reps.size() << ")";
    if (!point_text.empty()) {
        auto parts = split(point_text, ',');
        LatticePoint p;
        for (const std::string& s : parts) p.coords.push_back(Int(s));
        OrbitReduction red = orbit_reduce(setup, p);
        json rc = json::array();
        for (const Int& x : red.representative.coords) rc.push_back(x.str());
        rep.result["reduction"] = {{"representative", rc},
                                   {"translation", red.translation.str(*setup)},
                                   {"is_orbit_rep", red.is_orbit_rep}};
        human << "\nreduction: representative (";
        for (std::size_t i = 0; i < red.representative.coords.size(); ++i)
            human << (i ? "," : "") << red.representative.coords[i].str();
        human << ") via " << red.translation.str(*setup);
    }
    rep.human = human.str();
}

inline void cmd_crt(const CommonOpts& opts, const std::string& labels_text,
                    const std::string& heights_text, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    std::vector<Localized> labels;
    for (const std::string& s : split(labels_text, ';')) labels.push_back(parse_element(setup, s));
    std::vector<long> heights(labels.size(), 0);
    if (!heights_text.empty()) {
        auto parts = split(heights_text, ',');
        if (parts.size() != labels.size())
            throw CliError("--heights must list one integer per label (order: w, v0, ..., vn)");
        for (std::size_t i = 0; i < parts.size(); ++i) heights[i] = std::stol(parts[i]);
    }
    CrtResult r = crt_normalize(setup, labels, heights);
    json red_labels = json::array();
    for (const auto& l : r.reduced_labels) red_labels.push_back(l.str());
    rep.result = {{"a", r.a.str()},
                  {"a_reduced", r.a_reduced.str()},
                  {"t", r.t},
                  {"a_prime", r.a_prime.str()},
                  {"f_power_degree", r.f_power_degree},
                  {"reduced_labels", red_labels},
                  {"reduced_s_w", r.reduced_heights[0]}};
    std::ostringstream human;
    human << "a = " << r.a.str() << "  (t = " << r.t << ", a' = " << r.a_prime.str()
          << ", deg F^t = " << r.f_power_degree << ")";
    rep.human = human.str();
}

inline void cmd_stabilizer(const CommonOpts& opts, long s_w, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    StabilizerData st = stabilizer_data(setup, s_w);
    bool members_ok = true;
    json basis = json::array();
    for (const Localized& e : st.basis) {
        bool ok = stabilizer_membership(setup, s_w, e);
        members_ok = members_ok && ok;
        basis.push_back(e.str());
    }
    rep.result = {{"s_w", st.s_w},
                  {"d", st.d},
                  {"rank", st.rank},
                  {"basis", basis},
                  {"basis_membership_ok", members_ok}};
    std::ostringstream human;
    human << "s_w = " << st.s_w << ": free Z[1/k]-module of rank " << st.rank << " (d = " << st.d
          << ")";
    if (st.hnn) {
        rep.result["hnn"] = {{"base_rank", st.hnn->base_rank},
                             {"stable_exponent", st.hnn->stable_exponent.str()}};
        human << "\nHNN presentation: base free abelian of rank " << st.hnn->base_rank
              << ", relations t^-1 x_i t = x_i^" << st.hnn->stable_exponent.str();
    }
    if (!members_ok) {
        rep.anomalies.push_back("stabilizer basis element failed the membership check");
        rep.exit_code = 2;
    }
    rep.human = human.str();
}

inline void cmd_connectivity(const CommonOpts& opts, long m, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    ConnectivityResult cr = connectivity_precondition(setup, m);
    auto V = standard_characters(setup);
    rep.result = {{"m", m}, {"ok", cr.ok}};
    std::ostringstream human;
    human << "every " << m << "-subset of V in an open halfspace: " << (cr.ok ? "true" : "false");
    if (!cr.ok && cr.failing_subset) {
        json names = json::array();
        human << ", failing subset {";
        for (std::size_t i = 0; i < cr.failing_subset->size(); ++i) {
            names.push_back(V[(*cr.failing_subset)[i]].name);
            human << (i ? "," : "") << V[(*cr.failing_subset)[i]].name;
        }
        human << "}";
        rep.result["failing_subset"] = names;
    }
    rep.human = human.str();
}

inline void cmd_h2(const CommonOpts& opts, Report& rep) {
    SetupPtr setup = require_valid_setup(opts, rep);
    CyclicGroupOrder the_order = h2_order(setup);
    CyclicGroupOrder fp = fixed_point_order(setup);
    bool agree = the_order == fp;
    rep.result = {{"theorem_c_order", the_order.order.str()},
                  {"fixed_point_order", fp.order.str()},
                  {"agree", agree},
                  {"every_extension_splits", the_order.trivial()}};
    std::ostringstream human;
    human << "H2 order (Theorem C): " << the_order.order.str()
          << "; fixed-point order: " << fp.order.str();
    if (!agree) {
        human << "\nnote: the two formulas disagree on this instance; both are reported";
        rep.anomalies.push_back({{"kind", "h2_formula_disagreement"},
                                 {"theorem_c_order", the_order.order.str()},
                                 {"fixed_point_order", fp.order.str()}});
    }
    rep.human = human.str();
}

inline void cmd_fixedpoints(const CommonOpts& opts, const std::string& k_text,
                            const std::string& values_text, Report& rep) {
    Int k;
    std::vector<Int> values;
    if (!opts.setup_path.empty()) {
        SetupPtr setup = require_valid_setup(opts, rep);
        k = setup->k;
        for (std::size_t j = 1; j < setup->fs().size(); ++j)
            values.push_back(setup->fs()[j].eval(Int{1}));
    } else if (!k_text.empty()) {
        k = Int(k_text);
        if (!values_text.empty())
            for (const std::string& s : split(values_text, ',')) values.push_back(Int(s));
    } else {
        throw CliError("fixedpoints needs --setup or --k (with optional --values)");
    }
    CyclicGroupOrder order = fixed_point_order(k, values);
    json jv = json::array();
    for (const Int& v : values) jv.push_back(v.str());
    rep.result = {{"k", k.str()}, {"values", jv}, {"order", order.order.str()}};
    std::ostringstream human;
    human << "fixed-point order over Z/" << Int(k - 1).str() << " localized at {";
    for (std::size_t i = 0; i < values.size(); ++i) human << (i ? "," : "") << values[i].str();
    human << "}: " << order.order.str();
    rep.human = human.str();
}

// ---------------------------------------------------------------------------
// driver

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations for localized polynomial module instances"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string valuation_name, elem_text, char_text, bounds_text, family_name = "theoremb";
    std::string seeds_text, window_text, labels_text, heights_text, point_text;
    std::string k_text, values_text;
    long m = 2, s_w = 0;

    auto add_common = [&](CLI::App* sub, bool needs_setup = true) {
        auto* o = sub->add_option("--setup", opts.setup_path, "setup JSON file");
        if (needs_setup) o->required();
        sub->add_flag("--json", opts.json_output, "emit a single JSON report document");
    };

    auto* c_validate = app.add_subcommand("validate", "validate a setup file");
    add_common(c_validate);
    auto* c_val = app.add_subcommand("val", "evaluate a valuation on an element");
    add_common(c_val);
    c_val->add_option("--valuation", valuation_name, "w, v0..vn, or p:PRIME")->required();
    c_val->add_option("--elem", elem_text, "element expression, e.g. \"(x^2+x)/(x+1)\"")->required();
    auto* c_chars = app.add_subcommand("chars", "the standard characters V with their q_v");
    add_common(c_chars);
    auto* c_witness = app.add_subcommand("witness", "centralizer witness search for a character");
    add_common(c_witness);
    c_witness->add_option("--char", char_text, "character coordinates (q-1,q0,...,qn), rationals")
        ->required();
    c_witness->add_option("--bounds", bounds_text, "search bounds \"support,exp_box\" (default 4,6)");
    auto* c_tame = app.add_subcommand("tame", "m-tameness of a cone family");
    add_common(c_tame);
    c_tame->add_option("--m", m, "multiset size")->required();
    c_tame->add_option("--family", family_name, "theoremb (default) or V");
    auto* c_verify = app.add_subcommand("verify-theoremb",
                                        "cross-check the declared complement against witness search");
    add_common(c_verify);
    c_verify->add_option("--bounds", bounds_text, "search bounds \"support,exp_box\" (default 4,6)");
    auto* c_tree = app.add_subcommand("tree-ball", "finite ball in a character tree");
    add_common(c_tree);
    c_tree->add_option("--valuation", valuation_name, "w or v0..vn (default v0)");
    c_tree->add_option("--seeds", seeds_text, "comma-separated label expressions")->required();
    c_tree->add_option("--window", window_text, "height window \"lo,hi\"")->required();
    auto* c_orbits = app.add_subcommand("orbits", "orbit representatives of the ceiling lattice");
    add_common(c_orbits);
    c_orbits->add_option("--point", point_text, "integer point (s_w,s_0,...,s_n) to reduce");
    auto* c_crt = app.add_subcommand("crt", "Chinese-remainder label normalization");
    add_common(c_crt);
    c_crt->add_option("--labels", labels_text, "semicolon-separated labels, order w;v0;...;vn")
        ->required();
    c_crt->add_option("--heights", heights_text, "heights \"s_w,s_0,...,s_n\" (default all 0)");
    auto* c_stab = app.add_subcommand("stabilizer", "vertex stabilizer structure");
    add_common(c_stab);
    c_stab->add_option("--sw", s_w, "w-height of the vertex, in [0, -beta)")->required();
    auto* c_conn = app.add_subcommand("connectivity", "open-halfspace precondition on V");
    add_common(c_conn);
    c_conn->add_option("--m", m, "subset size")->required();
    auto* c_h2 = app.add_subcommand("h2", "second-cohomology order, both formulas");
    add_common(c_h2);
    auto* c_fixed = app.add_subcommand("fixedpoints", "fixed-point order of the localized residue ring");
    add_common(c_fixed, /*needs_setup=*/false);
    c_fixed->add_option("--k", k_text, "the integer k (k-1 is the modulus)");
    c_fixed->add_option("--values", values_text, "comma-separated values to invert");

    // CLI11's vector overload expects the arguments reversed.
    std::vector<std::string> argv_copy = args.empty() ? std::vector<std::string>{"--help"} : args;
    std::reverse(argv_copy.begin(), argv_copy.end());
    try {
        app.parse(argv_copy);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    Report rep;
    try {
        if (c_validate->parsed()) {
            rep.command = "validate";
            cmd_validate(opts, rep);
        } else if (c_val->parsed()) {
            rep.command = "val";
            cmd_val(opts, valuation_name, elem_text, rep);
        } else if (c_chars->parsed()) {
            rep.command = "chars";
            cmd_chars(opts, rep);
        } else if (c_witness->parsed()) {
            rep.command = "witness";
            cmd_witness(opts, char_text, bounds_text, rep);
        } else if (c_tame->parsed()) {
            rep.command = "tame";
            cmd_tame(opts, m, family_name, rep);
        } else if (c_verify->parsed()) {
            rep.command = "verify-theoremb";
            cmd_verify_theoremb(opts, bounds_text, rep);
        } else if (c_tree->parsed()) {
            rep.command = "tree-ball";
            cmd_tree_ball(opts, valuation_name, seeds_text, window_text, rep);
        } else if (c_orbits->parsed()) {
            rep.command = "orbits";
            cmd_orbits(opts, point_text, rep);
        } else if (c_crt->parsed()) {
            rep.command = "crt";
            cmd_crt(opts, labels_text, heights_text, rep);
        } else if (c_stab->parsed()) {
            rep.command = "stabilizer";
            cmd_stabilizer(opts, s_w, rep);
        } else if (c_conn->parsed()) {
            rep.command = "connectivity";
            cmd_connectivity(opts, m, rep);
        } else if (c_h2->parsed()) {
            rep.command = "h2";
            cmd_h2(opts, rep);
        } else if (c_fixed->parsed()) {
            rep.command = "fixedpoints";
            cmd_fixedpoints(opts, k_text, values_text, rep);
        }
    } catch (const CliError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 2;
    }

    if (opts.json_output) out << rep.to_json().dump(2) << "\n";
    else out << rep.human << "\n";
    return rep.exit_code;
}

}  // namespace metafp::cli
