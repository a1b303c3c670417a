#pragma once
// Command-line front door: argument handling, the class-expression
// micro-grammar, cache plumbing, and text/JSON report emission.
//
// Exit codes: 0 success (including --help); 1 domain error (invalid
// mathematical input); 2 parse or usage error; 3 resource-budget abort;
// 4 internal-consistency failure.
//
// Class expressions use a tiny grammar, whitespace-insensitive:
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := signed integer | 's' digits | 'q'
// A class atom spells its parts as digits: s2 = [2], s11 = [1,1],
// s21 = [2,1], s22 = [2,2], s1 = [1], s0 = the unit class.  'q' is the
// quantum deformation parameter and is rejected in classical contexts.
// Parse errors point at the offending position with a caret.
//
// Insertion lists for stable-map invariants are comma-separated class atoms
// with an optional repetition: "s2^8,s11".

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scrollcalc/chowring.hpp"
#include "scrollcalc/gw.hpp"
#include "scrollcalc/numeric.hpp"
#include "scrollcalc/partition.hpp"
#include "scrollcalc/quantum.hpp"
#include "scrollcalc/schubert.hpp"
#include "scrollcalc/scrolls.hpp"

namespace scrollcalc::cli {

// ---------------------------------------------------------------------------
// Expression micro-grammar.
// ---------------------------------------------------------------------------

[[noreturn]] inline void fail_at(std::string_view input, std::size_t pos,
                                 const std::string& what) {
    std::ostringstream os;
    os << "at position " << pos << ": " << what << "\n  " << input << "\n  "
       << std::string(pos, ' ') << "^";
    throw ParseError(os.str());
}

struct Token {
    enum class Kind { Integer, ClassAtom, Q, Plus, Minus, Star, Caret, Comma, End };
    Kind kind;
    std::size_t pos;
    std::string text;  // digits for Integer; part digits for ClassAtom
};

inline std::vector<Token> lex_expression(std::string_view s) {
    std::vector<Token> toks;
    std::size_t i = 0;
    const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        switch (c) {
            case '+': toks.push_back({Token::Kind::Plus, i, "+"}); ++i; continue;
            case '-': toks.push_back({Token::Kind::Minus, i, "-"}); ++i; continue;
            case '*': toks.push_back({Token::Kind::Star, i, "*"}); ++i; continue;
            case '^': toks.push_back({Token::Kind::Caret, i, "^"}); ++i; continue;
            case ',': toks.push_back({Token::Kind::Comma, i, ","}); ++i; continue;
            default: break;
        }
        if (is_digit(c)) {
            std::size_t j = i;
            while (j < s.size() && is_digit(s[j])) ++j;
            toks.push_back({Token::Kind::Integer, i, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        if (c == 's') {
            std::size_t j = i + 1;
            while (j < s.size() && is_digit(s[j])) ++j;
            if (j == i + 1) fail_at(s, i, "expected partition digits after 's'");
            toks.push_back(
                {Token::Kind::ClassAtom, i, std::string(s.substr(i + 1, j - i - 1))});
            i = j;
            continue;
        }
        if (c == 'q') {
            toks.push_back({Token::Kind::Q, i, "q"});
            ++i;
            continue;
        }
        fail_at(s, i, std::string("unexpected character '") + c + "'");
    }
    toks.push_back({Token::Kind::End, s.size(), ""});
    return toks;
}

// "21" -> [2,1]; "0" -> the empty partition.  Enforces the 2x2 box.
inline Partition partition_from_digits(std::string_view input, const Token& tok) {
    std::vector<int> parts;
    for (const char c : tok.text) {
        if (c != '0') parts.push_back(c - '0');
    }
    const std::string atom = "s" + tok.text;
    try {
        Partition p(parts);
        if (!p.fits_box(2, 2)) {
            fail_at(input, tok.pos,
                    "'" + atom + "' is outside the 2x2 box (at most two parts, each at most 2)");
        }
        return p;
    } catch (const DomainError&) {
        fail_at(input, tok.pos, "'" + atom + "' is not a partition (parts must be weakly decreasing)");
    }
}

// Ring adapters for the expression evaluator.
struct ClassicalOps {
    using Value = CohomElement;
    static constexpr bool kHasQ = false;
    static Value from_int(const Int& n) { return CohomElement::unit() * n; }
    static Value from_partition(const Partition& p) { return CohomElement::basis_elem(p); }
    static Value from_q() { return CohomElement::zero(); }  // guarded by kHasQ
    static Value unit() { return CohomElement::unit(); }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value mul(const Value& a, const Value& b) { return lr_multiply(a, b); }
};

struct QuantumOps {
    using Value = QElement;
    static constexpr bool kHasQ = true;
    static Value from_int(const Int& n) { return QElement::unit() * n; }
    static Value from_partition(const Partition& p) { return QElement::basis_elem(p); }
    static Value from_q() { return QElement::basis_elem(Partition{}, 1); }
    static Value unit() { return QElement::unit(); }
    static Value add(const Value& a, const Value& b) { return a + b; }
    static Value mul(const Value& a, const Value& b) { return quantum_product(a, b); }
};

template <typename Ops>
class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view input)
        : input_(input), toks_(lex_expression(input)) {}

    typename Ops::Value parse() {
        auto v = parse_expr();
        if (cur().kind != Token::Kind::End) {
            fail_at(input_, cur().pos, "expected '+', '*', '^', or end of expression");
        }
        return v;
    }

private:
    const Token& cur() const { return toks_[idx_]; }
    void advance() { ++idx_; }

    typename Ops::Value parse_expr() {
        auto v = parse_term();
        while (cur().kind == Token::Kind::Plus) {
            advance();
            v = Ops::add(v, parse_term());
        }
        return v;
    }

    typename Ops::Value parse_term() {
        auto v = parse_factor();
        while (cur().kind == Token::Kind::Star) {
            advance();
            v = Ops::mul(v, parse_factor());
        }
        return v;
    }

    typename Ops::Value parse_factor() {
        auto v = parse_atom();
        if (cur().kind == Token::Kind::Caret) {
            const auto caret = cur();
            advance();
            if (cur().kind != Token::Kind::Integer) {
                fail_at(input_, cur().pos, "expected a non-negative exponent after '^'");
            }
            if (cur().text.size() > 4) {
                fail_at(input_, cur().pos, "exponent too large");
            }
            const int e = std::stoi(cur().text);
            advance();
            (void)caret;
            auto result = Ops::unit();
            for (int k = 0; k < e; ++k) result = Ops::mul(result, v);
            return result;
        }
        return v;
    }

    typename Ops::Value parse_atom() {
        switch (cur().kind) {
            case Token::Kind::Minus: {
                advance();
                if (cur().kind != Token::Kind::Integer) {
                    fail_at(input_, cur().pos, "expected an integer after unary '-'");
                }
                const Int n(cur().text);
                advance();
                return Ops::from_int(-n);
            }
            case Token::Kind::Integer: {
                const Int n(cur().text);
                advance();
                return Ops::from_int(n);
            }
            case Token::Kind::ClassAtom: {
                const auto p = partition_from_digits(input_, cur());
                advance();
                return Ops::from_partition(p);
            }
            case Token::Kind::Q: {
                if (!Ops::kHasQ) {
                    fail_at(input_, cur().pos,
                            "'q' is the quantum parameter and has no meaning here; "
                            "use quantum-mult");
                }
                advance();
                return Ops::from_q();
            }
            default:
                fail_at(input_, cur().pos, "expected a class atom (s..), an integer, or 'q'");
        }
    }

    std::string_view input_;
    std::vector<Token> toks_;
    std::size_t idx_ = 0;
};

inline CohomElement parse_classical(std::string_view s) {
    return ExpressionParser<ClassicalOps>(s).parse();
}
inline QElement parse_quantum(std::string_view s) {
    return ExpressionParser<QuantumOps>(s).parse();
}

// "s2^8,s11" -> the multiset {[2] x8, [1,1]}.
inline std::vector<Partition> parse_insertions(std::string_view input) {
    const auto toks = lex_expression(input);
    std::vector<Partition> out;
    std::size_t i = 0;
    if (toks[i].kind == Token::Kind::End) fail_at(input, 0, "empty insertion list");
    while (true) {
        if (toks[i].kind != Token::Kind::ClassAtom) {
            fail_at(input, toks[i].pos, "expected a class atom like s2 or s11");
        }
        const Partition p = partition_from_digits(input, toks[i]);
        ++i;
        int count = 1;
        if (toks[i].kind == Token::Kind::Caret) {
            ++i;
            if (toks[i].kind != Token::Kind::Integer || toks[i].text.size() > 4) {
                fail_at(input, toks[i].pos, "expected a repetition count after '^'");
            }
            count = std::stoi(toks[i].text);
            if (count < 1) fail_at(input, toks[i].pos, "repetition count must be positive");
            ++i;
        }
        out.insert(out.end(), static_cast<std::size_t>(count), p);
        if (toks[i].kind == Token::Kind::End) break;
        if (toks[i].kind != Token::Kind::Comma) {
            fail_at(input, toks[i].pos, "expected ',' or end of list");
        }
        ++i;
    }
    return out;
}

inline Int parse_flag_int(const std::string& flag, const std::string& text) {
    const bool has_sign = !text.empty() && text.front() == '-';
    const std::string digits = has_sign ? text.substr(1) : text;
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(flag + ": expected an integer, got '" + text + "'");
    }
    return Int(text);
}

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

inline std::string short_name(const Partition& p) {
    if (p.empty()) return "s0";
    std::string s = "s";
    for (const int part : p.parts()) s += static_cast<char>('0' + part);
    return s;
}

inline nlohmann::json terms_json(const CohomElement& e) {
    auto j = nlohmann::json::object();
    for (const auto& [p, v] : e.coeffs()) j[short_name(p)] = v.str();
    return j;
}

inline nlohmann::json terms_json(const QElement& e) {
    auto j = nlohmann::json::object();
    for (const auto& [k, v] : e.coeffs()) {
        const std::string key =
            (k.first > 0 ? "q^" + std::to_string(k.first) + "*" : "") + short_name(k.second);
        j[key] = v.str();
    }
    return j;
}

// ---------------------------------------------------------------------------
// The application.
// ---------------------------------------------------------------------------

struct CliConfig {
    std::string format = "text";
    int threads = 1;
    std::string cache;
    int degree_bound = GradedPoly::kDefaultTruncation;
    int budget_max_degree = 5;
    int budget_max_insertions = 21;
    std::size_t budget_max_entries = 200000;

    GWBudget budget() const {
        return GWBudget{budget_max_degree, budget_max_insertions, budget_max_entries};
    }
};

inline int cli_main(int argc, const char* const* argv, std::ostream& out,
                    std::ostream& err) {
    CliConfig cfg;
    CLI::App app{
        "exact enumerative geometry of lines in P^3: Schubert calculus, quantum "
        "products, genus-0 stable-map counts, and scroll degrees",
        "scrollcalc"};
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads for the invariant solver")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--cache", cfg.cache,
                   "invariant cache file; warmed on start, extended on clean exit")
        ->envname("SCROLLCALC_CACHE");
    app.add_option("--degree-bound", cfg.degree_bound,
                   "truncation degree for formal Chern computations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--budget-max-degree", cfg.budget_max_degree,
                   "largest curve degree the solver will attempt")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--budget-max-insertions", cfg.budget_max_insertions,
                   "largest insertion count the solver will attempt")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--budget-max-entries", cfg.budget_max_entries,
                   "largest invariant table the solver will hold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string smult_class, integrate_class, qmult_class;
    int vi_d = 0, gw_d = 0, qd_d = 0, qdb_d = 0;
    std::string gw_insertions;
    int chern_d = 0, chern_a = 0, push_d = 0, push_a = 0;
    int port_d = 0, port_a = 0, strat_d = 0, strat_a = 0;
    int scroll_d = 0, boundary_d = 0, audit_d = 6;
    std::string scroll_qd, scroll_qdb, scroll_audit, audit_target;
    bool scroll_computed_qdb = false;

    auto* sub_smult =
        app.add_subcommand("schubert-mult", "expand a product in the Schubert basis");
    sub_smult->add_option("--class", smult_class, "class expression")->required();
    auto* sub_integrate =
        app.add_subcommand("integrate", "integrate a class over the Grassmannian");
    sub_integrate->add_option("--class", integrate_class, "class expression")->required();
    auto* sub_qmult =
        app.add_subcommand("quantum-mult", "expand a product in the quantum ring");
    sub_qmult->add_option("--class", qmult_class, "class expression (may use q)")->required();
    auto* sub_vi = app.add_subcommand(
        "vi", "degree of the quasi-map space by the root-of-unity formula");
    sub_vi->add_option("--d", vi_d, "curve degree")->required();
    auto* sub_gw =
        app.add_subcommand("gw", "genus-0 stable-map invariant for given insertions");
    sub_gw->add_option("--d", gw_d, "curve degree")->required();
    sub_gw->add_option("--insertions", gw_insertions, "comma list, e.g. s2^8,s11")
        ->required();
    auto* sub_qd = app.add_subcommand(
        "qd", "count of degree-d rational ruled surfaces through 4d+1 points");
    sub_qd->add_option("--d", qd_d, "surface degree")->required();
    auto* sub_qdb = app.add_subcommand(
        "qdb", "count through 4d points and tangent to a plane");
    sub_qdb->add_option("--d", qdb_d, "surface degree")->required();
    auto* sub_chern = app.add_subcommand(
        "chern", "Chern data of the twisted dual universal subsheaf");
    sub_chern->add_option("--d", chern_d, "curve degree")->required();
    sub_chern->add_option("--a", chern_a, "twist degree")->capture_default_str();
    auto* sub_push = app.add_subcommand(
        "pushforward", "Chern character of the derived pushforward to the base");
    sub_push->add_option("--d", push_d, "curve degree")->required();
    sub_push->add_option("--a", push_a, "twist degree")->required();
    auto* sub_port = app.add_subcommand(
        "porteous", "stratum class by the determinant formula");
    sub_port->add_option("--d", port_d, "scroll degree")->required();
    sub_port->add_option("--a", port_a, "directrix degree")->required();
    auto* sub_strat = app.add_subcommand(
        "stratum-class", "fundamental class of the splitting stratum, both routes");
    sub_strat->add_option("--d", strat_d, "scroll degree")->required();
    sub_strat->add_option("--a", strat_a, "directrix degree")->required();
    auto* sub_scroll = app.add_subcommand(
        "scroll-degree", "degree of the codimension-one scroll family, with audits");
    sub_scroll->add_option("--d", scroll_d, "scroll degree (even, >= 4)")->required();
    sub_scroll->add_option("--qd", scroll_qd, "use this point count instead of solving");
    sub_scroll->add_option("--qdb", scroll_qdb, "use this tangency count instead");
    sub_scroll->add_flag("--computed-qdb", scroll_computed_qdb,
                         "solve for the tangency count instead of the reference table");
    sub_scroll->add_option("--audit", scroll_audit,
                           "audit an external candidate count; skips solving");
    auto* sub_boundary = app.add_subcommand(
        "boundary", "boundary components of the 3-pointed stable-map space");
    sub_boundary->add_option("--d", boundary_d, "total degree")->required();
    auto* sub_audit = app.add_subcommand(
        "audit", "divisibility audits of published scroll counts");
    sub_audit->add_option("--d", audit_d, "scroll degree (even, >= 4)")
        ->capture_default_str();
    sub_audit->add_option("--audit", audit_target, "external candidate count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const auto emit = [&](const nlohmann::json& j, const std::string& text) {
        if (cfg.format == "json") {
            out << j.dump(2) << "\n";
        } else {
            out << text;
        }
    };

    // Runs fn with a solver that is warmed from the cache (when one is
    // configured and present) and persisted again on clean completion.
    const auto with_solver = [&](auto&& fn) {
        GWSolver solver(cfg.budget(), cfg.threads);
        if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
            solver.load_cache(cfg.cache);
        }
        fn(solver);
        if (!cfg.cache.empty()) solver.save_cache(cfg.cache);
    };

    try {
        if (sub_smult->parsed()) {
            const auto e = parse_classical(smult_class);
            nlohmann::json j{{"schema", "1"},
                             {"command", "schubert-mult"},
                             {"input", smult_class},
                             {"result", e.to_string()},
                             {"terms", terms_json(e)}};
            emit(j, e.to_string() + "\n");
        } else if (sub_integrate->parsed()) {
            const Int v = integrate(parse_classical(integrate_class));
            nlohmann::json j{{"schema", "1"},
                             {"command", "integrate"},
                             {"input", integrate_class},
                             {"value", v.str()}};
            emit(j, v.str() + "\n");
        } else if (sub_qmult->parsed()) {
            const auto e = parse_quantum(qmult_class);
            nlohmann::json j{{"schema", "1"},
                             {"command", "quantum-mult"},
                             {"input", qmult_class},
                             {"result", e.to_string()},
                             {"terms", terms_json(e)}};
            emit(j, e.to_string() + "\n");
        } else if (sub_vi->parsed()) {
            const Int v = degree_P(vi_d);
            nlohmann::json j{
                {"schema", "1"}, {"command", "vi"}, {"d", vi_d}, {"value", v.str()}};
            emit(j, v.str() + "\n");
        } else if (sub_gw->parsed()) {
            const auto insertions = parse_insertions(gw_insertions);
            Int v;
            with_solver([&](GWSolver& s) { v = s.invariant(gw_d, insertions); });
            auto names = nlohmann::json::array();
            {
                auto sorted = insertions;
                std::sort(sorted.begin(), sorted.end());
                for (const auto& p : sorted) names.push_back(short_name(p));
            }
            nlohmann::json j{{"schema", "1"},
                             {"command", "gw"},
                             {"d", gw_d},
                             {"insertions", names},
                             {"value", v.str()}};
            emit(j, v.str() + "\n");
        } else if (sub_qd->parsed() || sub_qdb->parsed()) {
            const bool tangency = sub_qdb->parsed();
            const int d = tangency ? qdb_d : qd_d;
            Int v;
            with_solver([&](GWSolver& s) { v = tangency ? s.q_d_b(d) : s.q_d(d); });
            nlohmann::json j{{"schema", "1"},
                             {"command", tangency ? "qdb" : "qd"},
                             {"d", d},
                             {"value", v.str()}};
            emit(j, v.str() + "\n");
        } else if (sub_chern->parsed()) {
            const auto K = universal_K_chern(chern_d, cfg.degree_bound);
            const auto twisted = dualize_twist(K, chern_a);
            const auto ch = chern_to_char(twisted, 2);
            nlohmann::json j{{"schema", "1"},
                             {"command", "chern"},
                             {"d", chern_d},
                             {"a", chern_a},
                             {"c1", twisted.cls(1).to_string()},
                             {"c2", twisted.cls(2).to_string()},
                             {"ch", nlohmann::json::array()}};
            std::ostringstream text;
            text << "c1 = " << twisted.cls(1).to_string() << "\n"
                 << "c2 = " << twisted.cls(2).to_string() << "\n";
            for (std::size_t n = 0; n < ch.ch.size(); ++n) {
                j["ch"].push_back(ch.ch[n].to_string());
                text << "ch_" << n << " = " << ch.ch[n].to_string() << "\n";
            }
            emit(j, text.str());
        } else if (sub_push->parsed()) {
            const auto push = pushforward_K_dual_twist(push_d, push_a, cfg.degree_bound);
            nlohmann::json j{{"schema", "1"},
                             {"command", "pushforward"},
                             {"d", push_d},
                             {"a", push_a},
                             {"c1", push.ch.at(1).to_string()},
                             {"ch", nlohmann::json::array()}};
            std::ostringstream text;
            for (std::size_t n = 0; n < push.ch.size(); ++n) {
                j["ch"].push_back(push.ch[n].to_string());
                text << "ch_" << n << " = " << push.ch[n].to_string() << "\n";
            }
            emit(j, text.str());
        } else if (sub_port->parsed()) {
            const auto cls = class_R_da_porteous(port_d, port_a);
            const StratumSpec spec{port_d, port_a};
            nlohmann::json j{{"schema", "1"},
                             {"command", "porteous"},
                             {"d", port_d},
                             {"a", port_a},
                             {"codim", codim_stratum(spec)},
                             {"class", cls.to_string()}};
            emit(j, cls.to_string() + "\n");
        } else if (sub_strat->parsed()) {
            const StratumSpec spec{strat_d, strat_a};
            const auto cls = class_R_da(strat_d, strat_a);
            const auto det = class_R_da_porteous(strat_d, strat_a);
            nlohmann::json j{{"schema", "1"},
                             {"command", "stratum-class"},
                             {"d", strat_d},
                             {"a", strat_a},
                             {"dim", dim_stratum(spec)},
                             {"codim", codim_stratum(spec)},
                             {"class", cls.to_string()},
                             {"determinant_route", det.to_string()}};
            std::ostringstream text;
            text << "dim = " << dim_stratum(spec) << ", codim = " << codim_stratum(spec)
                 << "\nclass = " << cls.to_string()
                 << "\ndeterminant route = " << det.to_string() << "\n";
            emit(j, text.str());
        } else if (sub_scroll->parsed()) {
            const auto qd_src = scroll_qd.empty()
                                    ? IntegerSource::computed()
                                    : IntegerSource::user(parse_flag_int("--qd", scroll_qd));
            IntegerSource qdb_src = IntegerSource::computed();
            if (!scroll_qdb.empty()) {
                qdb_src = IntegerSource::user(parse_flag_int("--qdb", scroll_qdb));
            } else if (!scroll_computed_qdb && scroll_d >= 1 && scroll_d <= 9) {
                qdb_src = IntegerSource::table();
            }
            ScrollOptions opts;
            opts.budget = cfg.budget();
            opts.threads = cfg.threads;
            if (!scroll_audit.empty()) {
                opts.audit_target = parse_flag_int("--audit", scroll_audit);
            }
            const bool needs_solver =
                !opts.audit_target &&
                (qd_src.kind == IntegerSource::Kind::Computed ||
                 qdb_src.kind == IntegerSource::Kind::Computed);
            ScrollReport report;
            if (needs_solver) {
                with_solver([&](GWSolver& s) {
                    opts.solver = &s;
                    report = scroll_degree(scroll_d, qd_src, qdb_src, opts);
                });
            } else {
                report = scroll_degree(scroll_d, qd_src, qdb_src, opts);
            }
            emit(report.to_json(), report.to_text());
        } else if (sub_boundary->parsed()) {
            const auto comps = boundary_partitions(boundary_d);
            nlohmann::json j{{"schema", "1"},
                             {"command", "boundary"},
                             {"d", boundary_d},
                             {"count", comps.size()},
                             {"components", nlohmann::json::array()}};
            std::ostringstream text;
            for (const auto& c : comps) {
                j["components"].push_back({{"A", c.marks_a},
                                           {"B", c.marks_b},
                                           {"dA", c.deg_a},
                                           {"dB", c.deg_b}});
                text << c.to_string() << "\n";
            }
            text << "total " << comps.size() << "\n";
            emit(j, text.str());
        } else if (sub_audit->parsed()) {
            if (audit_d < 4 || audit_d % 2 != 0) {
                throw DomainError("audits divide by d^3/2 for even d >= 4, got d=" +
                                  std::to_string(audit_d));
            }
            const Int divisor =
                exact_div(int_pow(Int(audit_d), 3), Int(2), "d^3/2 with d even");
            std::vector<DivisibilityAudit> audits;
            if (audit_d == 6) audits = headline_audits();
            if (!audit_target.empty()) {
                audits.push_back(audit_divisibility(
                    "external-candidate", parse_flag_int("--audit", audit_target), divisor));
            }
            nlohmann::json j{{"schema", "1"},
                             {"command", "audit"},
                             {"d", audit_d},
                             {"divisor", divisor.str()},
                             {"audits", nlohmann::json::array()}};
            std::ostringstream text;
            for (const auto& a : audits) {
                j["audits"].push_back(detail::audit_to_json(a));
                text << a.name << ": " << (a.passed ? "pass" : "FAIL") << "; " << a.note
                     << "\n";
            }
            if (audits.empty()) text << "no audits requested\n";
            emit(j, text.str());
        }
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

// Convenience overload for tests: argument list without the program name.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("scrollcalc");
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace scrollcalc::cli
