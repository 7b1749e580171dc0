#include "itp/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace itp {

namespace {

struct Sexpr {
    // atom when marked; lists keep their children (possibly empty: "()")
    bool atom = false;
    std::string text;
    std::vector<Sexpr> kids;
    int line = 0, col = 0;
    bool is_atom() const { return atom; }
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : m_s(s) {}

    std::vector<Sexpr> read_all() {
        std::vector<Sexpr> out;
        skip_ws();
        while (m_pos < m_s.size()) {
            out.push_back(read());
            skip_ws();
        }
        return out;
    }

  private:
    Sexpr read() {
        skip_ws();
        if (m_pos >= m_s.size()) throw ParseError(m_line, m_col, "unexpected end of input");
        int l = m_line, c = m_col;
        if (cur() == '(') {
            advance();
            Sexpr e;
            e.line = l;
            e.col = c;
            skip_ws();
            while (m_pos < m_s.size() && cur() != ')') {
                e.kids.push_back(read());
                skip_ws();
            }
            if (m_pos >= m_s.size()) throw ParseError(l, c, "unbalanced '('");
            advance();  // ')'
            return e;
        }
        if (cur() == ')') throw ParseError(l, c, "unexpected ')'");
        std::string t;
        if (cur() == '|') {
            advance();
            while (m_pos < m_s.size() && cur() != '|') {
                t += cur();
                advance();
            }
            if (m_pos >= m_s.size()) throw ParseError(l, c, "unterminated quoted symbol");
            advance();
        } else {
            while (m_pos < m_s.size() && !std::isspace(static_cast<unsigned char>(cur())) &&
                   cur() != '(' && cur() != ')' && cur() != ';') {
                t += cur();
                advance();
            }
        }
        Sexpr e;
        e.atom = true;
        e.text = t;
        e.line = l;
        e.col = c;
        return e;
    }

    char cur() const { return m_s[m_pos]; }
    void advance() {
        if (m_s[m_pos] == '\n') {
            ++m_line;
            m_col = 1;
        } else {
            ++m_col;
        }
        ++m_pos;
    }
    void skip_ws() {
        while (m_pos < m_s.size()) {
            char ch = m_s[m_pos];
            if (ch == ';') {
                while (m_pos < m_s.size() && m_s[m_pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& m_s;
    size_t m_pos = 0;
    int m_line = 1, m_col = 1;
};

bool is_numeral(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit((unsigned char)c); });
}

bool is_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= s.size()) return false;
    return is_numeral(s.substr(0, dot)) && is_numeral(s.substr(dot + 1));
}

Rational decimal_to_rat(const std::string& s) {
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(s.size() - dot - 1));
    Rational r{num};
    r /= Rational(den);
    r.canonicalize();
    return r;
}

class ProblemParser {
  public:
    ProblemParser(AtomContext& ctx, const std::string& text) : m_ctx(ctx), m_text(text) {}

    Script run() {
        Lexer lex(m_text);
        std::vector<Sexpr> cmds = lex.read_all();
        if (cmds.empty()) throw ParseError(1, 1, "missing set-logic");
        for (const Sexpr& c : cmds) command(c);
        if (m_script.logic.empty()) throw ParseError(1, 1, "missing set-logic");
        return m_script;
    }

  private:
    using Env = std::map<std::string, TermId>;

    [[noreturn]] void err(const Sexpr& at, const std::string& msg) {
        throw ParseError(at.line, at.col, msg);
    }

    void command(const Sexpr& e) {
        if (e.is_atom() || e.kids.empty() || !e.kids[0].is_atom())
            err(e, "expected a command");
        const std::string& h = e.kids[0].text;
        if (h == "set-logic") {
            if (e.kids.size() != 2 || !e.kids[1].is_atom()) err(e, "malformed set-logic");
            if (!m_script.logic.empty()) err(e, "duplicate set-logic");
            const std::string& l = e.kids[1].text;
            if (l == "QF_UFLIA")
                m_script.sort_mode = Sort::Kind::Int;
            else if (l == "QF_UFLRA")
                m_script.sort_mode = Sort::Kind::Real;
            else
                err(e.kids[1], "unsupported logic " + l);
            m_script.logic = l;
            return;
        }
        if (m_script.logic.empty()) err(e, "missing set-logic");
        if (h == "declare-sort") {
            if (e.kids.size() != 3 || !e.kids[1].is_atom() || !e.kids[2].is_atom() ||
                e.kids[2].text != "0")
                err(e, "only (declare-sort <name> 0) is supported");
            m_ctx.terms().declare_sort(e.kids[1].text);
            return;
        }
        if (h == "declare-fun") {
            if (e.kids.size() != 4 || !e.kids[1].is_atom() || e.kids[2].is_atom())
                err(e, "malformed declare-fun");
            std::vector<Sort> dom;
            for (const Sexpr& s : e.kids[2].kids) dom.push_back(sort_of(s));
            m_ctx.terms().declare_fun(e.kids[1].text, std::move(dom), sort_of(e.kids[3]));
            return;
        }
        if (h == "declare-const") {
            if (e.kids.size() != 3 || !e.kids[1].is_atom()) err(e, "malformed declare-const");
            m_ctx.terms().declare_fun(e.kids[1].text, {}, sort_of(e.kids[2]));
            return;
        }
        if (h == "assert") {
            if (e.kids.size() != 2) err(e, "malformed assert");
            const Sexpr& body = e.kids[1];
            if (body.is_atom() || body.kids.size() != 4 || !body.kids[0].is_atom() ||
                body.kids[0].text != "!" || !body.kids[2].is_atom() ||
                body.kids[2].text != ":named" || !body.kids[3].is_atom())
                err(e, "assert requires a (! <formula> :named <name>) annotation");
            const std::string& name = body.kids[3].text;
            if (m_script.named_assertions.count(name))
                err(body.kids[3], "duplicate assertion name " + name);
            Env env;
            m_script.named_assertions.emplace(name, formula(body.kids[1], env, true));
            return;
        }
        if (h == "check-sat") {
            if (e.kids.size() != 1) err(e, "malformed check-sat");
            m_script.saw_check_sat = true;
            return;
        }
        if (h == "get-interpolants") {
            if (e.kids.size() != 3 || !e.kids[1].is_atom() || !e.kids[2].is_atom())
                err(e, "malformed get-interpolants");
            m_script.name_a = e.kids[1].text;
            m_script.name_b = e.kids[2].text;
            m_script.saw_get_interpolants = true;
            for (const std::string& n : {m_script.name_a, m_script.name_b})
                if (!m_script.named_assertions.count(n))
                    err(e, "unknown assertion name " + n);
            return;
        }
        if (h == "exit" || h == "set-info" || h == "set-option") return;  // ignored
        err(e, "unsupported command " + h);
    }

    Sort sort_of(const Sexpr& e) {
        if (!e.is_atom()) err(e, "expected sort");
        if (e.text == "Bool") return Sort::boolean();
        if (e.text == "Int") {
            if (m_script.sort_mode != Sort::Kind::Int) err(e, "Int not available in this logic");
            return Sort::integer();
        }
        if (e.text == "Real") {
            if (m_script.sort_mode != Sort::Kind::Real)
                err(e, "Real not available in this logic");
            return Sort::real();
        }
        auto s = m_ctx.terms().find_sort(e.text);
        if (!s) err(e, "unknown sort " + e.text);
        return *s;
    }

    Sort arith_sort() const {
        return m_script.sort_mode == Sort::Kind::Int ? Sort::integer() : Sort::real();
    }

    // --- terms ---

    TermId term(const Sexpr& e, const Env& env) {
        if (e.is_atom()) {
            if (is_numeral(e.text))
                return m_ctx.terms().mk_numeral(Rational(mpz_class(e.text)), arith_sort());
            if (is_decimal(e.text)) {
                if (m_script.sort_mode != Sort::Kind::Real)
                    err(e, "decimal literal outside Real logic");
                return m_ctx.terms().mk_numeral(decimal_to_rat(e.text), Sort::real());
            }
            auto let = env.find(e.text);
            if (let != env.end()) return let->second;
            auto sym = m_ctx.terms().find_symbol(e.text);
            if (!sym) err(e, "undeclared symbol " + e.text);
            if (!m_ctx.terms().decl(*sym).domain.empty())
                err(e, e.text + " expects arguments");
            return m_ctx.terms().mk_app(*sym, {});
        }
        if (e.kids.empty() || !e.kids[0].is_atom()) err(e, "expected term");
        const std::string& h = e.kids[0].text;
        if (h == "+" || h == "-" || h == "*" || h == "/") return arith_term(e, env);
        if (h == "let") return let_term(e, env);
        auto sym = m_ctx.terms().find_symbol(h);
        if (!sym) err(e.kids[0], "undeclared symbol " + h);
        std::vector<TermId> args;
        for (size_t i = 1; i < e.kids.size(); ++i) args.push_back(term(e.kids[i], env));
        const FuncDecl& d = m_ctx.terms().decl(*sym);
        if (d.domain.size() != args.size()) err(e, "wrong arity for " + h);
        for (size_t i = 0; i < args.size(); ++i)
            if (m_ctx.terms().sort_of(args[i]) != d.domain[i])
                err(e.kids[i + 1], "argument sort mismatch for " + h);
        return m_ctx.terms().mk_app(*sym, std::move(args));
    }

    LinTerm lin_of(const Sexpr& e, TermId t) {
        Sort s = m_ctx.terms().sort_of(t);
        if (!s.is_arith()) err(e, "arithmetic term expected");
        return m_ctx.terms().arith_view(t);
    }

    TermId arith_term(const Sexpr& e, const Env& env) {
        const std::string& h = e.kids[0].text;
        if (h == "/") {
            // rational constant only
            if (e.kids.size() != 3) err(e, "/ expects two arguments");
            if (m_script.sort_mode != Sort::Kind::Real) err(e, "/ outside Real logic");
            LinTerm a = lin_of(e.kids[1], term(e.kids[1], env));
            LinTerm b = lin_of(e.kids[2], term(e.kids[2], env));
            if (!a.is_constant() || !b.is_constant() || sgn(b.constant()) == 0)
                err(e, "/ supports constant operands only");
            return m_ctx.terms().mk_numeral(a.constant() / b.constant(), Sort::real());
        }
        LinTerm acc;
        if (h == "-") {
            if (e.kids.size() == 2) {
                acc = -lin_of(e.kids[1], term(e.kids[1], env));
                return m_ctx.terms().term_of(acc, arith_sort());
            }
            if (e.kids.size() < 3) err(e, "- expects arguments");
            acc = lin_of(e.kids[1], term(e.kids[1], env));
            for (size_t i = 2; i < e.kids.size(); ++i)
                acc.add(lin_of(e.kids[i], term(e.kids[i], env)), Rational(-1));
            return m_ctx.terms().term_of(acc, arith_sort());
        }
        if (h == "+") {
            if (e.kids.size() < 3) err(e, "+ expects arguments");
            for (size_t i = 1; i < e.kids.size(); ++i)
                acc.add(lin_of(e.kids[i], term(e.kids[i], env)));
            return m_ctx.terms().term_of(acc, arith_sort());
        }
        // h == "*": linear products only
        if (e.kids.size() < 3) err(e, "* expects arguments");
        acc = lin_of(e.kids[1], term(e.kids[1], env));
        for (size_t i = 2; i < e.kids.size(); ++i) {
            LinTerm rhs = lin_of(e.kids[i], term(e.kids[i], env));
            if (acc.is_constant()) {
                Rational c = acc.constant();
                acc = rhs.scaled(c);
            } else if (rhs.is_constant()) {
                acc = acc.scaled(rhs.constant());
            } else {
                err(e, "nonlinear product");
            }
        }
        return m_ctx.terms().term_of(acc, arith_sort());
    }

    TermId let_term(const Sexpr& e, const Env& env) {
        Env inner = let_env(e, env);
        return term(e.kids[2], inner);
    }

    Env let_env(const Sexpr& e, const Env& env) {
        if (e.kids.size() != 3 || e.kids[1].is_atom()) err(e, "malformed let");
        Env inner = env;
        for (const Sexpr& b : e.kids[1].kids) {
            if (b.is_atom() || b.kids.size() != 2 || !b.kids[0].is_atom())
                err(b, "malformed let binding");
            // parallel let: bindings evaluated in the outer environment
            inner[b.kids[0].text] = term(b.kids[1], env);
        }
        return inner;
    }

    // --- formulas (built directly in NNF) ---

    Formula formula(const Sexpr& e, const Env& env, bool positive) {
        if (e.is_atom()) {
            if (e.text == "true") return positive ? Formula::tru() : Formula::fls();
            if (e.text == "false") return positive ? Formula::fls() : Formula::tru();
            auto let = env.find(e.text);
            if (let != env.end()) err(e, "let-bound terms cannot be used as formulas");
            auto sym = m_ctx.terms().find_symbol(e.text);
            if (!sym) err(e, "undeclared symbol " + e.text);
            const FuncDecl& d = m_ctx.terms().decl(*sym);
            if (d.range != Sort::boolean() || !d.domain.empty())
                err(e, e.text + " is not a boolean constant");
            Literal l = m_ctx.mk_bool_literal(*sym);
            return Formula::lit(positive ? l : negate_literal(l));
        }
        if (e.kids.empty() || !e.kids[0].is_atom()) err(e, "expected formula");
        const std::string& h = e.kids[0].text;
        if (h == "not") {
            if (e.kids.size() != 2) err(e, "not expects one argument");
            return formula(e.kids[1], env, !positive);
        }
        if (h == "and" || h == "or") {
            bool conj = (h == "and") == positive;
            std::vector<Formula> ks;
            for (size_t i = 1; i < e.kids.size(); ++i)
                ks.push_back(formula(e.kids[i], env, positive));
            return conj ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
        }
        if (h == "=>") {
            if (e.kids.size() < 3) err(e, "=> expects two arguments");
            // right associative: (=> a b c) == a -> (b -> c)
            std::vector<Formula> ks;
            for (size_t i = 1; i + 1 < e.kids.size(); ++i)
                ks.push_back(formula(e.kids[i], env, !positive));
            ks.push_back(formula(e.kids.back(), env, positive));
            return positive ? Formula::disj(std::move(ks)) : Formula::conj(std::move(ks));
        }
        if (h == "let") {
            Env inner = let_env(e, env);
            return formula(e.kids[2], inner, positive);
        }
        if (h == "=" || h == "distinct" || h == "<=" || h == "<" || h == ">=" || h == ">")
            return atom_formula(e, env, positive);
        // boolean function application is limited to constants; anything else
        // is unsupported
        err(e.kids[0], "unsupported operator " + h);
    }

    Formula atom_formula(const Sexpr& e, const Env& env, bool positive) {
        const std::string& h = e.kids[0].text;
        if (e.kids.size() != 3) err(e, h + " expects two arguments");
        if (h == "=" || h == "distinct") {
            bool want_eq = (h == "=") == positive;
            // boolean equality = iff
            if (!e.kids[1].is_atom() || looks_boolean(e.kids[1], env)) {
                if (looks_boolean(e.kids[1], env) || looks_boolean(e.kids[2], env)) {
                    Formula a1 = formula(e.kids[1], env, true);
                    Formula a0 = formula(e.kids[1], env, false);
                    Formula b1 = formula(e.kids[2], env, true);
                    Formula b0 = formula(e.kids[2], env, false);
                    if (want_eq)
                        return Formula::conj({Formula::disj({a0, b1}), Formula::disj({b0, a1})});
                    return Formula::disj({Formula::conj({a1, b0}), Formula::conj({b1, a0})});
                }
            }
            TermId x = term(e.kids[1], env);
            TermId y = term(e.kids[2], env);
            Sort sx = m_ctx.terms().sort_of(x);
            if (sx != m_ctx.terms().sort_of(y)) err(e, "equality between different sorts");
            if (sx == Sort::boolean()) err(e, "boolean equality of non-constant operands");
            if (sx.is_arith()) {
                auto r = m_ctx.normalize_atom(m_ctx.terms().arith_view(x),
                                              want_eq ? Rel::Eq : Rel::Neq,
                                              m_ctx.terms().arith_view(y), sx.kind);
                if (std::holds_alternative<bool>(r))
                    return std::get<bool>(r) ? Formula::tru() : Formula::fls();
                return Formula::lit(std::get<Literal>(r));
            }
            if (x == y) return want_eq ? Formula::tru() : Formula::fls();
            Literal l = m_ctx.mk_eq_literal(x, y);
            return Formula::lit(want_eq ? l : negate_literal(l));
        }
        Rel rel = h == "<=" ? Rel::Le : h == "<" ? Rel::Lt : h == ">=" ? Rel::Ge : Rel::Gt;
        if (!positive) {
            switch (rel) {
                case Rel::Le: rel = Rel::Gt; break;
                case Rel::Lt: rel = Rel::Ge; break;
                case Rel::Ge: rel = Rel::Lt; break;
                case Rel::Gt: rel = Rel::Le; break;
                default: break;
            }
        }
        TermId x = term(e.kids[1], env);
        TermId y = term(e.kids[2], env);
        Sort sx = m_ctx.terms().sort_of(x);
        if (!sx.is_arith() || m_ctx.terms().sort_of(y) != sx)
            err(e, "arithmetic comparison expects " + to_string(arith_sort()) + " operands");
        auto r = m_ctx.normalize_atom(m_ctx.terms().arith_view(x), rel,
                                      m_ctx.terms().arith_view(y), sx.kind);
        if (std::holds_alternative<bool>(r))
            return std::get<bool>(r) ? Formula::tru() : Formula::fls();
        return Formula::lit(std::get<Literal>(r));
    }

    bool looks_boolean(const Sexpr& e, const Env& env) {
        if (e.is_atom()) {
            if (e.text == "true" || e.text == "false") return true;
            if (is_numeral(e.text) || is_decimal(e.text)) return false;
            if (env.count(e.text)) return false;
            auto sym = m_ctx.terms().find_symbol(e.text);
            return sym && m_ctx.terms().decl(*sym).range == Sort::boolean() &&
                   m_ctx.terms().decl(*sym).domain.empty();
        }
        if (e.kids.empty() || !e.kids[0].is_atom()) return false;
        const std::string& h = e.kids[0].text;
        if (h == "not" || h == "and" || h == "or" || h == "=>" || h == "=" || h == "distinct" ||
            h == "<=" || h == "<" || h == ">=" || h == ">")
            return true;
        auto sym = m_ctx.terms().find_symbol(h);
        return sym && m_ctx.terms().decl(*sym).range == Sort::boolean();
    }

    AtomContext& m_ctx;
    const std::string& m_text;
    Script m_script;
};

}  // namespace

Script parse_problem(AtomContext& ctx, const std::string& text) {
    ProblemParser p(ctx, text);
    return p.run();
}

namespace {

class Clausifier {
  public:
    Clausifier(AtomContext& ctx, Side origin, PartitionInfo* partition)
        : m_ctx(ctx), m_origin(origin), m_partition(partition) {}

    std::vector<Clause> run(const Formula& f) {
        top(f);
        return std::move(m_out);
    }

  private:
    void top(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::True: return;
            case Formula::Kind::False:
                emit(Clause{});
                return;
            case Formula::Kind::And:
                for (const auto& k : f.kids()) top(k);
                return;
            default:
                emit_disjunction(f);
                return;
        }
    }

    // clause from a disjunction; non-literal parts get fresh labels
    void emit_disjunction(const Formula& f) {
        std::vector<Literal> lits;
        std::vector<std::pair<Literal, Formula>> defs;
        std::vector<Formula> kids =
            f.kind() == Formula::Kind::Or ? f.kids() : std::vector<Formula>{f};
        for (const Formula& k : kids) {
            if (k.is_literal()) {
                lits.push_back(k.literal());
            } else {
                Literal label = fresh_label();
                lits.push_back(label);
                defs.emplace_back(label, k);
            }
        }
        auto c = mk_clause(lits);
        if (!c) return;  // tautology; labels stay unconstrained
        emit(*c);
        // label -> g: clauses (not label or C) for each clause C of g
        for (const auto& [label, g] : defs) {
            for (const Clause& sc : clausify(m_ctx, g, m_origin, m_partition)) {
                std::vector<Literal> ls = sc.lits;
                ls.push_back(negate_literal(label));
                if (auto cc = mk_clause(std::move(ls))) emit(*cc);
            }
        }
    }

    Literal fresh_label() {
        std::string name = ".cnf" + std::string(m_origin == Side::A ? "A" : "B") +
                           std::to_string(s_counter++);
        SymbolId sym = m_ctx.terms().declare_fun(name, {}, Sort::boolean());
        if (m_partition)
            m_partition->classify(sym,
                                  m_origin == Side::A ? SymClass::ALocal : SymClass::BLocal);
        return m_ctx.mk_bool_literal(sym);
    }

    void emit(Clause c) {
        if (std::find(m_out.begin(), m_out.end(), c) == m_out.end()) m_out.push_back(std::move(c));
    }

    AtomContext& m_ctx;
    Side m_origin;
    PartitionInfo* m_partition;
    std::vector<Clause> m_out;
    static inline unsigned s_counter = 0;
};

}  // namespace

std::vector<Clause> clausify(AtomContext& ctx, const Formula& f, Side origin,
                             PartitionInfo* partition) {
    return Clausifier(ctx, origin, partition).run(f);
}

InterpolationProblem build_problem(AtomContext& ctx, const Script& s) {
    InterpolationProblem p;
    p.sort_mode = s.sort_mode;
    p.formula_a = s.named_assertions.at(s.name_a);
    p.formula_b = s.named_assertions.at(s.name_b);
    p.partition = classify_symbols(ctx, p.formula_a, p.formula_b);
    p.clauses_a = clausify(ctx, p.formula_a, Side::A, &p.partition);
    p.clauses_b = clausify(ctx, p.formula_b, Side::B, &p.partition);
    return p;
}

}  // namespace itp
