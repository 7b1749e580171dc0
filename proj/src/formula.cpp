#include "itp/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace itp {

bool Formula::operator==(const Formula& o) const {
    if (m_node == o.m_node) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::True:
        case Kind::False: return true;
        case Kind::Lit: return literal() == o.literal();
        default: break;
    }
    if (kids().size() != o.kids().size()) return false;
    for (size_t i = 0; i < kids().size(); ++i)
        if (!(kids()[i] == o.kids()[i])) return false;
    return true;
}

Formula Formula::tru() {
    static const Formula t{std::make_shared<Node>(Node{Kind::True, {}, {}})};
    return t;
}

Formula Formula::fls() {
    static const Formula f{std::make_shared<Node>(Node{Kind::False, {}, {}})};
    return f;
}

Formula Formula::lit(Literal l) {
    return Formula{std::make_shared<Node>(Node{Kind::Lit, l, {}})};
}

Formula Formula::conj(std::vector<Formula> kids) {
    std::vector<Formula> out;
    for (auto& k : kids) {
        if (k.is_false()) return fls();
        if (k.is_true()) continue;
        if (k.kind() == Kind::And) {
            for (const auto& g : k.kids()) out.push_back(g);
        } else {
            out.push_back(std::move(k));
        }
    }
    if (out.empty()) return tru();
    if (out.size() == 1) return out[0];
    return Formula{std::make_shared<Node>(Node{Kind::And, {}, std::move(out)})};
}

Formula Formula::disj(std::vector<Formula> kids) {
    std::vector<Formula> out;
    for (auto& k : kids) {
        if (k.is_true()) return tru();
        if (k.is_false()) continue;
        if (k.kind() == Kind::Or) {
            for (const auto& g : k.kids()) out.push_back(g);
        } else {
            out.push_back(std::move(k));
        }
    }
    if (out.empty()) return fls();
    if (out.size() == 1) return out[0];
    return Formula{std::make_shared<Node>(Node{Kind::Or, {}, std::move(out)})};
}

Formula Formula::negated() const {
    switch (kind()) {
        case Kind::True: return fls();
        case Kind::False: return tru();
        case Kind::Lit: return lit(negate_literal(literal()));
        case Kind::And: {
            std::vector<Formula> ks;
            for (const auto& k : kids()) ks.push_back(k.negated());
            return disj(std::move(ks));
        }
        case Kind::Or: {
            std::vector<Formula> ks;
            for (const auto& k : kids()) ks.push_back(k.negated());
            return conj(std::move(ks));
        }
    }
    return tru();
}

bool Value::operator==(const Value& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Rat: return rat == o.rat;
        case Kind::Bool: return b == o.b;
        case Kind::Elem: return elem == o.elem;
    }
    return false;
}

bool Value::operator<(const Value& o) const {
    if (kind != o.kind) return kind < o.kind;
    switch (kind) {
        case Kind::Rat: return rat < o.rat;
        case Kind::Bool: return b < o.b;
        case Kind::Elem: return elem < o.elem;
    }
    return false;
}

Value evaluate_term(const TermContext& ctx, TermId t, const Model& m) {
    const TermNode& n = ctx.term(t);
    switch (n.kind) {
        case TermNode::Kind::Numeral:
            return Value::of(n.num);
        case TermNode::Kind::Affine: {
            Rational acc = n.lin.constant();
            for (const auto& [k, c] : n.lin.coeffs()) {
                Value v = evaluate_term(ctx, k, m);
                if (v.kind != Value::Kind::Rat) throw SortError("non-rational in affine term");
                acc += c * v.rat;
            }
            return Value::of(acc);
        }
        case TermNode::Kind::FloorDiv: {
            Value v = evaluate_term(ctx, n.div_arg, m);
            mpz_class den = v.rat.get_den() * n.divisor;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), v.rat.get_num_mpz_t(), den.get_mpz_t());
            return Value::of(Rational(q));
        }
        case TermNode::Kind::App: {
            if (n.args.empty()) {
                auto it = m.consts.find(n.sym);
                if (it == m.consts.end())
                    throw UnassignedSymbol("unassigned symbol: " + ctx.decl(n.sym).name);
                return it->second;
            }
            std::vector<Value> argv;
            argv.reserve(n.args.size());
            for (TermId a : n.args) argv.push_back(evaluate_term(ctx, a, m));
            auto ft = m.tables.find(n.sym);
            if (ft == m.tables.end())
                throw UnassignedSymbol("unassigned function: " + ctx.decl(n.sym).name);
            auto it = ft->second.find(argv);
            if (it == ft->second.end())
                throw UnassignedSymbol("function table miss: " + ctx.decl(n.sym).name);
            return it->second;
        }
    }
    throw InternalError("evaluate_term: bad kind");
}

bool evaluate_literal(const AtomContext& ctx, Literal l, const Model& m) {
    const AtomNode& a = ctx.atom(l.atom);
    bool v = false;
    switch (a.kind) {
        case AtomNode::Kind::Bool: {
            auto it = m.consts.find(a.bsym);
            if (it == m.consts.end())
                throw UnassignedSymbol("unassigned symbol: " + ctx.terms().decl(a.bsym).name);
            v = it->second.b;
            break;
        }
        case AtomNode::Kind::Eq: {
            Value x = evaluate_term(ctx.terms(), a.lhs, m);
            Value y = evaluate_term(ctx.terms(), a.rhs, m);
            v = x == y;
            break;
        }
        case AtomNode::Kind::La: {
            Rational acc(0);
            for (const auto& [k, c] : a.lin.coeffs()) {
                Value tv = evaluate_term(ctx.terms(), k, m);
                if (tv.kind != Value::Kind::Rat) throw SortError("non-rational bound key");
                acc += c * tv.rat;
            }
            // concrete value compared against an eps bound lexicographically
            EpsRational val(acc);
            v = val <= a.bound;
            break;
        }
    }
    return l.pos ? v : !v;
}

bool evaluate(const AtomContext& ctx, const Formula& f, const Model& m) {
    switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Lit: return evaluate_literal(ctx, f.literal(), m);
        case Formula::Kind::And:
            for (const auto& k : f.kids())
                if (!evaluate(ctx, k, m)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& k : f.kids())
                if (evaluate(ctx, k, m)) return true;
            return false;
    }
    return false;
}

TermId substitute_term(TermContext& ctx, TermId t, const std::map<SymbolId, TermId>& bind) {
    const TermNode n = ctx.term(t);
    switch (n.kind) {
        case TermNode::Kind::Numeral:
            return t;
        case TermNode::Kind::App: {
            if (n.args.empty()) {
                auto it = bind.find(n.sym);
                if (it == bind.end()) return t;
                if (ctx.sort_of(it->second) != n.sort)
                    throw SortError("substitution sort mismatch");
                return it->second;
            }
            std::vector<TermId> args;
            args.reserve(n.args.size());
            for (TermId a : n.args) args.push_back(substitute_term(ctx, a, bind));
            return ctx.mk_app(n.sym, std::move(args));
        }
        case TermNode::Kind::Affine: {
            LinTerm out(n.lin.constant());
            for (const auto& [k, c] : n.lin.coeffs()) {
                TermId k2 = substitute_term(ctx, k, bind);
                out.add(ctx.arith_view(k2), c);
            }
            return ctx.mk_affine(std::move(out), n.sort);
        }
        case TermNode::Kind::FloorDiv:
            return ctx.mk_floor_div(substitute_term(ctx, n.div_arg, bind), n.divisor);
    }
    throw InternalError("substitute_term: bad kind");
}

Formula substitute(AtomContext& ctx, const Formula& f, const std::map<SymbolId, TermId>& bind) {
    switch (f.kind()) {
        case Formula::Kind::True: return Formula::tru();
        case Formula::Kind::False: return Formula::fls();
        case Formula::Kind::And: {
            std::vector<Formula> ks;
            for (const auto& k : f.kids()) ks.push_back(substitute(ctx, k, bind));
            return Formula::conj(std::move(ks));
        }
        case Formula::Kind::Or: {
            std::vector<Formula> ks;
            for (const auto& k : f.kids()) ks.push_back(substitute(ctx, k, bind));
            return Formula::disj(std::move(ks));
        }
        case Formula::Kind::Lit: break;
    }
    Literal l = f.literal();
    const AtomNode a = ctx.atom(l.atom);
    TermContext& tc = ctx.terms();
    switch (a.kind) {
        case AtomNode::Kind::Bool:
            return f;  // only term bindings supported
        case AtomNode::Kind::Eq: {
            TermId x = substitute_term(tc, a.lhs, bind);
            TermId y = substitute_term(tc, a.rhs, bind);
            if (x == a.lhs && y == a.rhs) return f;
            Sort s = tc.sort_of(x);
            if (s.is_arith()) {
                auto r = ctx.normalize_atom(tc.arith_view(x), Rel::Eq, tc.arith_view(y), s.kind);
                if (std::holds_alternative<bool>(r)) {
                    bool b = std::get<bool>(r) == l.pos;
                    return b ? Formula::tru() : Formula::fls();
                }
                Literal nl = std::get<Literal>(r);
                return Formula::lit(l.pos ? nl : negate_literal(nl));
            }
            if (x == y) return l.pos ? Formula::tru() : Formula::fls();
            Literal nl = ctx.mk_eq_literal(x, y);
            return Formula::lit(l.pos ? nl : negate_literal(nl));
        }
        case AtomNode::Kind::La: {
            LinTerm out;
            bool changed = false;
            for (const auto& [k, c] : a.lin.coeffs()) {
                TermId k2 = substitute_term(tc, k, bind);
                changed |= k2 != k;
                out.add(tc.arith_view(k2), c);
            }
            if (!changed) return f;
            LinTerm rhs(a.bound.real);
            auto r = a.bound.eps == 0
                         ? ctx.normalize_atom(out, Rel::Le, rhs, a.mode)
                         : ctx.normalize_atom(out, Rel::Lt, rhs, a.mode);
            if (std::holds_alternative<bool>(r)) {
                bool b = std::get<bool>(r) == l.pos;
                return b ? Formula::tru() : Formula::fls();
            }
            Literal nl = std::get<Literal>(r);
            return Formula::lit(l.pos ? nl : negate_literal(nl));
        }
    }
    throw InternalError("substitute: bad literal");
}

void collect_symbols(const TermContext& ctx, TermId t, std::vector<SymbolId>& out) {
    const TermNode& n = ctx.term(t);
    switch (n.kind) {
        case TermNode::Kind::Numeral: return;
        case TermNode::Kind::App:
            out.push_back(n.sym);
            for (TermId a : n.args) collect_symbols(ctx, a, out);
            return;
        case TermNode::Kind::Affine:
            for (const auto& [k, c] : n.lin.coeffs()) collect_symbols(ctx, k, out);
            return;
        case TermNode::Kind::FloorDiv:
            collect_symbols(ctx, n.div_arg, out);
            return;
    }
}

namespace {
void collect_formula_symbols(const AtomContext& ctx, const Formula& f, std::set<SymbolId>& out) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            for (const auto& k : f.kids()) collect_formula_symbols(ctx, k, out);
            return;
        case Formula::Kind::Lit: break;
    }
    const AtomNode& a = ctx.atom(f.literal().atom);
    std::vector<SymbolId> tmp;
    switch (a.kind) {
        case AtomNode::Kind::Bool: out.insert(a.bsym); return;
        case AtomNode::Kind::Eq:
            collect_symbols(ctx.terms(), a.lhs, tmp);
            collect_symbols(ctx.terms(), a.rhs, tmp);
            break;
        case AtomNode::Kind::La:
            for (const auto& [k, c] : a.lin.coeffs()) collect_symbols(ctx.terms(), k, tmp);
            break;
    }
    out.insert(tmp.begin(), tmp.end());
}
}  // namespace

std::vector<SymbolId> symbols_of(const AtomContext& ctx, const Formula& f) {
    std::set<SymbolId> s;
    collect_formula_symbols(ctx, f, s);
    return {s.begin(), s.end()};
}

std::string formula_to_string(const AtomContext& ctx, const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True: return "true";
        case Formula::Kind::False: return "false";
        case Formula::Kind::Lit: return ctx.literal_to_string(f.literal());
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::ostringstream os;
            os << (f.kind() == Formula::Kind::And ? "(and" : "(or");
            for (const auto& k : f.kids()) os << " " << formula_to_string(ctx, k);
            os << ")";
            return os.str();
        }
    }
    return "?";
}

}  // namespace itp
