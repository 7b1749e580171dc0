#include "itp/literal.hpp"

#include <algorithm>
#include <sstream>

namespace itp {

bool Clause::contains(Literal l) const {
    return std::binary_search(lits.begin(), lits.end(), l);
}

std::optional<Clause> mk_clause(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].atom == lits[i + 1].atom) return std::nullopt;  // tautology
    return Clause{std::move(lits)};
}

AtomId AtomContext::intern(AtomNode n) {
    m_atoms.push_back(std::move(n));
    return static_cast<AtomId>(m_atoms.size() - 1);
}

Literal AtomContext::mk_bool_literal(SymbolId sym) {
    auto it = m_bool_intern.find(sym);
    if (it != m_bool_intern.end()) return {it->second, true};
    AtomNode n;
    n.kind = AtomNode::Kind::Bool;
    n.bsym = sym;
    AtomId id = intern(std::move(n));
    m_bool_intern.emplace(sym, id);
    return {id, true};
}

Literal AtomContext::mk_eq_literal(TermId a, TermId b) {
    if (m_terms.sort_of(a) != m_terms.sort_of(b))
        throw SortError("equality between different sorts");
    if (a == b) throw InternalError("trivial equality atom");
    if (b < a) std::swap(a, b);
    auto key = std::make_pair(a, b);
    auto it = m_eq_intern.find(key);
    if (it != m_eq_intern.end()) return {it->second, true};
    AtomNode n;
    n.kind = AtomNode::Kind::Eq;
    n.lhs = a;
    n.rhs = b;
    AtomId id = intern(std::move(n));
    m_eq_intern.emplace(key, id);
    return {id, true};
}

Literal AtomContext::mk_la_literal(LinTerm lin, EpsRational bound, Sort::Kind mode) {
    auto key = std::make_pair(lin, bound);
    auto it = m_la_intern.find(key);
    if (it != m_la_intern.end()) return {it->second, true};
    AtomNode n;
    n.kind = AtomNode::Kind::La;
    n.lin = std::move(lin);
    n.bound = std::move(bound);
    n.mode = mode;
    AtomId id = intern(std::move(n));
    m_la_intern.emplace(std::move(key), id);
    return {id, true};
}

std::variant<Literal, bool> AtomContext::normalize_atom(const LinTerm& lhs, Rel rel,
                                                        const LinTerm& rhs, Sort::Kind mode) {
    if (mode != Sort::Kind::Int && mode != Sort::Kind::Real)
        throw SortError("normalize_atom: arithmetic sort required");

    if (rel == Rel::Eq || rel == Rel::Neq) {
        LinTerm diff = lhs - rhs;
        if (diff.is_constant()) {
            bool eq = sgn(diff.constant()) == 0;
            return rel == Rel::Eq ? eq : !eq;
        }
        if (mode == Sort::Kind::Real) {
            diff = diff.scaled(Rational(1) / abs(diff.lead_coeff()));
        } else {
            diff = diff.scaled(diff.denominator_lcm());
            Rational g = diff.numerator_gcd();
            if (!rat_is_integer(diff.constant() / g)) return rel == Rel::Neq;  // parity gap
            diff = diff.scaled(Rational(1) / g);
        }
        if (sgn(diff.lead_coeff()) < 0) diff = -diff;
        // split into a positive side and a negative side term
        LinTerm pos, neg;
        for (const auto& [t, c] : diff.coeffs())
            (sgn(c) > 0 ? pos : neg).add(t, abs(c));
        if (sgn(diff.constant()) > 0)
            pos.constant() += diff.constant();
        else
            neg.constant() -= diff.constant();
        Sort s = mode == Sort::Kind::Int ? Sort::integer() : Sort::real();
        TermId a = m_terms.term_of(pos, s);
        TermId b = m_terms.term_of(neg, s);
        if (a == b) return rel == Rel::Eq;
        Literal l = mk_eq_literal(a, b);
        return rel == Rel::Eq ? l : negate_literal(l);
    }

    LinTerm diff = lhs - rhs;
    bool strict = rel == Rel::Lt || rel == Rel::Gt;
    if (rel == Rel::Ge || rel == Rel::Gt) diff = -diff;
    // now: diff <= 0 (or < 0 when strict)
    Rational bound = -diff.constant();
    diff.constant() = 0;
    if (diff.is_constant()) {
        // ground
        return strict ? sgn(bound) > 0 : sgn(bound) >= 0;
    }

    bool flip = false;
    if (mode == Sort::Kind::Real) {
        Rational lead = diff.lead_coeff();
        diff = diff.scaled(Rational(1) / abs(lead));
        bound /= abs(lead);
        if (sgn(lead) < 0) flip = true;
    } else {
        Rational scale = diff.denominator_lcm();
        diff = diff.scaled(scale);
        bound *= scale;
        Rational g = diff.numerator_gcd();
        diff = diff.scaled(Rational(1) / g);
        bound /= g;
        if (sgn(diff.lead_coeff()) < 0) flip = true;
    }

    EpsRational b;
    if (mode == Sort::Kind::Int) {
        // strict: lin < bound  <=>  lin <= ceil(bound)-1; else floor
        b = EpsRational(strict ? rat_ceil(bound) - 1 : rat_floor(bound));
    } else {
        b = strict ? EpsRational::just_below(bound) : EpsRational(bound);
    }

    if (!flip) return mk_la_literal(std::move(diff), std::move(b), mode);

    // diff <= b  <=>  not(-diff <= -b - eps/1) with -diff in canonical form
    LinTerm canon = -diff;
    EpsRational nb = mode == Sort::Kind::Int ? EpsRational(-b.real - 1)
                                             : EpsRational(-b.real, -b.eps - 1);
    return negate_literal(mk_la_literal(std::move(canon), std::move(nb), mode));
}

std::pair<LinTerm, EpsRational> AtomContext::bound_of(Literal l) const {
    const AtomNode& n = atom(l.atom);
    if (n.kind != AtomNode::Kind::La) throw InternalError("bound_of on non-arithmetic literal");
    if (l.pos) return {n.lin, n.bound};
    if (n.mode == Sort::Kind::Int) return {-n.lin, EpsRational(-n.bound.real - 1)};
    return {-n.lin, EpsRational(-n.bound.real, -n.bound.eps - 1)};
}

std::string AtomContext::literal_to_string(Literal l) const {
    const AtomNode& n = atom(l.atom);
    std::ostringstream os;
    std::string body;
    switch (n.kind) {
        case AtomNode::Kind::Bool:
            body = m_terms.decl(n.bsym).name;
            break;
        case AtomNode::Kind::Eq:
            body = "(= " + m_terms.term_to_string(n.lhs) + " " +
                   m_terms.term_to_string(n.rhs) + ")";
            break;
        case AtomNode::Kind::La: {
            Sort s = n.mode == Sort::Kind::Int ? Sort::integer() : Sort::real();
            TermContext& tc = m_terms;
            std::string lt = tc.term_to_string(tc.term_of(n.lin, s));
            std::string op = sgn(n.bound.eps) < 0 ? "<" : "<=";
            LinTerm c(n.bound.real);
            body = "(" + op + " " + lt + " " + tc.term_to_string(tc.term_of(c, s)) + ")";
            break;
        }
    }
    if (l.pos) return body;
    return "(not " + body + ")";
}

std::string AtomContext::clause_to_string(const Clause& c) const {
    std::ostringstream os;
    os << "(clause";
    for (Literal l : c.lits) os << " " << literal_to_string(l);
    os << ")";
    return os.str();
}

}  // namespace itp
