// Atoms, literals and clauses.
//
// Arithmetic atoms are kept in the normal form  lin <= bound  with the
// leading coefficient positive (scaled to 1 over Real, integer and coprime
// over Int, with the bound floored).  Strict bounds are represented with an
// epsilon part over Real and folded into the bound over Int.  A literal and
// its negation share the atom.
#pragma once

#include <variant>

#include "itp/term.hpp"

namespace itp {

using AtomId = uint32_t;
constexpr AtomId kNoAtom = UINT32_MAX;

struct AtomNode {
    enum class Kind : uint8_t { La, Eq, Bool };
    Kind kind;
    // La: lin <= bound, lin has no constant part
    LinTerm lin;
    EpsRational bound;
    Sort::Kind mode = Sort::Kind::Int;  // Int or Real for La atoms
    // Eq: lhs == rhs with lhs < rhs by term id
    TermId lhs = kNoTerm, rhs = kNoTerm;
    // Bool
    SymbolId bsym = 0;
};

struct Literal {
    AtomId atom = kNoAtom;
    bool pos = true;

    bool operator==(const Literal& o) const { return atom == o.atom && pos == o.pos; }
    bool operator!=(const Literal& o) const { return !(*this == o); }
    bool operator<(const Literal& o) const {
        return atom != o.atom ? atom < o.atom : pos < o.pos;
    }
};

inline Literal negate_literal(Literal l) { return {l.atom, !l.pos}; }

/// Duplicate-free, sorted literal set.  Construction refuses tautologies via
/// mk_clause below.
struct Clause {
    std::vector<Literal> lits;

    bool operator==(const Clause& o) const { return lits == o.lits; }
    bool operator<(const Clause& o) const { return lits < o.lits; }
    bool empty() const { return lits.empty(); }
    bool contains(Literal l) const;
};

/// Sorted/dedup'd clause; nullopt if the literal set is a tautology.
std::optional<Clause> mk_clause(std::vector<Literal> lits);

enum class Rel { Le, Lt, Ge, Gt, Eq, Neq };

class AtomContext {
  public:
    explicit AtomContext(TermContext& terms) : m_terms(terms) {}
    AtomContext(const AtomContext&) = delete;

    TermContext& terms() const { return m_terms; }
    const AtomNode& atom(AtomId a) const { return m_atoms.at(a); }
    size_t num_atoms() const { return m_atoms.size(); }

    Literal mk_bool_literal(SymbolId sym);
    /// Equality atom between two terms of equal sort; folds t = t to nothing
    /// (the caller checks with is_trivial_eq first).
    Literal mk_eq_literal(TermId a, TermId b);

    /// Normal form for an arithmetic (in)equality; ground input is
    /// constant-folded and reported through the bool alternative.
    std::variant<Literal, bool> normalize_atom(const LinTerm& lhs, Rel rel, const LinTerm& rhs,
                                               Sort::Kind mode);

    /// The inequality asserted by a literal, as (lin, upper bound) after
    /// resolving polarity: for a negative literal this materializes
    /// -lin <= -bound-eps (Real) / -bound-1 (Int).
    std::pair<LinTerm, EpsRational> bound_of(Literal l) const;

    std::string literal_to_string(Literal l) const;
    std::string clause_to_string(const Clause& c) const;

  private:
    AtomId intern(AtomNode n);
    Literal mk_la_literal(LinTerm lin, EpsRational bound, Sort::Kind mode);

    TermContext& m_terms;
    std::deque<AtomNode> m_atoms;
    std::map<std::pair<LinTerm, EpsRational>, AtomId> m_la_intern;
    std::map<std::pair<TermId, TermId>, AtomId> m_eq_intern;
    std::map<SymbolId, AtomId> m_bool_intern;
};

}  // namespace itp
