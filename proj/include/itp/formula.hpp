// Formulas in negation normal form, models, evaluation and substitution.
#pragma once

#include <functional>
#include <memory>

#include "itp/literal.hpp"

namespace itp {

class Formula {
  public:
    enum class Kind : uint8_t { True, False, Lit, And, Or };

    Formula() = default;

    Kind kind() const { return m_node ? m_node->kind : Kind::True; }
    bool is_true() const { return kind() == Kind::True; }
    bool is_false() const { return kind() == Kind::False; }
    bool is_literal() const { return kind() == Kind::Lit; }
    Literal literal() const { return m_node->lit; }
    const std::vector<Formula>& kids() const { return m_node->kids; }

    bool operator==(const Formula& o) const;

    static Formula tru();
    static Formula fls();
    static Formula lit(Literal l);
    /// Conjunction; folds constants and flattens nested conjunctions.
    static Formula conj(std::vector<Formula> kids);
    static Formula disj(std::vector<Formula> kids);
    /// NNF negation.
    Formula negated() const;

  private:
    struct Node {
        Kind kind;
        Literal lit;
        std::vector<Formula> kids;
    };
    explicit Formula(std::shared_ptr<const Node> n) : m_node(std::move(n)) {}
    std::shared_ptr<const Node> m_node;  // null means True
};

struct UnassignedSymbol : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Concrete model: per-symbol values and finite function tables keyed on
/// argument values, so congruence holds by construction.
struct Value {
    enum class Kind : uint8_t { Rat, Bool, Elem };
    Kind kind = Kind::Bool;
    Rational rat;
    bool b = false;
    int elem = 0;

    static Value of(Rational q) { return {Kind::Rat, std::move(q), false, 0}; }
    static Value of(bool v) { return {Kind::Bool, Rational(0), v, 0}; }
    static Value elem_of(int e) { return {Kind::Elem, Rational(0), false, e}; }

    bool operator==(const Value& o) const;
    bool operator<(const Value& o) const;
};

struct Model {
    std::map<SymbolId, Value> consts;
    std::map<SymbolId, std::map<std::vector<Value>, Value>> tables;

    void set(SymbolId s, Value v) { consts[s] = v; }
};

Value evaluate_term(const TermContext& ctx, TermId t, const Model& m);
bool evaluate_literal(const AtomContext& ctx, Literal l, const Model& m);
bool evaluate(const AtomContext& ctx, const Formula& f, const Model& m);

/// Capture-free simultaneous substitution of variables (0-ary symbols) by
/// terms; affine parts are renormalized and atoms rebuilt in normal form.
TermId substitute_term(TermContext& ctx, TermId t, const std::map<SymbolId, TermId>& bind);
Formula substitute(AtomContext& ctx, const Formula& f, const std::map<SymbolId, TermId>& bind);

/// All non-theory symbols of a formula / term.
void collect_symbols(const TermContext& ctx, TermId t, std::vector<SymbolId>& out);
std::vector<SymbolId> symbols_of(const AtomContext& ctx, const Formula& f);

std::string formula_to_string(const AtomContext& ctx, const Formula& f);

}  // namespace itp
