// Sorts, function symbols, hash-consed terms and linear terms.
//
// Terms are interned in a TermContext: structurally equal terms get the same
// id, so equality is id comparison and ids provide a deterministic creation
// order used for canonical forms.  The intern tables may be read from several
// threads; creation takes the exclusive lock.
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "itp/numeric.hpp"

namespace itp {

struct SortError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct Sort {
    enum class Kind : uint8_t { Bool, Int, Real, Uninterpreted };
    Kind kind = Kind::Bool;
    uint32_t uid = 0;  // distinguishes declared uninterpreted sorts

    bool operator==(const Sort& o) const { return kind == o.kind && uid == o.uid; }
    bool operator!=(const Sort& o) const { return !(*this == o); }
    bool operator<(const Sort& o) const {
        return kind != o.kind ? kind < o.kind : uid < o.uid;
    }
    bool is_arith() const { return kind == Kind::Int || kind == Kind::Real; }

    static Sort boolean() { return {Kind::Bool, 0}; }
    static Sort integer() { return {Kind::Int, 0}; }
    static Sort real() { return {Kind::Real, 0}; }
    static Sort uninterpreted(uint32_t uid) { return {Kind::Uninterpreted, uid}; }
};

std::string to_string(const Sort& s);

using SymbolId = uint32_t;
using TermId = uint32_t;
constexpr TermId kNoTerm = UINT32_MAX;

struct FuncDecl {
    std::string name;
    std::vector<Sort> domain;
    Sort range;
};

/// Linear combination of term-keyed "variables" plus a rational constant.
/// Keys are ids of non-affine arithmetic terms (variables, applications,
/// floor divisions); zero coefficients are never stored.
class LinTerm {
  public:
    LinTerm() = default;
    explicit LinTerm(Rational c) : m_const(std::move(c)) {}

    static LinTerm var(TermId t, Rational coeff = Rational(1));

    const std::map<TermId, Rational>& coeffs() const { return m_coeffs; }
    const Rational& constant() const { return m_const; }
    Rational& constant() { return m_const; }

    bool is_constant() const { return m_coeffs.empty(); }
    bool is_zero() const { return m_coeffs.empty() && sgn(m_const) == 0; }
    Rational coeff(TermId t) const;
    void set_coeff(TermId t, const Rational& c);
    void add(TermId t, const Rational& c);
    void add(const LinTerm& o, const Rational& scale = Rational(1));

    LinTerm operator+(const LinTerm& o) const;
    LinTerm operator-(const LinTerm& o) const;
    LinTerm operator-() const;
    LinTerm scaled(const Rational& k) const;

    bool operator==(const LinTerm& o) const {
        return m_const == o.m_const && m_coeffs == o.m_coeffs;
    }
    bool operator<(const LinTerm& o) const;

    /// Leading (smallest-id) coefficient; zero for constants.
    Rational lead_coeff() const;
    /// lcm of all coefficient denominators (including the constant).
    Rational denominator_lcm() const;
    /// gcd of all coefficient numerators (excluding the constant); 0 if constant.
    Rational numerator_gcd() const;

  private:
    std::map<TermId, Rational> m_coeffs;
    Rational m_const = Rational(0);
};

struct TermNode {
    enum class Kind : uint8_t { App, Numeral, Affine, FloorDiv };
    Kind kind;
    Sort sort;
    SymbolId sym = 0;                // App
    std::vector<TermId> args;        // App
    Rational num;                    // Numeral
    LinTerm lin;                     // Affine
    TermId div_arg = kNoTerm;        // FloorDiv
    unsigned divisor = 0;            // FloorDiv

    bool is_app() const { return kind == Kind::App; }
};

/// Owns symbol declarations and the term intern table.
class TermContext {
  public:
    TermContext() = default;
    TermContext(const TermContext&) = delete;

    Sort declare_sort(const std::string& name);
    std::optional<Sort> find_sort(const std::string& name) const;
    std::string sort_name(const Sort& s) const;

    SymbolId declare_fun(const std::string& name, std::vector<Sort> domain, Sort range);
    std::optional<SymbolId> find_symbol(const std::string& name) const;
    const FuncDecl& decl(SymbolId s) const;
    size_t num_symbols() const;

    /// 0-ary application ("constant"/"variable").
    TermId mk_var(const std::string& name, Sort sort);
    TermId mk_app(SymbolId f, std::vector<TermId> args);
    TermId mk_numeral(Rational q, Sort sort);
    /// Collapses to a plain term or numeral when the combination is trivial.
    TermId mk_affine(LinTerm lt, Sort sort);
    TermId mk_floor_div(TermId arg, unsigned k);

    const TermNode& term(TermId t) const;
    Sort sort_of(TermId t) const { return term(t).sort; }

    /// View of an arithmetic term as a linear combination of opaque keys.
    LinTerm arith_view(TermId t) const;
    /// Inverse-ish of arith_view: a term denoting the linear combination.
    TermId term_of(const LinTerm& lt, Sort sort);

    std::string term_to_string(TermId t) const;

    size_t num_terms() const;

  private:
    TermId intern(TermNode node);

    // deques keep references stable while creation appends
    mutable std::shared_mutex m_mutex;
    std::deque<FuncDecl> m_decls;
    std::map<std::string, SymbolId> m_symbol_names;
    std::map<std::string, Sort> m_sort_names;
    std::vector<std::string> m_sort_ids;
    std::deque<TermNode> m_terms;
    // intern keys
    std::map<std::pair<SymbolId, std::vector<TermId>>, TermId> m_app_intern;
    std::map<std::pair<Rational, Sort>, TermId> m_num_intern;
    std::map<LinTerm, TermId> m_affine_intern;
    std::map<std::pair<TermId, unsigned>, TermId> m_div_intern;
};

}  // namespace itp
