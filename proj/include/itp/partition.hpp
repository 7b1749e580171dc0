// Symbol classification against the two input partitions.
#pragma once

#include "itp/formula.hpp"

namespace itp {

enum class SymClass : uint8_t { ALocal, BLocal, Shared };
enum class Side : uint8_t { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

/// A-local / B-local / shared per non-theory symbol, total over the input
/// symbols; auxiliary symbols registered later are always shared.
class PartitionInfo {
  public:
    void classify(SymbolId s, SymClass c) { m_class[s] = c; }
    SymClass class_of(SymbolId s) const;
    bool known(SymbolId s) const { return m_class.count(s) != 0; }

    /// Literal/term classification; mixed reported separately.
    enum class LitClass : uint8_t { ALocal, BLocal, Shared, Mixed };
    LitClass classify_term(const TermContext& ctx, TermId t) const;
    LitClass classify_literal(const AtomContext& ctx, Literal l) const;
    static LitClass join(LitClass a, LitClass b);

    const std::map<SymbolId, SymClass>& table() const { return m_class; }

  private:
    std::map<SymbolId, SymClass> m_class;
};

/// Exact set-difference/intersection classification over the non-theory
/// symbols of the two formulas.
PartitionInfo classify_symbols(const AtomContext& ctx, const Formula& a, const Formula& b);

}  // namespace itp
