#include "itp/partition.hpp"

#include <set>

namespace itp {

SymClass PartitionInfo::class_of(SymbolId s) const {
    auto it = m_class.find(s);
    if (it == m_class.end()) throw InternalError("unclassified symbol id " + std::to_string(s));
    return it->second;
}

PartitionInfo::LitClass PartitionInfo::join(LitClass a, LitClass b) {
    if (a == LitClass::Shared) return b;
    if (b == LitClass::Shared) return a;
    if (a == b) return a;
    return LitClass::Mixed;
}

PartitionInfo::LitClass PartitionInfo::classify_term(const TermContext& ctx, TermId t) const {
    std::vector<SymbolId> syms;
    collect_symbols(ctx, t, syms);
    LitClass c = LitClass::Shared;
    for (SymbolId s : syms) {
        switch (class_of(s)) {
            case SymClass::ALocal: c = join(c, LitClass::ALocal); break;
            case SymClass::BLocal: c = join(c, LitClass::BLocal); break;
            case SymClass::Shared: break;
        }
    }
    return c;
}

PartitionInfo::LitClass PartitionInfo::classify_literal(const AtomContext& ctx, Literal l) const {
    const AtomNode& a = ctx.atom(l.atom);
    switch (a.kind) {
        case AtomNode::Kind::Bool:
            switch (class_of(a.bsym)) {
                case SymClass::ALocal: return LitClass::ALocal;
                case SymClass::BLocal: return LitClass::BLocal;
                case SymClass::Shared: return LitClass::Shared;
            }
            return LitClass::Shared;
        case AtomNode::Kind::Eq:
            return join(classify_term(ctx.terms(), a.lhs), classify_term(ctx.terms(), a.rhs));
        case AtomNode::Kind::La: {
            LitClass c = LitClass::Shared;
            for (const auto& [k, coeff] : a.lin.coeffs())
                c = join(c, classify_term(ctx.terms(), k));
            return c;
        }
    }
    return LitClass::Shared;
}

PartitionInfo classify_symbols(const AtomContext& ctx, const Formula& a, const Formula& b) {
    std::vector<SymbolId> sa = symbols_of(ctx, a);
    std::vector<SymbolId> sb = symbols_of(ctx, b);
    std::set<SymbolId> inA(sa.begin(), sa.end());
    std::set<SymbolId> inB(sb.begin(), sb.end());
    PartitionInfo p;
    for (SymbolId s : inA)
        p.classify(s, inB.count(s) ? SymClass::Shared : SymClass::ALocal);
    for (SymbolId s : inB)
        if (!inA.count(s)) p.classify(s, SymClass::BLocal);
    return p;
}

}  // namespace itp
