#include "itp/euf.hpp"

#include <algorithm>

namespace itp {

int CongruenceClosure::node_of(TermId t) {
    auto it = m_index.find(t);
    if (it != m_index.end()) return it->second;
    int idx = static_cast<int>(m_nodes.size());
    Node n;
    n.term = t;
    m_nodes.push_back(n);
    m_index.emplace(t, idx);
    const TermNode& tn = m_ctx.terms().term(t);
    if (tn.kind == TermNode::Kind::App && !tn.args.empty()) {
        m_apps.push_back(idx);
        for (TermId a : tn.args) node_of(a);
    }
    return idx;
}

void CongruenceClosure::register_term(TermId t) { node_of(t); }

int CongruenceClosure::find(int n) {
    while (m_nodes[n].parent >= 0) n = m_nodes[n].parent;
    return n;
}

void CongruenceClosure::merge(int a, int b, bool congruence, Literal lit, TermId from,
                              TermId to) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    // keep the larger class as root of the find structure
    if (m_nodes[ra].size < m_nodes[rb].size) {
        std::swap(ra, rb);
        std::swap(a, b);
        std::swap(from, to);
    }
    m_nodes[rb].parent = ra;
    m_nodes[ra].size += m_nodes[rb].size;
    // re-root b's explanation tree so b becomes a root, then hang it on a.
    // stored edge convention: edge_from is the child-side term.
    std::vector<int> chain;
    for (int n = b; n >= 0; n = m_nodes[n].proof_parent) chain.push_back(n);
    for (size_t i = chain.size(); i-- > 1;) {
        Node& up = m_nodes[chain[i]];
        Node& down = m_nodes[chain[i - 1]];
        up.proof_parent = chain[i - 1];
        up.edge_congruence = down.edge_congruence;
        up.edge_lit = down.edge_lit;
        up.edge_from = down.edge_to;
        up.edge_to = down.edge_from;
    }
    Node& nb = m_nodes[b];
    nb.proof_parent = a;
    nb.edge_congruence = congruence;
    nb.edge_lit = lit;
    nb.edge_from = to;  // b's side
    nb.edge_to = from;  // a's side
}

void CongruenceClosure::close() {
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<SymbolId, std::vector<int>>, int> sig;
        for (int app : m_apps) {
            const TermNode& tn = m_ctx.terms().term(m_nodes[app].term);
            std::vector<int> key;
            key.reserve(tn.args.size());
            for (TermId a : tn.args) key.push_back(find(m_index.at(a)));
            auto [it, fresh] = sig.emplace(std::make_pair(tn.sym, std::move(key)), app);
            if (!fresh) {
                int other = it->second;
                if (find(app) != find(other)) {
                    merge(app, other, true, Literal{}, m_nodes[app].term,
                          m_nodes[other].term);
                    changed = true;
                }
            }
        }
    }
}

std::optional<EufConflict> CongruenceClosure::assert_and_check(
    const std::vector<Literal>& asserted) {
    m_nodes.clear();
    m_index.clear();
    m_apps.clear();
    std::vector<Literal> diseqs;
    for (Literal l : asserted) {
        const AtomNode& a = m_ctx.atom(l.atom);
        if (a.kind != AtomNode::Kind::Eq) throw InternalError("euf: non-equality literal");
        register_term(a.lhs);
        register_term(a.rhs);
        if (!l.pos) diseqs.push_back(l);
    }
    for (Literal l : asserted) {
        if (!l.pos) continue;
        const AtomNode& a = m_ctx.atom(l.atom);
        merge(m_index.at(a.lhs), m_index.at(a.rhs), false, l, a.lhs, a.rhs);
        close();
    }
    for (Literal l : diseqs) {
        const AtomNode& a = m_ctx.atom(l.atom);
        if (find(m_index.at(a.lhs)) != find(m_index.at(a.rhs))) continue;
        EufConflict c;
        c.path.lhs = a.lhs;
        c.path.rhs = a.rhs;
        c.path.path = explain(a.lhs, a.rhs);
        std::set<Literal> lits;
        collect_literals(c.path.path, lits);
        std::vector<Literal> cl;
        for (Literal e : lits) cl.push_back(negate_literal(e));
        cl.push_back(negate_literal(l));  // the equality, positively
        auto clause = mk_clause(std::move(cl));
        if (!clause) throw InternalError("euf: tautological lemma");
        c.clause = *clause;
        return c;
    }
    return std::nullopt;
}

std::vector<EufImplied> CongruenceClosure::propagate(
    const std::vector<std::pair<TermId, TermId>>& pairs, const std::vector<Literal>& asserted) {
    std::set<Literal> current(asserted.begin(), asserted.end());
    std::vector<EufImplied> out;
    for (auto [u, v] : pairs) {
        if (!m_index.count(u) || !m_index.count(v)) continue;
        if (find(m_index.at(u)) != find(m_index.at(v))) continue;
        Literal eq = m_ctx.mk_eq_literal(u, v);
        if (current.count(eq)) continue;  // already asserted
        EufImplied imp;
        imp.eq = eq;
        imp.path.lhs = u;
        imp.path.rhs = v;
        imp.path.path = explain(u, v);
        std::set<Literal> lits;
        collect_literals(imp.path.path, lits);
        if (lits.count(eq)) continue;  // degenerate
        std::vector<Literal> cl;
        for (Literal e : lits) cl.push_back(negate_literal(e));
        cl.push_back(eq);
        auto clause = mk_clause(std::move(cl));
        if (!clause) continue;
        imp.clause = *clause;
        out.push_back(std::move(imp));
    }
    return out;
}

bool CongruenceClosure::congruent(TermId a, TermId b) {
    if (!m_index.count(a) || !m_index.count(b)) return false;
    return find(m_index.at(a)) == find(m_index.at(b));
}

EufPath CongruenceClosure::explain(TermId a, TermId b) {
    EufPath p;
    p.from = a;
    p.to = b;
    if (a == b) return p;
    int na = m_index.at(a), nb = m_index.at(b);
    // find common ancestor in the explanation forest
    std::vector<int> up_a;
    for (int n = na; n >= 0; n = m_nodes[n].proof_parent) up_a.push_back(n);
    std::vector<int> up_b;
    for (int n = nb; n >= 0; n = m_nodes[n].proof_parent) up_b.push_back(n);
    std::set<int> in_a(up_a.begin(), up_a.end());
    int anc = -1;
    for (int n : up_b)
        if (in_a.count(n)) {
            anc = n;
            break;
        }
    if (anc < 0) throw InternalError("euf: no common ancestor in explanation");

    auto mk_step = [&](int child, bool flip) {
        const Node& n = m_nodes[child];
        EufStep s;
        s.congruence = n.edge_congruence;
        s.lit = n.edge_lit;
        s.from = flip ? n.edge_to : n.edge_from;
        s.to = flip ? n.edge_from : n.edge_to;
        if (s.congruence) {
            const TermNode& tf = m_ctx.terms().term(s.from);
            const TermNode& tt = m_ctx.terms().term(s.to);
            for (size_t i = 0; i < tf.args.size(); ++i)
                s.args.push_back(explain(tf.args[i], tt.args[i]));
        }
        return s;
    };

    for (int n = na; n != anc; n = m_nodes[n].proof_parent) p.steps.push_back(mk_step(n, false));
    std::vector<EufStep> down;
    for (int n = nb; n != anc; n = m_nodes[n].proof_parent) down.push_back(mk_step(n, true));
    std::reverse(down.begin(), down.end());
    p.steps.insert(p.steps.end(), down.begin(), down.end());

    // orient steps along the walk; edges carry their own endpoints, but the
    // stored orientation matches the recorded merge, not the walk
    TermId at = a;
    for (EufStep& s : p.steps) {
        if (s.from != at) {
            std::swap(s.from, s.to);
            if (s.congruence) {
                // re-derive argument paths in the walk orientation
                s.args.clear();
                const TermNode& tf = m_ctx.terms().term(s.from);
                const TermNode& tt = m_ctx.terms().term(s.to);
                for (size_t i = 0; i < tf.args.size(); ++i)
                    s.args.push_back(explain(tf.args[i], tt.args[i]));
            }
        }
        if (s.from != at) throw InternalError("euf: disconnected explanation");
        at = s.to;
    }
    if (at != b) throw InternalError("euf: explanation endpoint mismatch");
    return p;
}

void CongruenceClosure::collect_literals(const EufPath& p, std::set<Literal>& out) const {
    for (const EufStep& s : p.steps) {
        if (s.congruence) {
            for (const EufPath& q : s.args) collect_literals(q, out);
        } else {
            out.insert(s.lit);
        }
    }
}

namespace {

std::optional<std::string> check_path_rec(const AtomContext& ctx, const EufPath& p,
                                          const Clause& clause, std::set<Literal>& used) {
    TermId at = p.from;
    for (const EufStep& s : p.steps) {
        if (s.from != at) return "path step does not start at previous endpoint";
        if (s.congruence) {
            const TermNode& tf = ctx.terms().term(s.from);
            const TermNode& tt = ctx.terms().term(s.to);
            if (tf.kind != TermNode::Kind::App || tt.kind != TermNode::Kind::App ||
                tf.sym != tt.sym || tf.args.size() != tt.args.size())
                return "congruence step between incompatible applications";
            if (s.args.size() != tf.args.size()) return "congruence arity mismatch";
            for (size_t i = 0; i < s.args.size(); ++i) {
                if (s.args[i].from != tf.args[i] || s.args[i].to != tt.args[i])
                    return "congruence argument path endpoints mismatch";
                if (auto e = check_path_rec(ctx, s.args[i], clause, used)) return e;
            }
        } else {
            const AtomNode& a = ctx.atom(s.lit.atom);
            if (a.kind != AtomNode::Kind::Eq || !s.lit.pos)
                return "path edge is not a positive equality literal";
            bool ok = (a.lhs == s.from && a.rhs == s.to) || (a.lhs == s.to && a.rhs == s.from);
            if (!ok) return "path edge literal does not connect its endpoints";
            if (!clause.contains(negate_literal(s.lit)))
                return "path edge literal not negated in clause";
            used.insert(negate_literal(s.lit));
        }
        at = s.to;
    }
    if (at != p.to) return "path does not reach its endpoint";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_congruence_path(const AtomContext& ctx,
                                                 const CongruencePath& cp,
                                                 const Clause& clause) {
    if (cp.path.from != cp.lhs || cp.path.to != cp.rhs)
        return "path endpoints differ from the contradicted disequality";
    std::set<Literal> used;
    if (auto e = check_path_rec(ctx, cp.path, clause, used)) return e;
    if (cp.lhs == cp.rhs) return "trivial disequality";
    // the disequality appears positively (as the equality) in the clause
    AtomContext& mctx = const_cast<AtomContext&>(ctx);
    Literal eq = mctx.mk_eq_literal(cp.lhs, cp.rhs);
    if (!clause.contains(eq)) return "clause misses the implied equality";
    used.insert(eq);
    for (Literal l : clause.lits)
        if (!used.count(l)) return "clause contains a literal not used by the path";
    return std::nullopt;
}

}  // namespace itp
