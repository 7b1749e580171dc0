// Proof-producing congruence closure.
//
// Conflicts are a single disequality contradicted by a path of equalities;
// each path step is an asserted equality literal or a congruence step whose
// arguments are justified by sub-paths.  The explanation forest is kept
// separate from the find structure and never compressed.
#pragma once

#include "itp/literal.hpp"

namespace itp {

struct EufPath;

struct EufStep {
    bool congruence = false;
    Literal lit;     // asserted equality (when !congruence)
    TermId from = kNoTerm, to = kNoTerm;
    std::vector<EufPath> args;  // congruence: one sub-path per argument
};

struct EufPath {
    TermId from = kNoTerm, to = kNoTerm;
    std::vector<EufStep> steps;
};

/// Equality path contradicting lhs != rhs.
struct CongruencePath {
    TermId lhs = kNoTerm, rhs = kNoTerm;
    EufPath path;
};

struct EufConflict {
    Clause clause;  // theory lemma: negated path literals + (lhs = rhs)
    CongruencePath path;
};

struct EufImplied {
    Literal eq;  // implied equality (positive literal, possibly a new atom)
    Clause clause;
    CongruencePath path;
};

class CongruenceClosure {
  public:
    explicit CongruenceClosure(AtomContext& ctx) : m_ctx(ctx) {}

    /// Rebuilds the closure from the given asserted (dis)equality literals.
    /// Returns a conflict if some asserted disequality is contradicted.
    std::optional<EufConflict> assert_and_check(const std::vector<Literal>& asserted);

    /// After a consistent check: equalities implied between candidate pairs
    /// that are congruent but not asserted equal.  Pairs must be same-sort.
    std::vector<EufImplied> propagate(const std::vector<std::pair<TermId, TermId>>& pairs,
                                      const std::vector<Literal>& asserted);

    bool congruent(TermId a, TermId b);

  private:
    struct Node {
        TermId term;
        int parent = -1;      // find structure
        int size = 1;
        // explanation forest
        int proof_parent = -1;
        bool edge_congruence = false;
        Literal edge_lit;
        TermId edge_from = kNoTerm, edge_to = kNoTerm;  // endpoints of the edge
    };

    int node_of(TermId t);
    void register_term(TermId t);
    int find(int n);
    void merge(int a, int b, bool congruence, Literal lit, TermId from, TermId to);
    void close();
    EufPath explain(TermId a, TermId b);
    void collect_literals(const EufPath& p, std::set<Literal>& out) const;

    AtomContext& m_ctx;
    std::vector<Node> m_nodes;
    std::map<TermId, int> m_index;
    std::vector<int> m_apps;  // nodes that are applications with arguments
};

/// Structural validity of a lemma clause against its congruence path:
/// endpoints, argument sub-paths, and clause membership of every edge.
/// Returns an error message or nullopt when valid.
std::optional<std::string> check_congruence_path(const AtomContext& ctx,
                                                 const CongruencePath& cp, const Clause& clause);

}  // namespace itp
