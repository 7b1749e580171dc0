#include "itp/term.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace itp {

std::string to_string(const Sort& s) {
    switch (s.kind) {
        case Sort::Kind::Bool: return "Bool";
        case Sort::Kind::Int: return "Int";
        case Sort::Kind::Real: return "Real";
        case Sort::Kind::Uninterpreted: return "U" + std::to_string(s.uid);
    }
    return "?";
}

LinTerm LinTerm::var(TermId t, Rational coeff) {
    LinTerm lt;
    if (sgn(coeff) != 0) lt.m_coeffs.emplace(t, std::move(coeff));
    return lt;
}

Rational LinTerm::coeff(TermId t) const {
    auto it = m_coeffs.find(t);
    return it == m_coeffs.end() ? Rational(0) : it->second;
}

void LinTerm::set_coeff(TermId t, const Rational& c) {
    if (sgn(c) == 0)
        m_coeffs.erase(t);
    else
        m_coeffs[t] = c;
}

void LinTerm::add(TermId t, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = m_coeffs.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) m_coeffs.erase(it);
    }
}

void LinTerm::add(const LinTerm& o, const Rational& scale) {
    if (sgn(scale) == 0) return;
    for (const auto& [t, c] : o.m_coeffs) add(t, c * scale);
    m_const += o.m_const * scale;
}

LinTerm LinTerm::operator+(const LinTerm& o) const {
    LinTerm r = *this;
    r.add(o);
    return r;
}

LinTerm LinTerm::operator-(const LinTerm& o) const {
    LinTerm r = *this;
    r.add(o, Rational(-1));
    return r;
}

LinTerm LinTerm::operator-() const { return LinTerm().operator-(*this); }

LinTerm LinTerm::scaled(const Rational& k) const {
    LinTerm r;
    r.add(*this, k);
    return r;
}

bool LinTerm::operator<(const LinTerm& o) const {
    if (int c = cmp(m_const, o.m_const); c != 0) return c < 0;
    auto a = m_coeffs.begin(), b = o.m_coeffs.begin();
    for (; a != m_coeffs.end() && b != o.m_coeffs.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (int c = cmp(a->second, b->second); c != 0) return c < 0;
    }
    return b != o.m_coeffs.end();
}

Rational LinTerm::lead_coeff() const {
    return m_coeffs.empty() ? Rational(0) : m_coeffs.begin()->second;
}

Rational LinTerm::denominator_lcm() const {
    Rational l(1);
    for (const auto& [t, c] : m_coeffs) l = rat_den_lcm(l, c);
    l = rat_den_lcm(l, m_const);
    return l;
}

Rational LinTerm::numerator_gcd() const {
    mpz_class g(0);
    for (const auto& [t, c] : m_coeffs)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    return Rational(g);
}

Sort TermContext::declare_sort(const std::string& name) {
    std::unique_lock lock(m_mutex);
    if (m_sort_names.count(name)) throw SortError("sort already declared: " + name);
    Sort s = Sort::uninterpreted(static_cast<uint32_t>(m_sort_ids.size()));
    m_sort_ids.push_back(name);
    m_sort_names.emplace(name, s);
    return s;
}

std::optional<Sort> TermContext::find_sort(const std::string& name) const {
    std::shared_lock lock(m_mutex);
    auto it = m_sort_names.find(name);
    if (it == m_sort_names.end()) return std::nullopt;
    return it->second;
}

std::string TermContext::sort_name(const Sort& s) const {
    if (s.kind != Sort::Kind::Uninterpreted) return to_string(s);
    std::shared_lock lock(m_mutex);
    return m_sort_ids.at(s.uid);
}

SymbolId TermContext::declare_fun(const std::string& name, std::vector<Sort> domain, Sort range) {
    std::unique_lock lock(m_mutex);
    if (m_symbol_names.count(name)) throw SortError("symbol already declared: " + name);
    SymbolId id = static_cast<SymbolId>(m_decls.size());
    m_decls.push_back(FuncDecl{name, std::move(domain), range});
    m_symbol_names.emplace(name, id);
    return id;
}

std::optional<SymbolId> TermContext::find_symbol(const std::string& name) const {
    std::shared_lock lock(m_mutex);
    auto it = m_symbol_names.find(name);
    if (it == m_symbol_names.end()) return std::nullopt;
    return it->second;
}

const FuncDecl& TermContext::decl(SymbolId s) const {
    std::shared_lock lock(m_mutex);
    return m_decls.at(s);
}

size_t TermContext::num_symbols() const {
    std::shared_lock lock(m_mutex);
    return m_decls.size();
}

TermId TermContext::intern(TermNode node) {
    m_terms.push_back(std::move(node));
    return static_cast<TermId>(m_terms.size() - 1);
}

TermId TermContext::mk_var(const std::string& name, Sort sort) {
    SymbolId f = declare_fun(name, {}, sort);
    return mk_app(f, {});
}

TermId TermContext::mk_app(SymbolId f, std::vector<TermId> args) {
    std::unique_lock lock(m_mutex);
    const FuncDecl& d = m_decls.at(f);
    if (d.domain.size() != args.size())
        throw SortError("arity mismatch for " + d.name);
    for (size_t i = 0; i < args.size(); ++i)
        if (m_terms.at(args[i]).sort != d.domain[i])
            throw SortError("argument sort mismatch for " + d.name);
    auto key = std::make_pair(f, args);
    auto it = m_app_intern.find(key);
    if (it != m_app_intern.end()) return it->second;
    TermNode n;
    n.kind = TermNode::Kind::App;
    n.sort = d.range;
    n.sym = f;
    n.args = std::move(args);
    TermId id = intern(std::move(n));
    m_app_intern.emplace(std::move(key), id);
    return id;
}

TermId TermContext::mk_numeral(Rational q, Sort sort) {
    if (!sort.is_arith()) throw SortError("numeral of non-arithmetic sort");
    if (sort.kind == Sort::Kind::Int && !rat_is_integer(q))
        throw SortError("non-integer numeral of sort Int");
    std::unique_lock lock(m_mutex);
    auto key = std::make_pair(q, sort);
    auto it = m_num_intern.find(key);
    if (it != m_num_intern.end()) return it->second;
    TermNode n;
    n.kind = TermNode::Kind::Numeral;
    n.sort = sort;
    n.num = std::move(q);
    TermId id = intern(std::move(n));
    m_num_intern.emplace(std::move(key), id);
    return id;
}

TermId TermContext::mk_affine(LinTerm lt, Sort sort) {
    if (lt.is_constant()) return mk_numeral(lt.constant(), sort);
    if (lt.coeffs().size() == 1 && sgn(lt.constant()) == 0 &&
        lt.coeffs().begin()->second == 1)
        return lt.coeffs().begin()->first;
    std::unique_lock lock(m_mutex);
    auto it = m_affine_intern.find(lt);
    if (it != m_affine_intern.end()) return it->second;
    TermNode n;
    n.kind = TermNode::Kind::Affine;
    n.sort = sort;
    n.lin = lt;
    TermId id = intern(std::move(n));
    m_affine_intern.emplace(std::move(lt), id);
    return id;
}

TermId TermContext::mk_floor_div(TermId arg, unsigned k) {
    if (k < 1) throw SortError("floor division by k < 1");
    {
        std::shared_lock lock(m_mutex);
        if (m_terms.at(arg).sort != Sort::integer())
            throw SortError("floor division on non-integer term");
    }
    std::unique_lock lock(m_mutex);
    auto key = std::make_pair(arg, k);
    auto it = m_div_intern.find(key);
    if (it != m_div_intern.end()) return it->second;
    TermNode n;
    n.kind = TermNode::Kind::FloorDiv;
    n.sort = Sort::integer();
    n.div_arg = arg;
    n.divisor = k;
    TermId id = intern(std::move(n));
    m_div_intern.emplace(key, id);
    return id;
}

const TermNode& TermContext::term(TermId t) const {
    std::shared_lock lock(m_mutex);
    return m_terms.at(t);
}

LinTerm TermContext::arith_view(TermId t) const {
    const TermNode& n = term(t);
    if (!n.sort.is_arith()) throw SortError("arith_view of non-arithmetic term");
    switch (n.kind) {
        case TermNode::Kind::Numeral: return LinTerm(n.num);
        case TermNode::Kind::Affine: return n.lin;
        default: return LinTerm::var(t);
    }
}

TermId TermContext::term_of(const LinTerm& lt, Sort sort) { return mk_affine(lt, sort); }

namespace {
// SMT-LIB rendering of a rational constant: 3, (- 3), (/ 1 2), (- (/ 1 2)).
std::string numeral_str(const Rational& q) {
    Rational a = abs(q);
    std::string body = rat_is_integer(a)
                           ? a.get_num().get_str()
                           : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
    return sgn(q) < 0 ? "(- " + body + ")" : body;
}
}  // namespace

std::string TermContext::term_to_string(TermId t) const {
    const TermNode& n = term(t);
    std::ostringstream os;
    switch (n.kind) {
        case TermNode::Kind::App: {
            const FuncDecl& d = decl(n.sym);
            if (n.args.empty()) return d.name;
            os << "(" << d.name;
            for (TermId a : n.args) os << " " << term_to_string(a);
            os << ")";
            return os.str();
        }
        case TermNode::Kind::Numeral:
            return numeral_str(n.num);
        case TermNode::Kind::Affine: {
            const LinTerm& lt = n.lin;
            size_t parts = lt.coeffs().size() + (sgn(lt.constant()) != 0 ? 1 : 0);
            if (parts > 1) os << "(+";
            bool first = true;
            for (const auto& [k, c] : lt.coeffs()) {
                std::string kt = term_to_string(k);
                std::string piece = c == 1 ? kt : "(* " + numeral_str(c) + " " + kt + ")";
                os << (parts > 1 ? (first ? " " : " ") : "") << piece;
                first = false;
            }
            if (sgn(lt.constant()) != 0) os << " " << numeral_str(lt.constant());
            if (parts > 1) os << ")";
            return os.str();
        }
        case TermNode::Kind::FloorDiv:
            return "(div " + term_to_string(n.div_arg) + " " + std::to_string(n.divisor) + ")";
    }
    return "?";
}

size_t TermContext::num_terms() const {
    std::shared_lock lock(m_mutex);
    return m_terms.size();
}

}  // namespace itp
