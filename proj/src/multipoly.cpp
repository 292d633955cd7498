#include "arcnash/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace arcnash {

namespace {
void check_same_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars())
        throw std::invalid_argument("MultiPoly: operands declared over different variable lists");
}
}  // namespace

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Coefficient& c) {
    MultiPoly p(std::move(vars));
    p.set_term(Exponents(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[p.var_index(name)] = 1;
    p.set_term(e, Coefficient(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exponents exps, const Coefficient& c) {
    MultiPoly p(std::move(vars));
    p.set_term(exps, c);
    return p;
}

int MultiPoly::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("MultiPoly: unknown variable " + name);
}

void MultiPoly::set_term(const Exponents& e, const Coefficient& c) {
    if (e.size() != vars_.size())
        throw std::invalid_argument("MultiPoly: exponent tuple length mismatch");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("MultiPoly: negative exponent");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

Coefficient MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient(0) : it->second;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_same_vars(a, b);
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same_vars(a, b);
    MultiPoly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiPoly::Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Coefficient prod = ca * cb;
                if (!prod.is_zero()) r.terms_.emplace(std::move(e), std::move(prod));
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const Coefficient& c) const {
    MultiPoly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) {
        Coefficient prod = t * c;
        if (!prod.is_zero()) r.terms_[e] = prod;
    }
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly r = constant(vars_, Coefficient(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

std::optional<int> MultiPoly::multiplicity() const {
    if (terms_.empty()) return std::nullopt;
    int m = -1;
    for (const auto& [e, c] : terms_) {
        int d = std::accumulate(e.begin(), e.end(), 0);
        if (m < 0 || d < m) m = d;
    }
    return m;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == d) r.terms_[e] = c;
    return r;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    int i = var_index(var);
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        Coefficient nc = c * Coefficient(e[i]);
        auto it = r.terms_.find(d);
        if (it == r.terms_.end())
            r.terms_.emplace(std::move(d), std::move(nc));
        else
            it->second += nc;
    }
    return r;
}

MultiPoly MultiPoly::substitute_poly(const std::vector<MultiPoly>& images,
                                     std::vector<std::string> out_vars) const {
    if (images.size() != vars_.size())
        throw std::invalid_argument("substitute_poly: one image per variable required");
    for (const auto& img : images)
        if (img.vars() != out_vars)
            throw std::invalid_argument("substitute_poly: image variable list mismatch");
    MultiPoly acc(out_vars);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = MultiPoly::constant(out_vars, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * images[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

Coefficient MultiPoly::evaluate(const std::vector<Coefficient>& point) const {
    if (point.size() != vars_.size())
        throw std::invalid_argument("evaluate: wrong point dimension");
    Coefficient acc(0);
    for (const auto& [e, c] : terms_) {
        Coefficient t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t *= point[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::rename_vars(std::vector<std::string> new_vars) const {
    if (new_vars.size() != vars_.size())
        throw std::invalid_argument("rename_vars: arity mismatch");
    MultiPoly r(std::move(new_vars));
    r.terms_ = terms_;
    return r;
}

std::vector<std::string> MultiPoly::effective_vars() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < vars_.size(); ++i) {
        bool used = false;
        for (const auto& [e, c] : terms_)
            if (e[i] > 0) {
                used = true;
                break;
            }
        if (used) out.push_back(vars_[i]);
    }
    return out;
}

MultiPoly MultiPoly::to_approx() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.set_term(e, c.to_approx());
    return r;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    // graded lex, highest degree first
    std::vector<const TermMap::value_type*> ordered;
    ordered.reserve(terms_.size());
    for (const auto& t : terms_) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        int da = std::accumulate(a->first.begin(), a->first.end(), 0);
        int db = std::accumulate(b->first.begin(), b->first.end(), 0);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : ordered) {
        std::string cs = t->second.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) cs = cs.substr(1);
        first = false;
        bool any_var = false;
        std::ostringstream mono;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (t->first[i] == 0) continue;
            if (any_var) mono << "*";
            mono << vars_[i];
            if (t->first[i] > 1) mono << "^" << t->first[i];
            any_var = true;
        }
        bool trivial_coeff = (cs == "1") && any_var;
        if (!trivial_coeff) {
            bool needs_paren = cs.find('/') != std::string::npos ||
                               cs.find(' ') != std::string::npos ||
                               cs.find(',') != std::string::npos;
            if (needs_paren)
                os << "(" << cs << ")";
            else
                os << cs;
            if (any_var) os << "*";
        }
        os << mono.str();
    }
    return os.str();
}

}  // namespace arcnash
