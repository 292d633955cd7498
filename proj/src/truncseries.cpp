#include "arcnash/truncseries.hpp"

#include <algorithm>
#include <sstream>

namespace arcnash {

TruncSeries::TruncSeries(std::vector<std::string> vars, int order)
    : vars_(std::move(vars)), order_(order) {
    if (vars_.empty() || vars_.size() > 2)
        throw std::invalid_argument("TruncSeries: 1 or 2 variables required");
    if (vars_.size() == 2 && vars_[0] == vars_[1])
        throw std::invalid_argument("TruncSeries: duplicate variable name");
    if (order_ < 0) throw std::invalid_argument("TruncSeries: negative order");
}

TruncSeries TruncSeries::constant(std::vector<std::string> vars, int order, const Coefficient& c) {
    TruncSeries s(std::move(vars), order);
    s.set({0, 0}, c);
    return s;
}

TruncSeries TruncSeries::monomial(std::vector<std::string> vars, int order, Key exps,
                                  const Coefficient& c) {
    TruncSeries s(std::move(vars), order);
    s.set(exps, c);
    return s;
}

TruncSeries TruncSeries::from_poly(const MultiPoly& p, int order) {
    if (p.vars().empty() || p.vars().size() > 2)
        throw std::invalid_argument("TruncSeries::from_poly: polynomial must have 1 or 2 variables");
    TruncSeries s(p.vars(), order);
    for (const auto& [e, c] : p.terms()) {
        Key k{e[0], e.size() > 1 ? e[1] : 0};
        if (k[0] + k[1] <= order) s.set(k, c);
    }
    return s;
}

int TruncSeries::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("TruncSeries: unknown variable " + name);
}

void TruncSeries::set(Key e, const Coefficient& c) {
    if (e[0] < 0 || e[1] < 0) throw std::invalid_argument("TruncSeries: negative exponent");
    if (vars_.size() == 1 && e[1] != 0)
        throw std::invalid_argument("TruncSeries: second exponent on univariate series");
    if (e[0] + e[1] > order_) return;  // beyond trusted order
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

Coefficient TruncSeries::coefficient(Key e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient(0) : it->second;
}

std::optional<int> TruncSeries::valuation() const {
    std::optional<int> v;
    for (const auto& [e, c] : terms_) {
        int d = e[0] + e[1];
        if (!v || d < *v) v = d;
    }
    return v;
}

Coefficient TruncSeries::leading_coefficient() const {
    auto v = valuation();
    if (!v) return Coefficient(0);
    const Coefficient* best = nullptr;
    Key bk{0, 0};
    for (const auto& [e, c] : terms_) {
        if (e[0] + e[1] != *v) continue;
        if (!best || e < bk) {
            best = &c;
            bk = e;
        }
    }
    return *best;
}

void TruncSeries::check_compatible(const TruncSeries& a, const TruncSeries& b) {
    if (a.vars_ != b.vars_)
        throw std::invalid_argument("TruncSeries: operands over different variables");
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r(vars_, order_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries::check_compatible(a, b);
    TruncSeries r(a.vars_, std::min(a.order_, b.order_));
    for (const auto& [e, c] : a.terms_)
        if (e[0] + e[1] <= r.order_) r.terms_[e] = c;
    for (const auto& [e, c] : b.terms_) {
        if (e[0] + e[1] > r.order_) continue;
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

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries::check_compatible(a, b);
    TruncSeries r(a.vars_, std::min(a.order_, b.order_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            TruncSeries::Key e{ea[0] + eb[0], ea[1] + eb[1]};
            if (e[0] + e[1] > r.order_) continue;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Coefficient prod = ca * cb;
                if (!prod.is_zero()) r.terms_.emplace(e, std::move(prod));
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

TruncSeries TruncSeries::operator*(const Coefficient& c) const {
    TruncSeries r(vars_, order_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) {
        Coefficient prod = t * c;
        if (!prod.is_zero()) r.terms_[e] = prod;
    }
    return r;
}

TruncSeries divide_exact(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries::check_compatible(a, b);
    auto vb = b.valuation();
    if (!vb) throw precondition_error("divide_exact: divisor vanishes to working order");
    auto va = a.valuation();
    if (va && *va < *vb)
        throw precondition_error("divide_exact: valuation(a) < valuation(b), quotient not a series");

    const int out_order = std::min(a.order_, b.order_) - *vb;
    if (out_order < 0) throw precondition_error("divide_exact: divisor valuation exceeds order");

    // The initial form of the divisor must be a single monomial M; then
    // b = M (1 + w) and a/b = (a/M) sum (-w)^k.
    TruncSeries::Key mexp{0, 0};
    const Coefficient* mcoef = nullptr;
    for (const auto& [e, c] : b.terms_) {
        if (e[0] + e[1] != *vb) continue;
        if (mcoef) throw precondition_error("divide_exact: divisor initial form is not a monomial");
        mexp = e;
        mcoef = &c;
    }

    auto divide_monomial = [&](const TruncSeries& p) {
        TruncSeries q(p.vars_, out_order);
        for (const auto& [e, c] : p.terms_) {
            if (e[0] < mexp[0] || e[1] < mexp[1])
                throw precondition_error("divide_exact: remainder nonzero (non-divisibility)");
            q.set({e[0] - mexp[0], e[1] - mexp[1]}, c / *mcoef);
        }
        return q;
    };

    TruncSeries w = divide_monomial(b);  // 1 + higher
    w.set({0, 0}, w.coefficient({0, 0}) - *mcoef / *mcoef);
    TruncSeries base = divide_monomial(a.truncated(std::min(a.order_, b.order_)));
    TruncSeries q = base;
    TruncSeries pw = base;
    for (int k = 1; k <= out_order; ++k) {
        pw = pw * (-w);
        if (pw.is_zero_to_order()) break;
        q += pw;
    }
    // Remainder check through the common trusted order.
    TruncSeries resid = a.truncated(std::min(a.order_, b.order_)) - q * b;
    if (!resid.is_zero_to_order())
        throw precondition_error("divide_exact: remainder nonzero at order " +
                                 std::to_string(resid.valuation().value_or(-1)) +
                                 " (non-divisibility)");
    return q;
}

TruncSeries TruncSeries::pow(int e) const {
    if (e < 0) throw std::invalid_argument("TruncSeries::pow: negative exponent");
    bool ap = !terms_.empty() && terms_.begin()->second.is_approx();
    TruncSeries r = constant(vars_, order_,
                             ap ? Coefficient::approx({1.0, 0.0}) : Coefficient(1));
    TruncSeries base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

TruncSeries TruncSeries::truncated(int new_order) const {
    TruncSeries r(vars_, std::min(new_order, order_));
    for (const auto& [e, c] : terms_)
        if (e[0] + e[1] <= r.order_) r.terms_[e] = c;
    return r;
}

TruncSeries TruncSeries::padded(int new_order) const {
    if (new_order <= order_) return truncated(new_order);
    TruncSeries r(vars_, new_order);
    r.terms_ = terms_;
    return r;
}

bool TruncSeries::equal_to_order(const TruncSeries& o) const {
    if (vars_ != o.vars_) return false;
    int n = std::min(order_, o.order_);
    return (truncated(n) - o.truncated(n)).is_zero_to_order();
}

TruncSeries TruncSeries::substitute_power(const std::string& var, int r) const {
    if (r < 1) throw std::invalid_argument("substitute_power: r >= 1 required");
    int i = var_index(var);
    TruncSeries out(vars_, order_);
    for (const auto& [e, c] : terms_) {
        Key k = e;
        k[i] *= r;
        if (k[0] + k[1] <= order_) out.set(k, c);
    }
    return out;
}

TruncSeries TruncSeries::restrict_var(const std::string& var, const Rational& value) const {
    if (vars_.size() != 2)
        throw std::invalid_argument("restrict_var: series is not bivariate");
    int i = var_index(var);
    int keep = 1 - i;
    TruncSeries out({vars_[keep]}, order_);
    const bool approx_mode = !terms_.empty() && terms_.begin()->second.is_approx();
    Coefficient v = approx_mode ? Coefficient::approx({to_double(value), 0.0})
                                : Coefficient(value);
    for (const auto& [e, c] : terms_) {
        Key k{e[keep], 0};
        Coefficient add = c * v.pow(e[i]);
        out.set(k, out.coefficient(k) + add);
    }
    return out;
}

TruncSeries TruncSeries::substitute_series(const std::vector<TruncSeries>& images) const {
    if (images.size() != vars_.size())
        throw std::invalid_argument("substitute_series: one image per variable required");
    for (const auto& img : images) {
        auto v = img.valuation();
        if (v && *v < 1)
            throw precondition_error("substitute_series: image has valuation 0");
    }
    const auto& frame = images[0];
    int out_order = order_;
    for (const auto& img : images) out_order = std::min(out_order, img.order());
    std::vector<std::vector<TruncSeries>> powers(vars_.size());
    int maxe[2] = {0, 0};
    for (const auto& [e, c] : terms_) {
        maxe[0] = std::max(maxe[0], e[0]);
        maxe[1] = std::max(maxe[1], e[1]);
    }
    for (size_t i = 0; i < vars_.size(); ++i) {
        powers[i].push_back(zero(frame.vars(), out_order));  // slot 0 unused
        if (maxe[i] >= 1) powers[i].push_back(images[i].truncated(out_order));
        for (int k = 2; k <= maxe[i]; ++k)
            powers[i].push_back(powers[i].back() * images[i].truncated(out_order));
    }
    TruncSeries acc = zero(frame.vars(), out_order);
    for (const auto& [e, c] : terms_) {
        TruncSeries term = constant(frame.vars(), out_order, c);
        if (e[0] > 0) term = term * powers[0][e[0]];
        if (vars_.size() == 2 && e[1] > 0) term = term * powers[1][e[1]];
        acc += term;
    }
    return acc;
}

TruncSeries TruncSeries::reversion() const {
    if (vars_.size() != 1) throw std::invalid_argument("reversion: univariate only");
    auto v = valuation();
    if (!v || *v != 1) throw precondition_error("reversion: valuation must be exactly 1");
    Coefficient c1 = coefficient(1);
    TruncSeries g = monomial(vars_, order_, {1, 0}, c1.inverse());
    for (int k = 2; k <= order_; ++k) {
        TruncSeries err = substitute_series({g});  // f(g)
        Coefficient delta = -err.coefficient(k) / c1;
        if (!delta.is_zero()) g.set({k, 0}, g.coefficient(k) + delta);
    }
    return g;
}

TruncSeries TruncSeries::promoted(const std::vector<std::string>& vars) const {
    if (vars_.size() != 1) throw std::invalid_argument("promoted: univariate input required");
    TruncSeries out(vars, order_);
    int slot = -1;
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == vars_[0]) slot = static_cast<int>(i);
    if (slot < 0) throw std::invalid_argument("promoted: frame lacks variable " + vars_[0]);
    for (const auto& [e, c] : terms_) {
        Key k{0, 0};
        k[slot] = e[0];
        out.set(k, c);
    }
    return out;
}

TruncSeries TruncSeries::to_approx() const {
    TruncSeries r(vars_, order_);
    for (const auto& [e, c] : terms_) r.set(e, c.to_approx());
    return r;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    if (terms_.empty()) {
        os << "O(" << order_ + 1 << ")";
        return os.str();
    }
    std::vector<std::pair<Key, Coefficient>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        int da = a.first[0] + a.first[1], db = b.first[0] + b.first[1];
        if (da != db) return da < db;
        return a.first < b.first;
    });
    bool first = true;
    for (const auto& [e, c] : ordered) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        if (neg) cs = cs.substr(1);
        first = false;
        std::ostringstream mono;
        bool any = false;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            if (any) mono << "*";
            mono << vars_[i];
            if (e[i] > 1) mono << "^" << e[i];
            any = true;
        }
        if (cs != "1" || !any) {
            if (cs.find('/') != std::string::npos || cs.find(' ') != std::string::npos)
                os << "(" << cs << ")";
            else
                os << cs;
            if (any) os << "*";
        }
        os << mono.str();
    }
    os << " + O(" << order_ + 1 << ")";
    return os.str();
}

TruncSeries substitute(const MultiPoly& p, const std::vector<TruncSeries>& args) {
    if (args.size() != p.vars().size())
        throw std::invalid_argument("substitute: one series per variable required");
    if (args.empty()) throw std::invalid_argument("substitute: no arguments");
    // settle on a common frame: bivariate wins
    const TruncSeries* frame = &args[0];
    for (const auto& a : args)
        if (a.nvars() == 2) frame = &a;
    int order = frame->order();
    for (const auto& a : args) order = std::min(order, a.order());
    std::vector<TruncSeries> lifted;
    lifted.reserve(args.size());
    for (const auto& a : args) {
        TruncSeries s = (a.nvars() == frame->nvars()) ? a : a.promoted(frame->vars());
        if (s.vars() != frame->vars())
            throw std::invalid_argument("substitute: arguments over different variable frames");
        auto v = s.valuation();
        if (v && *v < 1) throw precondition_error("substitute: argument has valuation 0 (not through origin)");
        lifted.push_back(s.truncated(order));
    }
    std::vector<std::vector<TruncSeries>> powers(lifted.size());
    std::vector<int> maxe(lifted.size(), 0);
    for (const auto& [e, c] : p.terms())
        for (size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
    for (size_t i = 0; i < lifted.size(); ++i) {
        powers[i].push_back(TruncSeries::zero(frame->vars(), order));  // slot 0 unused
        if (maxe[i] >= 1) powers[i].push_back(lifted[i]);
        for (int k = 2; k <= maxe[i]; ++k) powers[i].push_back(powers[i].back() * lifted[i]);
    }
    TruncSeries acc = TruncSeries::zero(frame->vars(), order);
    for (const auto& [e, c] : p.terms()) {
        TruncSeries term = TruncSeries::constant(frame->vars(), order, c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * powers[i][e[i]];
        acc += term;
    }
    return acc;
}

}  // namespace arcnash
