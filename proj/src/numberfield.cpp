#include "arcnash/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace arcnash {

Coefficient FieldContext::sqrt_rational(const Rational& d) {
    if (approx) {
        std::complex<double> z = std::sqrt(std::complex<double>(to_double(d), 0.0));
        return Coefficient::approx(z);
    }
    if (auto r = rational_sqrt(d)) return Coefficient(*r);
    if (!ext) {
        ext = std::make_shared<Extension>(d, 2, 0);
        return Coefficient::algebraic({Rational(0), Rational(1)}, ext);
    }
    if (ext->degree() == 2) {
        // sqrt(d) = q * alpha when d / base is a perfect square
        if (auto q = rational_sqrt(d / ext->base()))
            return Coefficient::algebraic({Rational(0), *q}, ext);
    }
    throw needs_approx("sqrt(" + rational_str(d) + ") is outside Q(" + ext->name() + ")");
}

Coefficient FieldContext::root_of_unity(int q, int j) {
    if (q < 1) throw std::invalid_argument("root_of_unity: q >= 1");
    j = ((j % q) + q) % q;
    if (approx) {
        double arg = 2.0 * 3.14159265358979323846 * j / q;
        return Coefficient::approx(std::polar(1.0, arg));
    }
    int g = std::gcd(j, q);
    int ord = q / g;
    int k = (j / g) % ord;
    switch (ord) {
        case 1:
            return Coefficient(1);
        case 2:
            return Coefficient(-1);
        case 3: {
            // zeta_3 = (-1 + sqrt(-3))/2
            Coefficient a = sqrt_rational(Rational(-3));
            Coefficient z = (Coefficient(-1) + a) * Coefficient(Rational(1, 2));
            return k == 1 ? z : z * z;
        }
        case 4: {
            Coefficient i = sqrt_rational(Rational(-1));
            return k == 1 ? i : -i;  // k in {1,3}
        }
        case 6: {
            Coefficient a = sqrt_rational(Rational(-3));
            Coefficient z = (Coefficient(1) + a) * Coefficient(Rational(1, 2));  // zeta_6
            Coefficient r(1);
            for (int t = 0; t < k; ++t) r = r * z;
            return r;
        }
        default:
            throw needs_approx("root of unity of order " + std::to_string(ord) +
                               " exceeds one quadratic layer");
    }
}

int upoly_degree(const UniPoly& p) {
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
        if (!p[d].is_zero()) return d;
    return -1;
}

Coefficient upoly_eval(const UniPoly& p, const Coefficient& x) {
    Coefficient acc(0);
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) acc = acc * x + p[d];
    return acc;
}

UniPoly upoly_derivative(const UniPoly& p) {
    UniPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Coefficient(static_cast<int>(i)));
    if (d.empty()) d.push_back(Coefficient(0));
    return d;
}

UniPoly upoly_deflate(const UniPoly& p, const Coefficient& r, Coefficient* rem) {
    int d = upoly_degree(p);
    if (d < 1) {
        if (rem) *rem = d == 0 ? p[0] : Coefficient(0);
        return {Coefficient(0)};
    }
    UniPoly q(d, Coefficient(0));
    Coefficient carry = p[d];
    for (int i = d - 1; i >= 0; --i) {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    if (rem) *rem = carry;
    return q;
}

UniPoly upoly_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.size() + b.size() - 1, Coefficient(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::pair<UniPoly, UniPoly> upoly_divmod(const UniPoly& a, const UniPoly& b) {
    int db = upoly_degree(b);
    if (db < 0) throw std::domain_error("upoly_divmod: division by zero polynomial");
    UniPoly r = a, q(std::max<size_t>(1, a.size()), Coefficient(0));
    for (int d = upoly_degree(r); d >= db; d = upoly_degree(r)) {
        Coefficient f = r[d] / b[db];
        q[d - db] += f;
        for (int j = 0; j <= db; ++j) r[d - db + j] -= f * b[j];
        r[d] = Coefficient(0);
    }
    return {q, r};
}

UniPoly upoly_gcd(UniPoly a, UniPoly b) {
    while (upoly_degree(b) >= 0) {
        auto [q, r] = upoly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    int d = upoly_degree(a);
    if (d < 0) return a;
    Coefficient lead = a[d];
    for (auto& c : a) c /= lead;
    return a;
}

namespace {

// Candidate rational roots of an all-rational polynomial via trial division
// of the extreme coefficients. Bails out (empty result, found=false) when the
// integers are too large to factor quickly.
bool rational_root_candidates(const UniPoly& p, std::vector<Rational>& out) {
    Int lead(1), last(1);
    Int lcm_den(1);
    for (const auto& c : p)
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c.rat()));
    std::vector<Int> ip(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        ip[i] = numerator(p[i].rat() * Rational(lcm_den));
    int d = upoly_degree(p);
    int v = 0;
    while (v <= d && ip[v] == 0) ++v;
    lead = boost::multiprecision::abs(ip[d]);
    last = boost::multiprecision::abs(ip[v]);
    auto divisors = [](Int n, std::vector<Int>& divs) {
        divs.clear();
        if (n == 0) return false;
        const Int limit(1000000);
        std::vector<std::pair<Int, int>> fac;
        for (Int f = 2; f * f <= n; ++f) {
            if (f > limit) return false;
            int e = 0;
            while (n % f == 0) {
                n /= f;
                ++e;
            }
            if (e) fac.push_back({f, e});
        }
        if (n > 1) fac.push_back({n, 1});
        divs.push_back(Int(1));
        for (auto& [f, e] : fac) {
            size_t sz = divs.size();
            Int pw(1);
            for (int i = 1; i <= e; ++i) {
                pw *= f;
                for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pw);
            }
        }
        return divs.size() <= 4096;
    };
    std::vector<Int> dn, dd;
    if (!divisors(last, dn) || !divisors(lead, dd)) return false;
    for (const auto& a : dn)
        for (const auto& b : dd) {
            out.push_back(Rational(a, b));
            out.push_back(Rational(-a, b));
        }
    return true;
}

bool all_rational(const UniPoly& p) {
    for (const auto& c : p)
        if (!c.is_rational()) return false;
    return true;
}

// Durand-Kerner with clustering of nearby roots into multiple roots.
std::vector<std::pair<Coefficient, int>> durand_kerner(const UniPoly& p0, double eps) {
    int d = upoly_degree(p0);
    std::vector<std::complex<double>> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = p0[i].numeric();
    for (int i = 0; i <= d; ++i) c[i] /= c[d];
    double bound = 1.0;
    for (int i = 0; i < d; ++i) bound = std::max(bound, std::abs(c[i]));
    bound += 1.0;
    std::vector<std::complex<double>> z(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < d; ++i) {
        acc *= seed;
        z[i] = acc * bound;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v(0, 0);
        for (int i = d; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = eval(z[i]);
            std::complex<double> den(1, 0);
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> dz = num / den;
            z[i] -= dz;
            moved = std::max(moved, std::abs(dz));
        }
        if (moved < 1e-14 * bound) break;
    }
    // Single-linkage clustering with a generous tolerance: a root of
    // multiplicity k scatters by machine-eps^{1/k} (about 1e-3 for k = 5),
    // so under-merging loses multiplicities fatally, while over-merging is
    // self-correcting (the lifting recursion re-splits distinct branches and
    // the divisibility test rejects false multiples).
    const double ctol = std::max(eps, 2e-3) * bound;
    std::vector<int> cluster(d, -1);
    int nclusters = 0;
    for (int i = 0; i < d; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = nclusters++;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int j = 0; j < d; ++j) {
                if (cluster[j] >= 0) continue;
                for (int k = 0; k < d; ++k)
                    if (cluster[k] == cluster[i] && std::abs(z[j] - z[k]) < ctol) {
                        cluster[j] = cluster[i];
                        grew = true;
                        break;
                    }
            }
        }
    }
    std::vector<std::pair<Coefficient, int>> out;
    for (int cid = 0; cid < nclusters; ++cid) {
        std::complex<double> sum(0, 0);
        int cnt = 0;
        for (int i = 0; i < d; ++i)
            if (cluster[i] == cid) {
                sum += z[i];
                ++cnt;
            }
        std::complex<double> root = sum / static_cast<double>(cnt);
        // polish: a multiplicity-k root is a simple root of the (k-1)-st
        // derivative, where Newton converges quadratically
        std::vector<std::complex<double>> pc(c.begin(), c.end());
        for (int t = 1; t < cnt; ++t) {
            std::vector<std::complex<double>> dcf(pc.size() - 1);
            for (size_t i = 1; i < pc.size(); ++i)
                dcf[i - 1] = pc[i] * static_cast<double>(i);
            pc = std::move(dcf);
        }
        auto peval = [&](const std::vector<std::complex<double>>& q, std::complex<double> x) {
            std::complex<double> v(0, 0);
            for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) v = v * x + q[i];
            return v;
        };
        std::vector<std::complex<double>> pd(pc.size() - 1);
        for (size_t i = 1; i < pc.size(); ++i) pd[i - 1] = pc[i] * static_cast<double>(i);
        for (int it = 0; it < 12; ++it) {
            std::complex<double> dv = peval(pd, root);
            if (std::abs(dv) < 1e-300) break;
            std::complex<double> step = peval(pc, root) / dv;
            root -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(root))) break;
        }
        out.push_back({Coefficient::approx(root), cnt});
    }
    return out;
}

}  // namespace

std::vector<std::pair<Coefficient, int>> solve_roots(const UniPoly& p, FieldContext& ctx) {
    std::vector<std::pair<Coefficient, int>> roots;
    int d = upoly_degree(p);
    if (d < 0) throw std::invalid_argument("solve_roots: zero polynomial");
    UniPoly work(p.begin(), p.begin() + d + 1);
    // strip x = 0 roots
    int v = 0;
    while (v <= d && work[v].is_zero()) ++v;
    if (v > 0) {
        roots.push_back({ctx.approx ? Coefficient::approx({0, 0}) : Coefficient(0), v});
        work.erase(work.begin(), work.begin() + v);
        d -= v;
    }
    if (d == 0) return roots;

    if (ctx.approx) {
        auto rs = durand_kerner(work, ctx.eps);
        roots.insert(roots.end(), rs.begin(), rs.end());
        return roots;
    }

    // exact path: squarefree part, then tiered solving with multiplicity
    // recovered by repeated deflation against the original.
    UniPoly sf = work;
    {
        UniPoly g = upoly_gcd(work, upoly_derivative(work));
        if (upoly_degree(g) > 0) sf = upoly_divmod(work, g).first;
    }
    std::vector<Coefficient> found;

    // 1. rational roots
    if (all_rational(sf)) {
        std::vector<Rational> cands;
        if (rational_root_candidates(sf, cands)) {
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (const auto& cand : cands) {
                Coefficient c(cand);
                if (upoly_eval(sf, c).is_zero()) {
                    found.push_back(c);
                    sf = upoly_deflate(sf, c);
                }
            }
        }
    } else {
        // linear factors over the extension would need a root search we do
        // not attempt; degree-1 and degree-2 handling below still applies.
    }

    int ds = upoly_degree(sf);
    if (ds == 1) {
        found.push_back(-sf[0] / sf[1]);
        ds = 0;
    } else if (ds == 2) {
        Coefficient a = sf[2], b = sf[1], cc = sf[0];
        Coefficient disc = b * b - Coefficient(4) * a * cc;
        Coefficient sq(0);
        if (disc.is_rational()) {
            sq = ctx.sqrt_rational(disc.rat());
        } else {
            auto s = disc.sqrt_in_field();
            if (!s) throw needs_approx("sqrt of extension element not in field");
            sq = *s;
        }
        Coefficient two_a = Coefficient(2) * a;
        found.push_back((-b + sq) / two_a);
        found.push_back((-b - sq) / two_a);
        ds = 0;
    } else if (ds >= 3) {
        // binomial a x^q + b with all intermediate coefficients zero
        bool binom = true;
        for (int i = 1; i < ds; ++i)
            if (!sf[i].is_zero()) binom = false;
        if (binom && sf[0].is_rational() && sf[ds].is_rational()) {
            Rational c0 = -(sf[0].rat() / sf[ds].rat());
            auto droot = perfect_kth_root(c0, ds);
            if (!droot)
                throw needs_approx("root of x^" + std::to_string(ds) + " = " + rational_str(c0) +
                                   " needs a degree-" + std::to_string(ds) + " layer");
            for (int j = 0; j < ds; ++j)
                found.push_back(Coefficient(*droot) * ctx.root_of_unity(ds, j));
            ds = 0;
        } else {
            throw needs_approx("edge polynomial of degree " + std::to_string(ds) +
                               " is not solvable in Q plus one layer");
        }
    }
    if (ds > 0) throw needs_approx("unresolved factor of degree " + std::to_string(ds));

    // multiplicities
    for (const auto& r : found) {
        int mult = 0;
        for (;;) {
            Coefficient rem;
            UniPoly q = upoly_deflate(work, r, &rem);
            if (!rem.is_zero()) break;
            work = std::move(q);
            ++mult;
        }
        if (mult == 0)
            throw verification_error("solve_roots: found value is not a root");
        roots.push_back({r, mult});
    }
    if (upoly_degree(work) != 0)
        throw needs_approx("roots remain after exact solving (degree " +
                           std::to_string(upoly_degree(work)) + ")");
    return roots;
}

}  // namespace arcnash
