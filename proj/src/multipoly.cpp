#include "qdyn/multipoly.hpp"

#include "qdyn/intfactor.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdyn {

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const
{
    if (a.size() != b.size())
        return a.size() > b.size(); // keeps the order strict; never hit within one poly
    unsigned long da = std::accumulate(a.begin(), a.end(), 0ul);
    unsigned long db = std::accumulate(b.begin(), b.end(), 0ul);
    if (da != db)
        return da > db;
    return a > b; // lexicographic tiebreak
}

MultiPoly MultiPoly::constant(const Rational& c, std::vector<std::string> vars)
{
    MultiPoly p(std::move(vars));
    if (!c.is_zero())
        p.terms_.emplace(Exponents(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name)
{
    MultiPoly p({name});
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exponents exps, const Rational& c)
{
    if (vars.size() != exps.size())
        throw std::invalid_argument("MultiPoly::monomial: exponent/variable count mismatch");
    MultiPoly p(std::move(vars));
    if (!c.is_zero())
        p.terms_.emplace(std::move(exps), c);
    return p;
}

bool MultiPoly::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

Rational MultiPoly::constant_value() const
{
    if (!is_constant())
        throw std::domain_error("MultiPoly::constant_value: polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int MultiPoly::degree(const std::string& var) const
{
    if (terms_.empty())
        return -1;
    int idx = var_index(var);
    if (idx < 0)
        return 0;
    uint32_t d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[idx]);
    return static_cast<int>(d);
}

int MultiPoly::total_degree() const
{
    if (terms_.empty())
        return -1;
    // grlex order puts a maximal-total-degree term first
    const Exponents& e = terms_.begin()->first;
    return static_cast<int>(std::accumulate(e.begin(), e.end(), 0ul));
}

Rational MultiPoly::coeff(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::set_term(Exponents e, const Rational& c)
{
    if (e.size() != vars_.size())
        throw std::invalid_argument("MultiPoly::set_term: exponent count mismatch");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[std::move(e)] = c;
}

int MultiPoly::var_index(const std::string& name) const
{
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const
{
    std::vector<int> map(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end())
            throw std::invalid_argument("MultiPoly::with_vars: target drops variable " + vars_[i]);
        map[i] = static_cast<int>(it - vars.begin());
    }
    MultiPoly out(vars);
    for (const auto& [e, c] : terms_) {
        Exponents ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i)
            ne[map[i]] = e[i];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

MultiPoly MultiPoly::without_var(const std::string& name) const
{
    int idx = var_index(name);
    if (idx < 0)
        return *this;
    if (degree(name) > 0)
        throw std::domain_error("MultiPoly::without_var: variable still occurs: " + name);
    std::vector<std::string> nv = vars_;
    nv.erase(nv.begin() + idx);
    MultiPoly out(nv);
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        ne.erase(ne.begin() + idx);
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b)
{
    if (a.vars_ == b.vars_)
        return {a, b};
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end())
            u.push_back(v);
    return {a.with_vars(u), b.with_vars(u)};
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, -c);
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    if (vars_ != o.vars_) {
        auto [a, b] = aligned(*this, o);
        *this = std::move(a);
        return *this += b;
    }
    for (const auto& [e, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    return *this += -o;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r = a;
    r += b;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r = a;
    r -= b;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    auto [x, y] = aligned(a, b);
    MultiPoly out(x.vars());
    const size_t nv = x.vars().size();
    Exponents key(nv);
    for (const auto& [ea, ca] : x.terms()) {
        for (const auto& [eb, cb] : y.terms()) {
            for (size_t i = 0; i < nv; ++i)
                key[i] = ea[i] + eb[i];
            Rational prod = ca * cb;
            auto [it, fresh] = out.terms_.try_emplace(key, prod);
            if (!fresh)
                it->second += prod;
        }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
        if (it->second.is_zero())
            it = out.terms_.erase(it);
        else
            ++it;
    }
    return out;
}

MultiPoly operator*(const MultiPoly& a, const Rational& c)
{
    if (c.is_zero())
        return MultiPoly(a.vars());
    MultiPoly out(a.vars());
    for (const auto& [e, k] : a.terms())
        out.terms_.emplace(e, k * c);
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    auto [x, y] = aligned(a, b);
    return x.terms_ == y.terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const
{
    MultiPoly r = MultiPoly::constant(Rational(1), vars_);
    MultiPoly base = *this;
    while (e) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const
{
    if (var_index(var) < 0)
        return *this;
    auto [self, val] = aligned(*this, value);
    int idx = self.var_index(var);

    uint32_t maxe = 0;
    for (const auto& [e, c] : self.terms_)
        maxe = std::max(maxe, e[static_cast<size_t>(idx)]);

    std::vector<MultiPoly> pows;
    pows.reserve(maxe + 1);
    pows.push_back(MultiPoly::constant(Rational(1), self.vars_));
    for (uint32_t k = 1; k <= maxe; ++k)
        pows.push_back(pows.back() * val);

    MultiPoly out(self.vars_);
    for (const auto& [e, c] : self.terms_) {
        Exponents base = e;
        uint32_t k = base[static_cast<size_t>(idx)];
        base[static_cast<size_t>(idx)] = 0;
        for (const auto& [e2, c2] : pows[k].terms_) {
            Exponents s = base;
            for (size_t i = 0; i < s.size(); ++i)
                s[i] += e2[i];
            Rational prod = c * c2;
            auto [it, fresh] = out.terms_.try_emplace(std::move(s), prod);
            if (!fresh)
                it->second += prod;
        }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
        if (it->second.is_zero())
            it = out.terms_.erase(it);
        else
            ++it;
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::string& var, const Rational& value) const
{
    int idx = var_index(var);
    if (idx < 0)
        return *this;

    uint32_t maxe = 0;
    for (const auto& [e, c] : terms_)
        maxe = std::max(maxe, e[static_cast<size_t>(idx)]);
    std::vector<Rational> pows(maxe + 1, Rational(1));
    for (uint32_t k = 1; k <= maxe; ++k)
        pows[k] = pows[k - 1] * value;

    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents base = e;
        uint32_t k = base[static_cast<size_t>(idx)];
        base[static_cast<size_t>(idx)] = 0;
        Rational prod = c * pows[k];
        if (prod.is_zero())
            continue;
        auto [it, fresh] = out.terms_.try_emplace(std::move(base), prod);
        if (!fresh) {
            it->second += prod;
            if (it->second.is_zero())
                out.terms_.erase(it);
        }
    }
    return out;
}

Rational MultiPoly::eval(const std::map<std::string, Rational>& point) const
{
    std::vector<Rational> vals(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        if (it == point.end()) {
            // only an issue if the variable actually occurs
            if (uses(vars_[i]))
                throw std::domain_error("MultiPoly::eval: missing value for " + vars_[i]);
            vals[i] = Rational(0);
        } else {
            vals[i] = it->second;
        }
    }
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i])
                t *= vals[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

std::string MultiPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += vars_[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        Rational a = abs(c);
        std::string piece;
        if (mono.empty())
            piece = a.str();
        else if (a == Rational(1))
            piece = mono;
        else
            piece = a.str() + "*" + mono;

        if (first) {
            os << (c.sign() < 0 ? "-" : "") << piece;
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ") << piece;
        }
    }
    return os.str();
}

nlohmann::json MultiPoly::to_json() const
{
    nlohmann::json j;
    j["vars"] = vars_;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::json t;
        t["exp"] = e;
        t["coef"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j)
{
    MultiPoly p(j.at("vars").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
        Exponents e = t.at("exp").get<Exponents>();
        Rational c = Rational::parse(t.at("coef").get<std::string>());
        p.set_term(std::move(e), c);
    }
    return p;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p)
{
    return os << p.str();
}

// --- UniView ------------------------------------------------------------

UniView UniView::of(const MultiPoly& p, const std::string& var)
{
    UniView v;
    v.var = var;
    v.all_vars = p.vars();
    int idx = p.var_index(var);
    if (idx < 0) {
        // embed var so reassembly and shifting stay uniform
        MultiPoly q = p.with_vars([&] {
            auto nv = p.vars();
            nv.push_back(var);
            return nv;
        }());
        return UniView::of(q, var);
    }
    int d = p.degree(var);
    if (d < 0)
        return v; // zero polynomial: no coefficients
    v.coeffs.assign(static_cast<size_t>(d) + 1, MultiPoly(p.vars()));
    for (const auto& [e, c] : p.terms()) {
        Exponents base = e;
        uint32_t k = base[static_cast<size_t>(idx)];
        base[static_cast<size_t>(idx)] = 0;
        Rational cur = v.coeffs[k].coeff(base);
        v.coeffs[k].set_term(std::move(base), cur + c);
    }
    return v;
}

int UniView::degree() const
{
    for (size_t k = coeffs.size(); k-- > 0;)
        if (!coeffs[k].is_zero())
            return static_cast<int>(k);
    return -1;
}

MultiPoly UniView::reassemble() const
{
    MultiPoly out(all_vars);
    if (coeffs.empty())
        return out;
    int idx = out.var_index(var);
    if (idx < 0)
        throw std::logic_error("UniView::reassemble: variable missing from list");
    for (size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms()) {
            Exponents ne = e;
            ne[static_cast<size_t>(idx)] += static_cast<uint32_t>(k);
            Rational cur = out.coeff(ne) + c;
            out.set_term(std::move(ne), cur);
        }
    }
    return out;
}

// --- division -----------------------------------------------------------

MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& q)
{
    if (q.is_zero())
        throw std::domain_error("exact_divide: division by zero polynomial");
    if (q.is_constant()) {
        Rational inv = Rational(1) / q.constant_value();
        return p * inv;
    }
    if (p.is_zero())
        return MultiPoly(p.vars());

    auto [a, b] = aligned(p, q);
    std::string var;
    for (const auto& v : b.vars())
        if (b.degree(v) > 0) {
            var = v;
            break;
        }

    UniView R = UniView::of(a, var);
    UniView D = UniView::of(b, var);
    int dd = D.degree();
    const MultiPoly& lead = D.coeffs[static_cast<size_t>(dd)];

    int dr = R.degree();
    if (dr < dd)
        throw std::domain_error("exact_divide: division is not exact");

    UniView Q;
    Q.var = var;
    Q.all_vars = a.vars();
    Q.coeffs.assign(static_cast<size_t>(dr - dd) + 1, MultiPoly(a.vars()));

    for (int k = dr; k >= dd; --k) {
        MultiPoly& top = R.coeffs[static_cast<size_t>(k)];
        if (top.is_zero())
            continue;
        MultiPoly t = exact_divide(top, lead); // throws when not divisible
        Q.coeffs[static_cast<size_t>(k - dd)] = t;
        for (int i = 0; i <= dd; ++i)
            R.coeffs[static_cast<size_t>(k - dd + i)] -= t * D.coeffs[static_cast<size_t>(i)];
    }
    for (int i = 0; i < dd; ++i)
        if (!R.coeffs[static_cast<size_t>(i)].is_zero())
            throw std::domain_error("exact_divide: division is not exact");
    return Q.reassemble();
}

DivMod divide_monic(const MultiPoly& p, const MultiPoly& divisor, const std::string& var)
{
    auto [a, b] = aligned(p, divisor);
    UniView D = UniView::of(b, var);
    int dd = D.degree();
    if (dd < 0)
        throw std::domain_error("divide_monic: zero divisor");
    if (!(D.coeffs[static_cast<size_t>(dd)].is_constant() &&
          D.coeffs[static_cast<size_t>(dd)].constant_value() == Rational(1)))
        throw std::domain_error("divide_monic: divisor is not monic in " + var);

    UniView R = UniView::of(a, var);
    int dr = R.degree();

    UniView Q;
    Q.var = var;
    Q.all_vars = a.vars();
    if (dr >= dd)
        Q.coeffs.assign(static_cast<size_t>(dr - dd) + 1, MultiPoly(a.vars()));

    for (int k = dr; k >= dd; --k) {
        MultiPoly t = R.coeffs[static_cast<size_t>(k)];
        if (t.is_zero())
            continue;
        Q.coeffs[static_cast<size_t>(k - dd)] = t;
        for (int i = 0; i <= dd; ++i)
            R.coeffs[static_cast<size_t>(k - dd + i)] -= t * D.coeffs[static_cast<size_t>(i)];
    }

    UniView Rem;
    Rem.var = var;
    Rem.all_vars = a.vars();
    for (int i = 0; i < dd && i < static_cast<int>(R.coeffs.size()); ++i)
        Rem.coeffs.push_back(R.coeffs[static_cast<size_t>(i)]);
    return DivMod{Q.reassemble(), Rem.reassemble()};
}

// --- resultants ----------------------------------------------------------

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var)
{
    auto [a, b] = aligned(p, q);
    UniView F = UniView::of(a, var);
    UniView G = UniView::of(b, var);
    int m = F.degree(), n = G.degree();
    if (m < 1 || n < 1)
        throw std::domain_error("resultant: both inputs need positive degree in " + var);

    const auto& vars = a.vars();
    const size_t sz = static_cast<size_t>(m + n);
    std::vector<std::vector<MultiPoly>> M(sz, std::vector<MultiPoly>(sz, MultiPoly(vars)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = F.coeffs[static_cast<size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            M[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = G.coeffs[static_cast<size_t>(n - j)];

    // fraction-free Bareiss elimination; every division is exact by theory,
    // so a division failure here is a genuine bug certificate
    int sign = 1;
    MultiPoly prev = MultiPoly::constant(Rational(1), vars);
    for (size_t k = 0; k + 1 < sz; ++k) {
        if (M[k][k].is_zero()) {
            size_t piv = k;
            for (size_t i = k + 1; i < sz; ++i)
                if (!M[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv == k)
                return MultiPoly(vars).without_var(var); // singular: resultant 0
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < sz; ++i) {
            for (size_t j = k + 1; j < sz; ++j)
                M[i][j] = exact_divide(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
            M[i][k] = MultiPoly(vars);
        }
        prev = M[k][k];
    }
    MultiPoly det = M[sz - 1][sz - 1];
    if (sign < 0)
        det = -det;
    return det.without_var(var);
}

namespace {

MultiPoly lead_coeff(const MultiPoly& p, const std::string& var)
{
    UniView v = UniView::of(p, var);
    int d = v.degree();
    if (d < 0)
        return MultiPoly(p.vars());
    return v.coeffs[static_cast<size_t>(d)];
}

// pseudo-remainder: lc(B)^(deg A - deg B + 1) * A  modulo  B
MultiPoly pseudo_rem(const MultiPoly& A, const MultiPoly& B, const std::string& var)
{
    int dB = B.degree(var);
    MultiPoly lcB = lead_coeff(B, var);
    MultiPoly R = A;
    long e = A.degree(var) - dB + 1;
    while (!R.is_zero() && R.degree(var) >= dB) {
        int dR = R.degree(var);
        MultiPoly t = lead_coeff(R, var);
        Exponents shift(R.vars().size(), 0);
        int idx = R.var_index(var);
        shift[static_cast<size_t>(idx)] = static_cast<uint32_t>(dR - dB);
        MultiPoly xs = MultiPoly::monomial(R.vars(), shift, Rational(1));
        R = lcB * R - t * xs * B;
        --e;
    }
    while (e-- > 0)
        R = lcB * R;
    return R;
}

} // namespace

MultiPoly resultant_prs(const MultiPoly& p, const MultiPoly& q, const std::string& var)
{
    auto [A, B] = aligned(p, q);
    int dA = A.degree(var), dB = B.degree(var);
    if (dA < 1 || dB < 1)
        throw std::domain_error("resultant_prs: both inputs need positive degree in " + var);

    int s = 1;
    if (dA < dB) {
        std::swap(A, B);
        if ((dA % 2) && (dB % 2))
            s = -s;
    }

    const auto vars = A.vars();
    MultiPoly g = MultiPoly::constant(Rational(1), vars);
    MultiPoly h = g;

    while (true) {
        dA = A.degree(var);
        dB = B.degree(var);
        int delta = dA - dB;
        if ((dA % 2) && (dB % 2))
            s = -s;
        MultiPoly R = pseudo_rem(A, B, var);
        A = B;
        B = exact_divide(R, g * h.pow(static_cast<unsigned>(delta)));
        g = lead_coeff(A, var);
        if (delta > 0)
            h = exact_divide(g.pow(static_cast<unsigned>(delta)),
                             h.pow(static_cast<unsigned>(delta - 1)));
        if (B.is_zero())
            return MultiPoly(vars).without_var(var);
        if (B.degree(var) == 0)
            break;
    }

    int d = A.degree(var);
    MultiPoly res = exact_divide(B.pow(static_cast<unsigned>(d)),
                                 h.pow(static_cast<unsigned>(d - 1)));
    if (s < 0)
        res = -res;
    return res.without_var(var);
}

// --- rational roots -------------------------------------------------------

namespace {

// index of the single variable with positive degree; -1 when none (constant)
int sole_used_var(const MultiPoly& p)
{
    int used = -1;
    for (size_t i = 0; i < p.vars().size(); ++i) {
        bool occurs = false;
        for (const auto& [e, c] : p.terms())
            if (e[i] > 0) {
                occurs = true;
                break;
            }
        if (occurs) {
            if (used >= 0)
                throw std::domain_error("rational_roots: polynomial is not univariate");
            used = static_cast<int>(i);
        }
    }
    return used;
}

} // namespace

std::vector<Rational> rational_roots(const MultiPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("rational_roots: zero polynomial");
    int idx = sole_used_var(p);
    if (idx < 0)
        return {}; // nonzero constant

    int deg = 0;
    for (const auto& [e, c] : p.terms())
        deg = std::max(deg, static_cast<int>(e[static_cast<size_t>(idx)]));

    std::vector<Rational> a(static_cast<size_t>(deg) + 1, Rational(0));
    for (const auto& [e, c] : p.terms())
        a[e[static_cast<size_t>(idx)]] += c;

    // clear denominators
    mpz_class L = 1;
    for (const auto& r : a)
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), r.den().get_mpz_t());
    std::vector<mpz_class> z(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        z[i] = a[i].num() * (L / a[i].den());

    std::set<Rational> roots;

    // powers of x split off: 0 is a root
    size_t low = 0;
    while (low < z.size() && z[low] == 0)
        ++low;
    if (low > 0) {
        roots.insert(Rational(0));
        z.erase(z.begin(), z.begin() + static_cast<long>(low));
    }
    size_t n = z.size() - 1;
    if (n == 0)
        return {roots.begin(), roots.end()};

    mpz_class g = 0;
    for (const auto& c : z)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (auto& c : z)
        c /= g;

    mpz_class f1 = 0, fm1 = 0;
    for (size_t i = 0; i <= n; ++i) {
        f1 += z[i];
        fm1 += (i % 2) ? -z[i] : z[i];
    }
    mpz_class lead = abs(z[n]);
    mpz_class maxabs = 0;
    for (size_t i = 0; i < n; ++i)
        maxabs = std::max(maxabs, mpz_class(abs(z[i])));

    auto divides = [](const mpz_class& d, const mpz_class& x) {
        if (d == 0)
            return x == 0;
        return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
    };
    auto eval_uv = [&](const mpz_class& u, const mpz_class& v) {
        // sum z[i] u^i v^(n-i); zero iff u/v is a root
        mpz_class acc = 0;
        std::vector<mpz_class> upow(n + 1), vpow(n + 1);
        upow[0] = 1;
        vpow[0] = 1;
        for (size_t i = 1; i <= n; ++i) {
            upow[i] = upow[i - 1] * u;
            vpow[i] = vpow[i - 1] * v;
        }
        for (size_t i = 0; i <= n; ++i)
            acc += z[i] * upow[i] * vpow[n - i];
        return acc;
    };

    for (const mpz_class& u : divisors(z[0])) {
        for (const mpz_class& v : divisors(z[n])) {
            mpz_class cg;
            mpz_gcd(cg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            if (cg != 1)
                continue;
            // Cauchy bound: |root| <= 1 + maxabs/|lead|
            if (u * lead > v * (lead + maxabs))
                continue;
            if (divides(v - u, f1) && divides(v + u, fm1) && eval_uv(u, v) == 0)
                roots.insert(Rational(u, v));
            if (divides(v + u, f1) && divides(v - u, fm1) && eval_uv(-u, v) == 0)
                roots.insert(Rational(-u, v));
        }
    }
    return {roots.begin(), roots.end()};
}

unsigned root_multiplicity(const MultiPoly& p, const Rational& r)
{
    if (p.is_zero())
        throw std::domain_error("root_multiplicity: zero polynomial");
    int idx = sole_used_var(p);
    if (idx < 0)
        return 0;

    int deg = 0;
    for (const auto& [e, c] : p.terms())
        deg = std::max(deg, static_cast<int>(e[static_cast<size_t>(idx)]));
    std::vector<Rational> a(static_cast<size_t>(deg) + 1, Rational(0));
    for (const auto& [e, c] : p.terms())
        a[e[static_cast<size_t>(idx)]] += c;

    unsigned mult = 0;
    while (a.size() > 1) {
        // synthetic division by (x - r); remainder is the evaluation
        std::vector<Rational> b(a.size() - 1);
        Rational carry = a.back();
        for (size_t i = a.size() - 1; i-- > 0;) {
            b[i] = carry;
            carry = a[i] + carry * r;
        }
        if (!carry.is_zero())
            break;
        ++mult;
        a = std::move(b);
    }
    return mult;
}

ContentPrimitive content_primitive(const MultiPoly& p)
{
    if (p.is_zero())
        return {mpz_class(0), p};
    mpz_class g = 0;
    for (const auto& [e, c] : p.terms()) {
        if (!c.is_integer())
            throw std::domain_error("content_primitive: non-integer coefficient " + c.str());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
    }
    MultiPoly prim = p * Rational(mpz_class(1), g);
    return {g, prim};
}

} // namespace qdyn
