#pragma once

#include "siegel/rational.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace siegel {

using SymbolId = int;

// Append-only name <-> id table. Interning is not thread-safe; register every
// symbol before sharing scalars across threads. Scalars themselves never hold
// a registry pointer, so arithmetic is registry-free; two scalars are
// comparable only when built against the same registry.
class SymbolRegistry {
public:
    SymbolId intern(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        names_.push_back(name);
        SymbolId id = (SymbolId)names_.size() - 1;
        index_.emplace(name, id);
        return id;
    }
    const std::string& name(SymbolId id) const { return names_.at((size_t)id); }
    std::optional<SymbolId> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> index_;
};

// e^{2*pi*i * num/order}, kept with 0 <= num < order and gcd-reduced.
struct RootOfUnity {
    long num = 0;
    long order = 1;

    RootOfUnity() = default;
    RootOfUnity(long n, long ord) {
        if (ord <= 0) throw std::domain_error("RootOfUnity: order must be positive");
        num = ((n % ord) + ord) % ord;
        order = ord;
        reduce();
    }
    void reduce() {
        if (num == 0) { order = 1; return; }
        long g = std::gcd(num, order);
        num /= g;
        order /= g;
    }
    RootOfUnity operator*(const RootOfUnity& o) const {
        long m = std::lcm(order, o.order);
        return RootOfUnity(num * (m / order) + o.num * (m / o.order), m);
    }
    RootOfUnity pow(long e) const {
        long v = ((e % order) + order) % order;
        // num*v can overflow only for absurd orders; desk scale keeps this tiny.
        return RootOfUnity(num * v, order);
    }
    RootOfUnity conj() const { return RootOfUnity(order - num, order); }
    bool operator==(const RootOfUnity& o) const { return num == o.num && order == o.order; }
    // Exact rational value when the root is +-1.
    std::optional<Rational> as_rational() const {
        if (order == 1) return Rational(1);
        if (order == 2) return Rational(-1);
        return std::nullopt;
    }
    std::complex<double> value() const {
        const double two_pi = 6.283185307179586476925286766559;
        double t = two_pi * (double)num / (double)order;
        return {std::cos(t), std::sin(t)};
    }
};

// Exact multivariate Laurent polynomial over Q in registered symbols.
// Terms map a sparse exponent vector (sorted by symbol id, exponents nonzero)
// to a nonzero rational coefficient.
class LaurentScalar {
public:
    using ExpVec = std::vector<std::pair<SymbolId, int>>;
    using TermMap = std::map<ExpVec, Rational>;

    LaurentScalar() = default;

    static LaurentScalar from_rational(const Rational& r) {
        LaurentScalar s;
        if (r != 0) s.terms_[ExpVec{}] = r;
        return s;
    }
    static LaurentScalar from_int(long v) { return from_rational(Rational(v)); }
    static LaurentScalar monomial(SymbolId sym, int exp, const Rational& coeff = Rational(1)) {
        LaurentScalar s;
        if (coeff == 0) return s;
        ExpVec e;
        if (exp != 0) e.emplace_back(sym, exp);
        s.terms_[e] = coeff;
        return s;
    }
    static LaurentScalar zero() { return LaurentScalar(); }
    static LaurentScalar one() { return from_int(1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("LaurentScalar: not a constant");
        return terms_.begin()->second;
    }

    LaurentScalar operator-() const {
        LaurentScalar r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    LaurentScalar& operator+=(const LaurentScalar& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentScalar& operator-=(const LaurentScalar& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }

    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
        LaurentScalar r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(merge_exps(ea, eb), ca * cb);
        return r;
    }
    LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

    LaurentScalar& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& t : terms_) t.second *= c;
        return *this;
    }
    friend LaurentScalar operator*(LaurentScalar a, const Rational& c) { return a *= c; }
    friend LaurentScalar operator*(const Rational& c, LaurentScalar a) { return a *= c; }

    bool operator==(const LaurentScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentScalar& o) const { return terms_ != o.terms_; }

    // Multiplicative inverse; defined for single-term scalars only.
    LaurentScalar invert_monomial() const {
        if (terms_.size() != 1) throw std::domain_error("non-invertible scalar");
        const auto& [e, c] = *terms_.begin();
        ExpVec inv = e;
        for (auto& p : inv) p.second = -p.second;
        LaurentScalar r;
        r.terms_[inv] = Rational(1) / c;
        return r;
    }

    LaurentScalar pow(long e) const {
        if (e < 0) return invert_monomial().pow(-e);
        LaurentScalar r = one(), b = *this;
        unsigned long u = (unsigned long)e;
        for (; u; u >>= 1) {
            if (u & 1) r = r * b;
            b = b * b;
        }
        return r;
    }

    // Total degree in the given symbols (max over terms of the exponent sum);
    // 0 for the zero scalar.
    int total_degree_in(const std::vector<SymbolId>& syms) const {
        int deg = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (const auto& [id, ex] : e)
                for (SymbolId s : syms)
                    if (id == s) d += ex;
            deg = std::max(deg, d);
        }
        return deg;
    }

    std::string to_string(const SymbolRegistry& reg) const;

private:
    TermMap terms_;

    void add_term(const ExpVec& e, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    static ExpVec merge_exps(const ExpVec& a, const ExpVec& b) {
        ExpVec r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) {
                r.push_back(a[i++]);
            } else if (a[i].first > b[j].first) {
                r.push_back(b[j++]);
            } else {
                int e = a[i].second + b[j].second;
                if (e != 0) r.emplace_back(a[i].first, e);
                ++i, ++j;
            }
        }
        while (i < a.size()) r.push_back(a[i++]);
        while (j < b.size()) r.push_back(b[j++]);
        return r;
    }
};

// Numeric bindings for evaluation: exact rationals or roots of unity.
struct SymbolBinding {
    enum class Kind { RationalValue, Root } kind = Kind::RationalValue;
    Rational rat;
    RootOfUnity root;

    static SymbolBinding of(const Rational& r) { return {Kind::RationalValue, r, {}}; }
    static SymbolBinding of(const RootOfUnity& u) { return {Kind::Root, {}, u}; }
};

using BindingMap = std::map<SymbolId, SymbolBinding>;

// Exact path: defined when every binding has an exact rational value.
std::optional<Rational> evaluate_rational(const LaurentScalar& s, const BindingMap& bindings,
                                          const SymbolRegistry& reg);

// Float path; documented absolute tolerance 1e-9 for downstream comparisons.
std::complex<double> evaluate_complex(const LaurentScalar& s, const BindingMap& bindings,
                                      const SymbolRegistry& reg);

}  // namespace siegel
