#pragma once

#include <map>
#include <vector>

#include "p1dyn/errors.hpp"
#include "p1dyn/map.hpp"
#include "p1dyn/poly.hpp"
#include "p1dyn/rational.hpp"

namespace p1dyn {

// Sparse multivariate polynomial over Q in a fixed number of formal
// parameters; exponent vectors key the coefficient map.
class MultiPoly {
public:
    using Key = std::vector<int>;

    explicit MultiPoly(int nvars = 0) : nv_(nvars) {}

    static MultiPoly constant(int nvars, Rational v) {
        MultiPoly p(nvars);
        if (sgn(v) != 0) p.t_[Key(static_cast<std::size_t>(nvars), 0)] = std::move(v);
        return p;
    }

    static MultiPoly variable(int nvars, int j) {
        MultiPoly p(nvars);
        Key k(static_cast<std::size_t>(nvars), 0);
        k[static_cast<std::size_t>(j)] = 1;
        p.t_[std::move(k)] = Rational(1);
        return p;
    }

    int nvars() const { return nv_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Key, Rational>& terms() const { return t_; }

    void add_term(Key k, Rational v) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            if (sgn(v) != 0) t_.emplace(std::move(k), std::move(v));
        } else {
            it->second += v;
            if (sgn(it->second) == 0) t_.erase(it);
        }
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
        for (const auto& [k, v] : b.t_) a.add_term(k, v);
        return a;
    }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) {
        for (const auto& [k, v] : b.t_) a.add_term(k, -v);
        return a;
    }
    MultiPoly operator-() const {
        MultiPoly r(nv_);
        for (const auto& [k, v] : t_) r.t_[k] = -v;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.nv_);
        for (const auto& [ka, va] : a.t_)
            for (const auto& [kb, vb] : b.t_) {
                Key k(ka);
                for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
                r.add_term(std::move(k), va * vb);
            }
        return r;
    }

    MultiPoly partial(int j) const {
        MultiPoly r(nv_);
        for (const auto& [k, v] : t_) {
            const int e = k[static_cast<std::size_t>(j)];
            if (e == 0) continue;
            Key kk(k);
            kk[static_cast<std::size_t>(j)] = e - 1;
            r.add_term(std::move(kk), v * Rational(e));
        }
        return r;
    }

    template <class T>
    T eval(const std::vector<T>& at) const {
        T acc = scalar_traits<T>::zero();
        for (const auto& [k, v] : t_) {
            T term = scalar_traits<T>::from_rational(v);
            for (std::size_t i = 0; i < k.size(); ++i)
                for (int e = 0; e < k[i]; ++e) term = term * at[i];
            acc = acc + term;
        }
        return acc;
    }

    bool operator==(const MultiPoly& o) const = default;

private:
    int nv_;
    std::map<Key, Rational> t_;
};

// Map coefficients as polynomials in m formal parameters; specialization at a
// parameter point produces a validated RationalMap (the declared-degree and
// nondegeneracy invariants are enforced at that point).
struct ParamFamily {
    int nparams = 1;
    int degree = 1;
    std::vector<MultiPoly> num;  // ascending in z, size degree+1
    std::vector<MultiPoly> den;

    template <class T>
    RationalMap<T> specialize(const std::vector<T>& params) const {
        if (static_cast<int>(params.size()) != nparams) throw DomainMismatch("parameter count mismatch");
        std::vector<T> nc, dc;
        nc.reserve(num.size());
        dc.reserve(den.size());
        for (const auto& c : num) nc.push_back(c.eval(params));
        for (const auto& c : den) dc.push_back(c.eval(params));
        return RationalMap<T>::create(Poly<T>(std::move(nc)), Poly<T>(std::move(dc)), degree);
    }

    MultiPoly partial_num(int z_power, int param) const { return num[static_cast<std::size_t>(z_power)].partial(param); }
};

// Convenience builders for the families exercised in tests and experiments.

// z^2 + c_j within an m-parameter family.
inline ParamFamily quadratic_member(int nparams, int param_index) {
    ParamFamily f;
    f.nparams = nparams;
    f.degree = 2;
    f.num = {MultiPoly::variable(nparams, param_index), MultiPoly::constant(nparams, Rational(0)),
             MultiPoly::constant(nparams, Rational(1))};
    f.den = {MultiPoly::constant(nparams, Rational(1))};
    return f;
}

}  // namespace p1dyn
