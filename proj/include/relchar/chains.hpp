#pragma once

// Normalized chains and cochains with integer or rational coefficients,
// and the basic operations: boundary, coboundary, cup product, pairing,
// pushforward/pullback along simplicial maps.

#include "relchar/intmatrix.hpp"
#include "relchar/simplicial.hpp"

#include <map>

namespace relchar {

template <class R> class Chain {
  public:
    Chain() = default;
    Chain(SetPtr space, int degree) : space_(std::move(space)), degree_(degree) {
        require(degree >= 0, "Chain: negative degree");
    }

    const SetPtr& space() const { return space_; }
    int degree() const { return degree_; }
    const std::map<int, R>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    const R& coeff(int index) const {
        static const R zero{};
        auto it = coeffs_.find(index);
        return it == coeffs_.end() ? zero : it->second;
    }

    void add(int index, const R& v) {
        require(index >= 0 && index < space_->count(degree_), "Chain: bad simplex index");
        auto it = coeffs_.find(index);
        if (it == coeffs_.end()) {
            if (v != 0)
                coeffs_[index] = v;
        } else {
            it->second += v;
            if (it->second == 0)
                coeffs_.erase(it);
        }
    }

    Chain& operator+=(const Chain& o) {
        check_compatible(o);
        for (const auto& [i, v] : o.coeffs_)
            add(i, v);
        return *this;
    }
    Chain& operator-=(const Chain& o) {
        check_compatible(o);
        for (const auto& [i, v] : o.coeffs_)
            add(i, -v);
        return *this;
    }
    Chain operator+(const Chain& o) const {
        Chain r = *this;
        r += o;
        return r;
    }
    Chain operator-(const Chain& o) const {
        Chain r = *this;
        r -= o;
        return r;
    }
    Chain operator-() const {
        Chain r = *this;
        for (auto& [i, v] : r.coeffs_)
            v = -v;
        return r;
    }
    Chain operator*(const R& s) const {
        Chain r(space_, degree_);
        if (s != 0)
            for (const auto& [i, v] : coeffs_)
                r.coeffs_[i] = v * s;
        return r;
    }
    bool operator==(const Chain& o) const {
        return space_ == o.space_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    void check_compatible(const Chain& o) const {
        require(space_ == o.space_ && degree_ == o.degree_, "Chain: space/degree mismatch");
    }

  private:
    SetPtr space_;
    int degree_ = 0;
    std::map<int, R> coeffs_;
};

// Cochains have the same data layout; the distinct type keeps variance of
// the operations straight.
template <class R> class Cochain {
  public:
    Cochain() = default;
    Cochain(SetPtr space, int degree) : space_(std::move(space)), degree_(degree) {
        require(degree >= 0, "Cochain: negative degree");
    }

    const SetPtr& space() const { return space_; }
    int degree() const { return degree_; }
    const std::map<int, R>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    const R& coeff(int index) const {
        static const R zero{};
        auto it = coeffs_.find(index);
        return it == coeffs_.end() ? zero : it->second;
    }

    void add(int index, const R& v) {
        require(index >= 0 && index < space_->count(degree_), "Cochain: bad simplex index");
        auto it = coeffs_.find(index);
        if (it == coeffs_.end()) {
            if (v != 0)
                coeffs_[index] = v;
        } else {
            it->second += v;
            if (it->second == 0)
                coeffs_.erase(it);
        }
    }

    /// Value on a cell: zero on degenerate cells (normalized cochains).
    R value_on(const Cell& cell) const {
        if (cell.degenerate())
            return R{};
        return coeff(cell.base.index);
    }

    Cochain& operator+=(const Cochain& o) {
        check_compatible(o);
        for (const auto& [i, v] : o.coeffs_)
            add(i, v);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        check_compatible(o);
        for (const auto& [i, v] : o.coeffs_)
            add(i, -v);
        return *this;
    }
    Cochain operator+(const Cochain& o) const {
        Cochain r = *this;
        r += o;
        return r;
    }
    Cochain operator-(const Cochain& o) const {
        Cochain r = *this;
        r -= o;
        return r;
    }
    Cochain operator-() const {
        Cochain r = *this;
        for (auto& [i, v] : r.coeffs_)
            v = -v;
        return r;
    }
    Cochain operator*(const R& s) const {
        Cochain r(space_, degree_);
        if (s != 0)
            for (const auto& [i, v] : coeffs_)
                r.coeffs_[i] = v * s;
        return r;
    }
    bool operator==(const Cochain& o) const {
        return space_ == o.space_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    void check_compatible(const Cochain& o) const {
        require(space_ == o.space_ && degree_ == o.degree_, "Cochain: space/degree mismatch");
    }

  private:
    SetPtr space_;
    int degree_ = 0;
    std::map<int, R> coeffs_;
};

using ZChain = Chain<Integer>;
using QChain = Chain<Rational>;
using ZCochain = Cochain<Integer>;
using QCochain = Cochain<Rational>;

inline QChain to_rational(const ZChain& c) {
    QChain r(c.space(), c.degree());
    for (const auto& [i, v] : c.coeffs())
        r.add(i, Rational(v));
    return r;
}

inline QCochain to_rational(const ZCochain& c) {
    QCochain r(c.space(), c.degree());
    for (const auto& [i, v] : c.coeffs())
        r.add(i, Rational(v));
    return r;
}

/// Integral cochain from a rational one with integer entries.
inline ZCochain to_integral(const QCochain& c) {
    ZCochain r(c.space(), c.degree());
    for (const auto& [i, v] : c.coeffs()) {
        require(is_integer(v), "to_integral: non-integer coefficient");
        r.add(i, num(v));
    }
    return r;
}

template <class R> Chain<R> simplex_chain(const SetPtr& s, SimplexId id) {
    Chain<R> c(s, id.degree);
    c.add(id.index, R(1));
    return c;
}

template <class R> Cochain<R> indicator_cochain(const SetPtr& s, SimplexId id) {
    Cochain<R> c(s, id.degree);
    c.add(id.index, R(1));
    return c;
}

/// Alternating sum of faces; degenerate faces drop out (normalized chains).
template <class R> Chain<R> boundary(const Chain<R>& c) {
    require(c.degree() >= 1, "boundary: degree must be >= 1");
    const SetPtr& s = c.space();
    Chain<R> b(s, c.degree() - 1);
    for (const auto& [idx, v] : c.coeffs()) {
        for (int i = 0; i <= c.degree(); ++i) {
            const Cell& f = s->face({c.degree(), idx}, i);
            if (f.degenerate())
                continue;
            b.add(f.base.index, i % 2 == 0 ? v : R(-v));
        }
    }
    return b;
}

/// Adjoint of boundary: <coboundary(u), c> = <u, boundary(c)>.
template <class R> Cochain<R> coboundary(const Cochain<R>& u) {
    const SetPtr& s = u.space();
    int n = u.degree();
    Cochain<R> d(s, n + 1);
    if (n + 1 > s->top_degree())
        return d;
    for (int idx = 0; idx < s->count(n + 1); ++idx) {
        R val{};
        for (int i = 0; i <= n + 1; ++i) {
            const Cell& f = s->face({n + 1, idx}, i);
            if (f.degenerate())
                continue;
            R term = u.coeff(f.base.index);
            val += (i % 2 == 0) ? term : R(-term);
        }
        if (val != 0)
            d.add(idx, val);
    }
    return d;
}

/// Kronecker pairing <u, c>, exact rational.
template <class R1, class R2> Rational integrate(const Cochain<R1>& u, const Chain<R2>& c) {
    require(u.space() == c.space() && u.degree() == c.degree(),
            "integrate: space or degree mismatch");
    Rational total = 0;
    for (const auto& [i, v] : c.coeffs()) {
        const R1& w = u.coeff(i);
        if (w != 0)
            total += Rational(w) * Rational(v);
    }
    return total;
}

/// Alexander-Whitney cup product (front face / back face convention);
/// strictly associative and unital.
template <class R> Cochain<R> cup(const Cochain<R>& u, const Cochain<R>& v) {
    require(u.space() == v.space(), "cup: space mismatch");
    const SetPtr& s = u.space();
    int p = u.degree(), q = v.degree();
    Cochain<R> w(s, p + q);
    if (p + q > s->top_degree())
        return w;
    for (int idx = 0; idx < s->count(p + q); ++idx) {
        Cell c = identity_cell({p + q, idx});
        Cell front = s->front_face(c, p);
        if (front.degenerate())
            continue;
        const R& uv = u.coeff(front.base.index);
        if (uv == 0)
            continue;
        Cell back = s->back_face(c, q);
        if (back.degenerate())
            continue;
        const R& vv = v.coeff(back.base.index);
        if (vv == 0)
            continue;
        w.add(idx, uv * vv);
    }
    return w;
}

inline QCochain cup(const QCochain& u, const ZCochain& v) { return cup(u, to_rational(v)); }
inline QCochain cup(const ZCochain& u, const QCochain& v) { return cup(to_rational(u), v); }

/// Constant cochain of degree 0 (the cup unit when value = 1).
template <class R> Cochain<R> constant_cochain(const SetPtr& s, const R& value) {
    Cochain<R> c(s, 0);
    for (int i = 0; i < s->count(0); ++i)
        c.add(i, value);
    return c;
}

template <class R> Chain<R> pushforward(const SimplicialMap& f, const Chain<R>& c) {
    require(c.space() == f.source(), "pushforward: chain not on the source");
    Chain<R> r(f.target(), c.degree());
    for (const auto& [idx, v] : c.coeffs()) {
        Cell img = f.apply(identity_cell({c.degree(), idx}));
        if (!img.degenerate())
            r.add(img.base.index, v);
    }
    return r;
}

template <class R> Cochain<R> pullback(const SimplicialMap& f, const Cochain<R>& u) {
    require(u.space() == f.target(), "pullback: cochain not on the target");
    Cochain<R> r(f.source(), u.degree());
    if (u.degree() > f.source()->top_degree())
        return r;
    for (int idx = 0; idx < f.source()->count(u.degree()); ++idx) {
        Cell img = f.apply(identity_cell({u.degree(), idx}));
        R v = u.value_on(img);
        if (v != 0)
            r.add(idx, v);
    }
    return r;
}

// --- coordinate encodings used by the matrix layer ---

template <class R> IntVec chain_to_vector(const Chain<R>& c) {
    IntVec v(c.space()->count(c.degree()), 0);
    for (const auto& [i, x] : c.coeffs()) {
        if constexpr (std::is_same_v<R, Integer>)
            v[i] = x;
        else {
            require(is_integer(x), "chain_to_vector: non-integer coefficient");
            v[i] = num(x);
        }
    }
    return v;
}

template <class R> RatVec chain_to_rational_vector(const Chain<R>& c) {
    RatVec v(c.space()->count(c.degree()), 0);
    for (const auto& [i, x] : c.coeffs())
        v[i] = Rational(x);
    return v;
}

inline ZChain chain_from_vector(const SetPtr& s, int degree, const IntVec& v) {
    ZChain c(s, degree);
    require(static_cast<int>(v.size()) == s->count(degree), "chain_from_vector: length mismatch");
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] != 0)
            c.add(i, v[i]);
    return c;
}

/// Matrix of the boundary map C_n -> C_{n-1} in the nondegenerate simplex
/// bases.
inline IntMatrix boundary_matrix(const SetPtr& s, int n) {
    IntMatrix m(s->count(n - 1), s->count(n));
    if (n < 1 || n > s->top_degree())
        return m;
    for (int idx = 0; idx < s->count(n); ++idx)
        for (int i = 0; i <= n; ++i) {
            const Cell& f = s->face({n, idx}, i);
            if (f.degenerate())
                continue;
            m.add(f.base.index, idx, i % 2 == 0 ? Integer(1) : Integer(-1));
        }
    return m;
}

} // namespace relchar
