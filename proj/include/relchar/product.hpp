#pragma once

// Products of simplicial sets (nondegenerate simplices are pairs of cells
// with disjoint degeneracy words), the Eilenberg-Zilber shuffle map, the
// Alexander-Whitney map, and the canonical structure maps between nested
// products.

#include "relchar/chains.hpp"

#include <functional>

namespace relchar {

namespace detail {

inline void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// All cells of a given dimension in a set: (base, collapse positions).
inline std::vector<Cell> cells_of_dimension(const SetPtr& s, int n) {
    std::vector<Cell> cells;
    for (int m = 0; m <= std::min(n, s->top_degree()); ++m) {
        std::vector<std::vector<int>> words;
        subsets_of_size(n, n - m, words);
        for (int idx = 0; idx < s->count(m); ++idx)
            for (const auto& w : words)
                cells.push_back(Cell{{m, idx}, surj_from_collapses(n, w)});
    }
    return cells;
}

} // namespace detail

inline SetPtr product_space(const SetPtr& a, const SetPtr& b) {
    SimplicialSet::Data data;
    data.name = "(" + a->name() + "x" + b->name() + ")";
    int top = a->top_degree() + b->top_degree();
    std::vector<std::vector<std::pair<Cell, Cell>>> components(top + 1);
    data.simplex_names.resize(top + 1);
    data.faces.resize(top + 1);

    for (int n = 0; n <= top; ++n) {
        auto cells_a = detail::cells_of_dimension(a, n);
        auto cells_b = detail::cells_of_dimension(b, n);
        for (const Cell& ca : cells_a) {
            auto col_a = surj_collapse_positions(ca.op);
            for (const Cell& cb : cells_b) {
                auto col_b = surj_collapse_positions(cb.op);
                bool disjoint = true;
                for (int p : col_a)
                    if (std::find(col_b.begin(), col_b.end(), p) != col_b.end()) {
                        disjoint = false;
                        break;
                    }
                if (!disjoint)
                    continue;
                data.simplex_names[n].push_back("(" + a->cell_name(ca) + "|" + b->cell_name(cb) +
                                                ")");
                components[n].push_back({ca, cb});
            }
        }
    }

    // build the object first (without faces), register the pair index, then
    // compute faces through the factor face tables
    auto set = std::shared_ptr<SimplicialSet>(new SimplicialSet([&] {
        SimplicialSet::Data d = data;
        for (int n = 0; n <= top; ++n)
            d.faces[n].resize(d.simplex_names[n].size());
        for (int n = 1; n <= top; ++n)
            for (auto& f : d.faces[n])
                f.assign(n + 1, Cell{{0, 0}, Surj(n, 0)});
        return d;
    }()));
    set->factor_a_ = a;
    set->factor_b_ = b;
    set->components_ = components;
    set->pair_index_.resize(top + 1);
    for (int n = 0; n <= top; ++n)
        for (int i = 0; i < static_cast<int>(components[n].size()); ++i)
            set->pair_index_[n][components[n][i]] = i;

    // faces: componentwise face, then collapse the common degeneracies
    int ptop = set->top_degree();
    for (int n = 1; n <= ptop; ++n)
        for (int i = 0; i < static_cast<int>(components[n].size()); ++i) {
            const auto& [ca, cb] = components[n][i];
            for (int k = 0; k <= n; ++k) {
                Cell fa = a->cell_face(ca, k);
                Cell fb = b->cell_face(cb, k);
                // normalize the pair inside the product
                std::vector<int> common;
                auto pa = surj_collapse_positions(fa.op);
                auto pb = surj_collapse_positions(fb.op);
                for (int p : pa)
                    if (std::find(pb.begin(), pb.end(), p) != pb.end())
                        common.push_back(p);
                Surj tau = surj_from_collapses(n - 1, common);
                int r = tau.back();
                Surj oa(r + 1), ob(r + 1);
                for (int t = 0; t < n; ++t) {
                    oa[tau[t]] = fa.op[t];
                    ob[tau[t]] = fb.op[t];
                }
                auto it = set->pair_index_[r].find(
                    std::make_pair(Cell{fa.base, oa}, Cell{fb.base, ob}));
                require(it != set->pair_index_[r].end(), "product_space: missing face pair");
                set->faces_[n][i][k] = Cell{{r, it->second}, tau};
            }
        }
    set->validate_identities();
    return set;
}

/// The cell of the product corresponding to a pair of equidimensional cells
/// in the factors (collapsing their common degeneracies).
inline Cell pair_cell(const SetPtr& prod, const Cell& ca, const Cell& cb) {
    require(prod->is_product(), "pair_cell: not a product space");
    require(ca.dim() == cb.dim(), "pair_cell: dimension mismatch");
    int n = ca.dim();
    auto pa = surj_collapse_positions(ca.op);
    auto pb = surj_collapse_positions(cb.op);
    std::vector<int> common;
    for (int p : pa)
        if (std::find(pb.begin(), pb.end(), p) != pb.end())
            common.push_back(p);
    Surj tau = surj_from_collapses(n, common);
    int r = tau.back();
    Surj oa(r + 1), ob(r + 1);
    for (int t = 0; t <= n; ++t) {
        oa[tau[t]] = ca.op[t];
        ob[tau[t]] = cb.op[t];
    }
    auto id = prod->find_pair(r, Cell{ca.base, oa}, Cell{cb.base, ob});
    require(id.has_value(), "pair_cell: pair not found in product");
    return Cell{*id, tau};
}

/// Factor components of an arbitrary cell of a product.
inline std::pair<Cell, Cell> component_cells(const SetPtr& prod, const Cell& cell) {
    const auto& [ca, cb] = prod->components(cell.base);
    return {Cell{ca.base, surj_compose(ca.op, cell.op)},
            Cell{cb.base, surj_compose(cb.op, cell.op)}};
}

// --- tensors -----------------------------------------------------------

/// Formal sum of x (x) y with x, y nondegenerate simplices of the two
/// factors; bidegrees may be mixed.
template <class R> class Tensor {
  public:
    using Key = std::pair<SimplexId, SimplexId>;

    Tensor() = default;
    Tensor(SetPtr a, SetPtr b) : a_(std::move(a)), b_(std::move(b)) {}

    const SetPtr& space_a() const { return a_; }
    const SetPtr& space_b() const { return b_; }
    const std::map<Key, R>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(SimplexId x, SimplexId y, const R& v) {
        Key k{x, y};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (v != 0)
                terms_[k] = v;
        } else {
            it->second += v;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Tensor operator+(const Tensor& o) const {
        Tensor r = *this;
        for (const auto& [k, v] : o.terms_)
            r.add(k.first, k.second, v);
        return r;
    }
    Tensor operator-(const Tensor& o) const {
        Tensor r = *this;
        for (const auto& [k, v] : o.terms_)
            r.add(k.first, k.second, -v);
        return r;
    }
    bool operator==(const Tensor& o) const { return terms_ == o.terms_; }

    /// Tensor-complex boundary: d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy.
    Tensor boundary() const {
        Tensor r(a_, b_);
        for (const auto& [k, v] : terms_) {
            const auto& [x, y] = k;
            if (x.degree >= 1) {
                Chain<R> bx = relchar::boundary(simplex_chain<R>(a_, x));
                for (const auto& [i, w] : bx.coeffs())
                    r.add({x.degree - 1, i}, y, v * w);
            }
            if (y.degree >= 1) {
                Chain<R> by = relchar::boundary(simplex_chain<R>(b_, y));
                R sign = (x.degree % 2 == 0) ? R(1) : R(-1);
                for (const auto& [i, w] : by.coeffs())
                    r.add(x, {y.degree - 1, i}, v * w * sign);
            }
        }
        return r;
    }

  private:
    SetPtr a_, b_;
    std::map<Key, R> terms_;
};

using ZTensor = Tensor<Integer>;
using QTensor = Tensor<Rational>;

template <class R>
Tensor<R> tensor_of(const Chain<R>& x, const Chain<R>& y) {
    Tensor<R> t(x.space(), y.space());
    for (const auto& [i, v] : x.coeffs())
        for (const auto& [j, w] : y.coeffs())
            t.add({x.degree(), i}, {y.degree(), j}, v * w);
    return t;
}

/// Eilenberg-Zilber shuffle map into the product.  The summand for the
/// shuffle placing y-steps at positions nu carries the sign of the shuffle
/// permutation (inversion parity).
template <class R> Chain<R> ez(const SetPtr& prod, const Tensor<R>& t) {
    require(prod->is_product(), "ez: target is not a product space");
    require(t.space_a() == prod->factor_a() && t.space_b() == prod->factor_b(),
            "ez: factor mismatch");
    Chain<R> result;
    int total_degree = -1;
    for (const auto& [k, v] : t.terms()) {
        const auto& [x, y] = k;
        int p = x.degree, q = y.degree;
        int n = p + q;
        if (total_degree == -1) {
            total_degree = n;
            result = Chain<R>(prod, n);
        }
        require(n == total_degree, "ez: mixed total degree");
        std::vector<std::vector<int>> nus;
        detail::subsets_of_size(n, q, nus);
        for (const auto& nu : nus) {
            std::vector<int> mu;
            {
                size_t k2 = 0;
                for (int i = 0; i < n; ++i) {
                    if (k2 < nu.size() && nu[k2] == i)
                        ++k2;
                    else
                        mu.push_back(i);
                }
            }
            int inversions = 0;
            for (int r : mu)
                for (int u : nu)
                    if (u < r)
                        ++inversions;
            Cell ca{x, surj_from_collapses(n, nu)};
            Cell cb{y, surj_from_collapses(n, mu)};
            auto id = prod->find_pair(n, ca, cb);
            require(id.has_value(), "ez: shuffle pair missing");
            result.add(id->index, inversions % 2 == 0 ? v : R(-v));
        }
    }
    if (total_degree == -1)
        return Chain<R>(prod, 0);
    return result;
}

/// Alexander-Whitney map: front face (x) back face, degenerate factors
/// dropped.
template <class R> Tensor<R> aw(const Chain<R>& c) {
    const SetPtr& prod = c.space();
    require(prod->is_product(), "aw: chain not on a product space");
    Tensor<R> t(prod->factor_a(), prod->factor_b());
    const SetPtr& a = prod->factor_a();
    const SetPtr& b = prod->factor_b();
    int n = c.degree();
    for (const auto& [idx, v] : c.coeffs()) {
        const auto& [ca, cb] = prod->components({n, idx});
        for (int i = 0; i <= n; ++i) {
            Cell front = a->front_face(ca, i);
            if (front.degenerate())
                continue;
            Cell back = b->back_face(cb, n - i);
            if (back.degenerate())
                continue;
            t.add(front.base, back.base, v);
        }
    }
    return t;
}

/// Cochain cross product (u x v)(c) := (u (x) v)(aw c).
template <class R>
Cochain<R> cross_cochain(const SetPtr& prod, const Cochain<R>& u, const Cochain<R>& v) {
    require(prod->is_product() && u.space() == prod->factor_a() && v.space() == prod->factor_b(),
            "cross_cochain: factor mismatch");
    int n = u.degree() + v.degree();
    Cochain<R> w(prod, n);
    if (n > prod->top_degree())
        return w;
    const SetPtr& a = prod->factor_a();
    const SetPtr& b = prod->factor_b();
    for (int idx = 0; idx < prod->count(n); ++idx) {
        const auto& [ca, cb] = prod->components({n, idx});
        Cell front = a->front_face(ca, u.degree());
        if (front.degenerate())
            continue;
        const R& uv = u.coeff(front.base.index);
        if (uv == 0)
            continue;
        Cell back = b->back_face(cb, v.degree());
        if (back.degenerate())
            continue;
        const R& vv = v.coeff(back.base.index);
        if (vv == 0)
            continue;
        w.add(idx, uv * vv);
    }
    return w;
}

// --- structure maps between products -----------------------------------

/// f x g : A x B -> A' x B' on nondegenerate simplices.
inline MapPtr product_map(const std::string& name, const MapPtr& f, const MapPtr& g,
                          const SetPtr& src_prod, const SetPtr& dst_prod) {
    require(src_prod->is_product() && dst_prod->is_product(), "product_map: need products");
    require(src_prod->factor_a() == f->source() && src_prod->factor_b() == g->source() &&
                dst_prod->factor_a() == f->target() && dst_prod->factor_b() == g->target(),
            "product_map: factor mismatch");
    std::vector<std::vector<Cell>> images(src_prod->top_degree() + 1);
    for (int n = 0; n <= src_prod->top_degree(); ++n)
        for (int i = 0; i < src_prod->count(n); ++i) {
            const auto& [ca, cb] = src_prod->components({n, i});
            images[n].push_back(pair_cell(dst_prod, f->apply(ca), g->apply(cb)));
        }
    return make_map(name, src_prod, dst_prod, std::move(images));
}

inline MapPtr projection_first(const SetPtr& prod) {
    std::vector<std::vector<Cell>> images(prod->top_degree() + 1);
    for (int n = 0; n <= prod->top_degree(); ++n)
        for (int i = 0; i < prod->count(n); ++i)
            images[n].push_back(prod->components({n, i}).first);
    return make_map("pr1_" + prod->name(), prod, prod->factor_a(), std::move(images));
}

inline MapPtr projection_second(const SetPtr& prod) {
    std::vector<std::vector<Cell>> images(prod->top_degree() + 1);
    for (int n = 0; n <= prod->top_degree(); ++n)
        for (int i = 0; i < prod->count(n); ++i)
            images[n].push_back(prod->components({n, i}).second);
    return make_map("pr2_" + prod->name(), prod, prod->factor_b(), std::move(images));
}

/// X -> X x PT for a one-point set PT (section of the projection).
inline MapPtr point_factor_section(const SetPtr& x, const SetPtr& prod) {
    require(prod->is_product() && prod->factor_a() == x, "point_factor_section: shape mismatch");
    require(prod->factor_b()->total_count() == 1, "point_factor_section: second factor not a point");
    std::vector<std::vector<Cell>> images(x->top_degree() + 1);
    for (int n = 0; n <= x->top_degree(); ++n)
        for (int i = 0; i < x->count(n); ++i) {
            Cell pt{{0, 0}, Surj(n + 1, 0)};
            images[n].push_back(pair_cell(prod, identity_cell({n, i}), pt));
        }
    return make_map(x->name() + "_to_" + prod->name(), x, prod, std::move(images));
}

/// swap : A x B -> B x A.
inline MapPtr swap_map(const SetPtr& ab, const SetPtr& ba) {
    require(ab->is_product() && ba->is_product() && ab->factor_a() == ba->factor_b() &&
                ab->factor_b() == ba->factor_a(),
            "swap_map: shape mismatch");
    std::vector<std::vector<Cell>> images(ab->top_degree() + 1);
    for (int n = 0; n <= ab->top_degree(); ++n)
        for (int i = 0; i < ab->count(n); ++i) {
            const auto& [ca, cb] = ab->components({n, i});
            images[n].push_back(pair_cell(ba, cb, ca));
        }
    return make_map("swap", ab, ba, std::move(images));
}

/// (A x B) x C  ->  A x (B x C).
inline MapPtr assoc_map(const SetPtr& ab_c, const SetPtr& a_bc) {
    require(ab_c->is_product() && a_bc->is_product(), "assoc_map: need products");
    const SetPtr& ab = ab_c->factor_a();
    const SetPtr& bc = a_bc->factor_b();
    require(ab->is_product() && bc->is_product() && ab->factor_a() == a_bc->factor_a() &&
                ab->factor_b() == bc->factor_a() && ab_c->factor_b() == bc->factor_b(),
            "assoc_map: factor mismatch");
    std::vector<std::vector<Cell>> images(ab_c->top_degree() + 1);
    for (int n = 0; n <= ab_c->top_degree(); ++n)
        for (int i = 0; i < ab_c->count(n); ++i) {
            const auto& [cab, cc] = ab_c->components({n, i});
            auto [ca, cb] = component_cells(ab, cab);
            images[n].push_back(pair_cell(a_bc, ca, pair_cell(bc, cb, cc)));
        }
    return make_map("assoc", ab_c, a_bc, std::move(images));
}

/// (A x B) x (C x D)  ->  (A x C) x (B x D): the middle-factor interchange
/// used to compare fiber products with products of bundles.
inline MapPtr interchange_map(const SetPtr& src, const SetPtr& dst) {
    require(src->is_product() && dst->is_product(), "interchange_map: need products");
    const SetPtr& ab = src->factor_a();
    const SetPtr& cd = src->factor_b();
    const SetPtr& ac = dst->factor_a();
    const SetPtr& bd = dst->factor_b();
    require(ab->is_product() && cd->is_product() && ac->is_product() && bd->is_product(),
            "interchange_map: need nested products");
    require(ab->factor_a() == ac->factor_a() && ab->factor_b() == bd->factor_a() &&
                cd->factor_a() == ac->factor_b() && cd->factor_b() == bd->factor_b(),
            "interchange_map: factor mismatch");
    std::vector<std::vector<Cell>> images(src->top_degree() + 1);
    for (int n = 0; n <= src->top_degree(); ++n)
        for (int i = 0; i < src->count(n); ++i) {
            const auto& [cab, ccd] = src->components({n, i});
            auto [ca, cb] = component_cells(ab, cab);
            auto [cc, cd_cell] = component_cells(cd, ccd);
            images[n].push_back(
                pair_cell(dst, pair_cell(ac, ca, cc), pair_cell(bd, cb, cd_cell)));
        }
    return make_map("interchange", src, dst, std::move(images));
}

} // namespace relchar
