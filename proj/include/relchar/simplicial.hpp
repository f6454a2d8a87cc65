#pragma once

// Finite simplicial sets.  A simplex is addressed by its nondegenerate base
// together with a monotone surjection [n] ->> [m] (the degeneracy operator in
// operator form); faces compose with coface injections and re-normalize via
// epi-mono factorization through the stored face tables.

#include "relchar/numbers.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace relchar {

/// Monotone surjection [n] ->> [m] stored by its values (length n+1,
/// starts at 0, steps of 0 or 1, ends at m).  Identity <=> n == m.
using Surj = std::vector<int>;

inline Surj surj_identity(int n) {
    Surj s(n + 1);
    for (int i = 0; i <= n; ++i)
        s[i] = i;
    return s;
}

inline bool surj_is_identity(const Surj& s) {
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        if (s[i] != i)
            return false;
    return true;
}

// outer : [m] ->> [k], inner : [n] ->> [m]  =>  [n] ->> [k]
inline Surj surj_compose(const Surj& outer, const Surj& inner) {
    require(static_cast<int>(outer.size()) == inner.back() + 1, "surj_compose: mismatch");
    Surj r(inner.size());
    for (size_t i = 0; i < inner.size(); ++i)
        r[i] = outer[inner[i]];
    return r;
}

/// Sorted positions i with s(i) = s(i+1); determines s uniquely.
inline std::vector<int> surj_collapse_positions(const Surj& s) {
    std::vector<int> pos;
    for (int i = 0; i + 1 < static_cast<int>(s.size()); ++i)
        if (s[i] == s[i + 1])
            pos.push_back(i);
    return pos;
}

/// Surjection [n] ->> [n - |collapses|] collapsing at the given positions.
inline Surj surj_from_collapses(int n, const std::vector<int>& collapses) {
    Surj s(n + 1);
    s[0] = 0;
    size_t k = 0;
    std::vector<int> sorted = collapses;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
        bool collapse = k < sorted.size() && sorted[k] == i;
        if (collapse)
            ++k;
        s[i + 1] = s[i] + (collapse ? 0 : 1);
    }
    return s;
}

struct SimplexId {
    int degree = 0;
    int index = 0;
    auto operator<=>(const SimplexId&) const = default;
};

/// A (possibly degenerate) simplex: degeneracy operator applied to a
/// nondegenerate base.
struct Cell {
    SimplexId base;
    Surj op; // [dim] ->> [base.degree]

    int dim() const { return static_cast<int>(op.size()) - 1; }
    bool degenerate() const { return dim() != base.degree; }
    auto operator<=>(const Cell&) const = default;
};

inline Cell identity_cell(SimplexId id) { return Cell{id, surj_identity(id.degree)}; }

class SimplicialSet;
using SetPtr = std::shared_ptr<const SimplicialSet>;

/// Finite simplicial set: nondegenerate simplices per degree with face
/// tables.  Instances are immutable after construction; products carry
/// their factor decomposition.
class SimplicialSet : public std::enable_shared_from_this<SimplicialSet> {
  public:
    struct Data {
        std::string name;
        std::vector<std::vector<std::string>> simplex_names;     // per degree
        std::vector<std::vector<std::vector<Cell>>> faces;       // [n][i][k]
    };

    const std::string& name() const { return name_; }
    int top_degree() const { return static_cast<int>(names_.size()) - 1; }

    int count(int degree) const {
        if (degree < 0 || degree > top_degree())
            return 0;
        return static_cast<int>(names_[degree].size());
    }

    int total_count() const {
        int n = 0;
        for (int d = 0; d <= top_degree(); ++d)
            n += count(d);
        return n;
    }

    const std::string& simplex_name(SimplexId id) const { return names_[id.degree][id.index]; }

    std::optional<SimplexId> find(int degree, const std::string& name) const {
        if (degree < 0 || degree > top_degree())
            return std::nullopt;
        for (int i = 0; i < count(degree); ++i)
            if (names_[degree][i] == name)
                return SimplexId{degree, i};
        return std::nullopt;
    }

    /// i-th face of a nondegenerate simplex, as stored.
    const Cell& face(SimplexId id, int i) const {
        require(id.degree >= 1 && i >= 0 && i <= id.degree, "face: bad index");
        return faces_[id.degree][id.index][i];
    }

    /// i-th face of an arbitrary cell: compose with the coface injection and
    /// factor through the face table when a value drops out.
    Cell cell_face(const Cell& cell, int i) const {
        int n = cell.dim();
        require(n >= 1 && i >= 0 && i <= n, "cell_face: bad index");
        const Surj& op = cell.op;
        Surj f(n);
        for (int t = 0; t < n; ++t)
            f[t] = op[t + (t >= i ? 1 : 0)];
        bool left_differs = (i == 0) || (op[i - 1] < op[i]);
        bool right_differs = (i == n) || (op[i] < op[i + 1]);
        if (left_differs && right_differs) {
            // value op[i] lost: f = delta_v . g with g surjective
            int v = op[i];
            Surj g(n);
            for (int t = 0; t < n; ++t)
                g[t] = f[t] - (f[t] > v ? 1 : 0);
            const Cell& bf = face(cell.base, v);
            return Cell{bf.base, surj_compose(bf.op, g)};
        }
        return Cell{cell.base, f};
    }

    /// Restriction of a cell to a sorted subset of its vertex positions
    /// (general monotone-injection precomposition).
    Cell cell_restrict(const Cell& cell, const std::vector<int>& positions) const {
        int m = cell.base.degree;
        std::vector<int> values;
        for (int p : positions)
            values.push_back(cell.op[p]);
        // base restricted to the image values, via descending face maps
        std::vector<bool> present(m + 1, false);
        for (int v : values)
            present[v] = true;
        Cell cur = identity_cell(cell.base);
        for (int v = m; v >= 0; --v)
            if (!present[v])
                cur = cell_face(cur, v);
        // epi part: ranks of the values among the kept ones
        std::vector<int> rank(m + 1, 0);
        int r = 0;
        for (int v = 0; v <= m; ++v) {
            rank[v] = r;
            if (present[v])
                ++r;
        }
        Surj g(values.size());
        for (size_t t = 0; t < values.size(); ++t)
            g[t] = rank[values[t]];
        return Cell{cur.base, surj_compose(cur.op, g)};
    }

    Cell front_face(const Cell& cell, int len) const {
        std::vector<int> pos(len + 1);
        for (int i = 0; i <= len; ++i)
            pos[i] = i;
        return cell_restrict(cell, pos);
    }

    Cell back_face(const Cell& cell, int len) const {
        int n = cell.dim();
        std::vector<int> pos(len + 1);
        for (int i = 0; i <= len; ++i)
            pos[i] = n - len + i;
        return cell_restrict(cell, pos);
    }

    std::string cell_name(const Cell& cell) const {
        if (!cell.degenerate())
            return simplex_name(cell.base);
        std::string s = "s[";
        auto pos = surj_collapse_positions(cell.op);
        for (size_t i = 0; i < pos.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(pos[i]);
        }
        s += "]" + simplex_name(cell.base);
        return s;
    }

    /// d_i d_j = d_{j-1} d_i for i < j on every nondegenerate simplex.
    void validate_identities() const {
        for (int n = 2; n <= top_degree(); ++n)
            for (int idx = 0; idx < count(n); ++idx) {
                Cell c = identity_cell({n, idx});
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i) {
                        Cell lhs = cell_face(cell_face(c, j), i);
                        Cell rhs = cell_face(cell_face(c, i), j - 1);
                        require(lhs == rhs, "simplicial identity d_i d_j = d_{j-1} d_i fails on " +
                                                simplex_name({n, idx}) + " (i=" + std::to_string(i) +
                                                ", j=" + std::to_string(j) + ")");
                    }
            }
    }

    // --- product structure (set when built by product_space) ---
    bool is_product() const { return static_cast<bool>(factor_a_); }
    const SetPtr& factor_a() const { return factor_a_; }
    const SetPtr& factor_b() const { return factor_b_; }
    const std::pair<Cell, Cell>& components(SimplexId id) const {
        require(is_product(), "components: not a product space");
        return components_[id.degree][id.index];
    }
    std::optional<SimplexId> find_pair(int degree, const Cell& a, const Cell& b) const {
        auto it = pair_index_[degree].find(std::make_pair(a, b));
        if (it == pair_index_[degree].end())
            return std::nullopt;
        return SimplexId{degree, it->second};
    }

    static SetPtr create(Data data) {
        auto s = std::shared_ptr<SimplicialSet>(new SimplicialSet(std::move(data)));
        s->validate_identities();
        return s;
    }

  private:
    explicit SimplicialSet(Data data)
        : name_(std::move(data.name)), names_(std::move(data.simplex_names)),
          faces_(std::move(data.faces)) {
        require(names_.size() == faces_.size(), "SimplicialSet: ragged data");
        while (!names_.empty() && names_.back().empty()) {
            names_.pop_back();
            faces_.pop_back();
        }
        for (int n = 0; n <= top_degree(); ++n) {
            require(names_[n].size() == faces_[n].size(), "SimplicialSet: ragged degree data");
            for (int i = 0; i < count(n); ++i) {
                if (n == 0)
                    require(faces_[n][i].empty(), "SimplicialSet: vertex with faces");
                else
                    require(static_cast<int>(faces_[n][i].size()) == n + 1,
                            "SimplicialSet: wrong face count for " + names_[n][i]);
                for (const Cell& f : faces_[n][i]) {
                    require(f.dim() == n - 1, "SimplicialSet: face dimension mismatch");
                    require(f.base.degree <= top_degree() &&
                                f.base.index < count(f.base.degree),
                            "SimplicialSet: face refers to unknown simplex");
                }
            }
        }
    }

    friend SetPtr product_space(const SetPtr&, const SetPtr&);

    std::string name_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::vector<Cell>>> faces_;

    SetPtr factor_a_, factor_b_;
    std::vector<std::vector<std::pair<Cell, Cell>>> components_;
    mutable std::vector<std::map<std::pair<Cell, Cell>, int>> pair_index_;
};

/// Simplicial map: images of nondegenerate simplices (cells in the target,
/// possibly degenerate); commutation with faces is validated.
class SimplicialMap {
  public:
    SimplicialMap(std::string name, SetPtr source, SetPtr target,
                  std::vector<std::vector<Cell>> images)
        : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
          images_(std::move(images)) {
        require(static_cast<int>(images_.size()) >= source_->top_degree() + 1,
                "SimplicialMap: missing image data");
        validate();
    }

    const std::string& name() const { return name_; }
    const SetPtr& source() const { return source_; }
    const SetPtr& target() const { return target_; }

    const Cell& image(SimplexId id) const { return images_[id.degree][id.index]; }

    Cell apply(const Cell& cell) const {
        const Cell& img = image(cell.base);
        return Cell{img.base, surj_compose(img.op, cell.op)};
    }

  private:
    void validate() const {
        for (int n = 0; n <= source_->top_degree(); ++n) {
            require(static_cast<int>(images_[n].size()) == source_->count(n),
                    "SimplicialMap: image count mismatch in degree " + std::to_string(n));
            for (int i = 0; i < source_->count(n); ++i) {
                const Cell& img = images_[n][i];
                require(img.dim() == n, "SimplicialMap: image dimension mismatch");
                require(img.base.degree <= target_->top_degree() &&
                            img.base.index < target_->count(img.base.degree),
                        "SimplicialMap: image refers to unknown simplex");
                if (n >= 1) {
                    Cell c = identity_cell({n, i});
                    for (int k = 0; k <= n; ++k) {
                        Cell lhs = apply(source_->cell_face(c, k));
                        Cell rhs = target_->cell_face(apply(c), k);
                        require(lhs == rhs, "SimplicialMap " + name_ +
                                                ": does not commute with face " +
                                                std::to_string(k) + " of " +
                                                source_->simplex_name({n, i}));
                    }
                }
            }
        }
    }

    std::string name_;
    SetPtr source_, target_;
    std::vector<std::vector<Cell>> images_;
};

using MapPtr = std::shared_ptr<const SimplicialMap>;

inline MapPtr make_map(std::string name, SetPtr source, SetPtr target,
                       std::vector<std::vector<Cell>> images) {
    return std::make_shared<SimplicialMap>(std::move(name), std::move(source), std::move(target),
                                           std::move(images));
}

inline MapPtr identity_map(const SetPtr& s) {
    std::vector<std::vector<Cell>> images(s->top_degree() + 1);
    for (int n = 0; n <= s->top_degree(); ++n)
        for (int i = 0; i < s->count(n); ++i)
            images[n].push_back(identity_cell({n, i}));
    return make_map("id_" + s->name(), s, s, std::move(images));
}

} // namespace relchar
