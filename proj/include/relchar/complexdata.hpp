#pragma once

// A finitely generated based chain complex together with lazily computed
// (and cached) Smith-normal-form artifacts per degree: cycle bases,
// homology and integral cohomology presentations, boundary sections.
// The absolute, mapping-cone and quotient complexes all reduce to this.

#include "relchar/chains.hpp"
#include "relchar/fgab.hpp"

#include <mutex>
#include <optional>

namespace relchar {

struct BasedComplex {
    std::vector<int> dims;        // dims[n], n = 0..top
    std::vector<IntMatrix> bnd;   // bnd[n] : C_n -> C_{n-1}; bnd[0] has 0 rows

    int top() const { return static_cast<int>(dims.size()) - 1; }
    int dim(int n) const { return (n < 0 || n > top()) ? 0 : dims[n]; }

    void validate() const {
        require(dims.size() == bnd.size(), "BasedComplex: ragged data");
        for (int n = 0; n <= top(); ++n) {
            require(bnd[n].cols() == dims[n], "BasedComplex: boundary cols mismatch");
            require(bnd[n].rows() == (n == 0 ? 0 : dims[n - 1]),
                    "BasedComplex: boundary rows mismatch");
            if (n >= 1)
                require((bnd[n - 1] * bnd[n]).is_zero(), "BasedComplex: d^2 != 0");
        }
    }
};

class ComplexData {
  public:
    explicit ComplexData(BasedComplex cx) : cx_(std::move(cx)) {
        cx_.validate();
        degree_.resize(cx_.top() + 2);
    }

    ComplexData(const ComplexData&) = delete;
    ComplexData& operator=(const ComplexData&) = delete;

    int top() const { return cx_.top(); }
    int dim(int n) const { return cx_.dim(n); }

    /// Boundary matrix C_n -> C_{n-1} (zero matrices outside [0, top]).
    IntMatrix bnd(int n) const {
        if (n < 0 || n > top())
            return IntMatrix(cx_.dim(n - 1), cx_.dim(n));
        return cx_.bnd[n];
    }

    /// Coboundary matrix C^n -> C^{n+1} (transpose of bnd(n+1)).
    IntMatrix delta(int n) const { return bnd(n + 1).transpose(); }

    const SnfDecomposition& bnd_snf(int n) const {
        return deg(n).snf;
    }

    /// Smith decomposition of delta(n), cached.
    const SnfDecomposition& delta_snf(int n) const {
        DegreeData& d = deg(n + 1);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!d.delta_snf)
            d.delta_snf = smith_normal_form(delta(n));
        return *d.delta_snf;
    }

    /// Smith decomposition of the cycle-basis evaluation matrix of degree n
    /// (rows are the basis cycles), cached.
    const SnfDecomposition& cycle_rows_snf(int n) const {
        DegreeData& d = deg(n);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!d.cycle_rows_snf) {
            const auto& basis = d.cycles;
            IntMatrix e(static_cast<int>(basis.size()), dim(n));
            for (int r = 0; r < static_cast<int>(basis.size()); ++r)
                for (int c = 0; c < dim(n); ++c)
                    if (basis[r][c] != 0)
                        e.set(r, c, basis[r][c]);
            d.cycle_rows_snf = smith_normal_form(e);
        }
        return *d.cycle_rows_snf;
    }

    /// Saturated basis of the cycle group Z_n.
    const std::vector<IntVec>& cycle_basis(int n) const { return deg(n).cycles; }

    const FgAbPresentation& homology(int n) const {
        DegreeData& d = deg(n);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!d.homology)
            d.homology = homology_presentation(bnd(n + 1), bnd(n));
        return *d.homology;
    }

    /// Integral cohomology H^n = ker(delta^n)/im(delta^{n-1}).
    const FgAbPresentation& cohomology(int n) const {
        DegreeData& d = deg(n);
        std::lock_guard<std::mutex> lock(mutex_);
        if (!d.cohomology)
            d.cohomology = homology_presentation(delta(n - 1), delta(n));
        return *d.cohomology;
    }

    bool is_cycle(const IntVec& v, int n) const {
        IntVec img = bnd(n).apply(v);
        for (const auto& x : img)
            if (x != 0)
                return false;
        return true;
    }

    bool is_cocycle_rational(const RatVec& u, int n) const {
        RatVec img = delta(n).apply(u);
        for (const auto& x : img)
            if (x != 0)
                return false;
        return true;
    }

    /// Solve bnd(n) a = y over the integers.
    std::optional<IntVec> boundary_preimage(const IntVec& y, int n) const {
        require(static_cast<int>(y.size()) == dim(n - 1), "boundary_preimage: length mismatch");
        if (dim(n) == 0) {
            for (const auto& v : y)
                if (v != 0)
                    return std::nullopt;
            return IntVec{};
        }
        return solve_diophantine(bnd_snf(n), y);
    }

    /// Pairings of a rational cochain with the cycle basis of degree n.
    RatVec periods(const RatVec& cochain, int n) const {
        require(static_cast<int>(cochain.size()) == dim(n), "periods: length mismatch");
        const auto& basis = cycle_basis(n);
        RatVec p(basis.size(), 0);
        for (size_t i = 0; i < basis.size(); ++i)
            for (int j = 0; j < dim(n); ++j)
                if (basis[i][j] != 0 && cochain[j] != 0)
                    p[i] += Rational(basis[i][j]) * cochain[j];
        return p;
    }

    bool integral_periods(const RatVec& cochain, int n) const {
        for (const auto& p : periods(cochain, n))
            if (!is_integer(p))
                return false;
        return true;
    }

    RatVec apply_delta(const RatVec& u, int n) const { return delta(n).apply(u); }
    IntVec apply_delta(const IntVec& u, int n) const { return delta(n).apply(u); }
    RatVec apply_bnd(const RatVec& v, int n) const { return bnd(n).apply(v); }
    IntVec apply_bnd(const IntVec& v, int n) const { return bnd(n).apply(v); }

  private:
    struct DegreeData {
        bool ready = false;
        SnfDecomposition snf;        // of bnd(n)
        std::vector<IntVec> cycles;  // saturated kernel basis of bnd(n)
        std::optional<FgAbPresentation> homology;
        std::optional<FgAbPresentation> cohomology;
        std::optional<SnfDecomposition> delta_snf;      // of delta(n-1)
        std::optional<SnfDecomposition> cycle_rows_snf; // of the cycle rows
    };

    DegreeData& deg(int n) const {
        require(n >= 0, "ComplexData: negative degree");
        std::lock_guard<std::mutex> lock(deg_mutex_);
        if (n >= static_cast<int>(degree_.size())) {
            // beyond top+1 the complex is zero in every respect
            if (!trivial_.ready) {
                trivial_.snf = smith_normal_form(IntMatrix(0, 0));
                trivial_.ready = true;
            }
            return trivial_;
        }
        DegreeData& d = degree_[n];
        if (!d.ready) {
            d.snf = smith_normal_form(bnd(n));
            d.cycles = kernel_basis(d.snf);
            d.ready = true;
        }
        return d;
    }

    BasedComplex cx_;
    mutable std::vector<DegreeData> degree_;
    mutable DegreeData trivial_;
    mutable std::mutex deg_mutex_;
    mutable std::mutex mutex_;
};

/// The normalized chain complex of a simplicial set as a based complex.
inline BasedComplex simplicial_based_complex(const SetPtr& s, int top_hint = -1) {
    BasedComplex cx;
    int top = std::max(s->top_degree(), top_hint);
    for (int n = 0; n <= top; ++n) {
        cx.dims.push_back(s->count(n));
        cx.bnd.push_back(boundary_matrix(s, n));
    }
    return cx;
}

/// Context for absolute (co)chains on one simplicial set.
struct AbsContext {
    SetPtr space;
    ComplexData data;

    explicit AbsContext(SetPtr s, int top_hint = -1)
        : space(s), data(simplicial_based_complex(s, top_hint)) {}

    static std::shared_ptr<AbsContext> make(const SetPtr& s, int top_hint = -1) {
        return std::make_shared<AbsContext>(s, top_hint);
    }

    template <class R> IntVec encode(const Chain<R>& c) const { return chain_to_vector(c); }

    RatVec encode_rat(const QCochain& u) const {
        RatVec v(space->count(u.degree()), 0);
        for (const auto& [i, x] : u.coeffs())
            v[i] = x;
        return v;
    }

    RatVec encode_rat(const QChain& c) const { return chain_to_rational_vector(c); }

    QCochain decode_cochain(const RatVec& v, int n) const {
        QCochain u(space, n);
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[i] != 0)
                u.add(i, v[i]);
        return u;
    }

    ZChain decode_chain(const IntVec& v, int n) const { return chain_from_vector(space, n, v); }
};

using AbsCtxPtr = std::shared_ptr<AbsContext>;

} // namespace relchar
