#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace hcol {

/// Variable y_v[i]: coordinate i (1-based) of the vector attached to vertex v.
struct PolyVar {
    Vertex vertex;
    int coord;

    bool operator==(const PolyVar&) const = default;
    auto operator<=>(const PolyVar&) const = default;
};

/// Multilinear monomial: sorted variables with pairwise distinct vertices and
/// pairwise distinct coordinates.
class MonomialKey {
public:
    MonomialKey() = default;
    explicit MonomialKey(std::vector<PolyVar> vars) : vars_(std::move(vars))
    {
        std::sort(vars_.begin(), vars_.end());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                require(vars_[i].vertex != vars_[j].vertex && vars_[i].coord != vars_[j].coord, "monomial: vertices and coordinates must be pairwise distinct");
    }

    const std::vector<PolyVar>& vars() const { return vars_; }
    std::size_t degree() const { return vars_.size(); }

    bool operator==(const MonomialKey&) const = default;
    auto operator<=>(const MonomialKey&) const = default;

private:
    std::vector<PolyVar> vars_;
};

/// Sparse polynomial; zero coefficients are never stored.
class SparsePoly {
public:
    explicit SparsePoly(FieldSpec f) : f_(std::move(f)) {}

    const FieldSpec& field() const { return f_; }
    const std::map<MonomialKey, FieldElement>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MonomialKey& key, FieldElement c)
    {
        if (!terms_.empty())
            require(terms_.begin()->first.degree() == key.degree(), "poly: all monomials must share one degree");
        auto [it, inserted] = terms_.emplace(key, c);
        if (!inserted)
            it->second = f_->add(it->second, c);
        if (f_->is_zero(it->second))
            terms_.erase(it);
    }

    SparsePoly scaled(FieldElement c) const
    {
        SparsePoly out(f_);
        if (f_->is_zero(c))
            return out;
        for (const auto& [k, v] : terms_)
            out.terms_.emplace(k, f_->mul(v, c));
        return out;
    }

    SparsePoly operator+(const SparsePoly& o) const
    {
        SparsePoly out = *this;
        for (const auto& [k, v] : o.terms_)
            out.add_term(k, v);
        return out;
    }

    bool operator==(const SparsePoly& o) const { return *f_ == *o.f_ && terms_ == o.terms_; }

    /// Evaluates with value(v, i) supplying y_v[i].
    FieldElement evaluate(const std::function<FieldElement(Vertex, int)>& value) const
    {
        FieldElement sum = f_->zero();
        for (const auto& [k, c] : terms_) {
            FieldElement t = c;
            for (const auto& var : k.vars())
                t = f_->mul(t, value(var.vertex, var.coord));
            sum = f_->add(sum, t);
        }
        return sum;
    }

private:
    FieldSpec f_;
    std::map<MonomialKey, FieldElement> terms_;
};

/// Symbolic determinant of the d x d matrix whose column c belongs to s[c], with
/// first row all ones and entry (i, c) = y_{s[c]}[i] for rows i = 2..d. Expanded
/// by Leibniz: the column used by row 1 is the one left over, so each of the d!
/// permutations contributes one distinct monomial of degree d-1.
inline SparsePoly det_poly(const std::vector<Vertex>& s, int d, const FieldSpec& f)
{
    require(d >= 1, "det_poly: d must be positive");
    require(static_cast<int>(s.size()) == d, "det_poly: need exactly d vertices");
    {
        auto sorted = s;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "det_poly: duplicate vertex");
    }
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    SparsePoly out(f);
    do {
        // sign via inversion count
        int inversions = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        std::vector<PolyVar> vars;
        for (int row = 1; row < d; ++row)
            vars.push_back({s[perm[row]], row + 1});
        out.add_term(MonomialKey(std::move(vars)), inversions % 2 ? f->neg(f->one()) : f->one());
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Outcome of greedy basis selection. coordinates[i] is set for every dropped
/// input i and expresses it in the kept polynomials (same order as kept).
struct BasisSelection {
    std::vector<std::size_t> kept;
    std::vector<std::optional<FieldVector>> coordinates;

    std::size_t dropped_count() const
    {
        return static_cast<std::size_t>(std::count_if(coordinates.begin(), coordinates.end(), [](const auto& c) { return c.has_value(); }));
    }
};

/// Keeps each polynomial iff it is not in the span of those kept before it.
/// Incremental sparse elimination over the monomials seen so far; each pivot row
/// also tracks its expression in the kept inputs so dropped inputs come with
/// exact coordinates.
inline BasisSelection poly_basis_select(const std::vector<SparsePoly>& polys)
{
    BasisSelection out;
    out.coordinates.resize(polys.size());
    if (polys.empty())
        return out;
    const FieldSpec f = polys.front().field();
    const Field& F = *f;

    std::map<MonomialKey, std::size_t> column;
    for (const auto& p : polys) {
        require(*p.field() == F, "poly_basis_select: polynomials over different fields");
        for (const auto& [k, c] : p.terms())
            column.emplace(k, 0);
    }
    {
        std::size_t i = 0;
        for (auto& [k, idx] : column)
            idx = i++;
    }
    const std::size_t ncols = column.size();

    struct PivotRow {
        std::vector<std::pair<std::size_t, FieldElement>> entries; // sorted, leading entry 1
        FieldVector combo;                                        // over kept inputs
    };
    std::vector<std::optional<std::size_t>> pivot_at(ncols);
    std::vector<PivotRow> rows;

    FieldVector work(ncols, F.zero());
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        std::fill(work.begin(), work.end(), F.zero());
        for (const auto& [k, c] : polys[pi].terms())
            work[column.at(k)] = c;
        FieldVector subtracted(out.kept.size() + 1, F.zero()); // sum of c_r * combo_r
        std::size_t lead = ncols;
        // Columns only grow during elimination, so scanning upward is enough.
        for (std::size_t col = 0; col < ncols; ++col) {
            if (F.is_zero(work[col]))
                continue;
            if (!pivot_at[col]) {
                lead = col;
                break;
            }
            const PivotRow& r = rows[*pivot_at[col]];
            const FieldElement c = work[col];
            for (const auto& [j, v] : r.entries)
                work[j] = F.sub(work[j], F.mul(c, v));
            for (std::size_t j = 0; j < r.combo.size(); ++j)
                subtracted[j] = F.add(subtracted[j], F.mul(c, r.combo[j]));
        }
        if (lead == ncols) {
            subtracted.resize(out.kept.size());
            out.coordinates[pi] = std::move(subtracted);
            continue;
        }
        // New basis element: row = p - sum, combo = e_new - subtracted.
        const std::size_t kept_index = out.kept.size();
        out.kept.push_back(pi);
        PivotRow row;
        const FieldElement inv = F.inv(work[lead]);
        for (std::size_t col = lead; col < ncols; ++col)
            if (!F.is_zero(work[col]))
                row.entries.emplace_back(col, F.mul(work[col], inv));
        row.combo.assign(kept_index + 1, F.zero());
        for (std::size_t j = 0; j < kept_index; ++j)
            row.combo[j] = F.mul(F.neg(subtracted[j]), inv);
        row.combo[kept_index] = inv;
        pivot_at[lead] = rows.size();
        rows.push_back(std::move(row));
        for (auto& r : rows)
            r.combo.resize(kept_index + 1, F.zero());
    }
    for (auto& c : out.coordinates)
        if (c)
            c->resize(out.kept.size(), F.zero());
    return out;
}

/// Rebuilds sum_j coords[j] * polys[kept[j]].
inline SparsePoly reconstruct(const std::vector<SparsePoly>& polys, const std::vector<std::size_t>& kept, const FieldVector& coords)
{
    require(!polys.empty() && coords.size() == kept.size(), "reconstruct: coordinate count mismatch");
    SparsePoly acc(polys.front().field());
    for (std::size_t j = 0; j < kept.size(); ++j)
        acc = acc + polys[kept[j]].scaled(coords[j]);
    return acc;
}

} // namespace hcol
