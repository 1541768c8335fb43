#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "config.hpp"
#include "error.hpp"

namespace hcol {

/// Element of GF(p^m), encoded as the integer sum c_i p^i of its coefficient
/// vector over the polynomial basis 1, x, ..., x^{m-1}. Only meaningful together
/// with the Field that produced it.
struct FieldElement {
    std::uint32_t code = 0;

    bool operator==(const FieldElement&) const = default;
    auto operator<=>(const FieldElement&) const = default;
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace detail {

using Poly = std::vector<std::uint32_t>; // coefficients, lowest degree first

inline void poly_trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        const std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_tuple(nt, t - q * nt);
        std::tie(r, nr) = std::make_tuple(nr, r - q * nr);
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint32_t>(t);
}

/// Remainder of a modulo b over GF(p); b must have a nonzero leading coefficient.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    poly_trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t f = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * b[i]) % p);
        poly_trim(a);
    }
    return a;
}

inline Poly poly_from_code(std::uint64_t code, std::uint32_t p, std::size_t len)
{
    Poly out(len);
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return out;
}

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p)
{
    const std::size_t m = f.size() - 1;
    if (m <= 1)
        return m == 1;
    for (std::size_t d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g = poly_from_code(code, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty())
                return false;
        }
    }
    return true;
}

} // namespace detail

/// Finite field GF(p^m) defined by a monic irreducible modulus of degree m.
/// Immutable and shared by pointer.
class Field {
public:
    static constexpr std::uint64_t max_order = std::uint64_t{1} << 31;
    static constexpr std::uint64_t table_order = std::uint64_t{1} << 20;

    /// irreducible: coefficients c_0..c_{m-1} of the monic degree-m modulus
    /// (leading 1 implied). Verified irreducible.
    Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> irreducible) : p_(p), m_(m), irr_(std::move(irreducible))
    {
        require(is_prime(p), "field: characteristic " + std::to_string(p) + " is not prime");
        require(m >= 1, "field: degree must be positive");
        require(irr_.size() == m, "field: modulus must have exactly m low-order coefficients");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            require(q < max_order, "field: order p^m too large");
        }
        order_ = static_cast<std::uint32_t>(q);
        for (auto c : irr_)
            require(c < p, "field: modulus coefficient out of range");
        detail::Poly f = irr_;
        f.push_back(1);
        require(detail::is_irreducible(f, p), "field: modulus is not irreducible");
        pow_.resize(m + 1);
        pow_[0] = 1;
        for (std::uint32_t i = 1; i <= m; ++i)
            pow_[i] = pow_[i - 1] * p;
        if (m > 1 && order_ <= table_order)
            build_tables();
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    std::uint32_t order() const { return order_; }
    const std::vector<std::uint32_t>& modulus() const { return irr_; }

    bool operator==(const Field& o) const { return p_ == o.p_ && m_ == o.m_ && irr_ == o.irr_; }

    std::string name() const { return m_ == 1 ? "GF(" + std::to_string(p_) + ")" : "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")"; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }

    /// Image of an integer in the prime subfield.
    FieldElement from_int(long long z) const
    {
        long long r = z % static_cast<long long>(p_);
        if (r < 0)
            r += p_;
        return {static_cast<std::uint32_t>(r)};
    }

    /// The i-th element of the canonical enumeration (code order).
    FieldElement element(std::uint64_t i) const
    {
        require(i < order_, "field: element index out of range");
        return {static_cast<std::uint32_t>(i)};
    }

    std::vector<std::uint32_t> coeffs(FieldElement a) const { return detail::poly_from_code(a.code, p_, m_); }

    FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const
    {
        require(c.size() == m_, "field: coefficient vector must have length m");
        std::uint64_t code = 0;
        for (std::size_t i = m_; i-- > 0;) {
            require(c[i] < p_, "field: coefficient out of range");
            code = code * p_ + c[i];
        }
        return {static_cast<std::uint32_t>(code)};
    }

    bool is_zero(FieldElement a) const { return a.code == 0; }

    FieldElement add(FieldElement a, FieldElement b) const
    {
        if (m_ == 1)
            return {static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % p_)};
        if (p_ == 2)
            return {a.code ^ b.code};
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            const std::uint32_t da = a.code / pow_[i] % p_;
            const std::uint32_t db = b.code / pow_[i] % p_;
            out += (da + db) % p_ * pow_[i];
        }
        return {out};
    }

    FieldElement neg(FieldElement a) const
    {
        if (m_ == 1)
            return {a.code == 0 ? 0 : p_ - a.code};
        if (p_ == 2)
            return a;
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < m_; ++i) {
            const std::uint32_t d = a.code / pow_[i] % p_;
            out += (d == 0 ? 0 : p_ - d) * pow_[i];
        }
        return {out};
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const
    {
        if (a.code == 0 || b.code == 0)
            return {0};
        if (m_ == 1)
            return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
        if (!exp_.empty()) {
            const std::uint32_t s = log_[a.code] + log_[b.code];
            return {exp_[s >= order_ - 1 ? s - (order_ - 1) : s]};
        }
        return slow_mul(a, b);
    }

    FieldElement inv(FieldElement a) const
    {
        require(a.code != 0, "field: inverse of zero");
        if (m_ == 1)
            return {detail::inv_mod(a.code, p_)};
        if (!exp_.empty()) {
            const std::uint32_t l = log_[a.code];
            return {exp_[l == 0 ? 0 : order_ - 1 - l]};
        }
        return pow(a, order_ - 2);
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    FieldElement pow(FieldElement a, std::uint64_t e) const
    {
        FieldElement r = one();
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// The class of x in GF(p)[x]/(f); a root of the modulus.
    FieldElement generator_x() const { return m_ == 1 ? FieldElement{0} : FieldElement{p_}; }

    std::string to_string(FieldElement a) const
    {
        if (m_ == 1)
            return std::to_string(a.code);
        std::string s = "[";
        const auto c = coeffs(a);
        for (std::size_t i = 0; i < c.size(); ++i)
            s += (i ? "," : "") + std::to_string(c[i]);
        return s + "]";
    }

private:
    FieldElement slow_mul(FieldElement a, FieldElement b) const
    {
        const auto pa = coeffs(a);
        const auto pb = coeffs(b);
        detail::Poly prod(2 * m_ - 1, 0);
        for (std::uint32_t i = 0; i < m_; ++i)
            for (std::uint32_t j = 0; j < m_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % p_);
        detail::Poly f = irr_;
        f.push_back(1);
        auto r = detail::poly_mod(std::move(prod), f, p_);
        r.resize(m_, 0);
        return from_coeffs(r);
    }

    void build_tables()
    {
        // Smallest primitive element by code, then log/antilog tables.
        const std::uint32_t n = order_ - 1;
        std::vector<std::uint32_t> primes;
        std::uint32_t rest = n;
        for (std::uint32_t d = 2; d * d <= rest; ++d)
            if (rest % d == 0) {
                primes.push_back(d);
                while (rest % d == 0)
                    rest /= d;
            }
        if (rest > 1)
            primes.push_back(rest);
        auto slow_pow = [&](FieldElement a, std::uint64_t e) {
            FieldElement r = one();
            while (e) {
                if (e & 1)
                    r = slow_mul(r, a);
                a = slow_mul(a, a);
                e >>= 1;
            }
            return r;
        };
        FieldElement g{0};
        for (std::uint32_t c = 2; c < order_; ++c) {
            bool primitive = true;
            for (auto r : primes)
                if (slow_pow({c}, n / r) == one()) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                g = {c};
                break;
            }
        }
        if (g.code == 0)
            throw InvariantViolation("field: no primitive element found");
        exp_.resize(n);
        log_.assign(order_, 0);
        FieldElement cur = one();
        for (std::uint32_t i = 0; i < n; ++i) {
            exp_[i] = cur.code;
            log_[cur.code] = i;
            cur = slow_mul(cur, g);
        }
    }

    std::uint32_t p_;
    std::uint32_t m_;
    std::vector<std::uint32_t> irr_;
    std::uint32_t order_ = 0;
    std::vector<std::uint32_t> pow_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

using FieldSpec = std::shared_ptr<const Field>;

/// GF(p^m) with the first monic irreducible modulus in lexicographic order of
/// its coefficients (highest non-leading coefficient most significant).
inline FieldSpec field_make(std::uint32_t p, std::uint32_t m, const Ceilings& c = default_ceilings())
{
    require(is_prime(p), "field_make: " + std::to_string(p) + " is not prime");
    require(m >= 1, "field_make: degree must be positive");
    check_ceiling(m, c.field_degree, "field_make degree");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        count *= p;
        if (count >= Field::max_order)
            throw CeilingExceeded("field_make: order " + std::to_string(p) + "^" + std::to_string(m) + " too large");
    }
    for (std::uint64_t code = 0; code < count; ++code) {
        auto low = detail::poly_from_code(code, p, m);
        auto f = low;
        f.push_back(1);
        if (detail::is_irreducible(f, p))
            return std::make_shared<const Field>(p, m, std::move(low));
    }
    throw InvariantViolation("field_make: no irreducible polynomial found");
}

/// Inclusion of a base field into an extension of the same characteristic.
class FieldEmbedding {
public:
    FieldEmbedding(FieldSpec base, FieldSpec ext) : base_(std::move(base)), ext_(std::move(ext))
    {
        require(base_->characteristic() == ext_->characteristic(), "embedding: characteristics differ");
        require(ext_->degree() % base_->degree() == 0, "embedding: degree does not divide");
        // Find the smallest root of the base modulus in the extension.
        const auto& irr = base_->modulus();
        bool found = false;
        for (std::uint64_t i = 0; i < ext_->order() && !found; ++i) {
            const FieldElement r = ext_->element(i);
            FieldElement acc = ext_->one(); // leading coefficient
            for (std::size_t k = irr.size(); k-- > 0;)
                acc = ext_->add(ext_->mul(acc, r), ext_->from_int(irr[k]));
            if (ext_->is_zero(acc)) {
                root_ = r;
                found = true;
            }
        }
        if (!found)
            throw InvariantViolation("embedding: base modulus has no root in the extension");
        powers_.push_back(ext_->one());
        for (std::uint32_t i = 1; i < base_->degree(); ++i)
            powers_.push_back(ext_->mul(powers_.back(), root_));
    }

    const FieldSpec& base() const { return base_; }
    const FieldSpec& ext() const { return ext_; }
    FieldElement root() const { return root_; }

    FieldElement operator()(FieldElement a) const
    {
        const auto c = base_->coeffs(a);
        FieldElement out = ext_->zero();
        for (std::size_t i = 0; i < c.size(); ++i)
            out = ext_->add(out, ext_->mul(ext_->from_int(c[i]), powers_[i]));
        return out;
    }

private:
    FieldSpec base_;
    FieldSpec ext_;
    FieldElement root_;
    std::vector<FieldElement> powers_;
};

/// Cached per (base, extension) pair.
inline std::shared_ptr<const FieldEmbedding> embedding(const FieldSpec& base, const FieldSpec& ext)
{
    using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>, std::uint32_t, std::vector<std::uint32_t>>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const FieldEmbedding>> cache;
    Key key{base->characteristic(), base->degree(), base->modulus(), ext->degree(), ext->modulus()};
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto e = std::make_shared<const FieldEmbedding>(base, ext);
    cache.emplace(std::move(key), e);
    return e;
}

/// GF(p^{m l}) for the smallest l >= 1 with p^{m l} > threshold. Returns base
/// itself when it is already large enough.
inline FieldSpec field_extension_above(const FieldSpec& base, std::uint64_t threshold, const Ceilings& c = default_ceilings())
{
    require(threshold >= 1, "field_extension_above: threshold must be positive");
    if (base->order() > threshold)
        return base;
    std::uint64_t order = base->order();
    std::uint32_t l = 1;
    while (order <= threshold) {
        order *= base->order();
        ++l;
        if (static_cast<std::uint64_t>(base->degree()) * l > c.field_degree || order >= Field::max_order)
            throw CeilingExceeded("field_extension_above: extension of " + base->name() + " beyond threshold " + std::to_string(threshold) + " exceeds the degree ceiling");
    }
    return field_make(base->characteristic(), base->degree() * l, c);
}

/// Smallest prime strictly greater than n.
inline std::uint32_t next_prime_above(std::uint64_t n)
{
    std::uint64_t p = n + 1;
    while (!is_prime(p))
        ++p;
    require(p < Field::max_order, "next_prime_above: too large");
    return static_cast<std::uint32_t>(p);
}

} // namespace hcol
