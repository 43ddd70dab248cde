#pragma once

/// Exact arithmetic for finite rings given by canonical element enumeration.
///
/// A ring is a descriptor with order |R|, element indices 0..|R|-1, and total
/// add/mul/neg maps on indices. Built-in kinds: Z/m, GF(p^k) with a fixed
/// modulus polynomial per supported size, finite products, trivial
/// (square-zero) extensions, and matrix rings. Quotients live in radical.hpp.
///
/// Canonical enumerations (certificates depend on these being stable):
///   Z/m            residues 0..m-1
///   GF(p^k)        base-p digits of the coefficient vector, constant term
///                  least significant
///   products       mixed radix, leftmost factor most significant
///   triv(K, g)     tuples (a, v1..vg), a most significant
///   M_n(R)         row-major entries, first entry most significant

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilclean/errors.hpp"

namespace nilclean {

inline constexpr std::uint64_t kTableCacheLimit = 256;
inline constexpr std::uint64_t kDefaultOrderCap = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kDefaultAxiomsCap = 256;
inline constexpr std::uint64_t kDefaultScanCap = 65536;
inline constexpr std::uint64_t kDefaultLatticeCap = 256;
inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kNoInverse = ~std::uint64_t{0};

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

struct Ideal;            // ideal.hpp
struct StructuredCache;  // nilclean.hpp

enum class RingKind {
    zmod,
    galois_field,
    product,
    trivial_extension,
    matrix_ring,
    quotient_ring,
    custom,
};

namespace detail {

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > ~std::uint64_t{0}) return std::nullopt;
    return static_cast<std::uint64_t>(p);
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        auto next = checked_mul(acc, base);
        if (!next) return std::nullopt;
        acc = *next;
    }
    return acc;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Per-ring lazy caches shared across modules. All slots are build-once.
struct RingCache {
    std::once_flag idempotents_once;
    std::vector<std::uint64_t> idempotents;

    std::once_flag units_once;
    std::vector<std::uint64_t> inverses;  // kNoInverse where not a unit

    std::once_flag nilradical_once;
    std::shared_ptr<const Ideal> nilradical;
    std::optional<std::uint64_t> nilradical_nil_index;

    std::once_flag radical_once;
    std::shared_ptr<const Ideal> jacobson;

    std::once_flag structured_once;
    std::shared_ptr<const StructuredCache> structured;
};

}  // namespace detail

class Ring {
public:
    virtual ~Ring() = default;
    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    RingKind kind() const { return kind_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t zero() const { return zero_; }
    std::uint64_t one() const { return one_; }
    /// Commutative by construction; an exhaustive check may still be run on
    /// rings where this is false.
    bool known_commutative() const { return commutative_; }
    const std::string& spec_string() const { return spec_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        return add_table_.empty() ? add_impl(a, b) : add_table_[a * order_ + b];
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return mul_table_.empty() ? mul_impl(a, b) : mul_table_[a * order_ + b];
    }
    std::uint64_t neg(std::uint64_t a) const {
        return neg_table_.empty() ? neg_impl(a) : neg_table_[a];
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t pow(std::uint64_t a, std::uint64_t k) const {
        std::uint64_t acc = one_;
        std::uint64_t base = a;
        while (k > 0) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
            k >>= 1;
        }
        return acc;
    }

    detail::RingCache& cache() const { return cache_; }

protected:
    Ring(RingKind kind, std::uint64_t order, std::uint64_t zero, std::uint64_t one,
         bool commutative, std::string spec)
        : kind_(kind), order_(order), zero_(zero), one_(one), commutative_(commutative),
          spec_(std::move(spec)) {
        if (order_ == 0) throw RingError("ring order must be at least 1");
        if (zero_ >= order_ || one_ >= order_)
            throw RingError("zero/one index out of range in " + spec_);
        if (order_ > 1 && zero_ == one_)
            throw RingError("zero and one may only coincide in the order-1 ring");
    }

    virtual std::uint64_t add_impl(std::uint64_t, std::uint64_t) const = 0;
    virtual std::uint64_t mul_impl(std::uint64_t, std::uint64_t) const = 0;
    virtual std::uint64_t neg_impl(std::uint64_t) const = 0;

    /// Factories call this after construction; rings at or below
    /// kTableCacheLimit get full operation tables.
    void cache_tables_if_small() {
        if (order_ > kTableCacheLimit) return;
        const std::size_t n = static_cast<std::size_t>(order_);
        add_table_.resize(n * n);
        mul_table_.resize(n * n);
        neg_table_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            neg_table_[a] = static_cast<std::uint8_t>(neg_impl(a));
            for (std::size_t b = 0; b < n; ++b) {
                add_table_[a * n + b] = static_cast<std::uint8_t>(add_impl(a, b));
                mul_table_[a * n + b] = static_cast<std::uint8_t>(mul_impl(a, b));
            }
        }
    }

private:
    RingKind kind_;
    std::uint64_t order_;
    std::uint64_t zero_;
    std::uint64_t one_;
    bool commutative_;
    std::string spec_;
    std::vector<std::uint8_t> add_table_, mul_table_, neg_table_;
    mutable detail::RingCache cache_;
};

/// Structural identity: same object or same canonical spec string.
inline bool same_ring(const Ring& a, const Ring& b) {
    return &a == &b || a.spec_string() == b.spec_string();
}

namespace detail {

/// Descriptors are immutable, so structurally identical rings can share one
/// instance; this lets the per-ring caches (idempotent tables, radicals,
/// quotients) do their work once per process.
template <class T>
std::shared_ptr<const T> intern_ring(std::shared_ptr<const T> fresh) {
    static std::mutex mu;
    static auto* registry = new std::unordered_map<std::string, RingHandle>();
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = registry->try_emplace(fresh->spec_string(), fresh);
    if (inserted) return fresh;
    if (auto existing = std::dynamic_pointer_cast<const T>(it->second)) return existing;
    return fresh;  // a foreign ring kind occupies this name; do not share
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Built-in ring kinds
// ---------------------------------------------------------------------------

class ZmodRing final : public Ring {
public:
    static RingHandle make(std::uint64_t m) {
        if (m == 0) throw RingError("Z/m requires m >= 1");
        if (m > (std::uint64_t{1} << 62))
            throw CapExceeded("modulus", m, std::uint64_t{1} << 62);
        auto r = std::shared_ptr<ZmodRing>(new ZmodRing(m));
        r->cache_tables_if_small();
        return detail::intern_ring<Ring>(std::move(r));
    }

    std::uint64_t modulus() const { return order(); }

private:
    explicit ZmodRing(std::uint64_t m)
        : Ring(RingKind::zmod, m, 0, m == 1 ? 0 : 1, true, "Z/" + std::to_string(m)) {}

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t s = a + b;
        return s >= order() ? s - order() : s;
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % order());
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        return a == 0 ? 0 : order() - a;
    }
};

/// GF(p^k). Prime sizes use plain mod-p arithmetic; the supported prime
/// powers carry a fixed modulus polynomial so that element enumeration is
/// reproducible: GF(4) t^2+t+1, GF(8) t^3+t+1, GF(9) t^2+1, GF(16) t^4+t+1.
class GaloisFieldRing final : public Ring {
public:
    static RingHandle make(std::uint64_t q) {
        std::uint64_t p = 0;
        std::vector<std::uint8_t> modulus;  // c0..ck, monic
        if (detail::is_prime(q)) {
            p = q;
            modulus = {0, 1};  // t - 0 placeholder, unused for k = 1
        } else if (q == 4) {
            p = 2;
            modulus = {1, 1, 1};
        } else if (q == 8) {
            p = 2;
            modulus = {1, 1, 0, 1};
        } else if (q == 9) {
            p = 3;
            modulus = {1, 0, 1};
        } else if (q == 16) {
            p = 2;
            modulus = {1, 1, 0, 0, 1};
        } else {
            throw RingError("unsupported GF size " + std::to_string(q) +
                            " (primes and 4, 8, 9, 16 are supported)");
        }
        auto r = std::shared_ptr<GaloisFieldRing>(
            new GaloisFieldRing(q, p, std::move(modulus)));
        r->cache_tables_if_small();
        return detail::intern_ring<Ring>(std::move(r));
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }

private:
    GaloisFieldRing(std::uint64_t q, std::uint64_t p, std::vector<std::uint8_t> modulus)
        : Ring(RingKind::galois_field, q, 0, 1, true, "GF(" + std::to_string(q) + ")"),
          p_(p), modulus_(std::move(modulus)) {
        k_ = static_cast<std::uint32_t>(modulus_.size() - 1);
        if (p_ != q) {
            std::uint64_t check = 1;
            for (std::uint32_t i = 0; i < k_; ++i) check *= p_;
            if (check != q) throw RingError("inconsistent GF parameters");
        } else {
            k_ = 1;
        }
    }

    void decode(std::uint64_t idx, std::uint64_t* digits) const {
        for (std::uint32_t i = 0; i < k_; ++i) {
            digits[i] = idx % p_;
            idx /= p_;
        }
    }
    std::uint64_t encode(const std::uint64_t* digits) const {
        std::uint64_t idx = 0;
        for (std::uint32_t i = k_; i-- > 0;) idx = idx * p_ + digits[i];
        return idx;
    }

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t da[8], db[8];
        decode(a, da);
        decode(b, db);
        for (std::uint32_t i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
        return encode(da);
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        std::uint64_t da[8];
        decode(a, da);
        for (std::uint32_t i = 0; i < k_; ++i) da[i] = da[i] == 0 ? 0 : p_ - da[i];
        return encode(da);
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        if (k_ == 1) return a * b % p_;
        std::uint64_t da[8], db[8], conv[16] = {0};
        decode(a, da);
        decode(b, db);
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j) conv[i + j] = (conv[i + j] + da[i] * db[j]) % p_;
        // t^k = -(c0 + c1 t + ... + c_{k-1} t^{k-1})
        for (std::uint32_t d = 2 * k_ - 2; d >= k_; --d) {
            std::uint64_t c = conv[d];
            if (c != 0) {
                conv[d] = 0;
                for (std::uint32_t j = 0; j < k_; ++j) {
                    std::uint64_t m = modulus_[j] % p_;
                    conv[d - k_ + j] = (conv[d - k_ + j] + c * ((p_ - m) % p_)) % p_;
                }
            }
            if (d == k_) break;
        }
        return encode(conv);
    }

    std::uint64_t p_;
    std::uint32_t k_ = 1;
    std::vector<std::uint8_t> modulus_;
};

class ProductRing final : public Ring {
public:
    /// Nested products flatten; mixed-radix indexing makes the flattened and
    /// nested enumerations coincide, so this is identity-preserving.
    static RingHandle make(std::vector<RingHandle> factors) {
        if (factors.empty()) throw RingError("product requires at least one factor");
        if (factors.size() == 1) return factors.front();
        std::vector<RingHandle> flat;
        for (auto& f : factors) {
            if (f->kind() == RingKind::product) {
                const auto& p = static_cast<const ProductRing&>(*f);
                flat.insert(flat.end(), p.factors_.begin(), p.factors_.end());
            } else {
                flat.push_back(std::move(f));
            }
        }
        auto r = std::shared_ptr<ProductRing>(new ProductRing(std::move(flat)));
        r->cache_tables_if_small();
        return detail::intern_ring<Ring>(std::move(r));
    }

    const std::vector<RingHandle>& factors() const { return factors_; }

    std::vector<std::uint64_t> split(std::uint64_t idx) const {
        std::vector<std::uint64_t> parts(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            parts[i] = idx / stride_[i] % factors_[i]->order();
        return parts;
    }
    std::uint64_t join(const std::vector<std::uint64_t>& parts) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            idx += parts[i] * stride_[i];
        return idx;
    }

private:
    explicit ProductRing(std::vector<RingHandle> factors)
        : Ring(RingKind::product, computed_order(factors), 0, computed_one(factors),
               std::all_of(factors.begin(), factors.end(),
                           [](const RingHandle& f) { return f->known_commutative(); }),
               joined_spec(factors)),
          factors_(std::move(factors)) {
        stride_.resize(factors_.size());
        std::uint64_t s = 1;
        for (std::size_t i = factors_.size(); i-- > 0;) {
            stride_[i] = s;
            s *= factors_[i]->order();
        }
    }

    static std::uint64_t computed_order(const std::vector<RingHandle>& fs) {
        std::uint64_t o = 1;
        for (const auto& f : fs) {
            auto next = detail::checked_mul(o, f->order());
            if (!next) throw CapExceeded("product order", ~std::uint64_t{0}, ~std::uint64_t{0});
            o = *next;
        }
        return o;
    }
    static std::uint64_t computed_one(const std::vector<RingHandle>& fs) {
        std::uint64_t idx = 0;
        std::uint64_t s = 1;
        std::vector<std::uint64_t> strides(fs.size());
        for (std::size_t i = fs.size(); i-- > 0;) {
            strides[i] = s;
            s *= fs[i]->order();
        }
        for (std::size_t i = 0; i < fs.size(); ++i) idx += fs[i]->one() * strides[i];
        return idx;
    }
    static std::string joined_spec(const std::vector<RingHandle>& fs) {
        std::string s;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i) s += " x ";
            s += fs[i]->spec_string();
        }
        return s;
    }

    std::uint64_t componentwise(std::uint64_t a, std::uint64_t b, bool multiply) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto& f = *factors_[i];
            std::uint64_t ca = a / stride_[i] % f.order();
            std::uint64_t cb = b / stride_[i] % f.order();
            idx += (multiply ? f.mul(ca, cb) : f.add(ca, cb)) * stride_[i];
        }
        return idx;
    }

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        return componentwise(a, b, false);
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        return componentwise(a, b, true);
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto& f = *factors_[i];
            idx += f.neg(a / stride_[i] % f.order()) * stride_[i];
        }
        return idx;
    }

    std::vector<RingHandle> factors_;
    std::vector<std::uint64_t> stride_;
};

/// triv(K, g): elements (a, v) with v in K^g and every product of extension
/// coordinates zero; (a,v)(b,w) = (ab, a*w + v*b). For commutative K this is
/// K[x1..xg]/(xi*xj), the square-zero extension.
class TrivialExtensionRing final : public Ring {
public:
    static RingHandle make(RingHandle base, std::uint32_t g) {
        if (g > 32) throw RingError("trivial extension supports at most 32 generators");
        auto order = detail::checked_pow(base->order(), g + 1);
        if (!order) throw CapExceeded("trivial extension order", ~std::uint64_t{0}, ~std::uint64_t{0});
        auto r = std::shared_ptr<TrivialExtensionRing>(
            new TrivialExtensionRing(std::move(base), g, *order));
        r->cache_tables_if_small();
        return detail::intern_ring<Ring>(std::move(r));
    }

    const RingHandle& base() const { return base_; }
    std::uint32_t generator_count() const { return g_; }

    /// digits[0] is the base component a (most significant), digits[1..g]
    /// the extension part, v_g least significant.
    void split(std::uint64_t idx, std::uint64_t* digits) const {
        std::uint64_t rest = idx;
        for (std::uint32_t i = g_ + 1; i-- > 0;) {
            digits[i] = rest % base_->order();
            rest /= base_->order();
        }
    }
    std::uint64_t join(const std::uint64_t* digits) const {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i <= g_; ++i) idx = idx * base_->order() + digits[i];
        return idx;
    }

private:
    TrivialExtensionRing(RingHandle base, std::uint32_t g, std::uint64_t order)
        : Ring(RingKind::trivial_extension, order, 0,
               [&] {
                   std::uint64_t one = base->one();
                   for (std::uint32_t i = 0; i < g; ++i) one *= base->order();
                   return one;
               }(),
               base->known_commutative(),
               "triv(" + base->spec_string() + "," + std::to_string(g) + ")"),
          base_(std::move(base)), g_(g) {}

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t da[33], db[33];
        split(a, da);
        split(b, db);
        for (std::uint32_t i = 0; i <= g_; ++i) da[i] = base_->add(da[i], db[i]);
        return join(da);
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t da[33], db[33], out[33];
        split(a, da);
        split(b, db);
        out[0] = base_->mul(da[0], db[0]);
        for (std::uint32_t i = 1; i <= g_; ++i)
            out[i] = base_->add(base_->mul(da[0], db[i]), base_->mul(da[i], db[0]));
        return join(out);
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        std::uint64_t da[33];
        split(a, da);
        for (std::uint32_t i = 0; i <= g_; ++i) da[i] = base_->neg(da[i]);
        return join(da);
    }

    RingHandle base_;
    std::uint32_t g_;
};

class MatrixRing final : public Ring {
public:
    static std::shared_ptr<const MatrixRing> make(RingHandle base, std::uint32_t n) {
        if (n == 0 || n > 8) throw RingError("matrix dimension must be in 1..8");
        auto order = detail::checked_pow(base->order(), std::uint64_t{n} * n);
        if (!order)
            throw CapExceeded("matrix ring order", ~std::uint64_t{0}, ~std::uint64_t{0});
        auto r = std::shared_ptr<MatrixRing>(new MatrixRing(std::move(base), n, *order));
        r->cache_tables_if_small();
        return detail::intern_ring<MatrixRing>(std::move(r));
    }

    const RingHandle& base() const { return base_; }
    std::uint32_t dimension() const { return n_; }

    void decode(std::uint64_t idx, std::uint64_t* entries) const {
        const std::uint32_t nn = n_ * n_;
        for (std::uint32_t t = nn; t-- > 0;) {
            entries[t] = idx % base_->order();
            idx /= base_->order();
        }
    }
    std::uint64_t encode(const std::uint64_t* entries) const {
        const std::uint32_t nn = n_ * n_;
        std::uint64_t idx = 0;
        for (std::uint32_t t = 0; t < nn; ++t) idx = idx * base_->order() + entries[t];
        return idx;
    }

private:
    MatrixRing(RingHandle base, std::uint32_t n, std::uint64_t order)
        : Ring(RingKind::matrix_ring, order, 0,
               [&] {
                   std::uint64_t idx = 0;
                   for (std::uint32_t i = 0; i < n; ++i)
                       for (std::uint32_t j = 0; j < n; ++j)
                           idx = idx * base->order() + (i == j ? base->one() : base->zero());
                   return idx;
               }(),
               n == 1 && base->known_commutative(),
               "M" + std::to_string(n) + "(" + base->spec_string() + ")"),
          base_(std::move(base)), n_(n) {}

    std::uint64_t add_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t ea[64], eb[64];
        decode(a, ea);
        decode(b, eb);
        const std::uint32_t nn = n_ * n_;
        for (std::uint32_t t = 0; t < nn; ++t) ea[t] = base_->add(ea[t], eb[t]);
        return encode(ea);
    }
    std::uint64_t mul_impl(std::uint64_t a, std::uint64_t b) const override {
        std::uint64_t ea[64], eb[64], out[64];
        decode(a, ea);
        decode(b, eb);
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t j = 0; j < n_; ++j) {
                std::uint64_t acc = base_->zero();
                for (std::uint32_t k = 0; k < n_; ++k)
                    acc = base_->add(acc, base_->mul(ea[i * n_ + k], eb[k * n_ + j]));
                out[i * n_ + j] = acc;
            }
        }
        return encode(out);
    }
    std::uint64_t neg_impl(std::uint64_t a) const override {
        std::uint64_t ea[64];
        decode(a, ea);
        const std::uint32_t nn = n_ * n_;
        for (std::uint32_t t = 0; t < nn; ++t) ea[t] = base_->neg(ea[t]);
        return encode(ea);
    }

    RingHandle base_;
    std::uint32_t n_;
};

inline std::shared_ptr<const MatrixRing> build_matrix_ring(RingHandle base, std::uint32_t n) {
    return MatrixRing::make(std::move(base), n);
}

// ---------------------------------------------------------------------------
// Element and Matrix values
// ---------------------------------------------------------------------------

class Element {
public:
    Element(RingHandle ring, std::uint64_t index) : ring_(std::move(ring)), index_(index) {
        if (index_ >= ring_->order())
            throw RingError("element index " + std::to_string(index_) + " out of range for " +
                            ring_->spec_string());
    }

    const RingHandle& ring() const { return ring_; }
    std::uint64_t index() const { return index_; }
    bool is_zero() const { return index_ == ring_->zero(); }
    bool is_one() const { return index_ == ring_->one(); }

    Element pow(std::uint64_t k) const { return Element(ring_, ring_->pow(index_, k)); }

    friend Element operator+(const Element& a, const Element& b) {
        check_same(a, b);
        return Element(a.ring_, a.ring_->add(a.index_, b.index_));
    }
    friend Element operator-(const Element& a, const Element& b) {
        check_same(a, b);
        return Element(a.ring_, a.ring_->sub(a.index_, b.index_));
    }
    friend Element operator*(const Element& a, const Element& b) {
        check_same(a, b);
        return Element(a.ring_, a.ring_->mul(a.index_, b.index_));
    }
    Element operator-() const { return Element(ring_, ring_->neg(index_)); }
    friend bool operator==(const Element& a, const Element& b) {
        check_same(a, b);
        return a.index_ == b.index_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    static void check_same(const Element& a, const Element& b) {
        if (!same_ring(*a.ring_, *b.ring_))
            throw RingMismatchError("elements of " + a.ring_->spec_string() + " and " +
                                    b.ring_->spec_string() + " cannot be combined");
    }

    RingHandle ring_;
    std::uint64_t index_;
};

/// Value-semantics n-by-n matrix over a base ring. A matrix over R is the
/// same thing as an element of M_n(R); encode/decode convert between the two
/// whenever the matrix-ring order fits in 64 bits.
class Matrix {
public:
    Matrix(RingHandle base, std::uint32_t n)
        : base_(std::move(base)), n_(n),
          entries_(std::size_t{n} * n, base_->zero()) {
        if (n == 0) throw RingError("matrix dimension must be at least 1");
    }

    static Matrix identity(RingHandle base, std::uint32_t n) {
        Matrix m(std::move(base), n);
        for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = m.base_->one();
        return m;
    }
    static Matrix scalar(RingHandle base, std::uint32_t n, std::uint64_t r) {
        Matrix m(std::move(base), n);
        for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = r;
        return m;
    }

    const RingHandle& base() const { return base_; }
    std::uint32_t dimension() const { return n_; }
    std::uint64_t& at(std::uint32_t i, std::uint32_t j) { return entries_[i * n_ + j]; }
    std::uint64_t at(std::uint32_t i, std::uint32_t j) const { return entries_[i * n_ + j]; }
    const std::vector<std::uint64_t>& entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [&](std::uint64_t e) { return e == base_->zero(); });
    }
    bool is_identity() const { return *this == identity(base_, n_); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix out(a.base_, a.n_);
        for (std::size_t t = 0; t < a.entries_.size(); ++t)
            out.entries_[t] = a.base_->add(a.entries_[t], b.entries_[t]);
        return out;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix out(a.base_, a.n_);
        for (std::size_t t = 0; t < a.entries_.size(); ++t)
            out.entries_[t] = a.base_->sub(a.entries_[t], b.entries_[t]);
        return out;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix out(a.base_, a.n_);
        for (std::uint32_t i = 0; i < a.n_; ++i)
            for (std::uint32_t j = 0; j < a.n_; ++j) {
                std::uint64_t acc = a.base_->zero();
                for (std::uint32_t k = 0; k < a.n_; ++k)
                    acc = a.base_->add(acc, a.base_->mul(a.at(i, k), b.at(k, j)));
                out.at(i, j) = acc;
            }
        return out;
    }
    Matrix operator-() const {
        Matrix out(base_, n_);
        for (std::size_t t = 0; t < entries_.size(); ++t)
            out.entries_[t] = base_->neg(entries_[t]);
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix pow(std::uint64_t k) const {
        Matrix acc = identity(base_, n_);
        Matrix base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

private:
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_ || !same_ring(*a.base_, *b.base_))
            throw RingMismatchError("matrix shape or base ring mismatch");
    }

    RingHandle base_;
    std::uint32_t n_;
    std::vector<std::uint64_t> entries_;
};

inline std::uint64_t matrix_to_index(const Matrix& m) {
    std::uint64_t idx = 0;
    for (std::uint64_t e : m.entries()) {
        auto scaled = detail::checked_mul(idx, m.base()->order());
        if (!scaled || *scaled + e < *scaled)
            throw CapExceeded("matrix index", ~std::uint64_t{0}, ~std::uint64_t{0});
        idx = *scaled + e;
    }
    return idx;
}

inline Matrix matrix_from_index(RingHandle base, std::uint32_t n, std::uint64_t idx) {
    Matrix m(std::move(base), n);
    const std::uint64_t b = m.base()->order();
    for (std::uint32_t t = n * n; t-- > 0;) {
        m.at(t / n, t % n) = idx % b;
        idx /= b;
    }
    return m;
}

inline Matrix matrix_from_element(const Element& e) {
    if (e.ring()->kind() != RingKind::matrix_ring)
        throw RingError("element does not belong to a matrix ring");
    const auto& mr = static_cast<const MatrixRing&>(*e.ring());
    return matrix_from_index(mr.base(), mr.dimension(), e.index());
}

// ---------------------------------------------------------------------------
// Axioms check
// ---------------------------------------------------------------------------

struct AxiomsReport {
    bool passed = true;
    std::string axiom;                    // empty when passed
    std::vector<std::uint64_t> indices;   // the violating tuple
};

/// Exhaustive ring-axiom verification: abelian group under add, associative
/// bilinear mul, two-sided one. Cubic in |R|, hence the dedicated cap.
inline AxiomsReport ring_axioms_check(const Ring& r, std::uint64_t cap = kDefaultAxiomsCap) {
    const std::uint64_t n = r.order();
    if (n > cap) throw CapExceeded("axioms check", n, cap);

    auto fail = [](std::string axiom, std::vector<std::uint64_t> idx) {
        return AxiomsReport{false, std::move(axiom), std::move(idx)};
    };

    for (std::uint64_t a = 0; a < n; ++a) {
        if (r.neg(a) >= n) return fail("closure_neg", {a});
        if (r.add(r.zero(), a) != a || r.add(a, r.zero()) != a) return fail("zero_identity", {a});
        if (r.add(a, r.neg(a)) != r.zero()) return fail("additive_inverse", {a});
        if (r.mul(r.one(), a) != a || r.mul(a, r.one()) != a) return fail("one_identity", {a});
    }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            if (r.add(a, b) >= n || r.mul(a, b) >= n) return fail("closure", {a, b});
            if (r.add(a, b) != r.add(b, a)) return fail("add_commutativity", {a, b});
        }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
            for (std::uint64_t c = 0; c < n; ++c) {
                if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
                    return fail("add_associativity", {a, b, c});
                if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                    return fail("mul_associativity", {a, b, c});
                if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                    return fail("left_distributivity", {a, b, c});
                if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
                    return fail("right_distributivity", {a, b, c});
            }
    return AxiomsReport{};
}

// ---------------------------------------------------------------------------
// CRT split of Z/m
// ---------------------------------------------------------------------------

struct CrtFactor {
    std::uint64_t p;
    std::uint64_t r;
    std::uint64_t pr;  // p^r
    RingHandle ring;
};

/// Z/m as a direct product of its prime-power parts, with explicit split and
/// recombine maps. Both maps are ring isomorphisms.
class CrtSplit {
public:
    explicit CrtSplit(std::uint64_t m) : m_(m) {
        if (m < 2) throw RingError("CRT split requires m >= 2");
        std::uint64_t rest = m;
        for (std::uint64_t p = 2; p * p <= rest; ++p) {
            if (rest % p == 0) {
                std::uint64_t pr = 1, r = 0;
                while (rest % p == 0) {
                    rest /= p;
                    pr *= p;
                    ++r;
                }
                factors_.push_back({p, r, pr, ZmodRing::make(pr)});
            }
        }
        if (rest > 1) factors_.push_back({rest, 1, rest, ZmodRing::make(rest)});
        // basis_[i] = 1 mod p_i^{r_i}, 0 mod the other factors
        basis_.resize(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const std::uint64_t pr = factors_[i].pr;
            const std::uint64_t rest_m = m_ / pr;
            const std::uint64_t inv = mod_inverse(rest_m % pr, pr);
            basis_[i] = static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(rest_m) * inv % m_);
        }
    }

    std::uint64_t modulus() const { return m_; }
    const std::vector<CrtFactor>& factors() const { return factors_; }

    std::vector<std::uint64_t> split(std::uint64_t x) const {
        std::vector<std::uint64_t> parts(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) parts[i] = x % factors_[i].pr;
        return parts;
    }

    std::uint64_t recombine(const std::vector<std::uint64_t>& parts) const {
        if (parts.size() != factors_.size()) throw RingError("CRT component count mismatch");
        unsigned __int128 acc = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            acc += static_cast<unsigned __int128>(parts[i] % factors_[i].pr) * basis_[i];
        return static_cast<std::uint64_t>(acc % m_);
    }

private:
    static std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
        // extended gcd; a and m are coprime here by construction
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (r != 1) throw RingError("CRT basis: factor not coprime");
        return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
    }

    std::uint64_t m_;
    std::vector<CrtFactor> factors_;
    std::vector<std::uint64_t> basis_;
};

inline CrtSplit crt_split_zm(std::uint64_t m) { return CrtSplit(m); }

}  // namespace nilclean
