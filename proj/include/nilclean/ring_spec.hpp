#pragma once

/// Text form for ring descriptors. Whitespace is ignored; products are
/// left-associative.
///
///   spec := term ("x" term)*
///   term := "Z/" nat | "GF(" nat ")" | "M" nat "(" spec ")"
///         | "triv(" spec "," nat ")" | "(" spec ")"

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilclean/errors.hpp"
#include "nilclean/ring.hpp"

namespace nilclean {

namespace detail {

class RingSpecParser {
public:
    RingSpecParser(std::string_view text, std::uint64_t order_cap)
        : text_(text), cap_(order_cap) {}

    RingHandle parse() {
        RingHandle r = parse_spec();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input", {"end of input", "x"});
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& wanted, std::vector<std::string> expected) {
        throw ParseError("parse error at offset " + std::to_string(pos_) + ": expected " + wanted,
                         pos_, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("'") + c + "'", {std::string(1, c)});
    }

    std::uint64_t parse_nat() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("a number", {"nat"});
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (~std::uint64_t{0} - digit) / 10) fail("a smaller number", {"nat"});
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }

    void check_cap(std::uint64_t order) {
        if (order > cap_)
            throw ParseError("ring order " + std::to_string(order) + " exceeds the order cap " +
                             std::to_string(cap_), pos_, {"a smaller ring"});
    }

    RingHandle parse_spec() {
        std::vector<RingHandle> factors;
        factors.push_back(parse_term());
        while (try_consume('x')) factors.push_back(parse_term());
        if (factors.size() == 1) return factors.front();
        auto r = ProductRing::make(std::move(factors));
        check_cap(r->order());
        return r;
    }

    RingHandle parse_term() {
        skip_ws();
        if (pos_ >= text_.size()) fail("a ring term", {"Z/", "GF(", "M", "triv(", "("});
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RingHandle inner = parse_spec();
            expect(')');
            return inner;
        }
        if (c == 'Z') {
            ++pos_;
            expect('/');
            const std::size_t at = pos_;
            std::uint64_t m = parse_nat();
            if (m == 0) throw ParseError("Z/m requires m >= 1", at, {"nat >= 1"});
            check_cap(m);
            return ZmodRing::make(m);
        }
        if (c == 'G') {
            ++pos_;
            expect('F');
            expect('(');
            const std::size_t at = pos_;
            std::uint64_t q = parse_nat();
            expect(')');
            check_cap(q);
            try {
                return GaloisFieldRing::make(q);
            } catch (const RingError& e) {
                throw ParseError(e.what(), at, {"a prime or one of 4, 8, 9, 16"});
            }
        }
        if (c == 'M') {
            ++pos_;
            const std::size_t at = pos_;
            std::uint64_t n = parse_nat();
            if (n == 0 || n > 8)
                throw ParseError("matrix dimension must be in 1..8", at, {"nat in 1..8"});
            expect('(');
            RingHandle base = parse_spec();
            expect(')');
            auto order = detail::checked_pow(base->order(), n * n);
            if (!order || *order > cap_)
                throw ParseError("matrix ring order exceeds the order cap " + std::to_string(cap_),
                                 at, {"a smaller ring"});
            return MatrixRing::make(std::move(base), static_cast<std::uint32_t>(n));
        }
        if (c == 't') {
            for (const char* k = "triv("; *k; ++k) {
                if (pos_ >= text_.size() || text_[pos_] != *k)
                    fail("'triv('", {"triv("});
                ++pos_;
            }
            RingHandle base = parse_spec();
            expect(',');
            const std::size_t at = pos_;
            std::uint64_t g = parse_nat();
            if (g > 32) throw ParseError("triv supports at most 32 generators", at, {"nat <= 32"});
            expect(')');
            auto order = detail::checked_pow(base->order(), g + 1);
            if (!order || *order > cap_)
                throw ParseError("trivial extension order exceeds the order cap " +
                                 std::to_string(cap_), at, {"a smaller ring"});
            return TrivialExtensionRing::make(std::move(base), static_cast<std::uint32_t>(g));
        }
        fail("a ring term", {"Z/", "GF(", "M", "triv(", "("});
    }

    std::string_view text_;
    std::uint64_t cap_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RingHandle parse_ring_spec(std::string_view text,
                                  std::uint64_t order_cap = kDefaultOrderCap) {
    return detail::RingSpecParser(text, order_cap).parse();
}

}  // namespace nilclean
