#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lodim {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr unsigned kMaxPrime = 251;

/// Deterministic trial-division primality test.
bool is_prime(unsigned long long v);

/// A prime field GF(p), 2 <= p <= 251, or the rationals.
class FieldSpec {
public:
    static FieldSpec prime(unsigned p);
    static FieldSpec rationals() { return FieldSpec{0}; }
    /// Parses a command-line field tag: "2", "3", ..., or "Q".
    static FieldSpec parse(std::string_view tag);

    bool is_prime() const { return p_ != 0; }
    bool is_rational() const { return p_ == 0; }
    /// p for GF(p), 0 for the rationals.
    unsigned modulus() const { return p_; }
    /// Number of elements, or nullopt for an infinite field.
    std::optional<unsigned> size() const;
    /// "GF(p)" or "Q".
    std::string name() const;
    /// "p" or "Q", the inverse of parse().
    std::string tag() const;

    bool operator==(const FieldSpec&) const = default;

private:
    explicit FieldSpec(unsigned p) : p_(p) {}
    unsigned p_;
};

/// Element of a FieldSpec: a canonical residue or a reduced rational.
class FieldElem {
public:
    /// Integer v embedded in the field.
    FieldElem(FieldSpec f, long long v);
    /// Exact rational; the field must be the rationals.
    FieldElem(FieldSpec f, Rational q);

    static FieldElem zero(FieldSpec f) { return {f, 0}; }
    static FieldElem one(FieldSpec f) { return {f, 1}; }

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    std::uint8_t residue() const;
    Rational rational() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const { return *this * o.inv(); }
    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem inv() const;
    FieldElem pow(unsigned long long e) const;

    bool operator==(const FieldElem& o) const;

    /// Residue as decimal, or "a/b" / "a" for rationals.
    std::string to_string() const;

private:
    void require_same(const FieldElem& o) const;

    FieldSpec field_;
    std::variant<std::uint8_t, Rational> value_;
};

using Vec = std::vector<FieldElem>;

Vec zero_vec(FieldSpec f, std::size_t len);
Vec make_vec(FieldSpec f, std::span<const long long> values);
inline Vec make_vec(FieldSpec f, std::initializer_list<long long> values) {
    return make_vec(f, std::span<const long long>(values.begin(), values.size()));
}

/// Standard bilinear form sum x_i y_i (no conjugation).
FieldElem inner_product(std::span<const FieldElem> x, std::span<const FieldElem> y);

bool is_zero_vec(std::span<const FieldElem> x);

} // namespace lodim
