#include "lodim/field.hpp"

#include "lodim/error.hpp"

#include <charconv>

namespace lodim {

bool is_prime(unsigned long long v) {
    if (v < 2)
        return false;
    for (unsigned long long d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

FieldSpec FieldSpec::prime(unsigned p) {
    if (p < 2 || p > kMaxPrime || !lodim::is_prime(p))
        throw PreconditionError("field modulus must be a prime in [2, 251], got " + std::to_string(p));
    return FieldSpec{p};
}

FieldSpec FieldSpec::parse(std::string_view tag) {
    if (tag == "Q" || tag == "q")
        return rationals();
    unsigned p = 0;
    auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), p);
    if (ec != std::errc{} || ptr != tag.data() + tag.size())
        throw PreconditionError("unrecognised field '" + std::string(tag) + "' (expected a prime or Q)");
    return prime(p);
}

std::optional<unsigned> FieldSpec::size() const {
    if (is_rational())
        return std::nullopt;
    return p_;
}

std::string FieldSpec::name() const { return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")"; }

std::string FieldSpec::tag() const { return is_rational() ? "Q" : std::to_string(p_); }

FieldElem::FieldElem(FieldSpec f, long long v) : field_(f) {
    if (f.is_prime()) {
        long long p = f.modulus();
        long long r = v % p;
        if (r < 0)
            r += p;
        value_ = static_cast<std::uint8_t>(r);
    } else {
        value_ = Rational(v);
    }
}

FieldElem::FieldElem(FieldSpec f, Rational q) : field_(f) {
    if (!f.is_rational())
        throw PreconditionError("rational value given for " + f.name());
    value_ = std::move(q);
}

bool FieldElem::is_zero() const {
    if (field_.is_prime())
        return std::get<std::uint8_t>(value_) == 0;
    return std::get<Rational>(value_) == 0;
}

std::uint8_t FieldElem::residue() const {
    if (!field_.is_prime())
        throw PreconditionError("residue() on a rational element");
    return std::get<std::uint8_t>(value_);
}

Rational FieldElem::rational() const {
    if (field_.is_prime())
        return Rational(std::get<std::uint8_t>(value_));
    return std::get<Rational>(value_);
}

void FieldElem::require_same(const FieldElem& o) const {
    if (!(field_ == o.field_))
        throw PreconditionError("mixed-field operands: " + field_.name() + " and " + o.field_.name());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    require_same(o);
    if (field_.is_prime())
        return {field_, static_cast<long long>(residue()) + o.residue()};
    return {field_, std::get<Rational>(value_) + std::get<Rational>(o.value_)};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    require_same(o);
    if (field_.is_prime())
        return {field_, static_cast<long long>(residue()) - o.residue()};
    return {field_, std::get<Rational>(value_) - std::get<Rational>(o.value_)};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    require_same(o);
    if (field_.is_prime())
        return {field_, static_cast<long long>(residue()) * o.residue()};
    return {field_, std::get<Rational>(value_) * std::get<Rational>(o.value_)};
}

FieldElem FieldElem::operator-() const {
    if (field_.is_prime())
        return {field_, -static_cast<long long>(residue())};
    return {field_, Rational(-std::get<Rational>(value_))};
}

FieldElem FieldElem::pow(unsigned long long e) const {
    FieldElem result = one(field_);
    FieldElem base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

FieldElem FieldElem::inv() const {
    if (is_zero())
        throw PreconditionError("division by zero in " + field_.name());
    if (field_.is_prime())
        return pow(field_.modulus() - 2);
    return {field_, Rational(1) / std::get<Rational>(value_)};
}

bool FieldElem::operator==(const FieldElem& o) const { return field_ == o.field_ && value_ == o.value_; }

std::string FieldElem::to_string() const {
    if (field_.is_prime())
        return std::to_string(residue());
    return std::get<Rational>(value_).str();
}

Vec zero_vec(FieldSpec f, std::size_t len) { return Vec(len, FieldElem::zero(f)); }

Vec make_vec(FieldSpec f, std::span<const long long> values) {
    Vec v;
    v.reserve(values.size());
    for (long long x : values)
        v.emplace_back(f, x);
    return v;
}

FieldElem inner_product(std::span<const FieldElem> x, std::span<const FieldElem> y) {
    if (x.size() != y.size())
        throw PreconditionError("inner product of vectors of length " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
    if (x.empty())
        throw PreconditionError("inner product of empty vectors has no field");
    FieldElem acc = FieldElem::zero(x[0].field());
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += x[i] * y[i];
    return acc;
}

bool is_zero_vec(std::span<const FieldElem> x) {
    for (const auto& e : x)
        if (!e.is_zero())
            return false;
    return true;
}

} // namespace lodim
