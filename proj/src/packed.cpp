#include "lodim/packed.hpp"

#include "lodim/error.hpp"

namespace lodim {

SmallField::SmallField(unsigned p) : p_(p), mul_(p * p), inv_(p, 0) {
    if (!is_prime(p) || p > kMaxPrime)
        throw PreconditionError("SmallField needs a prime <= 251");
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b) {
            mul_[a * p + b] = static_cast<std::uint8_t>((a * b) % p);
            if ((a * b) % p == 1)
                inv_[a] = static_cast<std::uint8_t>(b);
        }
}

SmallSpace::SmallSpace(unsigned p, std::size_t t) : field_(p), t_(t) {
    if (t > kMaxPackedDim)
        throw CapExceeded("ambient dimension " + std::to_string(t) + " exceeds " + std::to_string(kMaxPackedDim));
}

std::uint8_t SmallSpace::dot(const PackedVec& a, const PackedVec& b) const {
    unsigned acc = 0;
    for (std::size_t i = 0; i < t_; ++i)
        acc += field_.mul(a[i], b[i]);
    return static_cast<std::uint8_t>(acc % field_.p());
}

bool SmallSpace::is_zero(const PackedVec& a) const {
    for (std::size_t i = 0; i < t_; ++i)
        if (a[i])
            return false;
    return true;
}

PackedVec SmallSpace::axpy(const PackedVec& a, std::uint8_t c, const PackedVec& b) const {
    PackedVec r{};
    for (std::size_t i = 0; i < t_; ++i)
        r[i] = field_.add(a[i], field_.mul(c, b[i]));
    return r;
}

PackedVec SmallSpace::scale(const PackedVec& a, std::uint8_t c) const {
    PackedVec r{};
    for (std::size_t i = 0; i < t_; ++i)
        r[i] = field_.mul(c, a[i]);
    return r;
}

PackedVec SmallSpace::normalize(const PackedVec& a) const {
    for (std::size_t i = 0; i < t_; ++i)
        if (a[i])
            return scale(a, field_.inv(a[i]));
    return a;
}

std::vector<PackedVec> SmallSpace::projective_points() const {
    unsigned long long total = 1;
    for (std::size_t i = 0; i < t_; ++i) {
        total *= p();
        if (total > (1ull << 24))
            throw CapExceeded("F_" + std::to_string(p()) + "^" + std::to_string(t_) + " too large to enumerate");
    }
    std::vector<PackedVec> out;
    // Leading 1 at position lead, zeros before, every tail after (odometer).
    for (std::size_t lead = 0; lead < t_; ++lead) {
        unsigned long long tails = 1;
        for (std::size_t i = lead + 1; i < t_; ++i)
            tails *= p();
        for (unsigned long long idx = 0; idx < tails; ++idx) {
            PackedVec v{};
            v[lead] = 1;
            unsigned long long rest = idx;
            for (std::size_t pos = t_; pos > lead + 1; --pos) {
                v[pos - 1] = static_cast<std::uint8_t>(rest % p());
                rest /= p();
            }
            out.push_back(v);
        }
    }
    return out;
}

std::vector<PackedVec> SmallSpace::anisotropic_points() const {
    std::vector<PackedVec> out;
    for (const auto& v : projective_points())
        if (anisotropic(v))
            out.push_back(v);
    return out;
}

PackedVec SmallSpace::unit(std::size_t i) const {
    PackedVec v{};
    v[i] = 1;
    return v;
}

PackedVec SmallSpace::from_vec(const Vec& v) const {
    if (v.size() != t_)
        throw PreconditionError("vector length mismatch");
    PackedVec r{};
    for (std::size_t i = 0; i < t_; ++i)
        r[i] = v[i].residue();
    return r;
}

Vec SmallSpace::to_vec(const PackedVec& v, FieldSpec f) const {
    Vec r;
    r.reserve(t_);
    for (std::size_t i = 0; i < t_; ++i)
        r.emplace_back(f, v[i]);
    return r;
}

PackedVec PackedBasis::reduce(const SmallSpace& s, PackedVec v) const {
    const auto& f = s.field();
    for (std::size_t k = 0; k < size_; ++k) {
        std::uint8_t c = v[pivots_[k]];
        if (c)
            v = s.axpy(v, static_cast<std::uint8_t>(f.p() - c), rows_[k]);
    }
    return v;
}

bool PackedBasis::insert(const SmallSpace& s, const PackedVec& v) {
    PackedVec w = reduce(s, v);
    std::size_t lead = 0;
    while (lead < s.dim() && w[lead] == 0)
        ++lead;
    if (lead == s.dim())
        return false;
    w = s.scale(w, s.field().inv(w[lead]));
    for (std::size_t k = 0; k < size_; ++k) {
        std::uint8_t c = rows_[k][lead];
        if (c)
            rows_[k] = s.axpy(rows_[k], static_cast<std::uint8_t>(s.p() - c), w);
    }
    std::size_t pos = size_;
    while (pos > 0 && pivots_[pos - 1] > lead) {
        rows_[pos] = rows_[pos - 1];
        pivots_[pos] = pivots_[pos - 1];
        --pos;
    }
    rows_[pos] = w;
    pivots_[pos] = static_cast<std::uint8_t>(lead);
    ++size_;
    return true;
}

std::vector<PackedVec> PackedBasis::projective_span(const SmallSpace& s) const {
    // Coefficient vectors over F^size with leading coefficient 1.
    std::vector<PackedVec> out;
    if (size_ == 0)
        return out;
    SmallSpace coeff(s.p(), size_);
    for (const auto& c : coeff.projective_points()) {
        PackedVec v{};
        for (std::size_t k = 0; k < size_; ++k)
            if (c[k])
                v = s.axpy(v, c[k], rows_[k]);
        out.push_back(s.normalize(v));
    }
    return out;
}

} // namespace lodim
