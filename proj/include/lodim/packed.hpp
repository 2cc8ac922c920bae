#pragma once

// Fixed-capacity vectors over GF(p) used inside the exact searches. The generic
// Vec/Basis types are exact for every field but allocate; these do not.

#include "lodim/field.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace lodim {

inline constexpr std::size_t kMaxPackedDim = 16;

using PackedVec = std::array<std::uint8_t, kMaxPackedDim>;

/// Lookup tables for GF(p).
class SmallField {
public:
    explicit SmallField(unsigned p);

    unsigned p() const { return p_; }
    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a + b) % p_); }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::uint8_t>((a + p_ - b) % p_);
    }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * p_ + b]; }
    std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }

private:
    unsigned p_;
    std::vector<std::uint8_t> mul_;
    std::vector<std::uint8_t> inv_;
};

/// F_p^t with the standard bilinear form.
class SmallSpace {
public:
    SmallSpace(unsigned p, std::size_t t);

    const SmallField& field() const { return field_; }
    unsigned p() const { return field_.p(); }
    std::size_t dim() const { return t_; }

    std::uint8_t dot(const PackedVec& a, const PackedVec& b) const;
    bool is_zero(const PackedVec& a) const;
    bool anisotropic(const PackedVec& a) const { return dot(a, a) != 0; }
    /// a + c*b
    PackedVec axpy(const PackedVec& a, std::uint8_t c, const PackedVec& b) const;
    PackedVec scale(const PackedVec& a, std::uint8_t c) const;
    /// Scales so that the first nonzero coordinate is 1.
    PackedVec normalize(const PackedVec& a) const;

    /// One representative per 1-dimensional subspace (first nonzero entry 1),
    /// grouped by the position of the leading 1, tails in odometer order.
    std::vector<PackedVec> projective_points() const;
    /// Projective points with nonzero self inner product.
    std::vector<PackedVec> anisotropic_points() const;

    PackedVec unit(std::size_t i) const;
    PackedVec from_vec(const Vec& v) const;
    Vec to_vec(const PackedVec& v, FieldSpec f) const;

private:
    SmallField field_;
    std::size_t t_;
};

/// Reduced echelon basis of a subspace of F_p^t. Copyable value, no allocation.
class PackedBasis {
public:
    PackedBasis() = default;

    std::size_t size() const { return size_; }
    const PackedVec& row(std::size_t k) const { return rows_[k]; }

    PackedVec reduce(const SmallSpace& s, PackedVec v) const;
    bool contains(const SmallSpace& s, const PackedVec& v) const { return s.is_zero(reduce(s, v)); }
    /// Returns true if v was outside the span (and the basis grew).
    bool insert(const SmallSpace& s, const PackedVec& v);

    /// All nonzero projective points of the span, normalised.
    std::vector<PackedVec> projective_span(const SmallSpace& s) const;

private:
    std::array<PackedVec, kMaxPackedDim> rows_{};
    std::array<std::uint8_t, kMaxPackedDim> pivots_{};
    std::size_t size_ = 0;
};

} // namespace lodim
