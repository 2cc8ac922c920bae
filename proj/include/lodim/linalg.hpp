#pragma once

#include "lodim/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lodim {

/// Dense row-major matrix over a FieldSpec.
class Mat {
public:
    Mat() : Mat(FieldSpec::prime(2), 0, 0) {}
    Mat(FieldSpec f, std::size_t rows, std::size_t cols);
    /// Rows must all have length `cols`.
    static Mat from_rows(FieldSpec f, const std::vector<Vec>& rows, std::size_t cols);
    static Mat identity(FieldSpec f, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
    Vec col_vec(std::size_t c) const;

    Mat transpose() const;
    /// Matrix-vector product M x.
    Vec apply(std::span<const FieldElem> x) const;
    Mat operator*(const Mat& o) const;
    bool operator==(const Mat& o) const;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    Vec data_;
};

/// Row rank by Gaussian elimination, pivoting on the first nonzero entry.
std::size_t rank(const Mat& m);
/// Rank of a list of equal-length vectors.
std::size_t rank(FieldSpec f, const std::vector<Vec>& vectors, std::size_t dim);

/// Reduced row-echelon basis of a subspace of F^dim. Leading entries are 1,
/// pivot columns are unique and increasing, and every pivot column is zero in
/// all other rows.
class Basis {
public:
    Basis(FieldSpec f, std::size_t dim) : field_(f), dim_(dim) {}

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// v minus its projection onto the pivots; zero iff v is in the span.
    Vec reduce(std::span<const FieldElem> v) const;
    bool contains(std::span<const FieldElem> v) const;
    /// Inserts v unless it is already in the span. Returns true if the span grew.
    bool insert(std::span<const FieldElem> v);

    /// Scans the echelon invariants. Used by tests and certificate checks.
    bool is_reduced_echelon() const;

private:
    void check_dim(std::span<const FieldElem> v) const;

    FieldSpec field_;
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

struct ExtendResult {
    bool in_span;
    Basis basis;
};

/// Non-mutating form of Basis::insert.
ExtendResult extend_basis(const Basis& b, std::span<const FieldElem> v);

/// Basis of {x : M x = 0}.
Basis nullspace_basis(const Mat& m);

/// Some lambda with lambda * B = target, or nullopt when target is outside the
/// row space of B.
std::optional<Vec> solve_left(const Mat& b, std::span<const FieldElem> target);

/// Vectors (1, a, a^2, ..., a^(ell-1)) for evaluation points a = 0, 1, ..., m-1.
/// Throws Infeasible when the field has fewer than m elements.
std::vector<Vec> vandermonde(std::size_t m, std::size_t ell, FieldSpec f);

/// Smallest e with q^e >= h; 0 for h <= 1.
std::size_t ceil_log(unsigned q, std::size_t h);

/// Greedy family u_0..u_{m-1} in F^t, t = ell + ceil_log(q, |sets|), such that
/// the vectors indexed by every member of `sets` are linearly independent.
/// Each u_j is the lexicographically smallest nonzero vector outside the span
/// of {u_i : i in H, i < j} for every H containing j. Indices are 0-based.
std::vector<Vec> schulman_vectors(const std::vector<std::vector<std::size_t>>& sets, std::size_t m,
                                  std::size_t ell, FieldSpec f);

/// True iff for every H in `sets` the vectors {u_i : i in H} are independent.
bool family_independent_on(const std::vector<Vec>& u, const std::vector<std::vector<std::size_t>>& sets);

/// Entries drawn i.i.d. uniform from a 64-bit Mersenne twister seeded with
/// `seed`. Finite fields only.
Mat random_mat(std::size_t rows, std::size_t cols, FieldSpec f, std::uint64_t seed);

/// Uniform integer in [0, bound) from a raw 64-bit generator, by rejection.
template <class Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        std::uint64_t x = eng();
        if (x < limit)
            return x % bound;
    }
}

} // namespace lodim
