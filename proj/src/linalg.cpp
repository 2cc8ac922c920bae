#include "lodim/linalg.hpp"

#include "lodim/error.hpp"

#include <algorithm>
#include <random>

namespace lodim {

Mat::Mat(FieldSpec f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, FieldElem::zero(f)) {}

Mat Mat::from_rows(FieldSpec f, const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw PreconditionError("row " + std::to_string(r) + " has length " + std::to_string(rows[r].size()) +
                                    ", expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            if (!(rows[r][c].field() == f))
                throw PreconditionError("matrix entry from " + rows[r][c].field().name() + " in " + f.name() +
                                        " matrix");
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

Mat Mat::identity(FieldSpec f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = FieldElem::one(f);
    return m;
}

Vec Mat::col_vec(std::size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back((*this)(r, c));
    return v;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Vec Mat::apply(std::span<const FieldElem> x) const {
    if (x.size() != cols_)
        throw PreconditionError("matrix with " + std::to_string(cols_) + " columns applied to vector of length " +
                                std::to_string(x.size()));
    Vec y = zero_vec(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            y[r] += (*this)(r, c) * x[c];
    return y;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_ || !(field_ == o.field_))
        throw PreconditionError("incompatible matrix product");
    Mat p(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if ((*this)(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                p(i, j) += (*this)(i, k) * o(k, j);
        }
    return p;
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// In-place row reduction to reduced echelon form; returns pivot columns.
std::vector<std::size_t> row_reduce(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t pr = lead;
        while (pr < m.rows() && m(pr, c).is_zero())
            ++pr;
        if (pr == m.rows())
            continue;
        if (pr != lead)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pr, j), m(lead, j));
        FieldElem inv = m(lead, c).inv();
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(lead, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, c).is_zero())
                continue;
            FieldElem factor = m(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(r, j) -= factor * m(lead, j);
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

} // namespace

std::size_t rank(const Mat& m) {
    Mat work = m;
    return row_reduce(work).size();
}

std::size_t rank(FieldSpec f, const std::vector<Vec>& vectors, std::size_t dim) {
    return rank(Mat::from_rows(f, vectors, dim));
}

void Basis::check_dim(std::span<const FieldElem> v) const {
    if (v.size() != dim_)
        throw PreconditionError("vector of length " + std::to_string(v.size()) + " against basis of F^" +
                                std::to_string(dim_));
    for (const auto& e : v)
        if (!(e.field() == field_))
            throw PreconditionError("vector over " + e.field().name() + " against basis over " + field_.name());
}

Vec Basis::reduce(std::span<const FieldElem> v) const {
    check_dim(v);
    Vec w(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        FieldElem factor = w[pivots_[k]];
        if (factor.is_zero())
            continue;
        for (std::size_t j = 0; j < dim_; ++j)
            w[j] -= factor * rows_[k][j];
    }
    return w;
}

bool Basis::contains(std::span<const FieldElem> v) const { return is_zero_vec(reduce(v)); }

bool Basis::insert(std::span<const FieldElem> v) {
    Vec w = reduce(v);
    auto lead = std::find_if(w.begin(), w.end(), [](const FieldElem& e) { return !e.is_zero(); });
    if (lead == w.end())
        return false;
    std::size_t pc = static_cast<std::size_t>(lead - w.begin());
    FieldElem inv = lead->inv();
    for (auto& e : w)
        e *= inv;
    for (auto& row : rows_) {
        FieldElem factor = row[pc];
        if (factor.is_zero())
            continue;
        for (std::size_t j = 0; j < dim_; ++j)
            row[j] -= factor * w[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pc);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
}

bool Basis::is_reduced_echelon() const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (k > 0 && pivots_[k] <= pivots_[k - 1])
            return false;
        const Vec& row = rows_[k];
        for (std::size_t j = 0; j < pivots_[k]; ++j)
            if (!row[j].is_zero())
                return false;
        if (!(row[pivots_[k]] == FieldElem::one(field_)))
            return false;
        for (std::size_t other = 0; other < rows_.size(); ++other)
            if (other != k && !rows_[other][pivots_[k]].is_zero())
                return false;
    }
    return true;
}

ExtendResult extend_basis(const Basis& b, std::span<const FieldElem> v) {
    Basis copy = b;
    bool grew = copy.insert(v);
    return {!grew, std::move(copy)};
}

Basis nullspace_basis(const Mat& m) {
    Mat work = m;
    auto pivots = row_reduce(work);
    Basis out(m.field(), m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec x = zero_vec(m.field(), m.cols());
        x[free] = FieldElem::one(m.field());
        for (std::size_t k = 0; k < pivots.size(); ++k)
            x[pivots[k]] = -work(k, free);
        out.insert(x);
    }
    return out;
}

std::optional<Vec> solve_left(const Mat& b, std::span<const FieldElem> target) {
    // lambda B = target  <=>  B^T lambda^T = target^T. Reduce [B^T | target].
    const std::size_t k = b.rows();
    const std::size_t n = b.cols();
    if (target.size() != n)
        throw PreconditionError("target length does not match matrix width");
    Mat aug(b.field(), n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            aug(i, j) = b(j, i);
        aug(i, k) = target[i];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == k)
        return std::nullopt;
    Vec lambda = zero_vec(b.field(), k);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        lambda[pivots[r]] = aug(r, k);
    return lambda;
}

std::vector<Vec> vandermonde(std::size_t m, std::size_t ell, FieldSpec f) {
    if (ell > m)
        throw PreconditionError("vandermonde requires ell <= m");
    if (auto q = f.size(); q && *q < m)
        throw Infeasible("field " + f.name() + " has fewer than " + std::to_string(m) +
                         " distinct evaluation points");
    std::vector<Vec> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        FieldElem alpha(f, static_cast<long long>(i));
        Vec v;
        FieldElem power = FieldElem::one(f);
        for (std::size_t d = 0; d < ell; ++d) {
            v.push_back(power);
            power *= alpha;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t ceil_log(unsigned q, std::size_t h) {
    std::size_t e = 0;
    unsigned long long pw = 1;
    while (pw < h) {
        pw *= q;
        ++e;
    }
    return e;
}

std::vector<Vec> schulman_vectors(const std::vector<std::vector<std::size_t>>& sets, std::size_t m,
                                  std::size_t ell, FieldSpec f) {
    auto q = f.size();
    if (!q)
        throw PreconditionError("schulman_vectors needs a finite field");
    for (const auto& h : sets) {
        if (h.size() > ell)
            throw PreconditionError("set of size " + std::to_string(h.size()) + " exceeds ell = " +
                                    std::to_string(ell));
        for (auto i : h)
            if (i >= m)
                throw PreconditionError("set element " + std::to_string(i) + " out of range");
    }
    const std::size_t t = ell + ceil_log(*q, sets.size());
    std::vector<Vec> u;
    u.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Basis> forbidden;
        for (const auto& h : sets) {
            if (std::find(h.begin(), h.end(), j) == h.end())
                continue;
            Basis b(f, t);
            for (auto i : h)
                if (i < j)
                    b.insert(u[i]);
            forbidden.push_back(std::move(b));
        }
        // Odometer over F^t in lexicographic order, skipping zero.
        std::vector<unsigned> digits(t, 0);
        bool found = false;
        for (;;) {
            std::size_t pos = t;
            while (pos > 0) {
                --pos;
                if (++digits[pos] < *q)
                    break;
                digits[pos] = 0;
                if (pos == 0) {
                    pos = t; // wrapped
                    break;
                }
            }
            if (pos == t)
                break;
            Vec cand;
            cand.reserve(t);
            for (auto d : digits)
                cand.emplace_back(f, static_cast<long long>(d));
            bool ok = std::none_of(forbidden.begin(), forbidden.end(),
                                   [&](const Basis& b) { return b.contains(cand); });
            if (ok) {
                u.push_back(std::move(cand));
                found = true;
                break;
            }
        }
        if (!found)
            throw Infeasible("no admissible vector for index " + std::to_string(j)); // unreachable by counting
    }
    return u;
}

bool family_independent_on(const std::vector<Vec>& u, const std::vector<std::vector<std::size_t>>& sets) {
    for (const auto& h : sets) {
        if (h.empty())
            continue;
        Basis b(u.at(h[0]).front().field(), u.at(h[0]).size());
        for (auto i : h)
            if (!b.insert(u.at(i)))
                return false;
    }
    return true;
}

Mat random_mat(std::size_t rows, std::size_t cols, FieldSpec f, std::uint64_t seed) {
    auto q = f.size();
    if (!q)
        throw PreconditionError("random_mat needs a finite field");
    std::mt19937_64 eng(seed);
    Mat m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = FieldElem(f, static_cast<long long>(uniform_below(eng, *q)));
    return m;
}

} // namespace lodim
