#include "tate/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

#include "tate/errors.hpp"

namespace tate::gf2 {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + Vector::word_bits - 1) / Vector::word_bits; }

}  // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

Vector Vector::from_bits(std::initializer_list<int> bits)
{
    Vector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) {
        if (b & 1)
            v.set(i);
        ++i;
    }
    return v;
}

Vector Vector::unit(std::size_t size, std::size_t index)
{
    Vector v(size);
    v.set(index);
    return v;
}

bool Vector::get(std::size_t i) const
{
    assert(i < size_);
    return (words_[i / word_bits] >> (i % word_bits)) & 1u;
}

void Vector::set(std::size_t i, bool value)
{
    assert(i < size_);
    const word_type mask = word_type{1} << (i % word_bits);
    if (value)
        words_[i / word_bits] |= mask;
    else
        words_[i / word_bits] &= ~mask;
}

void Vector::flip(std::size_t i)
{
    assert(i < size_);
    words_[i / word_bits] ^= word_type{1} << (i % word_bits);
}

bool Vector::is_zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

std::size_t Vector::popcount() const
{
    std::size_t n = 0;
    for (word_type w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::optional<std::size_t> Vector::lowest() const
{
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] != 0)
            return k * word_bits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return std::nullopt;
}

std::vector<std::size_t> Vector::support() const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        word_type w = words_[k];
        while (w != 0) {
            out.push_back(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

bool Vector::dot(const Vector& other) const
{
    assert(size_ == other.size_);
    word_type acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
        acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
}

Vector& Vector::operator^=(const Vector& other)
{
    assert(size_ == other.size_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] ^= other.words_[k];
    return *this;
}

Vector& Vector::operator&=(const Vector& other)
{
    assert(size_ == other.size_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] &= other.words_[k];
    return *this;
}

std::string Vector::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i : support())
        s[i] = '1';
    return s;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Vector(cols)) {}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<int>> rows)
{
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix m(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw InputError("ragged matrix literal");
        std::size_t c = 0;
        for (int b : row) {
            if (b & 1)
                m.set(r, c);
            ++c;
        }
        ++r;
    }
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<Vector> rows)
{
    for (const auto& r : rows)
        if (r.size() != cols)
            throw InputError("row length does not match column count");
    Matrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns)
{
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw InputError("column length does not match row count");
        for (std::size_t r : columns[c].support())
            m.set(r, c);
    }
    return m;
}

Vector Matrix::column(std::size_t c) const
{
    Vector v(rows());
    for (std::size_t r = 0; r < rows(); ++r)
        if (rows_[r].get(c))
            v.set(r);
    return v;
}

std::vector<Vector> Matrix::columns() const
{
    std::vector<Vector> out(cols_, Vector(rows()));
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c : rows_[r].support())
            out[c].set(r);
    return out;
}

Matrix Matrix::transpose() const
{
    return from_rows(rows(), columns());
}

bool Matrix::is_zero() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](const Vector& r) { return r.is_zero(); });
}

Matrix Matrix::restrict(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const
{
    Matrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            if (get(row_idx[i], col_idx[j]))
                m.set(i, j);
    return m;
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    assert(rows() == other.rows() && cols() == other.cols());
    for (std::size_t r = 0; r < rows(); ++r)
        rows_[r] ^= other.rows_[r];
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    if (lhs.cols() != rhs.rows())
        throw InputError("matrix product dimension mismatch");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t k : lhs.rows_[r].support())
            out.rows_[r] ^= rhs.rows_[k];
    return out;
}

Vector operator*(const Matrix& lhs, const Vector& rhs)
{
    if (lhs.cols() != rhs.size())
        throw InputError("matrix-vector dimension mismatch");
    Vector out(lhs.rows());
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        if (lhs.rows_[r].dot(rhs))
            out.set(r);
    return out;
}

// ---------------------------------------------------------------------------
// Echelon

Echelon::Echelon(std::size_t dim) : dim_(dim), row_of_pivot_(dim, -1), pivot_mask_(dim) {}

Echelon::Reduction Echelon::reduce(Vector v, std::vector<Vector> payload) const
{
    assert(v.size() == dim_);
    // Rows are fully reduced, so clearing one pivot never sets another.
    for (std::size_t p : (v & pivot_mask_).support()) {
        const Row& row = rows_[static_cast<std::size_t>(row_of_pivot_[p])];
        v ^= row.vec;
        if (!payload.empty()) {
            assert(payload.size() == row.payload.size());
            for (std::size_t k = 0; k < payload.size(); ++k)
                payload[k] ^= row.payload[k];
        }
    }
    return {std::move(v), std::move(payload)};
}

bool Echelon::contains(const Vector& v) const
{
    return reduce(v).residual.is_zero();
}

bool Echelon::insert(Vector v, std::vector<Vector> payload)
{
    if (!rows_.empty() && payload.size() != rows_.front().payload.size())
        throw InputError("inconsistent payload arity in echelon basis");
    auto red = reduce(std::move(v), std::move(payload));
    const auto pivot = red.residual.lowest();
    if (!pivot)
        return false;
    for (Row& row : rows_) {
        if (row.vec.get(*pivot)) {
            row.vec ^= red.residual;
            for (std::size_t k = 0; k < row.payload.size(); ++k)
                row.payload[k] ^= red.payload[k];
        }
    }
    row_of_pivot_[*pivot] = static_cast<std::ptrdiff_t>(rows_.size());
    pivot_mask_.set(*pivot);
    rows_.push_back({*pivot, std::move(red.residual), std::move(red.payload)});
    return true;
}

std::vector<Echelon::Row> Echelon::rows() const
{
    std::vector<Row> out;
    out.reserve(rows_.size());
    for (std::size_t p : pivot_mask_.support())
        out.push_back(rows_[static_cast<std::size_t>(row_of_pivot_[p])]);
    return out;
}

std::vector<Vector> Echelon::basis() const
{
    std::vector<Vector> out;
    out.reserve(rows_.size());
    for (std::size_t p : pivot_mask_.support())
        out.push_back(rows_[static_cast<std::size_t>(row_of_pivot_[p])].vec);
    return out;
}

// ---------------------------------------------------------------------------
// Free functions

std::vector<Vector> echelonize(std::span<const Vector> vectors, std::size_t dim)
{
    Echelon e(dim);
    for (const auto& v : vectors)
        e.insert(v);
    return e.basis();
}

std::size_t rank(const Matrix& m)
{
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));

    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        std::size_t sel = rank;
        while (sel < rows.size() && !rows[sel].get(c))
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (rows[r].get(c))
                rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::size_t rank_by_columns(const Matrix& m)
{
    Echelon e(m.rows());
    for (const auto& col : m.columns())
        e.insert(col);
    return e.rank();
}

std::vector<Vector> kernel_basis(const Matrix& m)
{
    // Column reduction with combination tracking: every dependent column
    // yields one kernel vector.
    Echelon e(m.rows());
    std::vector<Vector> kernel;
    const auto cols = m.columns();
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto unit = Vector::unit(m.cols(), j);
        auto red = e.reduce(cols[j], {unit});
        if (red.residual.is_zero())
            kernel.push_back(std::move(red.payload[0]));
        else
            e.insert(cols[j], {std::move(unit)});
    }
    return echelonize(kernel, m.cols());
}

std::vector<Vector> image_basis(const Matrix& m)
{
    return echelonize(m.columns(), m.rows());
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw InputError("solve: right-hand side has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(m.rows()));
    Echelon e(m.rows());
    const auto cols = m.columns();
    for (std::size_t j = 0; j < cols.size(); ++j)
        e.insert(cols[j], {Vector::unit(m.cols(), j)});
    auto red = e.reduce(b, {Vector(m.cols())});
    if (!red.residual.is_zero())
        return std::nullopt;
    return std::move(red.payload[0]);
}

Matrix kronecker(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k : a.row(i).support())
            for (std::size_t j = 0; j < b.rows(); ++j)
                for (std::size_t l : b.row(j).support())
                    out.set(i * b.rows() + j, k * b.cols() + l);
    return out;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    std::vector<Vector> inv_cols;
    inv_cols.reserve(n);
    Echelon e(n);
    const auto cols = m.columns();
    for (std::size_t j = 0; j < n; ++j)
        if (!e.insert(cols[j], {Vector::unit(n, j)}))
            return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        inv_cols.push_back(e.reduce(Vector::unit(n, i), {Vector(n)}).payload[0]);
    return Matrix::from_columns(n, inv_cols);
}

std::vector<Vector> quotient_representatives(std::span<const Vector> z, std::span<const Vector> b,
                                             std::size_t dim)
{
    Echelon zspace(dim);
    for (const auto& v : z)
        zspace.insert(v);
    Echelon acc(dim);
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (!zspace.contains(b[k]))
            throw ContractError("boundary basis vector " + std::to_string(k) + " (" + b[k].to_string() +
                                ") is not in the cycle space");
        acc.insert(b[k]);
    }
    std::vector<Vector> reps;
    for (auto& v : zspace.basis())
        if (acc.insert(v))
            reps.push_back(std::move(v));
    return reps;
}

Matrix induced_subquotient_map(const Matrix& f, std::span<const Vector> z_src, std::span<const Vector> b_src,
                               std::span<const Vector> z_dst, std::span<const Vector> b_dst)
{
    const std::size_t src_dim = f.cols();
    const std::size_t dst_dim = f.rows();
    const auto src_reps = quotient_representatives(z_src, b_src, src_dim);
    const auto dst_reps = quotient_representatives(z_dst, b_dst, dst_dim);

    Echelon bounds(dst_dim);
    for (const auto& v : b_dst)
        bounds.insert(v);
    for (std::size_t k = 0; k < b_src.size(); ++k)
        if (!bounds.contains(f * b_src[k]))
            throw ContractError("induced map is not well defined: image of boundary basis vector " +
                                std::to_string(k) + " (" + b_src[k].to_string() + ") is not a boundary");

    // Boundaries carry zero coordinates; representatives carry unit coordinates.
    Echelon coords(dst_dim);
    for (const auto& v : b_dst)
        coords.insert(v, {Vector(dst_reps.size())});
    for (std::size_t k = 0; k < dst_reps.size(); ++k)
        coords.insert(dst_reps[k], {Vector::unit(dst_reps.size(), k)});

    Matrix out(dst_reps.size(), src_reps.size());
    for (std::size_t j = 0; j < src_reps.size(); ++j) {
        auto red = coords.reduce(f * src_reps[j], {Vector(dst_reps.size())});
        if (!red.residual.is_zero())
            throw ContractError("induced map leaves the cycle space: image of representative " +
                                std::to_string(j) + " (" + src_reps[j].to_string() + ") is not a cycle");
        for (std::size_t i : red.payload[0].support())
            out.set(i, j);
    }
    // Representatives of Z_src must map into Z_dst as a whole, including boundaries.
    for (std::size_t k = 0; k < z_src.size(); ++k)
        if (!coords.contains(f * z_src[k]))
            throw ContractError("induced map leaves the cycle space: image of cycle basis vector " +
                                std::to_string(k) + " (" + z_src[k].to_string() + ")");
    return out;
}

}  // namespace tate::gf2
