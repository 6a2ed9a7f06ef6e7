#pragma once

// Exact linear algebra over the two-element field.
//
// Vectors and matrix rows are bit-packed into 64-bit words; addition is xor.
// Every basis returned by this module is in reduced row-echelon form with
// pivots (lowest set index of each vector) strictly increasing, so results are
// reproducible bit for bit.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tate::gf2 {

class Vector {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Vector() = default;
    explicit Vector(std::size_t size);

    /// Builds a vector from 0/1 entries, e.g. `Vector::from_bits({1, 0, 1})`.
    static Vector from_bits(std::initializer_list<int> bits);
    static Vector unit(std::size_t size, std::size_t index);

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] bool get(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] std::size_t popcount() const;
    /// Index of the lowest set entry, or nullopt for the zero vector.
    [[nodiscard]] std::optional<std::size_t> lowest() const;
    [[nodiscard]] std::vector<std::size_t> support() const;

    /// Parity of the bitwise product; the field inner product.
    [[nodiscard]] bool dot(const Vector& other) const;

    Vector& operator^=(const Vector& other);
    Vector& operator+=(const Vector& other) { return *this ^= other; }
    Vector& operator&=(const Vector& other);

    friend Vector operator+(Vector lhs, const Vector& rhs) { return lhs ^= rhs; }
    friend Vector operator&(Vector lhs, const Vector& rhs) { return lhs &= rhs; }
    friend bool operator==(const Vector&, const Vector&) = default;

    [[nodiscard]] std::span<const word_type> words() const { return words_; }

    /// "0110"-style rendering, index 0 first.
    [[nodiscard]] std::string to_string() const;

private:
    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    static Matrix from_rows(std::size_t cols, std::vector<Vector> rows);
    static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);

    [[nodiscard]] std::size_t rows() const { return rows_.size(); }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }
    void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }

    [[nodiscard]] const Vector& row(std::size_t r) const { return rows_[r]; }
    [[nodiscard]] Vector column(std::size_t c) const;
    [[nodiscard]] std::vector<Vector> columns() const;
    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] bool is_zero() const;

    /// Submatrix on the given row and column index lists (in the given order).
    [[nodiscard]] Matrix restrict(std::span<const std::size_t> row_idx,
                                  std::span<const std::size_t> col_idx) const;

    Matrix& operator+=(const Matrix& other);
    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend Vector operator*(const Matrix& lhs, const Vector& rhs);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<Vector> rows_;
};

/// Incrementally maintained reduced row-echelon basis of a subspace.
///
/// Each row may carry payload vectors that undergo the same row operations,
/// which is how callers track linear combinations (preimages, chain lifts).
class Echelon {
public:
    struct Row {
        std::size_t pivot = 0;
        Vector vec;
        std::vector<Vector> payload;
    };

    struct Reduction {
        Vector residual;
        std::vector<Vector> payload;
    };

    explicit Echelon(std::size_t dim = 0);

    /// Adds `v` to the span. Returns false (and changes nothing) if `v` is
    /// already in the span.
    bool insert(Vector v, std::vector<Vector> payload = {});

    /// Cancels every pivot of `v`, adding the payloads of the rows used.
    [[nodiscard]] Reduction reduce(Vector v, std::vector<Vector> payload = {}) const;
    [[nodiscard]] bool contains(const Vector& v) const;

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    /// Rows sorted by increasing pivot.
    [[nodiscard]] std::vector<Row> rows() const;
    [[nodiscard]] std::vector<Vector> basis() const;

private:
    std::size_t dim_;
    std::vector<Row> rows_;
    std::vector<std::ptrdiff_t> row_of_pivot_;
    Vector pivot_mask_;
};

/// Canonical reduced echelon basis of the span of `vectors`.
[[nodiscard]] std::vector<Vector> echelonize(std::span<const Vector> vectors, std::size_t dim);

/// Rank by Gaussian elimination on rows.
[[nodiscard]] std::size_t rank(const Matrix& m);
/// Rank by column reduction; an independent code path used for cross-checks.
[[nodiscard]] std::size_t rank_by_columns(const Matrix& m);

[[nodiscard]] std::vector<Vector> kernel_basis(const Matrix& m);
[[nodiscard]] std::vector<Vector> image_basis(const Matrix& m);

/// Some v with m·v = b, or nullopt. Throws InputError on a length mismatch.
[[nodiscard]] std::optional<Vector> solve(const Matrix& m, const Vector& b);

[[nodiscard]] std::optional<Matrix> inverse(const Matrix& m);

/// Tensor product; index (i, j) of the result is i * b.rows() + j.
[[nodiscard]] Matrix kronecker(const Matrix& a, const Matrix& b);

/// Representatives of Z/B: the canonical basis vectors of Z that are
/// independent modulo B, in order. Throws ContractError if B is not inside Z.
[[nodiscard]] std::vector<Vector> quotient_representatives(std::span<const Vector> z,
                                                           std::span<const Vector> b,
                                                           std::size_t dim);

/// Matrix of the map induced by `f` from Z_src/B_src to Z_dst/B_dst in the
/// coordinates of `quotient_representatives`. Throws ContractError naming the
/// offending basis vector if f(B_src) ⊄ B_dst or f(Z_src) ⊄ Z_dst.
[[nodiscard]] Matrix induced_subquotient_map(const Matrix& f,
                                             std::span<const Vector> z_src,
                                             std::span<const Vector> b_src,
                                             std::span<const Vector> z_dst,
                                             std::span<const Vector> b_dst);

}  // namespace tate::gf2
