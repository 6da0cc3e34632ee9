#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trimono/field.hpp"

namespace trimono {

/// Dense matrix over an exact field, row-major. Immutable by convention once
/// built (all library operations return fresh values).
class Matrix {
public:
    Matrix(Field f, size_t rows, size_t cols)
        : f_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(Field f, size_t n);
    static Matrix from_rows(Field f, const std::vector<std::vector<Scalar>>& rows);
    static Matrix col_vector(Field f, const std::vector<Scalar>& entries);

    const Field& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    const Scalar& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    Scalar& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    void set(size_t r, size_t c, const Scalar& v) { e_[r * cols_ + c] = v; }
    void set_long(size_t r, size_t c, long long v) { set(r, c, Scalar::from_long(f_, v)); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix block(size_t r0, size_t c0, size_t nrows, size_t ncols) const;
    Matrix row(size_t r) const { return block(r, 0, 1, cols_); }
    Matrix col(size_t c) const { return block(0, c, rows_, 1); }
    std::vector<Scalar> row_entries(size_t r) const;

    /// Direct sum (block diagonal).
    Matrix dsum(const Matrix& o) const;

    std::string to_string() const;

private:
    Field f_;
    size_t rows_, cols_;
    std::vector<Scalar> e_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<size_t> pivot_cols;
    size_t rank;
};

/// Unique reduced row-echelon form.
RrefResult rref(const Matrix& m);

size_t rank(const Matrix& m);

/// Basis of the right null space; each ROW of the result is one basis vector,
/// in reduced echelon form.
Matrix kernel(const Matrix& m);

/// One particular solution X of m X = rhs (free variables zero, following the
/// rref pivot order), or nullopt if the system is inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

/// Solution of X m = rhs.
std::optional<Matrix> solve_left(const Matrix& m, const Matrix& rhs);

std::optional<Matrix> inverse(const Matrix& m);

/// Kronecker product with a's indices outermost: entry ((i*br+k),(j*bc+l)) =
/// a(i,j)*b(k,l).
Matrix kronecker(const Matrix& a, const Matrix& b);

/// Subspace of k^ambient with canonical reduced-echelon row basis.
class Subspace {
public:
    Subspace(Field f, size_t ambient)
        : ambient_(ambient), basis_(f, 0, ambient) {}

    /// Span of the rows of `vectors`.
    static Subspace from_rows(const Matrix& vectors);
    /// Span of the columns of `vectors`.
    static Subspace from_cols(const Matrix& vectors) { return from_rows(vectors.transpose()); }

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }
    const std::vector<size_t>& pivot_cols() const { return pivots_; }

    bool contains_row(const Matrix& v) const;
    bool contains(const Subspace& o) const;
    bool operator==(const Subspace& o) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

    /// Coordinates of a row vector in the echelon basis (error if outside).
    std::vector<Scalar> coordinates_of_row(const Matrix& v) const;

private:
    size_t ambient_;
    Matrix basis_;
    std::vector<size_t> pivots_;
};

/// Coordinates on the quotient k^ambient / s: returns (proj, section) with
/// proj * section = identity and ker(proj) = s. The section picks the
/// non-pivot coordinates as coset representatives.
std::pair<Matrix, Matrix> quotient_projection(const Subspace& s);

}  // namespace trimono
