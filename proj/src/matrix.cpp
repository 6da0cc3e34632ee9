#include "trimono/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace trimono {

Matrix Matrix::identity(Field f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<Scalar>>& rows) {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), nc);
    for (size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == nc, "ragged row list");
        for (size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

Matrix Matrix::col_vector(Field f, const std::vector<Scalar>& entries) {
    Matrix m(f, entries.size(), 1);
    for (size_t r = 0; r < entries.size(); ++r) m.set(r, 0, entries[r]);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(cols_ == o.rows_, "matrix product shape mismatch");
    require(f_ == o.f_, "matrix field mismatch");
    Matrix out(f_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Scalar& bkj = o.at(k, j);
                if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    Matrix out(f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    Matrix out(f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
    return out;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix out(f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * c;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(f_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || f_ != o.f_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) {
            if (r == c ? !at(r, c).is_one() : !at(r, c).is_zero()) return false;
        }
    return true;
}

Matrix Matrix::hstack(const Matrix& o) const {
    require(rows_ == o.rows_, "hstack row mismatch");
    Matrix out(f_, rows_, cols_ + o.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (size_t c = 0; c < o.cols_; ++c) out.at(r, cols_ + c) = o.at(r, c);
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& o) const {
    require(cols_ == o.cols_, "vstack col mismatch");
    Matrix out(f_, rows_ + o.rows_, cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (size_t r = 0; r < o.rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(rows_ + r, c) = o.at(r, c);
    return out;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nrows, size_t ncols) const {
    require(r0 + nrows <= rows_ && c0 + ncols <= cols_, "block out of range");
    Matrix out(f_, nrows, ncols);
    for (size_t r = 0; r < nrows; ++r)
        for (size_t c = 0; c < ncols; ++c) out.at(r, c) = at(r0 + r, c0 + c);
    return out;
}

std::vector<Scalar> Matrix::row_entries(size_t r) const {
    std::vector<Scalar> out;
    out.reserve(cols_);
    for (size_t c = 0; c < cols_; ++c) out.push_back(at(r, c));
    return out;
}

Matrix Matrix::dsum(const Matrix& o) const {
    Matrix out(f_, rows_ + o.rows_, cols_ + o.cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (size_t r = 0; r < o.rows_; ++r)
        for (size_t c = 0; c < o.cols_; ++c) out.at(rows_ + r, cols_ + c) = o.at(r, c);
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            if (c) os << ' ';
            os << at(r, c).to_string();
        }
        os << '\n';
    }
    return os.str();
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    size_t nr = a.rows(), nc = a.cols();
    std::vector<size_t> pivots;
    size_t pr = 0;
    for (size_t c = 0; c < nc && pr < nr; ++c) {
        size_t pivot = nr;
        for (size_t r = pr; r < nr; ++r)
            if (!a.at(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == nr) continue;
        if (pivot != pr)
            for (size_t j = 0; j < nc; ++j) std::swap(a.at(pr, j), a.at(pivot, j));
        Scalar inv = a.at(pr, c).inverse();
        for (size_t j = c; j < nc; ++j) a.at(pr, j) *= inv;
        for (size_t r = 0; r < nr; ++r) {
            if (r == pr) continue;
            Scalar factor = a.at(r, c);
            if (factor.is_zero()) continue;
            for (size_t j = c; j < nc; ++j) a.at(r, j) -= factor * a.at(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return {a, pivots, pivots.size()};
}

size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
    auto rr = rref(m);
    const Field& f = m.field();
    size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < nc; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix out(f, free_cols.size(), nc);
    for (size_t i = 0; i < free_cols.size(); ++i) {
        size_t fc = free_cols[i];
        out.set(i, fc, Scalar::one(f));
        for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
            out.set(i, rr.pivot_cols[pi], -rr.reduced.at(pi, fc));
    }
    // reorder rows so the basis is itself in reduced echelon form
    return rref(out).reduced.block(0, 0, out.rows(), nc);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
    require(m.rows() == rhs.rows(), "solve: rhs row mismatch");
    require(m.field() == rhs.field(), "solve: field mismatch");
    auto rr = rref(m.hstack(rhs));
    size_t nc = m.cols();
    // any pivot in the rhs block means inconsistency
    for (size_t c : rr.pivot_cols)
        if (c >= nc) return std::nullopt;
    Matrix x(m.field(), nc, rhs.cols());
    for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
        for (size_t j = 0; j < rhs.cols(); ++j)
            x.at(rr.pivot_cols[pi], j) = rr.reduced.at(pi, nc + j);
    return x;
}

std::optional<Matrix> solve_left(const Matrix& m, const Matrix& rhs) {
    auto xt = solve(m.transpose(), rhs.transpose());
    if (!xt) return std::nullopt;
    return xt->transpose();
}

std::optional<Matrix> inverse(const Matrix& m) {
    require(m.rows() == m.cols(), "inverse of non-square matrix");
    auto x = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (!((m * *x).is_identity())) return std::nullopt;
    return x;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    require(a.field() == b.field(), "kronecker field mismatch");
    Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            const Scalar& aij = a.at(i, j);
            if (aij.is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return out;
}

Subspace Subspace::from_rows(const Matrix& vectors) {
    Subspace s(vectors.field(), vectors.cols());
    auto rr = rref(vectors);
    s.basis_ = rr.reduced.block(0, 0, rr.rank, vectors.cols());
    s.pivots_ = rr.pivot_cols;
    return s;
}

bool Subspace::contains_row(const Matrix& v) const {
    require(v.cols() == ambient_, "subspace ambient mismatch");
    if (dim() == 0) return v.is_zero();
    return rank(basis_.vstack(v)) == dim();
}

bool Subspace::contains(const Subspace& o) const {
    require(o.ambient_ == ambient_, "subspace ambient mismatch");
    if (o.dim() == 0) return true;
    return rank(basis_.vstack(o.basis_)) == dim();
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
    require(o.ambient_ == ambient_, "subspace ambient mismatch");
    return from_rows(basis_.vstack(o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
    require(o.ambient_ == ambient_, "subspace ambient mismatch");
    // rows of [x y] with x*basis = y*o.basis; intersection = image of x*basis
    if (dim() == 0 || o.dim() == 0) return Subspace(field(), ambient_);
    Matrix stacked = basis_.vstack(o.basis_);  // (d1+d2) x ambient
    Matrix ker = kernel(stacked.transpose()); // rows: (x, -y) combos
    Matrix xpart = ker.block(0, 0, ker.rows(), dim());
    return from_rows(xpart * basis_);
}

std::pair<Matrix, Matrix> quotient_projection(const Subspace& s) {
    const Field f = s.field();
    size_t n = s.ambient_dim();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : s.pivot_cols()) is_pivot[c] = true;
    std::vector<size_t> rest;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) rest.push_back(c);
    size_t q = rest.size();
    Matrix proj(f, q, n);
    for (size_t k = 0; k < q; ++k) proj.at(k, rest[k]) = Scalar::one(f);
    for (size_t pi = 0; pi < s.pivot_cols().size(); ++pi)
        for (size_t k = 0; k < q; ++k) proj.at(k, s.pivot_cols()[pi]) = -s.basis().at(pi, rest[k]);
    Matrix section(f, n, q);
    for (size_t k = 0; k < q; ++k) section.at(rest[k], k) = Scalar::one(f);
    return {proj, section};
}

std::vector<Scalar> Subspace::coordinates_of_row(const Matrix& v) const {
    require(v.cols() == ambient_ && v.rows() == 1, "bad vector shape");
    auto x = solve(basis_.transpose(), v.transpose());
    require(x.has_value() && (basis_.transpose() * *x == v.transpose()),
            "vector not in subspace");
    std::vector<Scalar> out;
    out.reserve(dim());
    for (size_t i = 0; i < dim(); ++i) out.push_back(x->at(i, 0));
    return out;
}

}  // namespace trimono
