#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trimono/matrix.hpp"

namespace trimono {

struct QuiverArrow {
    std::string label;
    size_t source;
    size_t target;
};

/// One summand of a relation: coeff * (path). Arrows are stored in
/// application order (arrows[0] acts first); the printed form composes right
/// to left, so a path applying b then a prints as "a*b".
struct PathTerm {
    long long coeff;
    std::vector<size_t> arrows;
};

struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<std::vector<PathTerm>> relations;

    size_t vertex_index(const std::string& label) const;
    size_t arrow_index(const std::string& label) const;
};

/// Factor of a basis-element expression: either an idempotent or a generator,
/// multiplied left to right.
struct GenFactor {
    bool is_idempotent;
    size_t index;
};

struct BasisExprTerm {
    Scalar coeff;
    std::vector<GenFactor> factors;
};

struct GeneratorInfo {
    Matrix element;  // column in algebra coordinates
    // Pierce blocks (i, j) with e_i * g * e_j != 0.
    std::vector<std::pair<size_t, size_t>> blocks;
};

/// Structural data of a basic algebra: a complete set of orthogonal primitive
/// idempotents, the Jacobson radical, and a generating set with expressions
/// of every basis element as sums of products of idempotents and generators.
/// Quiver-presented algebras always carry this; triangular algebras compose
/// it from their parts.
struct AlgebraStructure {
    std::vector<Matrix> idempotents;
    Subspace radical;
    std::vector<GeneratorInfo> generators;
    std::vector<std::vector<BasisExprTerm>> basis_exprs;
};

/// Immutable finite-dimensional associative unital algebra, shared by handle.
class Algebra {
public:
    /// left_mults[i] has c[i][j] as its j-th column.
    static Algebra from_left_mults(Field f, std::vector<std::string> labels,
                                   std::vector<Matrix> left_mults, Matrix unit,
                                   std::optional<QuiverPresentation> pres = std::nullopt,
                                   std::optional<AlgebraStructure> structure = std::nullopt);

    static Algebra path_algebra_quotient(const QuiverPresentation& q, Field f);

    Field field() const;
    size_t dim() const;
    const std::vector<std::string>& basis_labels() const;
    const Matrix& left_mult(size_t i) const;   // L_i, column j = b_i b_j
    const Matrix& right_mult(size_t i) const;  // R_i, column j = b_j b_i
    const Matrix& unit() const;

    /// Product of two coordinate columns.
    Matrix mult(const Matrix& x, const Matrix& y) const;
    /// Left-multiplication operator of an arbitrary element.
    Matrix left_mult_by(const Matrix& x) const;
    Matrix right_mult_by(const Matrix& x) const;

    const std::optional<QuiverPresentation>& presentation() const;
    bool has_structure() const;
    const AlgebraStructure& structure() const;

    bool same_as(const Algebra& o) const;

    struct Data;
    const Data* raw() const { return d_.get(); }

private:
    explicit Algebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

struct Ideal {
    Algebra algebra;
    Subspace space;
};

Algebra opposite(const Algebra& a);

/// Jacobson radical. Uses stored structure when available, otherwise the
/// radical of the trace form (requires Q or p > dim, and a verified-nilpotent
/// result).
Ideal radical(const Algebra& a);

/// Complete list of orthogonal primitive idempotents (basic algebras).
std::vector<Matrix> vertex_idempotents(const Algebra& a);

}  // namespace trimono
