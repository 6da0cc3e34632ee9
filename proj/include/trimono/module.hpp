#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trimono/algebra.hpp"

namespace trimono {

/// Finitely generated left module over an Algebra: one action matrix per
/// algebra basis element. Immutable, shared by handle.
class Module {
public:
    Module(Algebra a, std::vector<Matrix> actions, bool check = true);
    static Module zero(const Algebra& a);

    const Algebra& algebra() const;
    size_t dim() const;
    const Matrix& action(size_t i) const;
    const std::vector<Matrix>& actions() const;
    /// Action of an arbitrary algebra element (coordinate column).
    Matrix action_of(const Matrix& element) const;

    static Module direct_sum(const Module& x, const Module& y);

    struct Data;
    const Data* raw() const { return d_.get(); }

private:
    explicit Module(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

struct ModuleHom {
    Module source;
    Module target;
    Matrix matrix;  // target.dim x source.dim

    ModuleHom(Module src, Module tgt, Matrix m, bool check = true);
    bool is_injective() const { return kernel(matrix).rows() == 0; }
    bool is_surjective() const { return rank(matrix) == target.dim(); }
    bool is_iso() const { return source.dim() == target.dim() && is_injective(); }
};

// ---- Hom and Ext ----------------------------------------------------------

std::vector<ModuleHom> hom_space(const Module& x, const Module& y);
size_t hom_dim(const Module& x, const Module& y);

/// One module map f: src -> tgt with f * restrict_to == value (free part of
/// the solution chosen deterministically; solution_index > 0 adds the
/// corresponding homogeneous kernel vector). nullopt if unsolvable.
std::optional<Matrix> equivariant_solve(const Module& src, const Module& tgt,
                                        const Matrix& restrict_to, const Matrix& value,
                                        size_t solution_index = 0);

/// Coordinates of an intertwiner in a hom basis (error if not in the span).
std::vector<Scalar> hom_coordinates(const std::vector<ModuleHom>& basis, const Matrix& m);

struct ExtSpace {
    size_t degree;
    Module source;
    Module target;
    size_t dim;
    /// Cocycle representatives: maps P_degree -> target via values on the
    /// resolution generators, flattened in the Hom(P_degree, target)
    /// coordinate space described by gen_vertices.
    std::vector<std::vector<Scalar>> cocycles;
    std::vector<size_t> gen_vertices;
};

ExtSpace ext_space(size_t degree, const Module& x, const Module& y);
size_t ext_dim(size_t degree, const Module& x, const Module& y);

// ---- submodules, quotients, radical/top/socle ------------------------------

/// Submodule spanned by an invariant subspace (error if not invariant).
std::pair<Module, ModuleHom> submodule(const Module& x, const Subspace& s);
std::pair<Module, ModuleHom> quotient_module(const Module& x, const Subspace& s);

Subspace radical_subspace(const Module& x);
std::pair<Module, ModuleHom> radical_submodule(const Module& x);
std::pair<Module, ModuleHom> top_with_projection(const Module& x);
Module top(const Module& x);
std::pair<Module, ModuleHom> socle(const Module& x);

// ---- projective covers, injective envelopes, syzygies ----------------------

struct ProjectiveCover {
    Module cover;
    ModuleHom epi;
    std::vector<size_t> gen_vertices;     // idempotent index per summand
    std::vector<size_t> offsets;          // coordinate offset per summand
    std::vector<Matrix> summand_basis;    // algebra.dim x d_g basis of Lambda e_v
    std::vector<Matrix> gen_coords;       // coords of e_v inside its summand
};

ProjectiveCover projective_cover(const Module& x);
std::pair<Module, ModuleHom> injective_envelope(const Module& x);
bool is_projective(const Module& x);
bool is_injective(const Module& x);
Module syzygy(const Module& x);
Module cosyzygy(const Module& x);

/// Middle term of the extension of x by y defined by a cocycle f: syzygy(x) -> y,
/// together with the inclusion of y and the projection onto x.
struct Extension {
    Module middle;
    ModuleHom incl;  // y -> middle
    ModuleHom proj;  // middle -> x
};
Extension extension_from_cocycle(const Module& x, const Module& y, const Matrix& f);

// ---- isomorphism, decomposition, enumeration -------------------------------

std::optional<ModuleHom> is_isomorphic(const Module& x, const Module& y);

struct Decomposition {
    std::vector<std::pair<Module, size_t>> summands;  // grouped up to iso
    std::vector<Module> pieces;                       // ungrouped, in order
    ModuleHom iso;                                    // direct_sum(pieces) -> x
};
Decomposition decompose(const Module& x);
bool is_indecomposable(const Module& x);

std::vector<Module> enumerate_indecomposables(const Algebra& a, size_t total_dim_bound,
                                              size_t ceiling = 6);

// ---- structure theory of the algebra itself --------------------------------

Module regular_module(const Algebra& a);
std::vector<std::pair<Module, ModuleHom>> indec_projectives(const Algebra& a);
std::vector<Module> indec_injectives(const Algebra& a);

/// D(x): module over opposite(a) on the dual space (transposed actions).
Module duality_D(const Module& x);
/// D(A_A) as a left A-module.
Module dual_of_right_regular(const Algebra& a);
/// D(_AA) as a right A-module, i.e. a left module over opposite(a).
Module dual_of_left_regular(const Algebra& a);

bool is_selfinjective(const Algebra& a);
bool is_frobenius(const Algebra& a);

}  // namespace trimono
