#pragma once

#include "trimono/module.hpp"

namespace trimono {

/// An A-B-bimodule: commuting left A- and right B-actions on one space.
class Bimodule {
public:
    Bimodule(Algebra a, Algebra b, std::vector<Matrix> left_actions,
             std::vector<Matrix> right_actions, bool check = true);

    static Bimodule regular(const Algebra& a);  // A as an (A,A)-bimodule

    const Algebra& left_algebra() const;
    const Algebra& right_algebra() const;
    size_t dim() const;
    const Matrix& left_action(size_t i) const;
    const Matrix& right_action(size_t j) const;
    Matrix left_action_of(const Matrix& a) const;
    Matrix right_action_of(const Matrix& b) const;

    Module as_left_module() const;   // over A
    Module as_right_module() const;  // left module over opposite(B)
    /// The same space as a (B^op, A^op)-bimodule.
    Bimodule swapped() const;

    struct Data;
    const Data* raw() const { return d_.get(); }

private:
    explicit Bimodule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// Quotient data of a tensor product over a middle algebra: projection from
/// and section into the plain product space (indices of P x Q with P's index
/// outermost).
struct TensorQuotient {
    size_t plain_dim;
    Matrix proj;     // qdim x plain_dim
    Matrix section;  // plain_dim x qdim, coset representatives
};

/// Induced operator on the quotient (checks the operator descends).
Matrix descend_operator(const TensorQuotient& t, const Matrix& plain_op);

/// M (x)_B Y as a left A-module.
struct TensorData {
    Module module;  // over A
    TensorQuotient quot;
};
TensorData tensor_over_B(const Bimodule& m, const Module& y);

/// Functoriality: M (x) f for a B-map f: Y1 -> Y2, as a matrix between the
/// two quotient coordinate spaces.
Matrix tensor_map(const Bimodule& m, const TensorData& t1, const TensorData& t2, const Matrix& f);

/// U (x)_A M as a right B-module (returned over opposite(B)); u is a right
/// A-module given as a left module over opposite(A).
struct RightTensorData {
    Module module;  // over opposite(B)
    TensorQuotient quot;
};
RightTensorData tensor_UM(const Module& u, const Bimodule& m);

/// P (x)_C Q of a (A,C)- and a (C,B)-bimodule.
struct BimTensorData {
    Bimodule bim;
    TensorQuotient quot;
};
BimTensorData bimodule_tensor(const Bimodule& p, const Bimodule& q);

/// Hom_A(M, X) as a left B-module, with the chosen basis of A-maps M -> X.
struct HomAMData {
    Module module;              // over B
    std::vector<Matrix> basis;  // dimX x dimM matrices
};
HomAMData hom_A_M(const Bimodule& m, const Module& x);

/// Direct adjunction transports eta / eta^{-1} between Hom_A(M (x)_B Y, X)
/// and Hom_B(Y, Hom_A(M, X)).
/// eta(phi)(y)(m) = phi(m (x) y).
Matrix eta_of(const Bimodule& m, const TensorData& t, const HomAMData& h, const Module& y,
              const Matrix& phi);
Matrix eta_inv_of(const Bimodule& m, const TensorData& t, const HomAMData& h, const Module& y,
                  const Module& x, const Matrix& beta);

/// Full adjunction isomorphism with explicit bases (invertible by
/// construction; throws if the dimension bookkeeping fails).
struct AdjunctionData {
    TensorData tens;
    HomAMData hom;
    std::vector<ModuleHom> lhs_basis;  // Hom_A(M (x) Y, X)
    std::vector<ModuleHom> rhs_basis;  // Hom_B(Y, Hom_A(M,X))
    Matrix eta;      // coordinates lhs -> rhs
    Matrix eta_inv;
};
AdjunctionData adjunction_eta(const Bimodule& m, const Module& y, const Module& x);

/// The involution map M (x)_B Hom_A(M,X) -> X, phi(m (x) f) = f(m).
struct InvolutionData {
    HomAMData hom;
    TensorData tens;  // M (x)_B Hom_A(M,X)
    Matrix phi;       // dimX x qdim
};
InvolutionData involution_phi(const Bimodule& m, const Module& x);

bool is_left_projective(const Bimodule& m);
bool is_right_projective(const Bimodule& m);
bool satisfies_IP(const Bimodule& m);

Algebra enveloping_algebra(const Algebra& a, const Algebra& b);  // A (x)_k B^op

/// Exchangeable-bimodule certificate: an (A,B)-bimodule isomorphism
/// g: D(A) (x)_A M -> M (x)_B D(B), found by an isomorphism search over the
/// enveloping algebra. Present iff both sides of M are projective and the two
/// bimodules are isomorphic.
struct ExchangeableIso {
    BimTensorData dam;  // D(A) (x)_A M
    BimTensorData mdb;  // M (x)_B D(B)
    Matrix g;           // dam -> mdb quotient coordinates, invertible
};
std::optional<ExchangeableIso> exchangeable_iso(const Bimodule& m);

// ---------------------------------------------------------------------------
// the triangular matrix algebra and its triple modules

class TriangularAlgebra {
public:
    static TriangularAlgebra build(Algebra a, Bimodule m, Algebra b);

    const Algebra& A() const;
    const Algebra& B() const;
    const Bimodule& M() const;
    const Algebra& flat() const;
    const Matrix& e1() const;
    const Matrix& e2() const;

    Matrix embed_A(const Matrix& a) const;
    Matrix embed_M(const Matrix& m) const;
    Matrix embed_B(const Matrix& b) const;
    Matrix project_A(const Matrix& x) const;
    Matrix project_M(const Matrix& x) const;
    Matrix project_B(const Matrix& x) const;

    /// The same algebra with the roles of A and B exchanged: the triangular
    /// algebra (B^op, M~, A^op), whose flat algebra is isomorphic to the
    /// opposite of this one by the coordinate swap (A|M|B) -> (B|M|A).
    TriangularAlgebra opposite_triangular() const;

    bool same_as(const TriangularAlgebra& o) const;

    struct Data;
    const Data* raw() const { return d_.get(); }

private:
    explicit TriangularAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// The triple [X; Y]_phi identified with a left module over the triangular
/// algebra. Carries the flat module realization on X (+) Y coordinates.
class TripleModule {
public:
    TripleModule(TriangularAlgebra lam, Module x, Module y, Matrix phi);

    const TriangularAlgebra& lambda() const;
    const Module& x() const;
    const Module& y() const;
    const Matrix& phi() const;  // dimX x qdim(M (x) Y)
    const TensorData& tensor() const;
    const Module& flat() const;

    static TripleModule direct_sum(const TripleModule& s, const TripleModule& t);

    struct Data;
    const Data* raw() const { return d_.get(); }

private:
    explicit TripleModule(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

struct TripleHom {
    TripleModule source;
    TripleModule target;
    Matrix f1;  // X2 x X1
    Matrix f2;  // Y2 x Y1

    TripleHom(TripleModule s, TripleModule t, Matrix f1_, Matrix f2_, bool check = true);
    Matrix flat_matrix() const { return f1.dsum(f2); }
    bool is_iso() const;
};

Module triple_to_flat(const TripleModule& t);
TripleModule flat_to_triple(const TriangularAlgebra& lam, const Module& m);

std::vector<TripleHom> triple_hom_space(const TripleModule& s, const TripleModule& t);
size_t triple_hom_dim(const TripleModule& s, const TripleModule& t);
std::optional<TripleHom> triple_is_isomorphic(const TripleModule& s, const TripleModule& t);

}  // namespace trimono
