#include "trimono/bimodule.hpp"

#include <algorithm>

namespace trimono {

struct Bimodule::Data {
    Algebra a;
    Algebra b;
    size_t dim;
    std::vector<Matrix> left;
    std::vector<Matrix> right;
};

Bimodule::Bimodule(Algebra a, Algebra b, std::vector<Matrix> left_actions,
                   std::vector<Matrix> right_actions, bool check) {
    auto d = std::make_shared<Data>(Data{std::move(a), std::move(b), 0, std::move(left_actions),
                                         std::move(right_actions)});
    d->dim = d->left.empty() ? (d->right.empty() ? 0 : d->right[0].rows()) : d->left[0].rows();
    if (check) {
        // left module over A, right module = left module over B^op
        Module(d->a, d->left);
        Module(opposite(d->b), d->right);
        for (const auto& l : d->left)
            for (const auto& r : d->right)
                require(l * r == r * l, "bimodule actions do not commute");
    }
    d_ = std::move(d);
}

Bimodule Bimodule::regular(const Algebra& a) {
    std::vector<Matrix> l, r;
    for (size_t i = 0; i < a.dim(); ++i) {
        l.push_back(a.left_mult(i));
        r.push_back(a.right_mult(i));
    }
    return Bimodule(a, a, std::move(l), std::move(r), false);
}

const Algebra& Bimodule::left_algebra() const { return d_->a; }
const Algebra& Bimodule::right_algebra() const { return d_->b; }
size_t Bimodule::dim() const { return d_->dim; }
const Matrix& Bimodule::left_action(size_t i) const { return d_->left.at(i); }
const Matrix& Bimodule::right_action(size_t j) const { return d_->right.at(j); }

Matrix Bimodule::left_action_of(const Matrix& a) const {
    Matrix out(d_->a.field(), d_->dim, d_->dim);
    for (size_t i = 0; i < d_->a.dim(); ++i)
        if (!a.at(i, 0).is_zero()) out = out + d_->left[i].scaled(a.at(i, 0));
    return out;
}

Matrix Bimodule::right_action_of(const Matrix& b) const {
    Matrix out(d_->b.field(), d_->dim, d_->dim);
    for (size_t j = 0; j < d_->b.dim(); ++j)
        if (!b.at(j, 0).is_zero()) out = out + d_->right[j].scaled(b.at(j, 0));
    return out;
}

Module Bimodule::as_left_module() const { return Module(d_->a, d_->left, false); }

Module Bimodule::as_right_module() const { return Module(opposite(d_->b), d_->right, false); }

Bimodule Bimodule::swapped() const {
    return Bimodule(opposite(d_->b), opposite(d_->a), d_->right, d_->left, false);
}

// ---------------------------------------------------------------------------
// tensor quotients

namespace {

TensorQuotient tensor_quotient(Field f, size_t dp, size_t dq,
                               const std::vector<Matrix>& right_on_p,
                               const std::vector<Matrix>& left_on_q) {
    size_t plain = dp * dq;
    std::vector<std::vector<Scalar>> rows;
    for (size_t ci = 0; ci < right_on_p.size(); ++ci)
        for (size_t i = 0; i < dp; ++i) {
            Matrix pc = right_on_p[ci].col(i);
            for (size_t j = 0; j < dq; ++j) {
                std::vector<Scalar> row(plain, Scalar::zero(f));
                for (size_t s = 0; s < dp; ++s)
                    if (!pc.at(s, 0).is_zero()) row[s * dq + j] += pc.at(s, 0);
                Matrix cq = left_on_q[ci].col(j);
                for (size_t t = 0; t < dq; ++t)
                    if (!cq.at(t, 0).is_zero()) row[i * dq + t] -= cq.at(t, 0);
                rows.push_back(std::move(row));
            }
        }
    Subspace bal = rows.empty() ? Subspace(f, plain)
                                : Subspace::from_rows(Matrix::from_rows(f, rows));
    auto [proj, section] = quotient_projection(bal);
    return {plain, proj, section};
}

}  // namespace

Matrix descend_operator(const TensorQuotient& t, const Matrix& plain_op) {
    require(plain_op.rows() == t.plain_dim && plain_op.cols() == t.plain_dim,
            "descend: operator shape mismatch");
    const Field f = plain_op.field();
    Matrix on_quot = t.proj * plain_op * t.section;
    // well-definedness: the operator must preserve the balancing subspace
    Matrix residue = t.proj * plain_op -
                     on_quot * t.proj;
    require(residue.is_zero(), "operator does not descend to the tensor quotient");
    return on_quot;
}

TensorData tensor_over_B(const Bimodule& m, const Module& y) {
    require(m.right_algebra().same_as(y.algebra()), "tensor: right algebra mismatch");
    const Algebra& a = m.left_algebra();
    const Field f = a.field();
    std::vector<Matrix> rp, lq;
    for (size_t j = 0; j < m.right_algebra().dim(); ++j) rp.push_back(m.right_action(j));
    for (size_t j = 0; j < y.algebra().dim(); ++j) lq.push_back(y.action(j));
    TensorQuotient q = tensor_quotient(f, m.dim(), y.dim(), rp, lq);
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i)
        acts.push_back(descend_operator(q, kronecker(m.left_action(i), Matrix::identity(f, y.dim()))));
    return {Module(a, std::move(acts)), q};
}

Matrix tensor_map(const Bimodule& m, const TensorData& t1, const TensorData& t2, const Matrix& f) {
    const Field k = f.field();
    size_t dm = m.dim(), y1 = f.cols(), y2 = f.rows();
    Matrix plain_op(k, dm * y2, dm * y1);
    for (size_t i = 0; i < dm; ++i)
        for (size_t r = 0; r < y2; ++r)
            for (size_t c = 0; c < y1; ++c) plain_op.at(i * y2 + r, i * y1 + c) = f.at(r, c);
    Matrix out = t2.quot.proj * plain_op * t1.quot.section;
    Matrix residue = t2.quot.proj * plain_op - out * t1.quot.proj;
    require(residue.is_zero(), "tensor_map: map does not descend");
    return out;
}

RightTensorData tensor_UM(const Module& u, const Bimodule& m) {
    // u: right A-module given over opposite(A)
    require(u.algebra().same_as(opposite(m.left_algebra())), "tensor_UM: algebra mismatch");
    const Field f = u.algebra().field();
    std::vector<Matrix> rp, lq;
    for (size_t i = 0; i < m.left_algebra().dim(); ++i) {
        rp.push_back(u.action(i));        // u -> u . a_i
        lq.push_back(m.left_action(i));   // m -> a_i . m
    }
    TensorQuotient q = tensor_quotient(f, u.dim(), m.dim(), rp, lq);
    Algebra bop = opposite(m.right_algebra());
    std::vector<Matrix> acts;
    for (size_t j = 0; j < bop.dim(); ++j)
        acts.push_back(descend_operator(q, kronecker(Matrix::identity(f, u.dim()), m.right_action(j))));
    return {Module(bop, std::move(acts)), q};
}

BimTensorData bimodule_tensor(const Bimodule& p, const Bimodule& q) {
    require(p.right_algebra().same_as(q.left_algebra()), "bimodule_tensor: middle mismatch");
    const Field f = p.left_algebra().field();
    std::vector<Matrix> rp, lq;
    for (size_t i = 0; i < p.right_algebra().dim(); ++i) {
        rp.push_back(p.right_action(i));
        lq.push_back(q.left_action(i));
    }
    TensorQuotient quot = tensor_quotient(f, p.dim(), q.dim(), rp, lq);
    std::vector<Matrix> left, right;
    for (size_t i = 0; i < p.left_algebra().dim(); ++i)
        left.push_back(
            descend_operator(quot, kronecker(p.left_action(i), Matrix::identity(f, q.dim()))));
    for (size_t j = 0; j < q.right_algebra().dim(); ++j)
        right.push_back(
            descend_operator(quot, kronecker(Matrix::identity(f, p.dim()), q.right_action(j))));
    return {Bimodule(p.left_algebra(), q.right_algebra(), std::move(left), std::move(right)), quot};
}

// ---------------------------------------------------------------------------
// Hom_A(M, -) and the adjunction

namespace {

std::vector<Scalar> coords_in_matrix_basis(const std::vector<Matrix>& basis, const Matrix& v) {
    require(!basis.empty(), "empty matrix basis");
    const Field f = v.field();
    size_t n = v.rows() * v.cols();
    Matrix sys(f, n, basis.size());
    for (size_t k = 0; k < basis.size(); ++k)
        for (size_t r = 0; r < v.rows(); ++r)
            for (size_t c = 0; c < v.cols(); ++c)
                sys.at(r * v.cols() + c, k) = basis[k].at(r, c);
    Matrix rhs(f, n, 1);
    for (size_t r = 0; r < v.rows(); ++r)
        for (size_t c = 0; c < v.cols(); ++c) rhs.at(r * v.cols() + c, 0) = v.at(r, c);
    auto sol = solve(sys, rhs);
    require(sol.has_value() && (sys * *sol == rhs), "matrix not in basis span");
    std::vector<Scalar> out;
    for (size_t k = 0; k < basis.size(); ++k) out.push_back(sol->at(k, 0));
    return out;
}

}  // namespace

HomAMData hom_A_M(const Bimodule& m, const Module& x) {
    require(m.left_algebra().same_as(x.algebra()), "hom_A_M: algebra mismatch");
    const Algebra& b = m.right_algebra();
    const Field f = b.field();
    auto homs = hom_space(m.as_left_module(), x);
    std::vector<Matrix> basis;
    for (const auto& h : homs) basis.push_back(h.matrix);
    size_t n = basis.size();
    std::vector<Matrix> acts;
    for (size_t j = 0; j < b.dim(); ++j) {
        Matrix act(f, n, n);
        for (size_t k = 0; k < n; ++k) {
            Matrix bf = basis[k] * m.right_action(j);  // (b.f)(v) = f(v.b)
            if (n > 0) {
                auto coords = coords_in_matrix_basis(basis, bf);
                for (size_t r = 0; r < n; ++r) act.at(r, k) = coords[r];
            }
        }
        acts.push_back(act);
    }
    return {Module(b, std::move(acts)), basis};
}

Matrix eta_of(const Bimodule& m, const TensorData& t, const HomAMData& h, const Module& y,
              const Matrix& phi) {
    const Field f = phi.field();
    size_t dy = y.dim(), dm = m.dim();
    size_t dx = phi.rows();
    Matrix out(f, h.module.dim(), dy);
    for (size_t j = 0; j < dy; ++j) {
        Matrix g(f, dx, dm);
        for (size_t i = 0; i < dm; ++i) {
            Matrix val = phi * t.quot.proj.col(i * dy + j);
            for (size_t r = 0; r < dx; ++r) g.at(r, i) = val.at(r, 0);
        }
        if (h.module.dim() > 0) {
            auto coords = coords_in_matrix_basis(h.basis, g);
            for (size_t r = 0; r < h.module.dim(); ++r) out.at(r, j) = coords[r];
        } else {
            require(g.is_zero(), "eta: value outside Hom_A(M,X)");
        }
    }
    return out;
}

Matrix eta_inv_of(const Bimodule& m, const TensorData& t, const HomAMData& h, const Module& y,
                  const Module& x, const Matrix& beta) {
    const Field f = beta.field();
    size_t dy = y.dim(), dm = m.dim(), dx = x.dim();
    require(beta.rows() == h.module.dim() && beta.cols() == dy, "eta_inv: beta shape");
    Matrix plain(f, dx, dm * dy);
    for (size_t j = 0; j < dy; ++j) {
        Matrix g(f, dx, dm);
        for (size_t k = 0; k < h.module.dim(); ++k)
            if (!beta.at(k, j).is_zero()) g = g + h.basis[k].scaled(beta.at(k, j));
        for (size_t i = 0; i < dm; ++i)
            for (size_t r = 0; r < dx; ++r) plain.at(r, i * dy + j) = g.at(r, i);
    }
    Matrix phi = plain * t.quot.section;
    require((phi * t.quot.proj == plain), "eta_inv: map does not descend to the tensor quotient");
    return phi;
}

AdjunctionData adjunction_eta(const Bimodule& m, const Module& y, const Module& x) {
    TensorData tens = tensor_over_B(m, y);
    HomAMData hom = hom_A_M(m, x);
    auto lhs = hom_space(tens.module, x);
    auto rhs = hom_space(y, hom.module);
    require(lhs.size() == rhs.size(), "adjunction: dimension mismatch");
    const Field f = m.left_algebra().field();
    Matrix eta(f, rhs.size(), lhs.size());
    for (size_t t = 0; t < lhs.size(); ++t) {
        Matrix b = eta_of(m, tens, hom, y, lhs[t].matrix);
        if (!rhs.empty()) {
            auto coords = hom_coordinates(rhs, b);
            for (size_t r = 0; r < rhs.size(); ++r) eta.at(r, t) = coords[r];
        }
    }
    auto inv = inverse(eta);
    require(lhs.empty() || inv.has_value(), "adjunction map not invertible");
    return {tens, hom, lhs, rhs, eta, lhs.empty() ? eta : *inv};
}

InvolutionData involution_phi(const Bimodule& m, const Module& x) {
    HomAMData hom = hom_A_M(m, x);
    TensorData tens = tensor_over_B(m, hom.module);
    Matrix phi = eta_inv_of(m, tens, hom, hom.module, x,
                            Matrix::identity(m.left_algebra().field(), hom.module.dim()));
    return {hom, tens, phi};
}

bool is_left_projective(const Bimodule& m) { return is_projective(m.as_left_module()); }

bool is_right_projective(const Bimodule& m) { return is_projective(m.as_right_module()); }

bool satisfies_IP(const Bimodule& m) {
    if (!is_right_projective(m)) return false;
    Module db = dual_of_right_regular(m.right_algebra());
    return is_injective(tensor_over_B(m, db).module);
}

Algebra enveloping_algebra(const Algebra& a, const Algebra& b) {
    require(a.field() == b.field(), "enveloping: field mismatch");
    const Field f = a.field();
    size_t da = a.dim(), db = b.dim(), n = da * db;
    std::vector<std::string> labels;
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < db; ++j)
            labels.push_back(a.basis_labels()[i] + "(x)" + b.basis_labels()[j]);
    std::vector<Matrix> lm;
    lm.reserve(n);
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < db; ++j) {
            // (a_i (x) b_j)(a_k (x) b_l) = a_i a_k (x) b_l b_j
            Matrix L(f, n, n);
            for (size_t k = 0; k < da; ++k) {
                Matrix ca = a.left_mult(i).col(k);
                for (size_t l = 0; l < db; ++l) {
                    Matrix cb = b.left_mult(l).col(j);
                    for (size_t s = 0; s < da; ++s) {
                        if (ca.at(s, 0).is_zero()) continue;
                        for (size_t t = 0; t < db; ++t)
                            if (!cb.at(t, 0).is_zero())
                                L.at(s * db + t, k * db + l) = ca.at(s, 0) * cb.at(t, 0);
                    }
                }
            }
            lm.push_back(L);
        }
    Matrix unit(f, n, 1);
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < db; ++j) {
            Scalar u = a.unit().at(i, 0) * b.unit().at(j, 0);
            if (!u.is_zero()) unit.at(i * db + j, 0) = u;
        }
    return Algebra::from_left_mults(f, std::move(labels), std::move(lm), unit);
}

namespace {

Module bimodule_as_enveloping_module(const Bimodule& m, const Algebra& env) {
    const Field f = env.field();
    size_t da = m.left_algebra().dim(), db = m.right_algebra().dim();
    std::vector<Matrix> acts;
    acts.reserve(da * db);
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < db; ++j) acts.push_back(m.left_action(i) * m.right_action(j));
    return Module(env, std::move(acts));
}

Bimodule dual_regular_bimodule(const Algebra& a) {
    // D(A) with (x f y)(z) = f(y z x)
    std::vector<Matrix> left, right;
    for (size_t i = 0; i < a.dim(); ++i) {
        left.push_back(a.right_mult(i).transpose());
        right.push_back(a.left_mult(i).transpose());
    }
    return Bimodule(a, a, std::move(left), std::move(right));
}

}  // namespace

std::optional<ExchangeableIso> exchangeable_iso(const Bimodule& m) {
    require(m.left_algebra().field().is_prime_field(),
            "exchangeable_iso requires a prime field (isomorphism search)");
    if (!is_left_projective(m) || !is_right_projective(m)) return std::nullopt;
    const Algebra& a = m.left_algebra();
    const Algebra& b = m.right_algebra();
    BimTensorData dam = bimodule_tensor(dual_regular_bimodule(a), m);
    BimTensorData mdb = bimodule_tensor(m, dual_regular_bimodule(b));
    Algebra env = enveloping_algebra(a, b);
    Module m1 = bimodule_as_enveloping_module(dam.bim, env);
    Module m2 = bimodule_as_enveloping_module(mdb.bim, env);
    auto iso = is_isomorphic(m1, m2);
    if (!iso) return std::nullopt;
    return ExchangeableIso{dam, mdb, iso->matrix};
}

// ---------------------------------------------------------------------------
// the triangular matrix algebra

struct TriangularAlgebra::Data {
    Algebra a;
    Algebra b;
    Bimodule m;
    Algebra flat;
    Matrix e1, e2;
    size_t da, dm, db;
};

const Algebra& TriangularAlgebra::A() const { return d_->a; }
const Algebra& TriangularAlgebra::B() const { return d_->b; }
const Bimodule& TriangularAlgebra::M() const { return d_->m; }
const Algebra& TriangularAlgebra::flat() const { return d_->flat; }
const Matrix& TriangularAlgebra::e1() const { return d_->e1; }
const Matrix& TriangularAlgebra::e2() const { return d_->e2; }

Matrix TriangularAlgebra::embed_A(const Matrix& a) const {
    Matrix out(d_->flat.field(), d_->flat.dim(), 1);
    for (size_t i = 0; i < d_->da; ++i) out.at(i, 0) = a.at(i, 0);
    return out;
}

Matrix TriangularAlgebra::embed_M(const Matrix& m) const {
    Matrix out(d_->flat.field(), d_->flat.dim(), 1);
    for (size_t i = 0; i < d_->dm; ++i) out.at(d_->da + i, 0) = m.at(i, 0);
    return out;
}

Matrix TriangularAlgebra::embed_B(const Matrix& b) const {
    Matrix out(d_->flat.field(), d_->flat.dim(), 1);
    for (size_t i = 0; i < d_->db; ++i) out.at(d_->da + d_->dm + i, 0) = b.at(i, 0);
    return out;
}

Matrix TriangularAlgebra::project_A(const Matrix& x) const { return x.block(0, 0, d_->da, 1); }
Matrix TriangularAlgebra::project_M(const Matrix& x) const {
    return x.block(d_->da, 0, d_->dm, 1);
}
Matrix TriangularAlgebra::project_B(const Matrix& x) const {
    return x.block(d_->da + d_->dm, 0, d_->db, 1);
}

bool TriangularAlgebra::same_as(const TriangularAlgebra& o) const {
    return d_ == o.d_ || d_->flat.same_as(o.d_->flat);
}

TriangularAlgebra TriangularAlgebra::build(Algebra a, Bimodule m, Algebra b) {
    require(m.left_algebra().same_as(a) && m.right_algebra().same_as(b),
            "triangular algebra: bimodule does not match A and B");
    require(a.field() == b.field(), "triangular algebra: field mismatch");
    const Field f = a.field();
    size_t da = a.dim(), dm = m.dim(), db = b.dim(), n = da + dm + db;

    std::vector<std::string> labels;
    for (const auto& l : a.basis_labels()) labels.push_back("a." + l);
    for (size_t j = 0; j < dm; ++j) labels.push_back("m." + std::to_string(j));
    for (const auto& l : b.basis_labels()) labels.push_back("b." + l);

    // (x, u, y)(x', u', y') = (x x', x u' + u y', y y')
    std::vector<Matrix> lm(n, Matrix(f, n, n));
    for (size_t i = 0; i < da; ++i) {
        for (size_t j = 0; j < da; ++j) {
            Matrix c = a.left_mult(i).col(j);
            for (size_t s = 0; s < da; ++s) lm[i].at(s, j) = c.at(s, 0);
        }
        for (size_t j = 0; j < dm; ++j) {
            Matrix c = m.left_action(i).col(j);
            for (size_t s = 0; s < dm; ++s) lm[i].at(da + s, da + j) = c.at(s, 0);
        }
    }
    for (size_t i = 0; i < dm; ++i) {
        for (size_t j = 0; j < db; ++j) {
            Matrix c = m.right_action(j).col(i);
            for (size_t s = 0; s < dm; ++s) lm[da + i].at(da + s, da + dm + j) = c.at(s, 0);
        }
    }
    for (size_t i = 0; i < db; ++i) {
        for (size_t j = 0; j < db; ++j) {
            Matrix c = b.left_mult(i).col(j);
            for (size_t s = 0; s < db; ++s) lm[da + dm + i].at(da + dm + s, da + dm + j) = c.at(s, 0);
        }
    }

    Matrix unit(f, n, 1);
    for (size_t i = 0; i < da; ++i) unit.at(i, 0) = a.unit().at(i, 0);
    for (size_t i = 0; i < db; ++i) unit.at(da + dm + i, 0) = b.unit().at(i, 0);

    std::optional<AlgebraStructure> st;
    if (a.has_structure() && b.has_structure()) {
        AlgebraStructure s{std::vector<Matrix>{}, Subspace(f, n), {}, {}};
        auto embedA = [&](const Matrix& v) {
            Matrix out(f, n, 1);
            for (size_t i = 0; i < da; ++i) out.at(i, 0) = v.at(i, 0);
            return out;
        };
        auto embedB = [&](const Matrix& v) {
            Matrix out(f, n, 1);
            for (size_t i = 0; i < db; ++i) out.at(da + dm + i, 0) = v.at(i, 0);
            return out;
        };
        const auto& sa = a.structure();
        const auto& sb = b.structure();
        size_t nva = sa.idempotents.size();
        for (const auto& e : sa.idempotents) s.idempotents.push_back(embedA(e));
        for (const auto& e : sb.idempotents) s.idempotents.push_back(embedB(e));
        // radical = rad A (+) M (+) rad B
        std::vector<std::vector<Scalar>> radrows;
        for (size_t r = 0; r < sa.radical.basis().rows(); ++r)
            radrows.push_back(
                embedA(sa.radical.basis().row(r).transpose()).transpose().row_entries(0));
        for (size_t j = 0; j < dm; ++j) {
            std::vector<Scalar> row(n, Scalar::zero(f));
            row[da + j] = Scalar::one(f);
            radrows.push_back(row);
        }
        for (size_t r = 0; r < sb.radical.basis().rows(); ++r)
            radrows.push_back(
                embedB(sb.radical.basis().row(r).transpose()).transpose().row_entries(0));
        s.radical = radrows.empty() ? Subspace(f, n)
                                    : Subspace::from_rows(Matrix::from_rows(f, radrows));
        // generators: A's, then B's, then one per M basis element
        size_t na_gens = sa.generators.size();
        size_t nb_gens = sb.generators.size();
        for (const auto& g : sa.generators) {
            GeneratorInfo gi{embedA(g.element), g.blocks};
            s.generators.push_back(gi);
        }
        for (const auto& g : sb.generators) {
            GeneratorInfo gi{embedB(g.element), {}};
            for (auto [i, j] : g.blocks) gi.blocks.push_back({nva + i, nva + j});
            s.generators.push_back(gi);
        }
        for (size_t j = 0; j < dm; ++j) {
            Matrix el(f, n, 1);
            el.at(da + j, 0) = Scalar::one(f);
            GeneratorInfo gi{el, {}};
            Matrix ej(f, dm, 1);
            ej.set(j, 0, Scalar::one(f));
            for (size_t i = 0; i < nva; ++i)
                for (size_t k = 0; k < sb.idempotents.size(); ++k) {
                    Matrix piece = m.left_action_of(sa.idempotents[i]) *
                                   m.right_action_of(sb.idempotents[k]) * ej;
                    if (!piece.is_zero()) gi.blocks.push_back({i, nva + k});
                }
            s.generators.push_back(gi);
        }
        auto remapA = [&](const std::vector<BasisExprTerm>& expr) {
            std::vector<BasisExprTerm> out;
            for (const auto& t : expr) {
                BasisExprTerm nt{t.coeff, t.factors};
                out.push_back(nt);
            }
            return out;
        };
        for (size_t i = 0; i < da; ++i) s.basis_exprs.push_back(remapA(sa.basis_exprs[i]));
        for (size_t j = 0; j < dm; ++j)
            s.basis_exprs.push_back(
                {BasisExprTerm{Scalar::one(f), {GenFactor{false, na_gens + nb_gens + j}}}});
        for (size_t i = 0; i < db; ++i) {
            std::vector<BasisExprTerm> expr;
            for (const auto& t : sb.basis_exprs[i]) {
                BasisExprTerm nt{t.coeff, {}};
                for (const auto& fac : t.factors)
                    nt.factors.push_back(fac.is_idempotent ? GenFactor{true, nva + fac.index}
                                                           : GenFactor{false, na_gens + fac.index});
                expr.push_back(nt);
            }
            s.basis_exprs.push_back(expr);
        }
        st = std::move(s);
    }

    Algebra flat = Algebra::from_left_mults(f, std::move(labels), std::move(lm), unit,
                                            std::nullopt, std::move(st));
    auto d = std::make_shared<Data>(
        Data{std::move(a), std::move(b), std::move(m), flat, Matrix(f, n, 1), Matrix(f, n, 1),
             da, dm, db});
    // e1, e2 and the corner identifications
    for (size_t i = 0; i < da; ++i) d->e1.at(i, 0) = d->a.unit().at(i, 0);
    for (size_t i = 0; i < db; ++i) d->e2.at(da + dm + i, 0) = d->b.unit().at(i, 0);
    require(flat.mult(d->e1, d->e1) == d->e1 && flat.mult(d->e2, d->e2) == d->e2 &&
                flat.mult(d->e1, d->e2).is_zero() && flat.mult(d->e2, d->e1).is_zero() &&
                d->e1 + d->e2 == flat.unit(),
            "triangular algebra: idempotent pair invalid");
    require(rank(flat.left_mult_by(d->e1) * flat.right_mult_by(d->e1)) == da &&
                rank(flat.left_mult_by(d->e2) * flat.right_mult_by(d->e2)) == db &&
                rank(flat.left_mult_by(d->e1) * flat.right_mult_by(d->e2)) == dm,
            "triangular algebra: corner dimensions wrong");
    return TriangularAlgebra(std::move(d));
}

TriangularAlgebra TriangularAlgebra::opposite_triangular() const {
    return build(opposite(d_->b), d_->m.swapped(), opposite(d_->a));
}

// ---------------------------------------------------------------------------
// triple modules

struct TripleModule::Data {
    TriangularAlgebra lam;
    Module x;
    Module y;
    Matrix phi;
    TensorData tens;
    Module flat;
};

TripleModule::TripleModule(TriangularAlgebra lam, Module x, Module y, Matrix phi) {
    require(x.algebra().same_as(lam.A()), "triple: X not over A");
    require(y.algebra().same_as(lam.B()), "triple: Y not over B");
    TensorData tens = tensor_over_B(lam.M(), y);
    require(phi.rows() == x.dim() && phi.cols() == tens.module.dim(), "triple: phi shape mismatch");
    const Field f = x.algebra().field();
    size_t dx = x.dim(), dy = y.dim(), n = dx + dy;
    const Algebra& fl = lam.flat();
    size_t da = lam.A().dim(), dm = lam.M().dim();
    std::vector<Matrix> acts;
    for (size_t i = 0; i < fl.dim(); ++i) {
        Matrix act(f, n, n);
        if (i < da) {
            Matrix ax = x.action(i);
            for (size_t r = 0; r < dx; ++r)
                for (size_t c = 0; c < dx; ++c) act.at(r, c) = ax.at(r, c);
        } else if (i < da + dm) {
            size_t j = i - da;
            for (size_t c = 0; c < dy; ++c) {
                Matrix val = phi * tens.quot.proj.col(j * dy + c);
                for (size_t r = 0; r < dx; ++r) act.at(r, dx + c) = val.at(r, 0);
            }
        } else {
            Matrix by = y.action(i - da - dm);
            for (size_t r = 0; r < dy; ++r)
                for (size_t c = 0; c < dy; ++c) act.at(dx + r, dx + c) = by.at(r, c);
        }
        acts.push_back(act);
    }
    Module flat(fl, std::move(acts));  // checked: validates phi as an A-map too
    d_ = std::make_shared<Data>(Data{std::move(lam), std::move(x), std::move(y), std::move(phi),
                                     std::move(tens), std::move(flat)});
}

const TriangularAlgebra& TripleModule::lambda() const { return d_->lam; }
const Module& TripleModule::x() const { return d_->x; }
const Module& TripleModule::y() const { return d_->y; }
const Matrix& TripleModule::phi() const { return d_->phi; }
const TensorData& TripleModule::tensor() const { return d_->tens; }
const Module& TripleModule::flat() const { return d_->flat; }

TripleModule TripleModule::direct_sum(const TripleModule& s, const TripleModule& t) {
    require(s.lambda().same_as(t.lambda()), "triple sum: algebra mismatch");
    const Field f = s.x().algebra().field();
    Module x12 = Module::direct_sum(s.x(), t.x());
    Module y12 = Module::direct_sum(s.y(), t.y());
    TensorData tens = tensor_over_B(s.lambda().M(), y12);
    size_t dm = s.lambda().M().dim(), y1 = s.y().dim(), y2 = t.y().dim();
    // plain map into X1 (+) X2 columnwise, then restrict to the quotient basis
    Matrix plain(f, x12.dim(), dm * (y1 + y2));
    for (size_t i = 0; i < dm; ++i) {
        for (size_t j = 0; j < y1; ++j) {
            Matrix v = s.phi() * s.tensor().quot.proj.col(i * y1 + j);
            for (size_t r = 0; r < s.x().dim(); ++r) plain.at(r, i * (y1 + y2) + j) = v.at(r, 0);
        }
        for (size_t j = 0; j < y2; ++j) {
            Matrix v = t.phi() * t.tensor().quot.proj.col(i * y2 + j);
            for (size_t r = 0; r < t.x().dim(); ++r)
                plain.at(s.x().dim() + r, i * (y1 + y2) + y1 + j) = v.at(r, 0);
        }
    }
    Matrix phi = plain * tens.quot.section;
    require(phi * tens.quot.proj == plain, "triple sum: phi does not descend");
    return TripleModule(s.lambda(), x12, y12, phi);
}

TripleHom::TripleHom(TripleModule s, TripleModule t, Matrix f1_, Matrix f2_, bool check)
    : source(std::move(s)), target(std::move(t)), f1(std::move(f1_)), f2(std::move(f2_)) {
    if (check) {
        ModuleHom(source.x(), target.x(), f1);
        ModuleHom(source.y(), target.y(), f2);
        Matrix lhs = f1 * source.phi();
        Matrix rhs = target.phi() *
                     tensor_map(source.lambda().M(), source.tensor(), target.tensor(), f2);
        require(lhs == rhs, "triple hom: square does not commute");
    }
}

bool TripleHom::is_iso() const {
    return source.x().dim() == target.x().dim() && source.y().dim() == target.y().dim() &&
           rank(f1) == f1.rows() && rank(f2) == f2.rows() && f1.rows() == f1.cols() &&
           f2.rows() == f2.cols();
}

Module triple_to_flat(const TripleModule& t) { return t.flat(); }

TripleModule flat_to_triple(const TriangularAlgebra& lam, const Module& m) {
    require(m.algebra().same_as(lam.flat()), "flat_to_triple: module not over this algebra");
    const Field f = m.algebra().field();
    Matrix p1 = m.action_of(lam.e1());
    Matrix p2 = m.action_of(lam.e2());
    Subspace sx = Subspace::from_cols(p1);
    Subspace sy = Subspace::from_cols(p2);
    Matrix bx = sx.basis().transpose();  // m.dim x dx
    Matrix by = sy.basis().transpose();
    size_t da = lam.A().dim(), dm = lam.M().dim(), db = lam.B().dim();
    std::vector<Matrix> xacts, yacts;
    for (size_t i = 0; i < da; ++i) {
        Matrix ei(f, da, 1);
        ei.set(i, 0, Scalar::one(f));
        Matrix img = m.action_of(lam.embed_A(ei)) * bx;
        auto c = solve(bx, img);
        require(c.has_value(), "flat_to_triple: e1-part not A-invariant");
        xacts.push_back(*c);
    }
    for (size_t i = 0; i < db; ++i) {
        Matrix ei(f, db, 1);
        ei.set(i, 0, Scalar::one(f));
        Matrix img = m.action_of(lam.embed_B(ei)) * by;
        auto c = solve(by, img);
        require(c.has_value(), "flat_to_triple: e2-part not B-invariant");
        yacts.push_back(*c);
    }
    Module x(lam.A(), std::move(xacts));
    Module y(lam.B(), std::move(yacts));
    TensorData tens = tensor_over_B(lam.M(), y);
    size_t dy = y.dim();
    Matrix plain(f, x.dim(), dm * dy);
    for (size_t i = 0; i < dm; ++i) {
        Matrix mi(f, dm, 1);
        mi.set(i, 0, Scalar::one(f));
        Matrix op = m.action_of(lam.embed_M(mi));
        for (size_t j = 0; j < dy; ++j) {
            Matrix w = op * by.col(j);
            auto c = solve(bx, w);
            require(c.has_value(), "flat_to_triple: M-action does not land in the e1-part");
            for (size_t r = 0; r < x.dim(); ++r) plain.at(r, i * dy + j) = c->at(r, 0);
        }
    }
    Matrix phi = plain * tens.quot.section;
    require(phi * tens.quot.proj == plain, "flat_to_triple: phi does not descend");
    return TripleModule(lam, x, y, phi);
}

std::vector<TripleHom> triple_hom_space(const TripleModule& s, const TripleModule& t) {
    require(s.lambda().same_as(t.lambda()), "triple hom: algebra mismatch");
    auto homs = hom_space(s.flat(), t.flat());
    std::vector<TripleHom> out;
    size_t x1 = s.x().dim(), y1 = s.y().dim(), x2 = t.x().dim(), y2 = t.y().dim();
    for (const auto& h : homs) {
        require(h.matrix.block(0, x1, x2, y1).is_zero() &&
                    h.matrix.block(x2, 0, y2, x1).is_zero(),
                "internal: flat hom between triples not block diagonal");
        out.emplace_back(s, t, h.matrix.block(0, 0, x2, x1), h.matrix.block(x2, x1, y2, y1),
                         false);
    }
    return out;
}

size_t triple_hom_dim(const TripleModule& s, const TripleModule& t) {
    return triple_hom_space(s, t).size();
}

std::optional<TripleHom> triple_is_isomorphic(const TripleModule& s, const TripleModule& t) {
    auto iso = is_isomorphic(s.flat(), t.flat());
    if (!iso) return std::nullopt;
    size_t x1 = s.x().dim(), y1 = s.y().dim(), x2 = t.x().dim(), y2 = t.y().dim();
    require(iso->matrix.block(0, x1, x2, y1).is_zero() &&
                iso->matrix.block(x2, 0, y2, x1).is_zero(),
            "internal: flat iso between triples not block diagonal");
    return TripleHom(s, t, iso->matrix.block(0, 0, x2, x1), iso->matrix.block(x2, x1, y2, y1));
}

}  // namespace trimono
