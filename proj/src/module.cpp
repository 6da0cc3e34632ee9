#include "trimono/module.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace trimono {

struct Module::Data {
    Algebra alg;
    size_t dim;
    std::vector<Matrix> actions;
    Data(Algebra a, size_t d, std::vector<Matrix> acts)
        : alg(std::move(a)), dim(d), actions(std::move(acts)) {}
};

namespace {

void verify_module(const Algebra& a, size_t dim, const std::vector<Matrix>& acts) {
    require(acts.size() == a.dim(), "module needs one action per algebra basis element");
    const Field f = a.field();
    for (const auto& m : acts)
        require(m.rows() == dim && m.cols() == dim && m.field() == f, "bad action matrix shape");
    // unit acts as the identity
    Matrix u(f, dim, dim);
    for (size_t i = 0; i < a.dim(); ++i)
        if (!a.unit().at(i, 0).is_zero()) u = u + acts[i].scaled(a.unit().at(i, 0));
    require(u.is_identity(), "module axiom fails: unit does not act as identity");
    // action(b_i) action(b_j) = sum_k c[i][j][k] action(b_k)
    for (size_t i = 0; i < a.dim(); ++i)
        for (size_t j = 0; j < a.dim(); ++j) {
            Matrix lhs = acts[i] * acts[j];
            Matrix rhs(f, dim, dim);
            Matrix cij = a.left_mult(i).col(j);
            for (size_t k = 0; k < a.dim(); ++k)
                if (!cij.at(k, 0).is_zero()) rhs = rhs + acts[k].scaled(cij.at(k, 0));
            require(lhs == rhs, "module axiom fails: action incompatible with multiplication at (" +
                                    a.basis_labels()[i] + ", " + a.basis_labels()[j] + ")");
        }
}

}  // namespace

Module::Module(Algebra a, std::vector<Matrix> actions, bool check) {
    size_t dim = actions.empty() ? 0 : actions[0].rows();
    if (check) verify_module(a, dim, actions);
    d_ = std::make_shared<Data>(std::move(a), dim, std::move(actions));
}

Module Module::zero(const Algebra& a) {
    std::vector<Matrix> acts(a.dim(), Matrix(a.field(), 0, 0));
    return Module(a, std::move(acts), false);
}

const Algebra& Module::algebra() const { return d_->alg; }
size_t Module::dim() const { return d_->dim; }
const Matrix& Module::action(size_t i) const { return d_->actions.at(i); }
const std::vector<Matrix>& Module::actions() const { return d_->actions; }

Matrix Module::action_of(const Matrix& element) const {
    require(element.rows() == d_->alg.dim() && element.cols() == 1, "bad element shape");
    Matrix out(d_->alg.field(), d_->dim, d_->dim);
    for (size_t i = 0; i < d_->alg.dim(); ++i)
        if (!element.at(i, 0).is_zero()) out = out + d_->actions[i].scaled(element.at(i, 0));
    return out;
}

Module Module::direct_sum(const Module& x, const Module& y) {
    require(x.algebra().same_as(y.algebra()), "direct sum over different algebras");
    std::vector<Matrix> acts;
    for (size_t i = 0; i < x.algebra().dim(); ++i) acts.push_back(x.action(i).dsum(y.action(i)));
    return Module(x.algebra(), std::move(acts), false);
}

ModuleHom::ModuleHom(Module src, Module tgt, Matrix m, bool check)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    require(source.algebra().same_as(target.algebra()), "hom between different algebras");
    require(matrix.rows() == target.dim() && matrix.cols() == source.dim(), "hom shape mismatch");
    if (check) {
        for (size_t i = 0; i < source.algebra().dim(); ++i)
            require(matrix * source.action(i) == target.action(i) * matrix,
                    "not a module homomorphism");
    }
}

// ---------------------------------------------------------------------------
// Hom spaces

namespace {

// generating action matrices used for intertwiner constraints
std::vector<std::pair<Matrix, Matrix>> generating_pairs(const Module& x, const Module& y) {
    const Algebra& a = x.algebra();
    std::vector<std::pair<Matrix, Matrix>> out;
    if (a.has_structure()) {
        for (const auto& e : a.structure().idempotents)
            out.push_back({x.action_of(e), y.action_of(e)});
        for (const auto& g : a.structure().generators)
            out.push_back({x.action_of(g.element), y.action_of(g.element)});
    } else {
        for (size_t i = 0; i < a.dim(); ++i) out.push_back({x.action(i), y.action(i)});
    }
    return out;
}

}  // namespace

std::vector<ModuleHom> hom_space(const Module& x, const Module& y) {
    require(x.algebra().same_as(y.algebra()), "hom_space: algebra mismatch");
    const Field f = x.algebra().field();
    size_t dx = x.dim(), dy = y.dim();
    if (dx == 0 || dy == 0) return {};
    auto gens = generating_pairs(x, y);
    // unknowns F[r][c] flattened as r*dx + c; constraints F Gx - Gy F = 0
    size_t nunk = dx * dy;
    Matrix sys(f, gens.size() * nunk, nunk);
    size_t row = 0;
    for (const auto& [gx, gy] : gens) {
        for (size_t a = 0; a < dy; ++a)
            for (size_t b = 0; b < dx; ++b) {
                for (size_t c = 0; c < dx; ++c) sys.at(row, a * dx + c) += gx.at(c, b);
                for (size_t r = 0; r < dy; ++r) sys.at(row, r * dx + b) -= gy.at(a, r);
                ++row;
            }
    }
    Matrix ker = kernel(sys);
    std::vector<ModuleHom> out;
    for (size_t k = 0; k < ker.rows(); ++k) {
        Matrix m(f, dy, dx);
        for (size_t r = 0; r < dy; ++r)
            for (size_t c = 0; c < dx; ++c) m.at(r, c) = ker.at(k, r * dx + c);
        out.emplace_back(x, y, std::move(m));
    }
    return out;
}

size_t hom_dim(const Module& x, const Module& y) { return hom_space(x, y).size(); }

std::optional<Matrix> equivariant_solve(const Module& src, const Module& tgt,
                                        const Matrix& restrict_to, const Matrix& value,
                                        size_t solution_index) {
    const Field f = src.algebra().field();
    size_t ds = src.dim(), dt = tgt.dim();
    size_t nunk = ds * dt;
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    auto gens = generating_pairs(src, tgt);
    for (const auto& [gs, gt] : gens) {
        for (size_t r = 0; r < dt; ++r)
            for (size_t c = 0; c < ds; ++c) {
                std::vector<Scalar> row(nunk, Scalar::zero(f));
                for (size_t k = 0; k < ds; ++k) row[r * ds + k] += gs.at(k, c);
                for (size_t k = 0; k < dt; ++k) row[k * ds + c] -= gt.at(r, k);
                rows.push_back(std::move(row));
                rhs.push_back(Scalar::zero(f));
            }
    }
    require(restrict_to.rows() == ds && value.rows() == dt &&
                restrict_to.cols() == value.cols(),
            "equivariant_solve: shape mismatch");
    for (size_t r = 0; r < dt; ++r)
        for (size_t c = 0; c < restrict_to.cols(); ++c) {
            std::vector<Scalar> row(nunk, Scalar::zero(f));
            for (size_t k = 0; k < ds; ++k) row[r * ds + k] += restrict_to.at(k, c);
            rows.push_back(std::move(row));
            rhs.push_back(value.at(r, c));
        }
    Matrix sys = rows.empty() ? Matrix(f, 0, nunk) : Matrix::from_rows(f, rows);
    Matrix b = Matrix::col_vector(f, rhs);
    auto sol = solve(sys, b);
    if (!sol || !(sys * *sol == b)) return std::nullopt;
    if (solution_index > 0) {
        Matrix ker = kernel(sys);
        if (ker.rows() < solution_index) return std::nullopt;
        for (size_t i = 0; i < nunk; ++i) sol->at(i, 0) += ker.at(solution_index - 1, i);
    }
    Matrix e(f, dt, ds);
    for (size_t r = 0; r < dt; ++r)
        for (size_t c = 0; c < ds; ++c) e.at(r, c) = sol->at(r * ds + c, 0);
    return e;
}

std::vector<Scalar> hom_coordinates(const std::vector<ModuleHom>& basis, const Matrix& m) {
    require(!basis.empty(), "empty hom basis");
    const Field f = m.field();
    size_t n = m.rows() * m.cols();
    Matrix rows(f, basis.size(), n);
    for (size_t k = 0; k < basis.size(); ++k)
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                rows.at(k, r * m.cols() + c) = basis[k].matrix.at(r, c);
    Matrix v(f, 1, n);
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) v.at(0, r * m.cols() + c) = m.at(r, c);
    auto sol = solve(rows.transpose(), v.transpose());
    require(sol.has_value() && (rows.transpose() * *sol == v.transpose()),
            "map not in the span of the hom basis");
    std::vector<Scalar> out;
    for (size_t k = 0; k < basis.size(); ++k) out.push_back(sol->at(k, 0));
    return out;
}

// ---------------------------------------------------------------------------
// submodules and quotients

std::pair<Module, ModuleHom> submodule(const Module& x, const Subspace& s) {
    require(s.ambient_dim() == x.dim(), "submodule ambient mismatch");
    const Field f = x.algebra().field();
    Matrix emb = s.basis().transpose();  // x.dim x d
    std::vector<Matrix> acts;
    for (size_t i = 0; i < x.algebra().dim(); ++i) {
        Matrix img = x.action(i) * emb;
        auto coords = solve(emb, img);
        require(coords.has_value() && (emb * *coords == img), "subspace is not a submodule");
        acts.push_back(*coords);
    }
    Module sub(x.algebra(), std::move(acts), false);
    return {sub, ModuleHom(sub, x, emb, false)};
}

std::pair<Module, ModuleHom> quotient_module(const Module& x, const Subspace& s) {
    require(s.ambient_dim() == x.dim(), "quotient ambient mismatch");
    const Field f = x.algebra().field();
    size_t n = x.dim();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : s.pivot_cols()) is_pivot[c] = true;
    std::vector<size_t> rest;  // coset representative coordinates
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) rest.push_back(c);
    size_t q = rest.size();
    // projection: reduce e_c modulo the echelon basis of s
    Matrix proj(f, q, n);
    for (size_t k = 0; k < q; ++k) proj.at(k, rest[k]) = Scalar::one(f);
    for (size_t pi = 0; pi < s.pivot_cols().size(); ++pi)
        for (size_t k = 0; k < q; ++k) proj.at(k, s.pivot_cols()[pi]) = -s.basis().at(pi, rest[k]);
    // lift of quotient basis vector k is e_{rest[k]}
    Matrix lift(f, n, q);
    for (size_t k = 0; k < q; ++k) lift.at(rest[k], k) = Scalar::one(f);
    std::vector<Matrix> acts;
    for (size_t i = 0; i < x.algebra().dim(); ++i) {
        // invariance: action must map s into s
        Matrix img = x.action(i) * s.basis().transpose();
        for (size_t c = 0; c < img.cols(); ++c)
            require(s.contains_row(img.col(c).transpose()), "subspace is not a submodule");
        acts.push_back(proj * x.action(i) * lift);
    }
    Module quo(x.algebra(), std::move(acts), false);
    return {quo, ModuleHom(x, quo, proj, false)};
}

Subspace radical_subspace(const Module& x) {
    const Algebra& a = x.algebra();
    Ideal rad = radical(a);
    const Field f = a.field();
    std::vector<std::vector<Scalar>> rows;
    for (size_t r = 0; r < rad.space.basis().rows(); ++r) {
        Matrix op = x.action_of(rad.space.basis().row(r).transpose());
        for (size_t c = 0; c < x.dim(); ++c) rows.push_back(op.col(c).transpose().row_entries(0));
    }
    if (rows.empty()) return Subspace(f, x.dim());
    return Subspace::from_rows(Matrix::from_rows(f, rows));
}

std::pair<Module, ModuleHom> radical_submodule(const Module& x) {
    return submodule(x, radical_subspace(x));
}

std::pair<Module, ModuleHom> top_with_projection(const Module& x) {
    return quotient_module(x, radical_subspace(x));
}

Module top(const Module& x) { return top_with_projection(x).first; }

std::pair<Module, ModuleHom> socle(const Module& x) {
    const Algebra& a = x.algebra();
    Ideal rad = radical(a);
    const Field f = a.field();
    if (rad.space.dim() == 0 || x.dim() == 0)
        return submodule(x, Subspace::from_rows(Matrix::identity(f, x.dim())));
    Matrix stacked(f, 0, x.dim());
    for (size_t r = 0; r < rad.space.basis().rows(); ++r)
        stacked = stacked.vstack(x.action_of(rad.space.basis().row(r).transpose()));
    return submodule(x, Subspace::from_rows(kernel(stacked)));
}

// ---------------------------------------------------------------------------
// projectives, covers, envelopes

namespace {

struct ProjSummandData {
    Module mod;
    Matrix embedding;  // algebra.dim x d
    Matrix gen_coord;  // coords of e_v inside the summand (d x 1)
};

ProjSummandData projective_at(const Algebra& a, size_t v) {
    const Field f = a.field();
    const Matrix& e = a.structure().idempotents[v];
    Matrix re = a.right_mult_by(e);  // x -> x e, image = A e
    Subspace sp = Subspace::from_cols(re);
    Matrix emb = sp.basis().transpose();
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i) {
        Matrix img = a.left_mult(i) * emb;
        auto coords = solve(emb, img);
        require(coords.has_value(), "internal: A e_v not left-invariant");
        acts.push_back(*coords);
    }
    Module p(a, std::move(acts), false);
    auto gen = solve(emb, a.mult(e, e));
    require(gen.has_value(), "internal: e_v not in A e_v");
    return {p, emb, *gen};
}

}  // namespace

ProjectiveCover projective_cover(const Module& x) {
    const Algebra& a = x.algebra();
    require(a.has_structure(), "projective cover needs a basic (structured) algebra");
    const Field f = a.field();
    auto [t, pi] = top_with_projection(x);
    ProjectiveCover out{Module::zero(a), ModuleHom(Module::zero(a), x, Matrix(f, x.dim(), 0), false),
                        {}, {}, {}, {}};
    std::vector<Matrix> epi_cols;  // x.dim x d_g blocks
    std::vector<Module> summands;
    for (size_t v = 0; v < a.structure().idempotents.size(); ++v) {
        const Matrix& e = a.structure().idempotents[v];
        Matrix etop = t.action_of(e);
        Subspace ev = Subspace::from_cols(etop);
        if (ev.dim() == 0) continue;
        ProjSummandData ps = projective_at(a, v);
        for (size_t k = 0; k < ev.dim(); ++k) {
            Matrix tvec = ev.basis().row(k).transpose();
            auto pre = solve(pi.matrix, tvec);
            require(pre.has_value(), "internal: top projection not surjective");
            Matrix u = x.action_of(e) * *pre;  // generator in e_v x above tvec
            // map Lambda e_v -> x: basis column b |-> act(embedding b) u
            Matrix block(f, x.dim(), ps.embedding.cols());
            for (size_t c = 0; c < ps.embedding.cols(); ++c) {
                Matrix lambda = ps.embedding.col(c);
                Matrix img = x.action_of(lambda) * u;
                for (size_t r = 0; r < x.dim(); ++r) block.at(r, c) = img.at(r, 0);
            }
            summands.push_back(ps.mod);
            out.gen_vertices.push_back(v);
            out.summand_basis.push_back(ps.embedding);
            out.gen_coords.push_back(ps.gen_coord);
            epi_cols.push_back(block);
        }
    }
    Module P = Module::zero(a);
    Matrix epimat(f, x.dim(), 0);
    out.offsets.clear();
    size_t off = 0;
    for (size_t g = 0; g < summands.size(); ++g) {
        out.offsets.push_back(off);
        off += summands[g].dim();
        P = g == 0 ? summands[g] : Module::direct_sum(P, summands[g]);
        epimat = epimat.hstack(epi_cols[g]);
    }
    if (summands.empty()) P = Module::zero(a);
    ModuleHom epi(P, x, epimat, true);
    require(rank(epimat) == x.dim(), "projective cover map not surjective");
    // essential: kernel contained in rad P
    if (P.dim() > 0) {
        Subspace ker_sp = Subspace::from_rows(kernel(epimat));
        require(radical_subspace(P).contains(ker_sp), "projective cover not essential");
    }
    out.cover = P;
    out.epi = epi;
    return out;
}

std::pair<Module, ModuleHom> injective_envelope(const Module& x) {
    const Algebra& a = x.algebra();
    Module dx = duality_D(x);
    ProjectiveCover pc = projective_cover(dx);
    // E = D(P) as a module over a itself; mono = transpose of the epi
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i) acts.push_back(pc.cover.action(i).transpose());
    Module e(a, std::move(acts), false);
    ModuleHom mono(x, e, pc.epi.matrix.transpose(), true);
    require(mono.is_injective(), "internal: injective envelope map not injective");
    return {e, mono};
}

bool is_projective(const Module& x) { return projective_cover(x).cover.dim() == x.dim(); }

bool is_injective(const Module& x) { return injective_envelope(x).first.dim() == x.dim(); }

Module syzygy(const Module& x) {
    ProjectiveCover pc = projective_cover(x);
    return submodule(pc.cover, Subspace::from_rows(kernel(pc.epi.matrix))).first;
}

Module cosyzygy(const Module& x) {
    auto [e, mono] = injective_envelope(x);
    return quotient_module(e, Subspace::from_cols(mono.matrix)).first;
}

Extension extension_from_cocycle(const Module& x, const Module& y, const Matrix& f) {
    const Algebra& a = x.algebra();
    const Field k = a.field();
    ProjectiveCover pc = projective_cover(x);
    Subspace omega = Subspace::from_rows(kernel(pc.epi.matrix));
    auto [om, incl] = submodule(pc.cover, omega);
    require(f.rows() == y.dim() && f.cols() == om.dim(), "cocycle shape mismatch");
    ModuleHom fh(om, y, f);  // checked: f is a module map
    Module big = Module::direct_sum(pc.cover, y);
    std::vector<std::vector<Scalar>> wrows;
    for (size_t c = 0; c < om.dim(); ++c) {
        std::vector<Scalar> row;
        Matrix iv = incl.matrix.col(c), fv = f.col(c);
        for (size_t r = 0; r < pc.cover.dim(); ++r) row.push_back(iv.at(r, 0));
        for (size_t r = 0; r < y.dim(); ++r) row.push_back(-fv.at(r, 0));
        wrows.push_back(row);
    }
    Subspace w = wrows.empty() ? Subspace(k, big.dim())
                               : Subspace::from_rows(Matrix::from_rows(k, wrows));
    auto [mid, proj] = quotient_module(big, w);
    // y -> middle
    Matrix iy(k, big.dim(), y.dim());
    for (size_t r = 0; r < y.dim(); ++r) iy.at(pc.cover.dim() + r, r) = Scalar::one(k);
    ModuleHom incl_y(y, mid, proj.matrix * iy, true);
    require(incl_y.is_injective(), "extension: y does not embed");
    // middle -> x induced by [epi | 0]
    Matrix big_to_x = pc.epi.matrix.hstack(Matrix(k, x.dim(), y.dim()));
    auto section = solve(proj.matrix, Matrix::identity(k, mid.dim()));
    require(section.has_value(), "internal: quotient projection not surjective");
    ModuleHom onto_x(mid, x, big_to_x * *section, true);
    require(onto_x.is_surjective(), "extension: projection not surjective");
    return {mid, incl_y, onto_x};
}

// ---------------------------------------------------------------------------
// Ext via projective resolutions with from-projective coordinates

namespace {

struct ResolutionLevel {
    ProjectiveCover pc;  // covers x (level 0) or the previous syzygy
    Module syz;
    Matrix syz_incl;     // cover.dim x syz.dim
    Matrix d;            // P_k -> P_{k-1} (level >= 1)
};

std::vector<ResolutionLevel> resolve(const Module& x, size_t levels) {
    std::vector<ResolutionLevel> out;
    Module cur = x;
    const Field f = x.algebra().field();
    for (size_t k = 0; k <= levels; ++k) {
        ResolutionLevel lvl{projective_cover(cur), Module::zero(x.algebra()),
                            Matrix(f, 0, 0), Matrix(f, 0, 0)};
        Subspace ker_sp = Subspace::from_rows(kernel(lvl.pc.epi.matrix));
        auto [sm, incl] = submodule(lvl.pc.cover, ker_sp);
        lvl.syz = sm;
        lvl.syz_incl = incl.matrix;
        if (k > 0) lvl.d = out.back().syz_incl * lvl.pc.epi.matrix;
        Module next = lvl.syz;
        out.push_back(std::move(lvl));
        cur = next;
    }
    return out;
}

struct HomFromProj {
    std::vector<Matrix> comp_basis;  // per summand: y.dim x m_g, basis of e_v y
    std::vector<size_t> offsets;
    size_t dim = 0;
};

HomFromProj hom_from_proj(const ProjectiveCover& pc, const Module& y) {
    HomFromProj out;
    const Algebra& a = y.algebra();
    for (size_t g = 0; g < pc.gen_vertices.size(); ++g) {
        const Matrix& e = a.structure().idempotents[pc.gen_vertices[g]];
        Subspace ey = Subspace::from_cols(y.action_of(e));
        out.offsets.push_back(out.dim);
        out.comp_basis.push_back(ey.basis().transpose());
        out.dim += ey.dim();
    }
    return out;
}

// matrix of precomposition with d: Hom(P_{k-1}, y) -> Hom(P_k, y)
Matrix dstar(const ResolutionLevel& lk, const HomFromProj& hk, const ResolutionLevel& lk1,
             const HomFromProj& hk1, const Module& y) {
    const Field f = y.algebra().field();
    Matrix out(f, hk.dim, hk1.dim);
    for (size_t g = 0; g < lk.pc.gen_vertices.size(); ++g) {
        // generator g of P_k as a coordinate vector
        Matrix gen(f, lk.pc.cover.dim(), 1);
        const Matrix& gc = lk.pc.gen_coords[g];
        for (size_t r = 0; r < gc.rows(); ++r) gen.at(lk.pc.offsets[g] + r, 0) = gc.at(r, 0);
        Matrix w = lk.d * gen;  // in P_{k-1}
        for (size_t h = 0; h < lk1.pc.gen_vertices.size(); ++h) {
            size_t dh = lk1.pc.summand_basis[h].cols();
            Matrix wh = w.block(lk1.pc.offsets[h], 0, dh, 1);
            if (wh.is_zero()) continue;
            Matrix lambda = lk1.pc.summand_basis[h] * wh;  // algebra element
            Matrix vals = y.action_of(lambda) * hk1.comp_basis[h];  // y.dim x m_h
            auto coords = solve(hk.comp_basis[g], vals);
            require(coords.has_value(), "internal: dstar value outside e_v y");
            for (size_t r = 0; r < coords->rows(); ++r)
                for (size_t c = 0; c < coords->cols(); ++c)
                    out.at(hk.offsets[g] + r, hk1.offsets[h] + c) += coords->at(r, c);
        }
    }
    return out;
}

}  // namespace

ExtSpace ext_space(size_t degree, const Module& x, const Module& y) {
    require(degree >= 1, "ext degree must be >= 1");
    require(x.algebra().same_as(y.algebra()), "ext: algebra mismatch");
    const Field f = x.algebra().field();
    auto res = resolve(x, degree + 1);
    std::vector<HomFromProj> homs;
    for (const auto& lvl : res) homs.push_back(hom_from_proj(lvl.pc, y));
    Matrix d_m = degree >= 1 ? dstar(res[degree], homs[degree], res[degree - 1], homs[degree - 1], y)
                             : Matrix(f, 0, 0);
    Matrix d_m1 = dstar(res[degree + 1], homs[degree + 1], res[degree], homs[degree], y);
    // cocycles: kernel of d_{m+1}^*, coboundaries: image of d_m^*
    Matrix coc = kernel(d_m1);                      // rows in Hom(P_m, y) coords
    Subspace cob = Subspace::from_cols(d_m);
    require(Subspace::from_rows(coc).contains(cob), "internal: d*d* != 0");
    ExtSpace out{degree, x, y, coc.rows() - cob.dim(), {}, res[degree].pc.gen_vertices};
    // representatives: kernel rows independent modulo the coboundaries
    Subspace acc = cob;
    for (size_t r = 0; r < coc.rows(); ++r) {
        if (acc.contains_row(coc.row(r))) continue;
        acc = acc.sum(Subspace::from_rows(coc.row(r)));
        out.cocycles.push_back(coc.row(r).row_entries(0));
    }
    require(out.cocycles.size() == out.dim, "internal: ext representative count mismatch");
    return out;
}

size_t ext_dim(size_t degree, const Module& x, const Module& y) {
    return ext_space(degree, x, y).dim;
}

// ---------------------------------------------------------------------------
// isomorphism testing

namespace {

constexpr size_t kSweepCap = 1ull << 20;

// deterministic sweep over coefficient tuples; returns invertible combination
std::optional<Matrix> invertible_combination(const std::vector<ModuleHom>& homs, size_t dim) {
    if (homs.empty()) return std::nullopt;
    const Field f = homs[0].matrix.field();
    // cheap candidates first: single basis maps and the all-ones sum
    Matrix sum(f, dim, dim);
    for (const auto& h : homs) {
        if (h.matrix.rows() == dim && rank(h.matrix) == dim) return h.matrix;
        sum = sum + h.matrix;
    }
    if (rank(sum) == dim) return sum;
    size_t r = homs.size();
    if (f.is_prime_field()) {
        unsigned long p = f.p();
        double total = 1;
        for (size_t i = 0; i < r; ++i) total *= static_cast<double>(p);
        if (total <= static_cast<double>(kSweepCap)) {
            std::vector<unsigned long> digits(r, 0);
            while (true) {
                size_t pos = 0;
                while (pos < r && ++digits[pos] == p) digits[pos++] = 0;
                if (pos == r) break;
                Matrix m(f, dim, dim);
                for (size_t i = 0; i < r; ++i)
                    if (digits[i]) m = m + homs[i].matrix.scaled(Scalar::from_long(f, digits[i]));
                if (rank(m) == dim) return m;
            }
            return std::nullopt;  // certified: no iso exists
        }
        // deterministic pseudo-random sampling beyond the cap
        unsigned long long state = 0x9e3779b97f4a7c15ull;
        for (size_t iter = 0; iter < 20000; ++iter) {
            Matrix m(f, dim, dim);
            for (size_t i = 0; i < r; ++i) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                unsigned long c = (state >> 33) % p;
                if (c) m = m + homs[i].matrix.scaled(Scalar::from_long(f, c));
            }
            if (rank(m) == dim) return m;
        }
        return std::nullopt;
    }
    // rationals: bounded grid {-2..2}^r, capped
    double total = 1;
    for (size_t i = 0; i < r && total <= kSweepCap; ++i) total *= 5;
    if (total > kSweepCap) return std::nullopt;
    std::vector<int> digits(r, -2);
    while (true) {
        Matrix m(f, dim, dim);
        bool all0 = true;
        for (size_t i = 0; i < r; ++i)
            if (digits[i]) {
                m = m + homs[i].matrix.scaled(Scalar::from_long(f, digits[i]));
                all0 = false;
            }
        if (!all0 && rank(m) == dim) return m;
        size_t pos = 0;
        while (pos < r && ++digits[pos] == 3) digits[pos++] = -2;
        if (pos == r) break;
    }
    return std::nullopt;
}

std::vector<size_t> invariant_fingerprint(const Module& x) {
    std::vector<size_t> fp{x.dim()};
    const Algebra& a = x.algebra();
    if (a.has_structure()) {
        for (const auto& e : a.structure().idempotents)
            fp.push_back(rank(x.action_of(e)));
        fp.push_back(radical_subspace(x).dim());
    }
    fp.push_back(hom_dim(x, x));
    return fp;
}

}  // namespace

std::optional<ModuleHom> is_isomorphic(const Module& x, const Module& y) {
    require(x.algebra().same_as(y.algebra()), "is_isomorphic: algebra mismatch");
    if (x.dim() != y.dim()) return std::nullopt;
    if (x.dim() == 0)
        return ModuleHom(x, y, Matrix(x.algebra().field(), 0, 0), false);
    if (invariant_fingerprint(x) != invariant_fingerprint(y)) return std::nullopt;
    auto homs = hom_space(x, y);
    if (homs.empty()) return std::nullopt;
    auto m = invertible_combination(homs, x.dim());
    if (m) return ModuleHom(x, y, *m, false);
    // fall back to comparing decompositions over prime fields
    if (x.algebra().field().is_prime_field()) {
        auto dx = decompose(x), dy = decompose(y);
        if (dx.pieces.size() != dy.pieces.size()) return std::nullopt;
        std::vector<bool> used(dy.pieces.size(), false);
        std::vector<ModuleHom> piece_isos;
        Module lhs = Module::zero(x.algebra());
        Matrix block(x.algebra().field(), 0, 0);
        for (const auto& px : dx.pieces) {
            bool matched = false;
            for (size_t j = 0; j < dy.pieces.size() && !matched; ++j) {
                if (used[j]) continue;
                auto homs2 = hom_space(px, dy.pieces[j]);
                if (px.dim() != dy.pieces[j].dim()) continue;
                auto iso = invertible_combination(homs2, px.dim());
                if (iso) {
                    used[j] = true;
                    matched = true;
                    piece_isos.emplace_back(px, dy.pieces[j], *iso, false);
                }
            }
            if (!matched) return std::nullopt;
        }
        // assemble: x <- sum(pieces of x); map each piece to the matched y piece
        // via y's decomposition iso
        // iso_x: sum(dx.pieces) -> x, iso_y: sum(dy.pieces) -> y
        // build permutation + blocks on the summed spaces
        size_t n = x.dim();
        Matrix perm(x.algebra().field(), n, n);
        std::vector<size_t> yoffsets(dy.pieces.size(), 0);
        for (size_t j = 1; j < dy.pieces.size(); ++j)
            yoffsets[j] = yoffsets[j - 1] + dy.pieces[j - 1].dim();
        size_t xoff = 0;
        {
            // recompute matches to place blocks
            std::vector<bool> used2(dy.pieces.size(), false);
            size_t pi = 0;
            for (const auto& px : dx.pieces) {
                for (size_t j = 0; j < dy.pieces.size(); ++j) {
                    if (used2[j]) continue;
                    if (piece_isos[pi].target.raw() == dy.pieces[j].raw()) {
                        used2[j] = true;
                        for (size_t r = 0; r < px.dim(); ++r)
                            for (size_t c = 0; c < px.dim(); ++c)
                                perm.at(yoffsets[j] + r, xoff + c) = piece_isos[pi].matrix.at(r, c);
                        break;
                    }
                }
                xoff += px.dim();
                ++pi;
            }
        }
        auto invx = inverse(dx.iso.matrix);
        require(invx.has_value(), "internal: decomposition iso not invertible");
        Matrix full = dy.iso.matrix * perm * *invx;
        if (rank(full) == n) return ModuleHom(x, y, full);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// decomposition (Fitting splits over the endomorphism ring)

namespace {

std::optional<std::pair<Subspace, Subspace>> fitting_split(const Module& x, const Matrix& f) {
    size_t n = x.dim();
    Matrix power = f;
    for (size_t s = 1; s < n; s *= 2) power = power * power;
    Subspace ker_sp = Subspace::from_rows(kernel(power));
    if (ker_sp.dim() == 0 || ker_sp.dim() == n) return std::nullopt;
    Subspace im_sp = Subspace::from_cols(power);
    require(ker_sp.dim() + im_sp.dim() == n && ker_sp.intersect(im_sp).dim() == 0,
            "internal: Fitting decomposition failed");
    return std::make_pair(ker_sp, im_sp);
}

void decompose_rec(const Module& x, std::vector<Module>& pieces, Matrix& iso_cols,
                   const Matrix& embed) {
    // embed: original.dim x x.dim, the inclusion of x into the original module
    if (x.dim() == 0) return;
    auto homs = hom_space(x, x);
    size_t r = homs.size();
    const Field f = x.algebra().field();
    require(f.is_prime_field(), "decompose requires a prime field");
    unsigned long p = f.p();
    double total = 1;
    for (size_t i = 0; i < r; ++i) total *= static_cast<double>(p);
    require(total <= static_cast<double>(kSweepCap),
            "decompose: endomorphism sweep cap exceeded");
    std::vector<unsigned long> digits(r, 0);
    while (true) {
        size_t pos = 0;
        while (pos < r && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == r) break;
        Matrix m(f, x.dim(), x.dim());
        for (size_t i = 0; i < r; ++i)
            if (digits[i]) m = m + homs[i].matrix.scaled(Scalar::from_long(f, digits[i]));
        auto split = fitting_split(x, m);
        if (split) {
            auto [k, sub_k] = submodule(x, split->first);
            auto [i, sub_i] = submodule(x, split->second);
            decompose_rec(k, pieces, iso_cols, embed * sub_k.matrix);
            decompose_rec(i, pieces, iso_cols, embed * sub_i.matrix);
            return;
        }
    }
    // local endomorphism ring: indecomposable
    pieces.push_back(x);
    iso_cols = iso_cols.cols() == 0 ? embed : iso_cols.hstack(embed);
}

}  // namespace

Decomposition decompose(const Module& x) {
    const Field f = x.algebra().field();
    require(f.is_prime_field(), "decompose requires a prime field");
    std::vector<Module> pieces;
    Matrix iso_cols(f, x.dim(), 0);
    decompose_rec(x, pieces, iso_cols, Matrix::identity(f, x.dim()));
    Module total = Module::zero(x.algebra());
    for (size_t i = 0; i < pieces.size(); ++i)
        total = i == 0 ? pieces[i] : Module::direct_sum(total, pieces[i]);
    if (pieces.empty()) iso_cols = Matrix(f, x.dim(), 0);
    ModuleHom iso(total, x, iso_cols, true);
    require(x.dim() == 0 || iso.is_iso(), "internal: decomposition iso check failed");
    std::vector<std::pair<Module, size_t>> grouped;
    for (const auto& p : pieces) {
        bool found = false;
        for (auto& [rep, count] : grouped)
            if (is_isomorphic(rep, p)) {
                ++count;
                found = true;
                break;
            }
        if (!found) grouped.push_back({p, 1});
    }
    return {grouped, pieces, iso};
}

bool is_indecomposable(const Module& x) {
    if (x.dim() == 0) return false;
    auto d = decompose(x);
    return d.pieces.size() == 1;
}

// ---------------------------------------------------------------------------
// bounded enumeration of indecomposables

std::vector<Module> enumerate_indecomposables(const Algebra& a, size_t total_dim_bound,
                                              size_t ceiling) {
    require(a.field().is_prime_field(), "enumeration requires a prime field");
    require(a.has_structure(), "enumeration needs a basic (structured) algebra");
    require(total_dim_bound <= ceiling, "enumeration bound exceeds the configured ceiling");
    const Field f = a.field();
    unsigned long p = f.p();
    const auto& st = a.structure();
    size_t nv = st.idempotents.size();

    std::vector<Module> found;
    std::vector<std::vector<size_t>> found_fp;

    // iterate dimension vectors with total in [1, bound]
    std::vector<size_t> dv(nv, 0);
    auto next_dv = [&]() -> bool {
        for (size_t i = 0; i < nv; ++i) {
            if (++dv[i] <= total_dim_bound) return true;
            dv[i] = 0;
        }
        return false;
    };
    while (next_dv()) {
        size_t total = 0;
        for (size_t d : dv) total += d;
        if (total == 0 || total > total_dim_bound) continue;
        std::vector<size_t> offs(nv, 0);
        for (size_t i = 1; i < nv; ++i) offs[i] = offs[i - 1] + dv[i - 1];
        // idempotent actions: block projections
        std::vector<Matrix> pmats;
        for (size_t v = 0; v < nv; ++v) {
            Matrix m(f, total, total);
            for (size_t r = 0; r < dv[v]; ++r) m.at(offs[v] + r, offs[v] + r) = Scalar::one(f);
            pmats.push_back(m);
        }
        // free entries of the generator candidates
        struct Slot {
            size_t gen, row, col;
        };
        std::vector<Slot> slots;
        for (size_t g = 0; g < st.generators.size(); ++g)
            for (auto [ti, sj] : st.generators[g].blocks)
                for (size_t r = 0; r < dv[ti]; ++r)
                    for (size_t c = 0; c < dv[sj]; ++c)
                        slots.push_back({g, offs[ti] + r, offs[sj] + c});
        double count = 1;
        for (size_t i = 0; i < slots.size(); ++i) count *= static_cast<double>(p);
        require(count <= static_cast<double>(1ull << 22),
                "enumeration sweep too large for this algebra/bound");

        std::vector<unsigned long> digits(slots.size(), 0);
        bool first = true;
        while (true) {
            if (!first) {
                size_t pos = 0;
                while (pos < slots.size() && ++digits[pos] == p) digits[pos++] = 0;
                if (pos == slots.size()) break;
            }
            first = false;
            std::vector<Matrix> gmats(st.generators.size(), Matrix(f, total, total));
            for (size_t s = 0; s < slots.size(); ++s)
                if (digits[s])
                    gmats[slots[s].gen].at(slots[s].row, slots[s].col) =
                        Scalar::from_long(f, digits[s]);
            // build all basis actions from the expressions
            std::vector<Matrix> acts;
            acts.reserve(a.dim());
            for (size_t b = 0; b < a.dim(); ++b) {
                Matrix acc(f, total, total);
                for (const auto& term : st.basis_exprs[b]) {
                    Matrix prod = Matrix::identity(f, total);
                    for (const auto& fac : term.factors)
                        prod = prod * (fac.is_idempotent ? pmats[fac.index] : gmats[fac.index]);
                    acc = acc + prod.scaled(term.coeff);
                }
                acts.push_back(acc);
            }
            // module axioms (unit is automatic: projections sum to identity)
            bool ok = true;
            for (size_t i = 0; i < a.dim() && ok; ++i)
                for (size_t j = 0; j < a.dim() && ok; ++j) {
                    Matrix lhs = acts[i] * acts[j];
                    Matrix rhs(f, total, total);
                    Matrix cij = a.left_mult(i).col(j);
                    for (size_t k = 0; k < a.dim(); ++k)
                        if (!cij.at(k, 0).is_zero()) rhs = rhs + acts[k].scaled(cij.at(k, 0));
                    if (!(lhs == rhs)) ok = false;
                }
            if (!ok) continue;
            Module cand(a, std::move(acts), false);
            if (!is_indecomposable(cand)) continue;
            auto fp = invariant_fingerprint(cand);
            bool dup = false;
            for (size_t i = 0; i < found.size() && !dup; ++i)
                if (found_fp[i] == fp && is_isomorphic(found[i], cand)) dup = true;
            if (!dup) {
                found.push_back(cand);
                found_fp.push_back(fp);
            }
        }
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Module& x, const Module& y) { return x.dim() < y.dim(); });
    return found;
}

// ---------------------------------------------------------------------------
// structure theory of the algebra

Module regular_module(const Algebra& a) {
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i) acts.push_back(a.left_mult(i));
    return Module(a, std::move(acts), false);
}

std::vector<std::pair<Module, ModuleHom>> indec_projectives(const Algebra& a) {
    std::vector<std::pair<Module, ModuleHom>> out;
    Module reg = regular_module(a);
    for (size_t v = 0; v < a.structure().idempotents.size(); ++v) {
        ProjSummandData ps = projective_at(a, v);
        out.push_back({ps.mod, ModuleHom(ps.mod, reg, ps.embedding, true)});
    }
    return out;
}

std::vector<Module> indec_injectives(const Algebra& a) {
    Algebra op = opposite(a);
    std::vector<Module> out;
    for (size_t v = 0; v < op.structure().idempotents.size(); ++v) {
        ProjSummandData ps = projective_at(op, v);
        std::vector<Matrix> acts;
        for (size_t i = 0; i < a.dim(); ++i) acts.push_back(ps.mod.action(i).transpose());
        out.push_back(Module(a, std::move(acts)));
    }
    return out;
}

Module duality_D(const Module& x) {
    Algebra op = opposite(x.algebra());
    std::vector<Matrix> acts;
    for (size_t i = 0; i < op.dim(); ++i) acts.push_back(x.action(i).transpose());
    return Module(op, std::move(acts), false);
}

Module dual_of_right_regular(const Algebra& a) {
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i) acts.push_back(a.right_mult(i).transpose());
    return Module(a, std::move(acts));
}

Module dual_of_left_regular(const Algebra& a) {
    Algebra op = opposite(a);
    std::vector<Matrix> acts;
    for (size_t i = 0; i < a.dim(); ++i) acts.push_back(a.left_mult(i).transpose());
    return Module(op, std::move(acts));
}

bool is_selfinjective(const Algebra& a) { return is_injective(regular_module(a)); }

bool is_frobenius(const Algebra& a) {
    return is_isomorphic(dual_of_right_regular(a), regular_module(a)).has_value();
}

}  // namespace trimono
