#include "trimono/monocat.hpp"

#include <algorithm>

namespace trimono {

TripleModule triple_of_A_module(const TriangularAlgebra& lam, const Module& x) {
    const Field f = lam.flat().field();
    return TripleModule(lam, x, Module::zero(lam.B()), Matrix(f, x.dim(), 0));
}

TripleModule triple_j_shriek(const TriangularAlgebra& lam, const Module& y) {
    TensorData tens = tensor_over_B(lam.M(), y);
    return TripleModule(lam, tens.module, y,
                        Matrix::identity(lam.flat().field(), tens.module.dim()));
}

TripleModule triple_zero(const TriangularAlgebra& lam) {
    return triple_of_A_module(lam, Module::zero(lam.A()));
}

TripleOfFlat flat_to_triple_with_iso(const TriangularAlgebra& lam, const Module& m) {
    TripleModule t = flat_to_triple(lam, m);
    // the triple's flat coordinates are (basis of e1 m | basis of e2 m)
    Matrix p1 = m.action_of(lam.e1());
    Matrix p2 = m.action_of(lam.e2());
    Matrix v = Subspace::from_cols(p1).basis().transpose().hstack(
        Subspace::from_cols(p2).basis().transpose());
    ModuleHom iso(t.flat(), m, v);
    require(iso.is_iso(), "internal: triple coordinates do not span the flat module");
    return {t, iso};
}

bool in_S(const TripleModule& t) { return kernel(t.phi()).rows() == 0; }

bool in_F(const TripleModule& t) {
    HomAMData h = hom_A_M(t.lambda().M(), t.x());
    Matrix beta = eta_of(t.lambda().M(), t.tensor(), h, t.y(), t.phi());
    return rank(beta) == h.module.dim();
}

// ---------------------------------------------------------------------------
// Mimo

namespace {

std::optional<ApproximationResult> mimo_impl(const TripleModule& t, size_t solution_index) {
    const TriangularAlgebra& lam = t.lambda();
    const Field f = lam.flat().field();
    const Module& tens = t.tensor().module;
    Subspace ker_sp = Subspace::from_rows(kernel(t.phi()));
    auto [ker_mod, incl] = submodule(tens, ker_sp);
    auto [ik, env_mono] = injective_envelope(ker_mod);
    auto e = equivariant_solve(tens, ik, incl.matrix, env_mono.matrix, solution_index);
    if (!e) return std::nullopt;
    Module x2 = Module::direct_sum(t.x(), ik);
    Matrix phi2 = t.phi().vstack(*e);
    TripleModule obj(lam, x2, t.y(), phi2);
    require(in_S(obj), "internal: Mimo not a monomorphism triple");
    Matrix f1(f, t.x().dim(), x2.dim());
    for (size_t r = 0; r < t.x().dim(); ++r) f1.at(r, r) = Scalar::one(f);
    TripleHom map(obj, t, f1, Matrix::identity(f, t.y().dim()));
    // right-minimality: every g with map.g = map is Id + h with h in
    //   W = {triple endos h : map o h = 0};  g invertible iff I + h1 invertible
    auto endos = triple_hom_space(obj, obj);
    std::vector<Matrix> w;
    {
        // linear conditions on coefficient space: f1 * h.f1 == 0 and h.f2 == 0
        std::vector<std::vector<Scalar>> rows;
        size_t ncond = t.x().dim() * x2.dim() + t.y().dim() * t.y().dim();
        for (size_t k = 0; k < endos.size(); ++k) {
            std::vector<Scalar> col;
            Matrix c1 = f1 * endos[k].f1;
            for (size_t r = 0; r < c1.rows(); ++r)
                for (size_t c = 0; c < c1.cols(); ++c) col.push_back(c1.at(r, c));
            for (size_t r = 0; r < endos[k].f2.rows(); ++r)
                for (size_t c = 0; c < endos[k].f2.cols(); ++c) col.push_back(endos[k].f2.at(r, c));
            rows.push_back(std::move(col));
        }
        Matrix cond = rows.empty() ? Matrix(f, 0, ncond) : Matrix::from_rows(f, rows);
        Matrix ker = kernel(cond.transpose());  // combos with zero conditions
        for (size_t r = 0; r < ker.rows(); ++r) {
            Matrix h1(f, x2.dim(), x2.dim());
            for (size_t k = 0; k < endos.size(); ++k)
                if (!ker.at(r, k).is_zero()) h1 = h1 + endos[k].f1.scaled(ker.at(r, k));
            w.push_back(h1);
        }
    }
    bool minimal = true;
    size_t sweep = 0;
    if (!w.empty()) {
        require(f.is_prime_field(), "mimo minimality sweep requires a prime field");
        unsigned long p = f.p();
        double total = 1;
        for (size_t i = 0; i < w.size(); ++i) total *= static_cast<double>(p);
        require(total <= static_cast<double>(1ull << 20), "mimo minimality sweep too large");
        std::vector<unsigned long> digits(w.size(), 0);
        while (minimal) {
            size_t pos = 0;
            while (pos < w.size() && ++digits[pos] == p) digits[pos++] = 0;
            if (pos == w.size()) break;
            Matrix g = Matrix::identity(f, x2.dim());
            for (size_t i = 0; i < w.size(); ++i)
                if (digits[i]) g = g + w[i].scaled(Scalar::from_long(f, digits[i]));
            ++sweep;
            if (rank(g) != x2.dim()) minimal = false;
        }
    }
    return ApproximationResult{obj, map, minimal, sweep, *e};
}

}  // namespace

ApproximationResult mimo(const TripleModule& t) {
    auto r = mimo_impl(t, 0);
    require(r.has_value(), "internal: Mimo extension system unsolvable");
    return *r;
}

std::optional<ApproximationResult> mimo_alternative(const TripleModule& t) {
    return mimo_impl(t, 1);
}

std::optional<TripleHom> factor_through_approximation(const ApproximationResult& ap,
                                                      const TripleHom& f) {
    // find g: source(f) -> ap.object with ap.map o g = f
    auto homs = triple_hom_space(f.source, ap.object);
    if (homs.empty()) {
        if (f.f1.is_zero() && f.f2.is_zero())
            return TripleHom(f.source, ap.object,
                             Matrix(f.f1.field(), ap.object.x().dim(), f.source.x().dim()),
                             Matrix(f.f2.field(), ap.object.y().dim(), f.source.y().dim()));
        return std::nullopt;
    }
    const Field k = f.f1.field();
    size_t n1 = f.f1.rows() * f.f1.cols(), n2 = f.f2.rows() * f.f2.cols();
    Matrix sys(k, n1 + n2, homs.size());
    for (size_t h = 0; h < homs.size(); ++h) {
        Matrix c1 = ap.map.f1 * homs[h].f1;
        Matrix c2 = ap.map.f2 * homs[h].f2;
        size_t idx = 0;
        for (size_t r = 0; r < c1.rows(); ++r)
            for (size_t c = 0; c < c1.cols(); ++c) sys.at(idx++, h) = c1.at(r, c);
        for (size_t r = 0; r < c2.rows(); ++r)
            for (size_t c = 0; c < c2.cols(); ++c) sys.at(idx++, h) = c2.at(r, c);
    }
    Matrix rhs(k, n1 + n2, 1);
    {
        size_t idx = 0;
        for (size_t r = 0; r < f.f1.rows(); ++r)
            for (size_t c = 0; c < f.f1.cols(); ++c) rhs.at(idx++, 0) = f.f1.at(r, c);
        for (size_t r = 0; r < f.f2.rows(); ++r)
            for (size_t c = 0; c < f.f2.cols(); ++c) rhs.at(idx++, 0) = f.f2.at(r, c);
    }
    auto sol = solve(sys, rhs);
    if (!sol || !(sys * *sol == rhs)) return std::nullopt;
    Matrix g1(k, ap.object.x().dim(), f.source.x().dim());
    Matrix g2(k, ap.object.y().dim(), f.source.y().dim());
    for (size_t h = 0; h < homs.size(); ++h)
        if (!sol->at(h, 0).is_zero()) {
            g1 = g1 + homs[h].f1.scaled(sol->at(h, 0));
            g2 = g2 + homs[h].f2.scaled(sol->at(h, 0));
        }
    return TripleHom(f.source, ap.object, g1, g2);
}

// ---------------------------------------------------------------------------
// cotilting module

namespace {

std::pair<Module, Matrix> envelope_or_identity(const Module& x) {
    if (is_injective(x)) return {x, Matrix::identity(x.algebra().field(), x.dim())};
    auto [e, mono] = injective_envelope(x);
    return {e, mono.matrix};
}

}  // namespace

CotiltingModule cotilting_T(const TriangularAlgebra& lam) {
    require(is_right_projective(lam.M()),
            "cotilting module requires M_B projective (resolving case)");
    require(lam.flat().field().is_prime_field(),
            "cotilting summand-count verification requires a prime field");
    Module da = dual_of_right_regular(lam.A());
    TripleModule t1 = triple_of_A_module(lam, da);
    Module db = dual_of_right_regular(lam.B());
    TensorData tens = tensor_over_B(lam.M(), db);
    auto [e_mod, e_map] = envelope_or_identity(tens.module);
    TripleModule t2(lam, e_mod, db, e_map);
    Module t = Module::direct_sum(t1.flat(), t2.flat());
    // invariants: inj.dim <= 1, Ext^1(T,T) = 0, #summands = #simples
    require(cosyzygy(cosyzygy(t)).dim() == 0, "cotilting: injective dimension exceeds 1");
    require(ext_dim(1, t, t) == 0, "cotilting: Ext^1(T,T) != 0");
    size_t nsummands = decompose(t).summands.size();
    require(nsummands == lam.flat().structure().idempotents.size(),
            "cotilting: summand count differs from the number of simples");
    return CotiltingModule{t, t1, t2, e_map, nsummands};
}

bool in_perp(const Module& l, const Module& t) {
    size_t e1 = ext_dim(1, l, t);
    size_t e2 = ext_dim(2, l, t);
    require(e2 == 0, "consistency: Ext^2 against a cotilting module must vanish");
    return e1 == 0;
}

bool in_perp(const TripleModule& l, const CotiltingModule& t) {
    return in_perp(l.flat(), t.module);
}

std::vector<TripleModule> injective_objects_S(const TriangularAlgebra& lam) {
    require(is_right_projective(lam.M()), "injective objects of S require M_B projective");
    std::vector<TripleModule> out;
    for (const auto& i : indec_injectives(lam.A())) out.push_back(triple_of_A_module(lam, i));
    for (const auto& j : indec_injectives(lam.B())) {
        TensorData tens = tensor_over_B(lam.M(), j);
        auto [e_mod, e_map] = envelope_or_identity(tens.module);
        out.push_back(TripleModule(lam, e_mod, j, e_map));
    }
    return out;
}

std::vector<TripleModule> projective_objects_S(const TriangularAlgebra& lam) {
    std::vector<TripleModule> out;
    for (const auto& [p, incl] : indec_projectives(lam.A()))
        out.push_back(triple_of_A_module(lam, p));
    for (const auto& [q, incl] : indec_projectives(lam.B())) out.push_back(triple_j_shriek(lam, q));
    return out;
}

bool frobenius_category_S(const TriangularAlgebra& lam) {
    auto inj = injective_objects_S(lam);
    auto proj = projective_objects_S(lam);
    if (inj.size() != proj.size()) return false;
    std::vector<bool> used(proj.size(), false);
    for (const auto& i : inj) {
        bool matched = false;
        for (size_t k = 0; k < proj.size() && !matched; ++k) {
            if (used[k]) continue;
            if (triple_is_isomorphic(i, proj[k])) {
                used[k] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

std::vector<TripleModule> projective_objects_F(const TriangularAlgebra& lam) {
    require(is_left_projective(lam.M()), "projective objects of F require _AM projective");
    const Field f = lam.flat().field();
    std::vector<TripleModule> out;
    for (const auto& [p, incl] : indec_projectives(lam.A())) {
        HomAMData h = hom_A_M(lam.M(), p);
        Matrix theta = Matrix::identity(f, h.module.dim());
        Module c = h.module;
        if (!is_projective(h.module)) {
            ProjectiveCover pc = projective_cover(h.module);
            c = pc.cover;
            theta = pc.epi.matrix;
        }
        TensorData tens = tensor_over_B(lam.M(), c);
        Matrix phi = eta_inv_of(lam.M(), tens, h, c, p, theta);
        out.push_back(TripleModule(lam, p, c, phi));
    }
    for (const auto& [q, incl] : indec_projectives(lam.B()))
        out.push_back(TripleModule(lam, Module::zero(lam.A()), q, Matrix(f, 0, 0)));
    return out;
}

TiltingModule tilting_L(const TriangularAlgebra& lam) {
    require(is_left_projective(lam.M()), "tilting module requires _AM projective");
    const Field f = lam.flat().field();
    Module areg = regular_module(lam.A());
    HomAMData h = hom_A_M(lam.M(), areg);
    Matrix theta = Matrix::identity(f, h.module.dim());
    Module c = h.module;
    if (!is_projective(h.module)) {
        ProjectiveCover pc = projective_cover(h.module);
        c = pc.cover;
        theta = pc.epi.matrix;
    }
    TensorData tens = tensor_over_B(lam.M(), c);
    Matrix phi = eta_inv_of(lam.M(), tens, h, c, areg, theta);
    TripleModule t1(lam, areg, c, phi);
    TripleModule t2(lam, Module::zero(lam.A()), regular_module(lam.B()), Matrix(f, 0, 0));
    Module l = Module::direct_sum(t1.flat(), t2.flat());
    require(ext_dim(1, l, l) == 0, "tilting: Ext^1(L,L) != 0");
    require(is_projective(syzygy(l)), "tilting: projective dimension exceeds 1");
    return TiltingModule{l, t1, t2};
}

bool in_S_r(const TripleModule& right_triple) { return in_S(right_triple); }

CotiltingModule right_cotilting_U(const TriangularAlgebra& lam) {
    require(is_left_projective(lam.M()),
            "right cotilting module requires _AM projective");
    return cotilting_T(lam.opposite_triangular());
}

TripleModule dual_triple(const TriangularAlgebra& lam_of_input, const TripleModule& t) {
    const TriangularAlgebra lr = lam_of_input.opposite_triangular();
    const Algebra& fl = lam_of_input.flat();
    const Field f = fl.field();
    size_t da = lam_of_input.A().dim(), dm = lam_of_input.M().dim(), db = lam_of_input.B().dim();
    // D(flat) over opposite(flat), re-indexed along (A|M|B) -> (B|M|A)
    auto perm = [&](size_t i) {
        if (i < db) return da + dm + i;
        if (i < db + dm) return da + (i - db);
        return i - db - dm;
    };
    std::vector<Matrix> acts;
    for (size_t i = 0; i < fl.dim(); ++i)
        acts.push_back(t.flat().action(perm(i)).transpose());
    Module dual(lr.flat(), std::move(acts));  // validates the opposite identification
    return flat_to_triple(lr, dual);
}

TripleModule duality_Sr_to_F(const TriangularAlgebra& lam, const TripleModule& right_triple) {
    // right_triple = (V; U)_psi over (B^op, M~, A^op); output [D U; D V]_phi over lam
    const TriangularAlgebra lr = lam.opposite_triangular();
    require(right_triple.lambda().same_as(lr), "duality: input not over the opposite triangular");
    const Field f = lam.flat().field();
    const Module& v = right_triple.x();  // over B^op
    const Module& u = right_triple.y();  // over A^op
    std::vector<Matrix> du_acts, dv_acts;
    for (size_t i = 0; i < lam.A().dim(); ++i) du_acts.push_back(u.action(i).transpose());
    for (size_t i = 0; i < lam.B().dim(); ++i) dv_acts.push_back(v.action(i).transpose());
    Module du(lam.A(), std::move(du_acts));
    Module dv(lam.B(), std::move(dv_acts));
    // beta = alpha_U o D(psi): D V -> Hom_A(M, D U)
    //   for xi in D(tensor coords): alpha(xi): m_i |-> (u_j |-> xi(class(m_i (x) u_j)))
    HomAMData h = hom_A_M(lam.M(), du);
    size_t dmm = lam.M().dim(), duu = u.dim();
    const Matrix& proj = right_triple.tensor().quot.proj;  // (m outer, u inner)
    Matrix beta(f, h.module.dim(), dv.dim());
    for (size_t vcol = 0; vcol < dv.dim(); ++vcol) {
        // xi = psi^T e_v = row v of psi
        Matrix g(f, du.dim(), dmm);
        for (size_t i = 0; i < dmm; ++i)
            for (size_t j = 0; j < duu; ++j) {
                // xi(class(m_i (x) u_j)) = sum_q psi(v, q) proj(q, i*duu + j)
                Scalar val = Scalar::zero(f);
                for (size_t q = 0; q < proj.rows(); ++q)
                    val += right_triple.phi().at(vcol, q) * proj.at(q, i * duu + j);
                g.at(j, i) = val;
            }
        if (h.module.dim() > 0) {
            std::vector<Matrix> basis = h.basis;
            // coordinates of g in the hom basis
            Matrix sys(f, du.dim() * dmm, basis.size());
            for (size_t k = 0; k < basis.size(); ++k)
                for (size_t r = 0; r < du.dim(); ++r)
                    for (size_t c = 0; c < dmm; ++c)
                        sys.at(r * dmm + c, k) = basis[k].at(r, c);
            Matrix rhs(f, du.dim() * dmm, 1);
            for (size_t r = 0; r < du.dim(); ++r)
                for (size_t c = 0; c < dmm; ++c) rhs.at(r * dmm + c, 0) = g.at(r, c);
            auto sol = solve(sys, rhs);
            require(sol.has_value() && (sys * *sol == rhs),
                    "duality: transported map is not an A-map");
            for (size_t k = 0; k < basis.size(); ++k) beta.at(k, vcol) = sol->at(k, 0);
        } else {
            require(g.is_zero(), "duality: transported map is not an A-map");
        }
    }
    TensorData tens = tensor_over_B(lam.M(), dv);
    Matrix phi = eta_inv_of(lam.M(), tens, h, dv, du, beta);
    return TripleModule(lam, du, dv, phi);
}

// ---------------------------------------------------------------------------
// the (*) and (**) exact sequences

SProjPresentation s_projective_presentation(const TripleModule& t) {
    const TriangularAlgebra& lam = t.lambda();
    const Field f = lam.flat().field();
    ProjectiveCover pcy = projective_cover(t.y());
    auto [cok, pi] = quotient_module(t.x(), Subspace::from_cols(t.phi()));
    ProjectiveCover pcc = projective_cover(cok);
    // theta: P -> X, an A-map lifting the cover of Coker(phi) through pi
    std::optional<Matrix> theta;
    {
        size_t ds = pcc.cover.dim(), dt = t.x().dim();
        std::vector<std::vector<Scalar>> rows;
        std::vector<Scalar> rhs;
        const Algebra& a = lam.A();
        require(a.has_structure(), "(*) requires basic algebras");
        std::vector<Matrix> gens;
        for (const auto& e : a.structure().idempotents) gens.push_back(e);
        for (const auto& g : a.structure().generators) gens.push_back(g.element);
        for (const auto& g : gens) {
            Matrix gs = pcc.cover.action_of(g), gt = t.x().action_of(g);
            for (size_t r = 0; r < dt; ++r)
                for (size_t c = 0; c < ds; ++c) {
                    std::vector<Scalar> row(ds * dt, Scalar::zero(f));
                    for (size_t k = 0; k < ds; ++k) row[r * ds + k] += gs.at(k, c);
                    for (size_t k = 0; k < dt; ++k) row[k * ds + c] -= gt.at(r, k);
                    rows.push_back(std::move(row));
                    rhs.push_back(Scalar::zero(f));
                }
        }
        for (size_t r = 0; r < cok.dim(); ++r)
            for (size_t c = 0; c < ds; ++c) {
                std::vector<Scalar> row(ds * dt, Scalar::zero(f));
                for (size_t k = 0; k < dt; ++k) row[k * ds + c] += pi.matrix.at(r, k);
                rows.push_back(std::move(row));
                rhs.push_back(pcc.epi.matrix.at(r, c));
            }
        auto sol = solve(Matrix::from_rows(f, rows), Matrix::col_vector(f, rhs));
        require(sol.has_value(), "internal: cover lift unsolvable");
        Matrix th(f, dt, ds);
        for (size_t r = 0; r < dt; ++r)
            for (size_t c = 0; c < ds; ++c) th.at(r, c) = sol->at(r * ds + c, 0);
        theta = th;
    }
    TripleModule pa = triple_of_A_module(lam, pcc.cover);
    TripleModule jq = triple_j_shriek(lam, pcy.cover);
    TripleModule middle = TripleModule::direct_sum(pa, jq);
    // epi: X part [theta | phi o (M (x) piY)], Y part [0 | piY]
    Matrix tmap = tensor_map(lam.M(), jq.tensor(), t.tensor(), pcy.epi.matrix);
    Matrix f1 = theta->hstack(t.phi() * tmap);
    Matrix f2 = Matrix(f, t.y().dim(), 0).hstack(pcy.epi.matrix);
    TripleHom epi(middle, t, f1, f2);
    require(rank(epi.flat_matrix()) == t.flat().dim(), "(*): map not surjective");
    // kernel as a triple
    auto [kmod, kincl] = submodule(middle.flat(), Subspace::from_rows(kernel(epi.flat_matrix())));
    TripleOfFlat kt = flat_to_triple_with_iso(lam, kmod);
    Matrix inclmat = kincl.matrix * kt.iso.matrix;
    size_t x2 = middle.x().dim(), y2 = middle.y().dim();
    size_t x1 = kt.triple.x().dim(), y1 = kt.triple.y().dim();
    require(inclmat.block(0, x1, x2, y1).is_zero() && inclmat.block(x2, 0, y2, x1).is_zero(),
            "internal: inclusion not block diagonal");
    TripleHom incl(kt.triple, middle, inclmat.block(0, 0, x2, x1),
                   inclmat.block(x2, x1, y2, y1));
    require(in_S(kt.triple), "(*): kernel not in S");
    return {middle, epi, kt.triple, incl};
}

SInjCopresentation s_injective_copresentation(const TripleModule& t) {
    require(in_S(t), "(**) requires an object of S");
    const TriangularAlgebra& lam = t.lambda();
    const Field f = lam.flat().field();
    auto [j, iota_y] = injective_envelope(t.y());
    auto [cok, pi] = quotient_module(t.x(), Subspace::from_cols(t.phi()));
    auto [i_mod, iota_c] = injective_envelope(cok);
    TensorData tens_j = tensor_over_B(lam.M(), j);
    auto [ej, e_map] = envelope_or_identity(tens_j.module);
    // alpha: X -> E_J with alpha o phi = e o (M (x) iota_y)
    Matrix tmap = tensor_map(lam.M(), t.tensor(), tens_j, iota_y.matrix);
    auto alpha = equivariant_solve(t.x(), ej, t.phi(), e_map * tmap);
    require(alpha.has_value(), "(**): extension through the monomorphism unsolvable");
    TripleModule tej(lam, ej, j, e_map);
    TripleModule ti = triple_of_A_module(lam, i_mod);
    TripleModule middle = TripleModule::direct_sum(tej, ti);
    Matrix f1 = alpha->vstack(iota_c.matrix * pi.matrix);
    TripleHom mono(t, middle, f1, iota_y.matrix);
    require(kernel(mono.flat_matrix()).rows() == 0, "(**): map not injective");
    // cokernel as a triple
    auto [cmod, cproj] =
        quotient_module(middle.flat(), Subspace::from_cols(mono.flat_matrix()));
    TripleOfFlat ct = flat_to_triple_with_iso(lam, cmod);
    auto inv = inverse(ct.iso.matrix);
    require(inv.has_value(), "internal: triple coordinate change not invertible");
    Matrix projmat = *inv * cproj.matrix;
    size_t x2 = ct.triple.x().dim(), y2 = ct.triple.y().dim();
    size_t x1 = middle.x().dim(), y1 = middle.y().dim();
    require(projmat.block(0, x1, x2, y1).is_zero() && projmat.block(x2, 0, y2, x1).is_zero(),
            "internal: projection not block diagonal");
    TripleHom proj(middle, ct.triple, projmat.block(0, 0, x2, x1),
                   projmat.block(x2, x1, y2, y1));
    require(in_S(ct.triple), "(**): cokernel not in S");
    return {middle, mono, ct.triple, proj};
}

}  // namespace trimono
