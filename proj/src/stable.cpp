#include "trimono/stable.hpp"

#include <algorithm>
#include <sstream>

namespace trimono {

namespace {

std::vector<Scalar> flatten_pair(const Matrix& f1, const Matrix& f2) {
    std::vector<Scalar> v;
    for (size_t r = 0; r < f1.rows(); ++r)
        for (size_t c = 0; c < f1.cols(); ++c) v.push_back(f1.at(r, c));
    for (size_t r = 0; r < f2.rows(); ++r)
        for (size_t c = 0; c < f2.cols(); ++c) v.push_back(f2.at(r, c));
    return v;
}

std::vector<Scalar> triple_coords(const std::vector<TripleHom>& basis, const Matrix& f1,
                                  const Matrix& f2) {
    const Field f = f1.field();
    auto target = flatten_pair(f1, f2);
    if (basis.empty()) {
        for (const auto& s : target) require(s.is_zero(), "map not in empty hom basis span");
        return {};
    }
    size_t n = target.size();
    Matrix sys(f, n, basis.size());
    for (size_t k = 0; k < basis.size(); ++k) {
        auto col = flatten_pair(basis[k].f1, basis[k].f2);
        for (size_t r = 0; r < n; ++r) sys.at(r, k) = col[r];
    }
    Matrix rhs(f, n, 1);
    for (size_t r = 0; r < n; ++r) rhs.at(r, 0) = target[r];
    auto sol = solve(sys, rhs);
    require(sol.has_value() && (sys * *sol == rhs), "map not in triple hom span");
    std::vector<Scalar> out;
    for (size_t k = 0; k < basis.size(); ++k) out.push_back(sol->at(k, 0));
    return out;
}

std::vector<Scalar> module_coords(const std::vector<ModuleHom>& basis, const Matrix& m) {
    if (basis.empty()) {
        require(m.is_zero(), "map not in empty hom basis span");
        return {};
    }
    return hom_coordinates(basis, m);
}

Subspace span_of_coord_rows(Field f, size_t ambient,
                            const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return Subspace(f, ambient);
    return Subspace::from_rows(Matrix::from_rows(f, rows));
}

bool coords_in(const Subspace& s, const std::vector<Scalar>& v, Field f) {
    if (s.ambient_dim() == 0) return true;
    Matrix row(f, 1, s.ambient_dim());
    for (size_t i = 0; i < v.size(); ++i) row.at(0, i) = v[i];
    return s.contains_row(row);
}

// theta: coefficient-space map; checks the induced map of stable quotients is
// a bijection (theta must map factoring into factoring)
bool stable_bijection(Field f, const Matrix& theta, const Subspace& f_lhs,
                      const Subspace& f_rhs) {
    for (size_t r = 0; r < f_lhs.basis().rows(); ++r) {
        Matrix img = theta * f_lhs.basis().row(r).transpose();
        if (!f_rhs.contains_row(img.transpose())) return false;
    }
    size_t ql = f_lhs.ambient_dim() - f_lhs.dim();
    size_t qr = f_rhs.ambient_dim() - f_rhs.dim();
    if (ql != qr) return false;
    if (ql == 0) return true;
    auto [projr, secr] = quotient_projection(f_rhs);
    auto [projl, secl] = quotient_projection(f_lhs);
    (void)projl;
    Matrix bar = projr * theta * secl;
    return rank(bar) == ql;
}

std::pair<Module, Matrix> envelope_or_id(const Module& x) {
    if (is_injective(x)) return {x, Matrix::identity(x.algebra().field(), x.dim())};
    auto [e, mono] = injective_envelope(x);
    return {e, mono.matrix};
}

}  // namespace

StableHomSpace stable_hom(const Module& x, const Module& y, StableMode mode) {
    const Field f = x.algebra().field();
    auto plain = hom_space(x, y);
    std::vector<std::vector<Scalar>> rows;
    if (!plain.empty()) {
        if (mode == StableMode::ModInjectives) {
            auto [e, mono] = injective_envelope(x);
            for (const auto& g : hom_space(e, y))
                rows.push_back(module_coords(plain, g.matrix * mono.matrix));
        } else {
            ProjectiveCover pc = projective_cover(y);
            for (const auto& h : hom_space(x, pc.cover))
                rows.push_back(module_coords(plain, pc.epi.matrix * h.matrix));
        }
    }
    Subspace fact = span_of_coord_rows(f, plain.size(), rows);
    StableHomSpace out{plain, fact, plain.size() - fact.dim(), {}};
    // coset representatives: basis vectors independent modulo the factoring
    Subspace acc = fact;
    for (size_t k = 0; k < plain.size() && out.coset_reps.size() < out.quotient_dim; ++k) {
        std::vector<Scalar> unit(plain.size(), Scalar::zero(f));
        unit[k] = Scalar::one(f);
        if (!coords_in(acc, unit, f)) {
            Matrix row(f, 1, plain.size());
            row.at(0, k) = Scalar::one(f);
            acc = acc.sum(Subspace::from_rows(row));
            out.coset_reps.push_back(unit);
        }
    }
    return out;
}

StableTripleHomSpace stable_hom_S(const TripleModule& s, const TripleModule& t) {
    const Field f = s.flat().algebra().field();
    auto plain = triple_hom_space(s, t);
    std::vector<std::vector<Scalar>> rows;
    if (!plain.empty()) {
        SInjCopresentation cop = s_injective_copresentation(s);
        for (const auto& g : triple_hom_space(cop.middle, t))
            rows.push_back(triple_coords(plain, g.f1 * cop.mono.f1, g.f2 * cop.mono.f2));
    }
    Subspace fact = span_of_coord_rows(f, plain.size(), rows);
    return {plain, fact, plain.size() - fact.dim()};
}

IStarData i_star_data(const TripleModule& t) {
    auto [cok, proj] = quotient_module(t.x(), Subspace::from_cols(t.phi()));
    return {cok, proj};
}

Module functor_i_upper_star(const TripleModule& t) { return i_star_data(t).coker; }

TripleModule functor_i_lower_star(const TriangularAlgebra& lam, const Module& x) {
    return triple_of_A_module(lam, x);
}

Module functor_i_shriek(const TripleModule& t) { return t.x(); }

TripleModule functor_j_lower_shriek(const TriangularAlgebra& lam, const Module& y) {
    return triple_j_shriek(lam, y);
}

Module functor_j_upper_star(const TripleModule& t) { return t.y(); }

TripleModule functor_j_lower_star(const TriangularAlgebra& lam, const Module& y) {
    require(satisfies_IP(lam.M()), "j_* requires the condition (IP)");
    TensorData tens = tensor_over_B(lam.M(), y);
    auto [e, mono] = envelope_or_id(tens.module);
    return TripleModule(lam, e, y, mono);
}

Matrix i_star_on_map(const TripleModule& s, const TripleModule& t, const IStarData& ds,
                     const IStarData& dt, const TripleHom& f) {
    auto m = solve_left(ds.proj.matrix, dt.proj.matrix * f.f1);
    require(m.has_value(), "internal: i^* does not act on this map");
    return *m;
}

TripleHom j_star_on_map(const TriangularAlgebra& lam, const TripleModule& jy,
                        const TripleModule& jy2, const Matrix& h) {
    Matrix tmap = tensor_map(lam.M(), jy.tensor(), jy2.tensor(), h);
    auto f = equivariant_solve(jy.x(), jy2.x(), jy.phi(), jy2.phi() * tmap);
    require(f.has_value(), "internal: j_* lift unsolvable");
    return TripleHom(jy, jy2, *f, h);
}

TripleModule strip_injective_objects(const TriangularAlgebra& lam, const TripleModule& s) {
    auto injectives = injective_objects_S(lam);
    auto dec = decompose(s.flat());
    Module rest = Module::zero(lam.flat());
    bool any = false;
    for (const auto& piece : dec.pieces) {
        TripleModule pt = flat_to_triple(lam, piece);
        bool is_inj = false;
        for (const auto& i : injectives)
            if (triple_is_isomorphic(pt, i)) {
                is_inj = true;
                break;
            }
        if (!is_inj) {
            rest = any ? Module::direct_sum(rest, piece) : piece;
            any = true;
        }
    }
    return flat_to_triple(lam, rest);
}

bool stably_isomorphic_S(const TriangularAlgebra& lam, const TripleModule& a,
                         const TripleModule& b) {
    TripleModule sa = strip_injective_objects(lam, a);
    TripleModule sb = strip_injective_objects(lam, b);
    if (sa.flat().dim() == 0 && sb.flat().dim() == 0) return true;
    return triple_is_isomorphic(sa, sb).has_value();
}

// ---------------------------------------------------------------------------
// the recollement verifier

RecollementReport verify_recollement(const TriangularAlgebra& lam,
                                     const std::vector<TripleModule>& s_objects,
                                     const std::vector<Module>& a_modules,
                                     const std::vector<Module>& b_modules) {
    RecollementReport rep;
    rep.ip_holds = satisfies_IP(lam.M());
    if (!rep.ip_holds) {
        rep.lines.push_back("precondition: condition (IP) fails for this bimodule");
        rep.passed = false;
        return rep;
    }
    const Field f = lam.flat().field();
    auto check = [&](const std::string& name, bool ok, const std::string& witness) {
        rep.lines.push_back(name + ": " + (ok ? "pass" : "FAIL [" + witness + "]"));
        if (!ok) rep.failures.push_back(name + " [" + witness + "]");
    };
    auto wit = [](size_t i, size_t j) {
        std::ostringstream os;
        os << "pair (" << i << "," << j << ")";
        return os.str();
    };

    for (const auto& s : s_objects)
        require(in_S(s), "recollement corpus: object outside S(A,M,B)");

    // cached per-object data
    std::vector<IStarData> istar;
    for (const auto& s : s_objects) istar.push_back(i_star_data(s));
    std::vector<TripleModule> iw, jv, jsv;
    for (const auto& w : a_modules) iw.push_back(functor_i_lower_star(lam, w));
    for (const auto& v : b_modules) {
        jv.push_back(functor_j_lower_shriek(lam, v));
        jsv.push_back(functor_j_lower_star(lam, v));
    }

    // (R1a) (i^*, i_*): Hom-bar_A(Coker phi_s, W) ~ Hom-bar_S(s, [W;0])
    for (size_t si = 0; si < s_objects.size(); ++si)
        for (size_t wi = 0; wi < a_modules.size(); ++wi) {
            auto lhs = stable_hom(istar[si].coker, a_modules[wi], StableMode::ModInjectives);
            auto rhs = stable_hom_S(s_objects[si], iw[wi]);
            Matrix theta(f, rhs.plain.size(), lhs.plain.size());
            for (size_t k = 0; k < lhs.plain.size(); ++k) {
                Matrix f1 = lhs.plain[k].matrix * istar[si].proj.matrix;
                Matrix f2(f, 0, s_objects[si].y().dim());
                auto coords = triple_coords(rhs.plain, f1, f2);
                for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
            }
            check("R1 (i*,i_*) stable iso", stable_bijection(f, theta, lhs.factoring, rhs.factoring),
                  wit(si, wi));
            // naturality in s: u: s' -> s
            for (size_t sj = 0; sj < s_objects.size(); ++sj) {
                auto rhs2 = stable_hom_S(s_objects[sj], iw[wi]);
                for (const auto& u : triple_hom_space(s_objects[sj], s_objects[si])) {
                    Matrix iu = i_star_on_map(s_objects[sj], s_objects[si], istar[sj], istar[si], u);
                    bool ok = true;
                    for (const auto& g : lhs.plain) {
                        // theta(g o i*(u)) vs theta(g) o u, stably
                        Matrix left_f1 = (g.matrix * iu) * istar[sj].proj.matrix;
                        Matrix right_f1 = (g.matrix * istar[si].proj.matrix) * u.f1;
                        auto diff = triple_coords(rhs2.plain, left_f1 - right_f1,
                                                  Matrix(f, 0, s_objects[sj].y().dim()));
                        if (!coords_in(rhs2.factoring, diff, f)) ok = false;
                    }
                    check("R1 (i*,i_*) naturality (S side)", ok, wit(si, wi) + " via " + wit(sj, 0));
                }
            }
        }

    // (R1b) (i_*, i^!): Hom-bar_S([W;0], s) ~ Hom-bar_A(W, X_s)
    for (size_t wi = 0; wi < a_modules.size(); ++wi)
        for (size_t si = 0; si < s_objects.size(); ++si) {
            auto lhs = stable_hom_S(iw[wi], s_objects[si]);
            auto rhs = stable_hom(a_modules[wi], s_objects[si].x(), StableMode::ModInjectives);
            Matrix theta(f, rhs.plain.size(), lhs.plain.size());
            for (size_t k = 0; k < lhs.plain.size(); ++k) {
                auto coords = module_coords(rhs.plain, lhs.plain[k].f1);
                for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
            }
            check("R1 (i_*,i^!) stable iso", stable_bijection(f, theta, lhs.factoring, rhs.factoring),
                  wit(wi, si));
        }

    // (R1c) (j_!, j^*): Hom-bar_S(j_! V, s) ~ Hom-bar_B(V, Y_s)
    for (size_t vi = 0; vi < b_modules.size(); ++vi)
        for (size_t si = 0; si < s_objects.size(); ++si) {
            auto lhs = stable_hom_S(jv[vi], s_objects[si]);
            auto rhs = stable_hom(b_modules[vi], s_objects[si].y(), StableMode::ModInjectives);
            Matrix theta(f, rhs.plain.size(), lhs.plain.size());
            for (size_t k = 0; k < lhs.plain.size(); ++k) {
                auto coords = module_coords(rhs.plain, lhs.plain[k].f2);
                for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
            }
            check("R1 (j_!,j^*) stable iso", stable_bijection(f, theta, lhs.factoring, rhs.factoring),
                  wit(vi, si));
        }

    // (R1d) (j^*, j_*): Hom-bar_B(Y_s, V) ~ Hom-bar_S(s, j_* V)
    for (size_t si = 0; si < s_objects.size(); ++si)
        for (size_t vi = 0; vi < b_modules.size(); ++vi) {
            auto lhs = stable_hom(s_objects[si].y(), b_modules[vi], StableMode::ModInjectives);
            auto rhs = stable_hom_S(s_objects[si], jsv[vi]);
            Matrix theta(f, rhs.plain.size(), lhs.plain.size());
            for (size_t k = 0; k < lhs.plain.size(); ++k) {
                Matrix tmap = tensor_map(lam.M(), s_objects[si].tensor(), jsv[vi].tensor(),
                                         lhs.plain[k].matrix);
                auto fsol = equivariant_solve(s_objects[si].x(), jsv[vi].x(), s_objects[si].phi(),
                                              jsv[vi].phi() * tmap);
                require(fsol.has_value(), "internal: (j^*, j_*) lift unsolvable");
                auto coords = triple_coords(rhs.plain, *fsol, lhs.plain[k].matrix);
                for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
            }
            check("R1 (j^*,j_*) stable iso", stable_bijection(f, theta, lhs.factoring, rhs.factoring),
                  wit(si, vi));
            // naturality in V: for u: V -> V', theta(u o h) and j_*(u) o theta(h)
            // agree modulo maps factoring through injective objects
            for (size_t vj = 0; vj < b_modules.size(); ++vj) {
                auto rhs2 = stable_hom_S(s_objects[si], jsv[vj]);
                for (const auto& u : hom_space(b_modules[vi], b_modules[vj])) {
                    TripleHom ju = j_star_on_map(lam, jsv[vi], jsv[vj], u.matrix);
                    bool ok = true;
                    for (const auto& h : lhs.plain) {
                        Matrix uh = u.matrix * h.matrix;
                        Matrix tm1 = tensor_map(lam.M(), s_objects[si].tensor(), jsv[vj].tensor(), uh);
                        auto f_uh = equivariant_solve(s_objects[si].x(), jsv[vj].x(),
                                                      s_objects[si].phi(), jsv[vj].phi() * tm1);
                        Matrix tm2 = tensor_map(lam.M(), s_objects[si].tensor(), jsv[vi].tensor(),
                                                h.matrix);
                        auto f_h = equivariant_solve(s_objects[si].x(), jsv[vi].x(),
                                                     s_objects[si].phi(), jsv[vi].phi() * tm2);
                        require(f_uh.has_value() && f_h.has_value(),
                                "internal: naturality lifts unsolvable");
                        Matrix d1 = *f_uh - ju.f1 * *f_h;
                        Matrix d2 = uh - ju.f2 * h.matrix;
                        auto diff = triple_coords(rhs2.plain, d1, d2);
                        if (!coords_in(rhs2.factoring, diff, f)) ok = false;
                    }
                    check("R1 (j^*,j_*) naturality (B side)", ok,
                          wit(si, vi) + " to " + wit(si, vj));
                }
            }
        }

    // (R2) full faithfulness of i_*, j_!, j_*
    for (size_t wi = 0; wi < a_modules.size(); ++wi)
        for (size_t wj = 0; wj < a_modules.size(); ++wj) {
            auto lhs = stable_hom(a_modules[wi], a_modules[wj], StableMode::ModInjectives);
            auto rhs = stable_hom_S(iw[wi], iw[wj]);
            Matrix theta(f, rhs.plain.size(), lhs.plain.size());
            for (size_t k = 0; k < lhs.plain.size(); ++k) {
                auto coords = triple_coords(rhs.plain, lhs.plain[k].matrix, Matrix(f, 0, 0));
                for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
            }
            check("R2 i_* fully faithful", stable_bijection(f, theta, lhs.factoring, rhs.factoring),
                  wit(wi, wj));
        }
    for (size_t vi = 0; vi < b_modules.size(); ++vi)
        for (size_t vj = 0; vj < b_modules.size(); ++vj) {
            auto lhs = stable_hom(b_modules[vi], b_modules[vj], StableMode::ModInjectives);
            {
                auto rhs = stable_hom_S(jv[vi], jv[vj]);
                Matrix theta(f, rhs.plain.size(), lhs.plain.size());
                for (size_t k = 0; k < lhs.plain.size(); ++k) {
                    Matrix tm = tensor_map(lam.M(), jv[vi].tensor(), jv[vj].tensor(),
                                           lhs.plain[k].matrix);
                    auto coords = triple_coords(rhs.plain, tm, lhs.plain[k].matrix);
                    for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
                }
                check("R2 j_! fully faithful",
                      stable_bijection(f, theta, lhs.factoring, rhs.factoring), wit(vi, vj));
            }
            {
                auto rhs = stable_hom_S(jsv[vi], jsv[vj]);
                Matrix theta(f, rhs.plain.size(), lhs.plain.size());
                for (size_t k = 0; k < lhs.plain.size(); ++k) {
                    TripleHom jh = j_star_on_map(lam, jsv[vi], jsv[vj], lhs.plain[k].matrix);
                    auto coords = triple_coords(rhs.plain, jh.f1, jh.f2);
                    for (size_t r = 0; r < coords.size(); ++r) theta.at(r, k) = coords[r];
                }
                check("R2 j_* fully faithful",
                      stable_bijection(f, theta, lhs.factoring, rhs.factoring), wit(vi, vj));
            }
        }

    // (R3) Im i_* = Ker j^*, stably
    for (size_t si = 0; si < s_objects.size(); ++si) {
        if (!is_injective(s_objects[si].y())) continue;
        TripleModule img = functor_i_lower_star(lam, istar[si].coker);
        check("R3 Ker j^* inside Im i_*", stably_isomorphic_S(lam, s_objects[si], img),
              wit(si, si));
    }
    for (size_t wi = 0; wi < a_modules.size(); ++wi) {
        check("R3 Im i_* inside Ker j^*", is_injective(functor_j_upper_star(iw[wi])), wit(wi, wi));
    }

    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace trimono
