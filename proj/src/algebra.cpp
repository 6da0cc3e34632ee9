#include "trimono/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace trimono {

size_t QuiverPresentation::vertex_index(const std::string& label) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return i;
    throw Error("unknown vertex '" + label + "'");
}

size_t QuiverPresentation::arrow_index(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return i;
    throw Error("unknown arrow '" + label + "'");
}

struct Algebra::Data {
    Field field = Field::rationals();
    size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Matrix> left_mults;
    std::vector<Matrix> right_mults;
    Matrix unit{Field::rationals(), 0, 0};
    std::optional<QuiverPresentation> pres;
    std::optional<AlgebraStructure> structure;
};

namespace {

void verify_algebra(const Algebra::Data& d) {
    const Field& f = d.field;
    size_t n = d.dim;
    // unit is a two-sided identity
    Matrix lu(f, n, n), ru(f, n, n);
    for (size_t j = 0; j < n; ++j) {
        Matrix ej(f, n, 1);
        ej.set(j, 0, Scalar::one(f));
        Matrix le(f, n, 1), re(f, n, 1);
        for (size_t i = 0; i < n; ++i) {
            if (!d.unit.at(i, 0).is_zero()) {
                le = le + d.left_mults[i].col(j).scaled(d.unit.at(i, 0));
            }
        }
        re = d.left_mults[j] * d.unit;
        for (size_t r = 0; r < n; ++r) {
            lu.at(r, j) = le.at(r, 0);
            ru.at(r, j) = re.at(r, 0);
        }
    }
    require(lu.is_identity() && ru.is_identity(), "algebra unit axiom fails");
    // associativity on all basis triples: (b_i b_j) b_k == b_i (b_j b_k)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Matrix cij = d.left_mults[i].col(j);
            for (size_t k = 0; k < n; ++k) {
                Matrix lhs(f, n, 1);
                for (size_t s = 0; s < n; ++s)
                    if (!cij.at(s, 0).is_zero())
                        lhs = lhs + d.left_mults[s].col(k).scaled(cij.at(s, 0));
                Matrix rhs = d.left_mults[i] * d.left_mults[j].col(k);
                require(lhs == rhs, "algebra associativity fails at basis triple (" +
                                        d.labels[i] + ", " + d.labels[j] + ", " +
                                        d.labels[k] + ")");
            }
        }
}

Matrix eval_expr_in_algebra(const Algebra::Data& d, const std::vector<BasisExprTerm>& expr,
                            const AlgebraStructure& st) {
    const Field& f = d.field;
    Matrix acc(f, d.dim, 1);
    for (const auto& term : expr) {
        Matrix prod = d.unit;
        for (const auto& fac : term.factors) {
            const Matrix& el =
                fac.is_idempotent ? st.idempotents[fac.index] : st.generators[fac.index].element;
            // prod := prod * el
            Matrix next(f, d.dim, 1);
            for (size_t i = 0; i < d.dim; ++i)
                if (!prod.at(i, 0).is_zero())
                    next = next + d.left_mults[i] * el.scaled(prod.at(i, 0));
            prod = next;
        }
        acc = acc + prod.scaled(term.coeff);
    }
    return acc;
}

void verify_structure(const Algebra::Data& d) {
    if (!d.structure) return;
    const auto& st = *d.structure;
    const Field& f = d.field;
    size_t n = d.dim;
    // idempotents: orthogonal, idempotent, sum to unit
    Matrix sum(f, n, 1);
    for (size_t i = 0; i < st.idempotents.size(); ++i) {
        sum = sum + st.idempotents[i];
        for (size_t j = 0; j < st.idempotents.size(); ++j) {
            Matrix p(f, n, 1);
            for (size_t s = 0; s < n; ++s)
                if (!st.idempotents[i].at(s, 0).is_zero())
                    p = p + d.left_mults[s] * st.idempotents[j].scaled(st.idempotents[i].at(s, 0));
            if (i == j)
                require(p == st.idempotents[i], "idempotent not idempotent");
            else
                require(p.is_zero(), "idempotents not orthogonal");
        }
    }
    require(sum == d.unit, "idempotents do not sum to the unit");
    // radical: two-sided ideal, nilpotent
    require(st.radical.ambient_dim() == n, "radical ambient mismatch");
    const Matrix& rb = st.radical.basis();
    for (size_t r = 0; r < rb.rows(); ++r) {
        Matrix v = rb.row(r).transpose();
        for (size_t i = 0; i < n; ++i) {
            Matrix lv(f, n, 1), rv(f, n, 1);
            lv = d.left_mults[i] * v;
            for (size_t s = 0; s < n; ++s)
                if (!v.at(s, 0).is_zero()) rv = rv + d.left_mults[s].col(i).scaled(v.at(s, 0));
            require(st.radical.contains_row(lv.transpose()), "radical not a left ideal");
            require(st.radical.contains_row(rv.transpose()), "radical not a right ideal");
        }
    }
    // nilpotency: powers of the radical shrink to zero
    Subspace power = st.radical;
    for (size_t iter = 0; iter <= n + 1 && power.dim() > 0; ++iter) {
        require(iter <= n, "radical is not nilpotent");
        std::vector<std::vector<Scalar>> prods;
        for (size_t r = 0; r < power.basis().rows(); ++r)
            for (size_t s = 0; s < rb.rows(); ++s) {
                Matrix x = power.basis().row(r).transpose();
                Matrix y = rb.row(s).transpose();
                Matrix p(f, n, 1);
                for (size_t i = 0; i < n; ++i)
                    if (!x.at(i, 0).is_zero()) p = p + d.left_mults[i] * y.scaled(x.at(i, 0));
                prods.push_back(p.transpose().row_entries(0));
            }
        if (prods.empty()) break;
        power = Subspace::from_rows(Matrix::from_rows(f, prods));
    }
    // generators + idempotents generate the algebra: span closure under products
    std::vector<std::vector<Scalar>> span_rows;
    for (const auto& e : st.idempotents) span_rows.push_back(e.transpose().row_entries(0));
    for (const auto& g : st.generators) span_rows.push_back(g.element.transpose().row_entries(0));
    Subspace span = Subspace::from_rows(Matrix::from_rows(f, span_rows));
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<Scalar>> next;
        for (size_t r = 0; r < span.basis().rows(); ++r)
            for (const auto& g : st.generators) {
                Matrix x = span.basis().row(r).transpose();
                Matrix p(f, n, 1);
                for (size_t i = 0; i < n; ++i)
                    if (!x.at(i, 0).is_zero()) p = p + d.left_mults[i] * g.element.scaled(x.at(i, 0));
                next.push_back(p.transpose().row_entries(0));
            }
        if (!next.empty()) {
            Subspace bigger = span.sum(Subspace::from_rows(Matrix::from_rows(f, next)));
            if (bigger.dim() > span.dim()) {
                span = bigger;
                grew = true;
            }
        }
    }
    require(span.dim() == n, "structure generators do not generate the algebra");
    // expressions reproduce the basis elements
    require(st.basis_exprs.size() == n, "missing basis expressions");
    for (size_t i = 0; i < n; ++i) {
        Matrix ei(f, n, 1);
        ei.set(i, 0, Scalar::one(f));
        require(eval_expr_in_algebra(d, st.basis_exprs[i], st) == ei,
                "basis expression mismatch at " + d.labels[i]);
    }
}

}  // namespace

Algebra Algebra::from_left_mults(Field f, std::vector<std::string> labels,
                                 std::vector<Matrix> left_mults, Matrix unit,
                                 std::optional<QuiverPresentation> pres,
                                 std::optional<AlgebraStructure> structure) {
    auto d = std::make_shared<Data>();
    d->field = f;
    d->dim = labels.size();
    require(left_mults.size() == d->dim, "left_mults size mismatch");
    require(unit.rows() == d->dim && unit.cols() == 1, "unit shape mismatch");
    d->labels = std::move(labels);
    d->left_mults = std::move(left_mults);
    d->unit = unit;
    d->right_mults.reserve(d->dim);
    for (size_t j = 0; j < d->dim; ++j) {
        Matrix rj(f, d->dim, d->dim);
        for (size_t i = 0; i < d->dim; ++i)
            for (size_t r = 0; r < d->dim; ++r) rj.at(r, i) = d->left_mults[i].at(r, j);
        d->right_mults.push_back(rj);
    }
    d->pres = std::move(pres);
    d->structure = std::move(structure);
    verify_algebra(*d);
    verify_structure(*d);
    return Algebra(std::move(d));
}

Field Algebra::field() const { return d_->field; }
size_t Algebra::dim() const { return d_->dim; }
const std::vector<std::string>& Algebra::basis_labels() const { return d_->labels; }
const Matrix& Algebra::left_mult(size_t i) const { return d_->left_mults.at(i); }
const Matrix& Algebra::right_mult(size_t i) const { return d_->right_mults.at(i); }
const Matrix& Algebra::unit() const { return d_->unit; }
const std::optional<QuiverPresentation>& Algebra::presentation() const { return d_->pres; }
bool Algebra::has_structure() const { return d_->structure.has_value(); }
const AlgebraStructure& Algebra::structure() const {
    require(has_structure(), "algebra carries no structural data (not basic/presented)");
    return *d_->structure;
}

Matrix Algebra::mult(const Matrix& x, const Matrix& y) const {
    require(x.rows() == d_->dim && y.rows() == d_->dim && x.cols() == 1 && y.cols() == 1,
            "algebra mult shape mismatch");
    Matrix out(d_->field, d_->dim, 1);
    for (size_t i = 0; i < d_->dim; ++i)
        if (!x.at(i, 0).is_zero()) out = out + (d_->left_mults[i] * y).scaled(x.at(i, 0));
    return out;
}

Matrix Algebra::left_mult_by(const Matrix& x) const {
    Matrix out(d_->field, d_->dim, d_->dim);
    for (size_t i = 0; i < d_->dim; ++i)
        if (!x.at(i, 0).is_zero()) out = out + d_->left_mults[i].scaled(x.at(i, 0));
    return out;
}

Matrix Algebra::right_mult_by(const Matrix& x) const {
    Matrix out(d_->field, d_->dim, d_->dim);
    for (size_t i = 0; i < d_->dim; ++i)
        if (!x.at(i, 0).is_zero()) out = out + d_->right_mults[i].scaled(x.at(i, 0));
    return out;
}

bool Algebra::same_as(const Algebra& o) const {
    if (d_ == o.d_) return true;
    if (d_->field != o.d_->field || d_->dim != o.d_->dim) return false;
    for (size_t i = 0; i < d_->dim; ++i)
        if (d_->left_mults[i] != o.d_->left_mults[i]) return false;
    return d_->unit == o.d_->unit;
}

// ---------------------------------------------------------------------------
// path algebra quotients

namespace {

struct Path {
    size_t source, target;
    std::vector<size_t> arrows;  // application order
    std::vector<std::string> display;  // labels, composition order (reverse application)
};

std::vector<std::string> display_of(const QuiverPresentation& q, const std::vector<size_t>& arrows) {
    std::vector<std::string> out;
    for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) out.push_back(q.arrows[*it].label);
    return out;
}

std::string join_display(const std::vector<std::string>& parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += '*';
        s += parts[i];
    }
    return s;
}

}  // namespace

Algebra Algebra::path_algebra_quotient(const QuiverPresentation& q, Field f) {
    require(!q.vertices.empty(), "quiver needs at least one vertex");
    {
        std::set<std::string> seen;
        for (const auto& v : q.vertices)
            require(seen.insert(v).second, "duplicate vertex label '" + v + "'");
        for (const auto& a : q.arrows) {
            require(seen.insert(a.label).second, "duplicate label '" + a.label + "'");
            require(a.source < q.vertices.size() && a.target < q.vertices.size(),
                    "arrow endpoints out of range");
        }
    }
    // validate relations: terms composable, same endpoints, length >= 2 (admissibility)
    bool graded = true;
    size_t max_rel_len = 2;
    for (const auto& rel : q.relations) {
        require(!rel.empty(), "empty relation");
        std::optional<std::pair<size_t, size_t>> ends;
        std::optional<size_t> len0;
        for (const auto& term : rel) {
            require(term.arrows.size() >= 2,
                    "relation term of length < 2 (relation ideal not admissible)");
            for (size_t k = 0; k + 1 < term.arrows.size(); ++k)
                require(q.arrows[term.arrows[k]].target == q.arrows[term.arrows[k + 1]].source,
                        "relation term is not a composable path");
            std::pair<size_t, size_t> e{q.arrows[term.arrows.front()].source,
                                        q.arrows[term.arrows.back()].target};
            if (!ends)
                ends = e;
            else
                require(*ends == e, "relation mixes paths with different endpoints");
            if (!len0)
                len0 = term.arrows.size();
            else if (*len0 != term.arrows.size())
                graded = false;
            max_rel_len = std::max(max_rel_len, term.arrows.size());
        }
    }

    constexpr size_t kMaxLen = 64;
    constexpr size_t kMaxPaths = 100000;

    std::optional<std::set<std::vector<size_t>>> prev_survivors;
    for (size_t cap = std::max<size_t>(4, 2 * max_rel_len);; cap *= 2) {
        require(cap <= kMaxLen,
                "path length cap exceeded: relation ideal not admissible or algebra too large");
        // enumerate paths up to length cap
        std::vector<std::vector<Path>> by_len;
        by_len.push_back({});
        for (size_t v = 0; v < q.vertices.size(); ++v)
            by_len[0].push_back({v, v, {}, {}});
        size_t total = q.vertices.size();
        bool overflow = false;
        for (size_t len = 1; len <= cap && !overflow; ++len) {
            by_len.push_back({});
            for (const auto& p : by_len[len - 1])
                for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
                    if (q.arrows[ai].source != p.target) continue;
                    Path np{p.source, q.arrows[ai].target, p.arrows, {}};
                    np.arrows.push_back(ai);
                    np.display = display_of(q, np.arrows);
                    by_len[len].push_back(std::move(np));
                    if (++total > kMaxPaths) overflow = true;
                }
        }
        require(!overflow, "path count explodes: relation ideal not admissible");

        // index all paths of length 1..cap (vertices handled separately)
        std::vector<Path> paths;
        std::map<std::vector<size_t>, size_t> path_index;  // by arrow sequence
        for (size_t len = 1; len < by_len.size(); ++len)
            for (const auto& p : by_len[len]) {
                path_index[p.arrows] = paths.size();
                paths.push_back(p);
            }

        // relation ideal within the capped path space: span of u * r * w
        std::vector<std::vector<Scalar>> gens;
        for (const auto& rel : q.relations) {
            size_t rel_src = q.arrows[rel[0].arrows.front()].source;
            size_t rel_tgt = q.arrows[rel[0].arrows.back()].target;
            size_t longest = 0;
            for (const auto& t : rel) longest = std::max(longest, t.arrows.size());
            // w: path ending at rel_src (w applied first), u: path starting at rel_tgt
            std::vector<const Path*> ws, us;
            for (size_t len = 0; len + longest <= cap && len < by_len.size(); ++len)
                for (const auto& p : by_len[len]) {
                    if (p.target == rel_src) ws.push_back(&p);
                    if (p.source == rel_tgt) us.push_back(&p);
                }
            for (const Path* w : ws)
                for (const Path* u : us) {
                    if (w->arrows.size() + longest + u->arrows.size() > cap) continue;
                    std::vector<Scalar> row(paths.size(), Scalar::zero(f));
                    bool any = false;
                    for (const auto& term : rel) {
                        std::vector<size_t> seq = w->arrows;
                        seq.insert(seq.end(), term.arrows.begin(), term.arrows.end());
                        seq.insert(seq.end(), u->arrows.begin(), u->arrows.end());
                        auto it = path_index.find(seq);
                        require(it != path_index.end(), "internal: path not indexed");
                        row[it->second] += Scalar::from_long(f, term.coeff);
                        any = true;
                    }
                    if (any) gens.push_back(std::move(row));
                }
        }

        // echelonize with longer paths first so surviving classes are as short
        // as possible
        std::vector<size_t> order(paths.size());
        for (size_t i = 0; i < paths.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            if (paths[x].arrows.size() != paths[y].arrows.size())
                return paths[x].arrows.size() > paths[y].arrows.size();
            return paths[x].display < paths[y].display;
        });
        std::vector<size_t> pos_of(paths.size());  // path -> column
        for (size_t c = 0; c < order.size(); ++c) pos_of[order[c]] = c;
        Matrix genmat(f, gens.size(), paths.size());
        for (size_t r = 0; r < gens.size(); ++r)
            for (size_t i = 0; i < paths.size(); ++i) genmat.at(r, pos_of[i]) = gens[r][i];
        auto rr = rref(genmat);
        std::vector<bool> is_pivot(paths.size(), false);
        for (size_t c : rr.pivot_cols) is_pivot[c] = true;

        std::vector<size_t> survivors;  // path ids with nonzero class
        for (size_t c = 0; c < paths.size(); ++c)
            if (!is_pivot[c]) survivors.push_back(order[c]);
        size_t max_surv_len = 0;
        for (size_t id : survivors) max_surv_len = std::max(max_surv_len, paths[id].arrows.size());
        // need room to certify vanishing beyond the survivors and to reduce
        // products of two surviving classes
        if (2 * max_surv_len + max_rel_len > cap) continue;
        if (!graded) {
            // for non-graded admissible ideals the computation is exact once
            // the surviving set is stable under a cap doubling; the result is
            // further validated by the algebra axioms below
            std::set<std::vector<size_t>> sig;
            for (size_t id : survivors) sig.insert(paths[id].arrows);
            if (!prev_survivors || *prev_survivors != sig) {
                prev_survivors = std::move(sig);
                continue;
            }
        }

        // basis: vertices first (input order), then survivors by length, then
        // lexicographic printed label
        std::stable_sort(survivors.begin(), survivors.end(), [&](size_t x, size_t y) {
            if (paths[x].arrows.size() != paths[y].arrows.size())
                return paths[x].arrows.size() < paths[y].arrows.size();
            return paths[x].display < paths[y].display;
        });
        size_t nv = q.vertices.size();
        size_t dim = nv + survivors.size();
        std::vector<std::string> labels;
        for (const auto& v : q.vertices) labels.push_back("e_" + v);
        for (size_t id : survivors) labels.push_back(join_display(paths[id].display));
        std::map<size_t, size_t> class_of;  // path id -> basis index
        for (size_t s = 0; s < survivors.size(); ++s) class_of[survivors[s]] = nv + s;

        // normal form of an arbitrary path as a vector over the class basis
        auto nf_path = [&](const std::vector<size_t>& seq) -> Matrix {
            Matrix out(f, dim, 1);
            auto it = path_index.find(seq);
            require(it != path_index.end(), "internal: product path exceeds cap");
            size_t col = pos_of[it->second];
            if (!is_pivot[col]) {
                out.set(class_of.at(it->second), 0, Scalar::one(f));
                return out;
            }
            // reduce e_col by the echelon rows: e_col == -(tail of its pivot row)
            size_t prow = 0;
            while (rr.pivot_cols[prow] != col) ++prow;
            for (size_t c = col + 1; c < paths.size(); ++c) {
                const Scalar& v = rr.reduced.at(prow, c);
                if (v.is_zero()) continue;
                require(!is_pivot[c], "internal: rref not fully reduced");
                out.set(class_of.at(order[c]), 0, -v);
            }
            return out;
        };

        // structure constants
        std::vector<Matrix> left_mults(dim, Matrix(f, dim, dim));
        auto basis_path = [&](size_t b) -> const Path* {
            return b < nv ? nullptr : &paths[survivors[b - nv]];
        };
        auto src_of = [&](size_t b) { return b < nv ? b : basis_path(b)->source; };
        auto tgt_of = [&](size_t b) { return b < nv ? b : basis_path(b)->target; };
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) {
                // product b_i * b_j  (b_j applied first): needs tgt(b_j) == src(b_i)
                if (src_of(i) != tgt_of(j)) continue;
                Matrix prod(f, dim, 1);
                if (i < nv && j < nv) {
                    prod.set(i, 0, Scalar::one(f));
                } else if (i < nv) {
                    prod.set(j, 0, Scalar::one(f));
                } else if (j < nv) {
                    prod.set(i, 0, Scalar::one(f));
                } else {
                    std::vector<size_t> seq = basis_path(j)->arrows;
                    seq.insert(seq.end(), basis_path(i)->arrows.begin(),
                               basis_path(i)->arrows.end());
                    prod = nf_path(seq);
                }
                for (size_t r = 0; r < dim; ++r) left_mults[i].at(r, j) = prod.at(r, 0);
            }

        Matrix unit(f, dim, 1);
        for (size_t v = 0; v < nv; ++v) unit.set(v, 0, Scalar::one(f));

        AlgebraStructure st{std::vector<Matrix>{}, Subspace(f, dim), {}, {}};
        for (size_t v = 0; v < nv; ++v) {
            Matrix e(f, dim, 1);
            e.set(v, 0, Scalar::one(f));
            st.idempotents.push_back(e);
        }
        {
            Matrix radrows(f, survivors.size(), dim);
            for (size_t s = 0; s < survivors.size(); ++s)
                radrows.set(s, nv + s, Scalar::one(f));
            st.radical = Subspace::from_rows(radrows);
        }
        // generators: arrow classes (always survive an admissible ideal)
        std::vector<size_t> arrow_basis(q.arrows.size());
        for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
            auto it = path_index.find({ai});
            require(it != path_index.end() && class_of.count(it->second),
                    "arrow class vanishes: relation ideal not admissible");
            size_t b = class_of.at(it->second);
            arrow_basis[ai] = b;
            Matrix g(f, dim, 1);
            g.set(b, 0, Scalar::one(f));
            st.generators.push_back({g, {{q.arrows[ai].target, q.arrows[ai].source}}});
        }
        for (size_t b = 0; b < dim; ++b) {
            std::vector<GenFactor> factors;
            if (b < nv) {
                factors.push_back({true, b});
            } else {
                const Path* p = basis_path(b);
                for (auto it = p->arrows.rbegin(); it != p->arrows.rend(); ++it)
                    factors.push_back({false, *it});
            }
            st.basis_exprs.push_back({BasisExprTerm{Scalar::one(f), factors}});
        }

        return from_left_mults(f, std::move(labels), std::move(left_mults), unit, q,
                               std::move(st));
    }
}

Algebra opposite(const Algebra& a) {
    const Field f = a.field();
    size_t n = a.dim();
    std::vector<Matrix> left_mults;
    left_mults.reserve(n);
    // c_op[i][j] = c[j][i]: left mult in the opposite = right mult in a
    for (size_t i = 0; i < n; ++i) left_mults.push_back(a.right_mult(i));
    std::optional<AlgebraStructure> st;
    if (a.has_structure()) {
        const auto& s = a.structure();
        AlgebraStructure so{s.idempotents, s.radical, {}, {}};
        for (const auto& g : s.generators) {
            GeneratorInfo gi{g.element, {}};
            for (auto [i, j] : g.blocks) gi.blocks.push_back({j, i});
            so.generators.push_back(gi);
        }
        for (const auto& expr : s.basis_exprs) {
            std::vector<BasisExprTerm> rev;
            for (const auto& t : expr) {
                BasisExprTerm rt{t.coeff, t.factors};
                std::reverse(rt.factors.begin(), rt.factors.end());
                rev.push_back(rt);
            }
            so.basis_exprs.push_back(rev);
        }
        st = std::move(so);
    }
    return Algebra::from_left_mults(f, a.basis_labels(), std::move(left_mults), a.unit(),
                                    std::nullopt, std::move(st));
}

Ideal radical(const Algebra& a) {
    if (a.has_structure()) return Ideal{a, a.structure().radical};
    const Field f = a.field();
    size_t n = a.dim();
    require(f == Field::rationals() || f.p() > n,
            "radical of an unpresented algebra needs Q or p > dim");
    // radical of the trace form tr(L_i L_j)
    Matrix form(f, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Matrix p = a.left_mult(i) * a.left_mult(j);
            Scalar tr = Scalar::zero(f);
            for (size_t s = 0; s < n; ++s) tr += p.at(s, s);
            form.at(i, j) = tr;
        }
    Subspace rad = Subspace::from_rows(kernel(form));
    // verify nilpotency
    Subspace power = rad;
    for (size_t iter = 0; power.dim() > 0; ++iter) {
        require(iter <= n, "trace-form radical is not nilpotent (unsupported characteristic)");
        std::vector<std::vector<Scalar>> prods;
        for (size_t r = 0; r < power.basis().rows(); ++r)
            for (size_t s = 0; s < rad.basis().rows(); ++s)
                prods.push_back(
                    a.mult(power.basis().row(r).transpose(), rad.basis().row(s).transpose())
                        .transpose()
                        .row_entries(0));
        if (prods.empty()) break;
        power = Subspace::from_rows(Matrix::from_rows(f, prods));
    }
    return Ideal{a, rad};
}

std::vector<Matrix> vertex_idempotents(const Algebra& a) {
    return a.structure().idempotents;
}

}  // namespace trimono
