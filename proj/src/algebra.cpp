#include "qhcalc/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qhcalc {

namespace {

bool path_less(const QuiverPath& a, const QuiverPath& b) {
    if (a.word != b.word) return a.word < b.word;
    return a.src < b.src;
}

} // namespace

int GradedAlgebra::total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 0);
}

int GradedAlgebra::dim_pair(int d, int src, int dst) const {
    if (d < 0 || d > max_degree()) return 0;
    int c = 0;
    for (const auto& b : basis_[d])
        if (b.src == src && b.dst == dst) ++c;
    return c;
}

std::vector<int> GradedAlgebra::basis_indices_pair(int d, int src, int dst) const {
    std::vector<int> out;
    if (d < 0 || d > max_degree()) return out;
    for (size_t k = 0; k < basis_[d].size(); ++k)
        if (basis_[d][k].src == src && basis_[d][k].dst == dst) out.push_back(static_cast<int>(k));
    return out;
}

std::string GradedAlgebra::basis_label(int d, int k) const {
    const QuiverPath& p = paths_[d][basis_[d][k].path_index];
    if (p.word.empty()) return "e_" + pres_.vertices[p.src];
    std::string s;
    for (size_t i = 0; i < p.word.size(); ++i) {
        if (i) s += ".";
        s += pres_.arrows[p.word[i]].name;
    }
    return s;
}

Matrix GradedAlgebra::reduce(int d, const Matrix& path_combo) const {
    if (d < 0 || d > max_degree()) return Matrix(0, 1, field());
    const int np = static_cast<int>(paths_[d].size());
    check_internal(path_combo.rows() == np && path_combo.cols() == 1, "reduce: bad vector shape");
    const Field& f = field();
    Matrix v = path_combo;
    const RrefResult& rr = ideal_[d];
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        Scalar c = v.at(rr.pivot_cols[i], 0);
        if (f.is_zero(c)) continue;
        for (int k = 0; k < np; ++k)
            v.set(k, 0, f.sub(v.at(k, 0), f.mul(c, rr.rref.at(static_cast<int>(i), k))));
    }
    Matrix out(dims_[d], 1, f);
    for (int k = 0; k < dims_[d]; ++k) out.set(k, 0, v.at(free_paths_[d][k], 0));
    return out;
}

Matrix GradedAlgebra::path_coords(const QuiverPath& p) const {
    int d = pres_.word_degree(p.word);
    if (d > max_degree()) return Matrix(0, 1, field());
    const auto& ps = paths_[d];
    Matrix v(static_cast<int>(ps.size()), 1, field());
    for (size_t i = 0; i < ps.size(); ++i)
        if (ps[i].word == p.word && ps[i].src == p.src) {
            v.set(static_cast<int>(i), 0, Scalar(1));
            return reduce(d, v);
        }
    throw InternalError("path not found in enumeration");
}

Matrix GradedAlgebra::multiply_basis(int d1, int k1, int d2, int k2) const {
    const int d = d1 + d2;
    if (d > max_degree()) return Matrix(dim(d), 1, field());
    const QuiverPath& x = paths_[d1][basis_[d1][k1].path_index];
    const QuiverPath& y = paths_[d2][basis_[d2][k2].path_index];
    // x ∘ y = first y, then x
    int ysrc = y.src, ydst = pres_.word_dst(y.word, y.src);
    if (pres_.word_src(x.word, x.src) != ydst) return Matrix(dim(d), 1, field());
    QuiverPath prod;
    prod.src = ysrc;
    prod.word = y.word;
    prod.word.insert(prod.word.end(), x.word.begin(), x.word.end());
    return path_coords(prod);
}

Matrix GradedAlgebra::multiply(int d1, const Matrix& x, int d2, const Matrix& y) const {
    const Field& f = field();
    Matrix out(dim(d1 + d2), 1, f);
    for (int k1 = 0; k1 < dim(d1); ++k1) {
        if (f.is_zero(x.at(k1, 0))) continue;
        for (int k2 = 0; k2 < dim(d2); ++k2) {
            if (f.is_zero(y.at(k2, 0))) continue;
            Matrix t = multiply_basis(d1, k1, d2, k2).scaled(f.mul(x.at(k1, 0), y.at(k2, 0)));
            out = out + t;
        }
    }
    return out;
}

bool GradedAlgebra::generated_in_degree_one() const {
    for (int d = 2; d <= max_degree(); ++d) {
        if (dim(d) == 0) continue;
        Matrix prods(dim(d), dim(1) * dim(d - 1), field());
        int col = 0;
        for (int k1 = 0; k1 < dim(1); ++k1)
            for (int k2 = 0; k2 < dim(d - 1); ++k2) {
                Matrix p = multiply_basis(1, k1, d - 1, k2);
                for (int r = 0; r < dim(d); ++r) prods.set(r, col, p.at(r, 0));
                ++col;
            }
        if (rank_rref(prods).rank != dim(d)) return false;
    }
    return true;
}

GradedAlgebra build_algebra(const Presentation& p, const BuildOptions& opt) {
    p.validate();
    GradedAlgebra a;
    a.pres_ = p;
    const Field& f = p.field;
    const int n = p.num_vertices();

    int window = 1;
    for (const auto& ar : p.arrows) window = std::max(window, ar.degree);

    // degree 0: trivial paths
    a.paths_.emplace_back();
    for (int v = 0; v < n; ++v) a.paths_[0].push_back(QuiverPath{v, {}});
    a.ideal_.push_back(rank_rref(Matrix(0, n, f)));
    a.free_paths_.emplace_back();
    a.basis_.emplace_back();
    for (int v = 0; v < n; ++v) {
        a.free_paths_[0].push_back(v);
        a.basis_[0].push_back(GradedAlgebra::BasisInfo{v, v, v});
    }
    a.dims_.push_back(n);

    long running_total = n;
    int zero_run = 0;
    for (int d = 1; d <= opt.degree_cap; ++d) {
        // enumerate free paths of degree d by last arrow
        std::vector<QuiverPath> ps;
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            const Arrow& ar = p.arrows[ai];
            int rest = d - ar.degree;
            if (rest < 0 || rest >= static_cast<int>(a.paths_.size())) continue;
            for (const auto& q : a.paths_[rest]) {
                if (p.word_dst(q.word, q.src) != ar.src) continue;
                QuiverPath np;
                np.src = q.src;
                np.word = q.word;
                np.word.push_back(ai);
                ps.push_back(std::move(np));
            }
        }
        std::sort(ps.begin(), ps.end(), path_less);
        if (static_cast<int>(ps.size()) > opt.paths_per_degree_cap)
            throw NotFiniteDimensional("path space keeps growing at degree " + std::to_string(d));

        std::map<std::vector<int>, int> widx;
        for (size_t i = 0; i < ps.size(); ++i) widx[ps[i].word] = static_cast<int>(i);

        // ideal span at degree d: prefix ∘ relation ∘ suffix
        std::vector<Matrix> rows;
        for (const auto& r : p.relations) {
            if (r.degree > d) continue;
            for (int pw = 0; pw + r.degree <= d; ++pw) {
                int pu = d - r.degree - pw; // both pw and pu are < d, already enumerated
                const auto& prefixes = a.paths_[pw];
                for (const auto& w : prefixes) {
                    if (p.word_dst(w.word, w.src) != r.src) continue;
                    const auto& suffixes = a.paths_[pu];
                    for (const auto& u : suffixes) {
                        if (u.src != r.dst) continue;
                        Matrix row(1, static_cast<int>(ps.size()), f);
                        for (const auto& t : r.terms) {
                            std::vector<int> word = w.word;
                            word.insert(word.end(), t.word.begin(), t.word.end());
                            word.insert(word.end(), u.word.begin(), u.word.end());
                            auto it = widx.find(word);
                            check_internal(it != widx.end(), "ideal product path missing");
                            row.set(0, it->second, f.add(row.at(0, it->second), t.coeff));
                        }
                        rows.push_back(std::move(row));
                    }
                }
            }
        }
        Matrix span(0, static_cast<int>(ps.size()), f);
        if (!rows.empty()) {
            span = rows[0];
            for (size_t i = 1; i < rows.size(); ++i) span = span.vstack(rows[i]);
        }
        RrefResult rr = rank_rref(span);
        int dimd = static_cast<int>(ps.size()) - rr.rank;

        a.paths_.push_back(std::move(ps));
        std::vector<bool> piv(a.paths_[d].size(), false);
        for (int c : rr.pivot_cols) piv[c] = true;
        a.free_paths_.emplace_back();
        a.basis_.emplace_back();
        for (size_t i = 0; i < a.paths_[d].size(); ++i)
            if (!piv[i]) {
                a.free_paths_[d].push_back(static_cast<int>(i));
                const QuiverPath& q = a.paths_[d][i];
                a.basis_[d].push_back(GradedAlgebra::BasisInfo{
                    q.src, p.word_dst(q.word, q.src), static_cast<int>(i)});
            }
        a.ideal_.push_back(std::move(rr));
        a.dims_.push_back(dimd);

        running_total += dimd;
        if (running_total > opt.dim_cap)
            throw NotFiniteDimensional("total dimension exceeds cap");
        zero_run = dimd == 0 ? zero_run + 1 : 0;
        if (zero_run >= window) break;
        if (d == opt.degree_cap)
            throw NotFiniteDimensional("no zero graded component within degree cap " +
                                       std::to_string(opt.degree_cap));
    }
    // trim trailing zero components
    while (a.dims_.size() > 1 && a.dims_.back() == 0) {
        a.dims_.pop_back();
        a.paths_.pop_back();
        a.ideal_.pop_back();
        a.free_paths_.pop_back();
        a.basis_.pop_back();
    }
    return a;
}

AlgebraPtr build_algebra_ptr(const Presentation& p, const BuildOptions& opt) {
    return std::make_shared<const GradedAlgebra>(build_algebra(p, opt));
}

Presentation opposite_presentation(const Presentation& p) {
    Presentation o = p;
    for (auto& a : o.arrows) std::swap(a.src, a.dst);
    for (auto& r : o.relations) {
        for (auto& t : r.terms) std::reverse(t.word.begin(), t.word.end());
        std::swap(r.src, r.dst);
    }
    return o;
}

AlgebraPtr opposite(const AlgebraPtr& a, const BuildOptions& opt) {
    return build_algebra_ptr(opposite_presentation(a->presentation()), opt);
}

AlgebraPtr quadratic_dual(const AlgebraPtr& a, const BuildOptions& opt) {
    if (!a->generated_in_degree_one())
        throw NotDegreeOneGenerated("quadratic dual needs generation in degrees 0 and 1");
    const Presentation& p = a->presentation();
    const Field& f = a->field();
    const int n = a->num_vertices();

    Presentation dual;
    dual.field = f;
    dual.vertices = p.vertices;
    // dual arrows: one per degree-1 basis element, same orientation
    const int m = a->dim(1);
    for (int k = 0; k < m; ++k) {
        const auto& info = a->basis_info(1, k);
        const QuiverPath& q = a->paths(1)[info.path_index];
        Arrow ar;
        ar.name = q.word.size() == 1 ? p.arrows[q.word[0]].name : "q" + std::to_string(k);
        ar.src = info.src;
        ar.dst = info.dst;
        ar.degree = 1;
        dual.arrows.push_back(ar);
    }

    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            // composable pairs (first k2, then k1) from u to w
            std::vector<std::pair<int, int>> pairs;
            for (int k2 = 0; k2 < m; ++k2) {
                if (a->basis_info(1, k2).src != u) continue;
                for (int k1 = 0; k1 < m; ++k1) {
                    if (a->basis_info(1, k1).src != a->basis_info(1, k2).dst) continue;
                    if (a->basis_info(1, k1).dst != w) continue;
                    pairs.emplace_back(k2, k1);
                }
            }
            if (pairs.empty()) continue;
            Matrix mu(a->dim(2), static_cast<int>(pairs.size()), f);
            for (size_t c = 0; c < pairs.size(); ++c) {
                Matrix prod = a->multiply_basis(1, pairs[c].second, 1, pairs[c].first);
                for (int r = 0; r < a->dim(2); ++r) mu.set(r, static_cast<int>(c), prod.at(r, 0));
            }
            Matrix ker = kernel_basis(mu);           // R_2 block
            Matrix ann = kernel_basis(ker.transpose()); // its annihilator
            for (int c = 0; c < ann.cols(); ++c) {
                Relation rel;
                rel.src = u;
                rel.dst = w;
                rel.degree = 2;
                for (size_t i = 0; i < pairs.size(); ++i) {
                    if (f.is_zero(ann.at(static_cast<int>(i), c))) continue;
                    PathTerm t;
                    t.coeff = ann.at(static_cast<int>(i), c);
                    t.word = {pairs[i].first, pairs[i].second};
                    rel.terms.push_back(std::move(t));
                }
                if (!rel.terms.empty()) dual.relations.push_back(std::move(rel));
            }
        }
    return build_algebra_ptr(dual, opt);
}

Presentation presentation_extract(const AbstractAlgebra& a) {
    const Field& f = a.field;
    const int n = static_cast<int>(a.vertex_labels.size());
    if (a.dim(0) != n) throw NotBasic("degree-0 part is not spanned by the vertex idempotents");
    for (int i = 0; i < n; ++i)
        if (a.basis[0][i] != std::make_pair(i, i))
            throw NotBasic("degree-0 basis is not the ordered idempotent list");

    Presentation out;
    out.field = f;
    out.vertices = a.vertex_labels;
    const int m = a.dim(1);
    for (int k = 0; k < m; ++k) {
        Arrow ar;
        ar.name = "g" + std::to_string(k);
        ar.src = a.basis[1][k].first;
        ar.dst = a.basis[1][k].second;
        ar.degree = 1;
        out.arrows.push_back(ar);
    }
    const int top = a.top_degree();

    // evaluate an arrow word in the abstract algebra
    auto eval_word = [&](const std::vector<int>& word) {
        int d = static_cast<int>(word.size());
        std::vector<Scalar> cur(static_cast<size_t>(a.dim(1)), Scalar(0));
        cur[word[0]] = Scalar(1);
        int curdeg = 1;
        for (int li = 1; li < d; ++li) {
            int dn = curdeg + 1;
            std::vector<Scalar> next(static_cast<size_t>(a.dim(dn)), Scalar(0));
            if (a.dim(dn) > 0) {
                for (int j = 0; j < a.dim(curdeg); ++j) {
                    if (f.is_zero(cur[j])) continue;
                    // word[li] acts after: x_{word[li]} ∘ cur_j
                    std::vector<Scalar> prod = a.mult(1, word[li], curdeg, j);
                    for (int t = 0; t < a.dim(dn); ++t)
                        next[t] = f.add(next[t], f.mul(cur[j], prod[t]));
                }
            }
            cur = std::move(next);
            curdeg = dn;
        }
        return cur;
    };

    std::vector<std::vector<std::vector<int>>> words_by_deg(top + 2);
    words_by_deg[0] = {}; // unused for composition (trivial paths handled separately)
    for (int k = 0; k < m; ++k) words_by_deg[1].push_back({k});
    for (int d = 2; d <= top + 1; ++d)
        for (const auto& w : words_by_deg[d - 1])
            for (int k = 0; k < m; ++k)
                if (out.arrows[k].src == out.arrows[w.back()].dst) {
                    auto nw = w;
                    nw.push_back(k);
                    words_by_deg[d].push_back(std::move(nw));
                }

    std::vector<Relation> rels;
    for (int d = 2; d <= top + 1; ++d) {
        const auto& words = words_by_deg[d];
        if (words.empty()) continue;
        Matrix ev(a.dim(d), static_cast<int>(words.size()), f);
        for (size_t c = 0; c < words.size(); ++c) {
            auto coords = eval_word(words[c]);
            for (int r = 0; r < a.dim(d); ++r) ev.set(r, static_cast<int>(c), coords[r]);
        }
        if (d <= top && rank_rref(ev).rank != a.dim(d))
            throw NotDegreeOneGenerated("abstract algebra is not generated in degrees 0 and 1");
        Matrix ker = kernel_basis(ev); // columns: all relations at degree d
        if (ker.cols() == 0) continue;

        // span of ideal multiples of lower-degree relations, in word coordinates
        std::map<std::vector<int>, int> widx;
        for (size_t i = 0; i < words.size(); ++i) widx[words[i]] = static_cast<int>(i);
        std::vector<Matrix> span_rows;
        for (const auto& r : rels) {
            int dr = r.degree;
            for (int pw = 0; pw + dr <= d; ++pw) {
                int pu = d - dr - pw;
                std::vector<std::vector<int>> pres_list, sufs_list;
                if (pw == 0)
                    pres_list.push_back({});
                else
                    pres_list = words_by_deg[pw];
                if (pu == 0)
                    sufs_list.push_back({});
                else
                    sufs_list = words_by_deg[pu];
                for (const auto& w : pres_list) {
                    if (!w.empty() && out.arrows[w.back()].dst != r.src) continue;
                    for (const auto& u : sufs_list) {
                        if (!u.empty() && out.arrows[u.front()].src != r.dst) continue;
                        if (w.empty() && u.empty()) continue; // the relation itself is added below
                        Matrix row(1, static_cast<int>(words.size()), f);
                        bool ok = true;
                        for (const auto& t : r.terms) {
                            std::vector<int> word = w;
                            word.insert(word.end(), t.word.begin(), t.word.end());
                            word.insert(word.end(), u.begin(), u.end());
                            auto it = widx.find(word);
                            if (it == widx.end()) { ok = false; break; }
                            row.set(0, it->second, f.add(row.at(0, it->second), t.coeff));
                        }
                        if (ok) span_rows.push_back(std::move(row));
                    }
                }
            }
        }
        for (const auto& r : rels) {
            if (r.degree != d) continue;
            Matrix row(1, static_cast<int>(words.size()), f);
            for (const auto& t : r.terms) row.set(0, widx.at(t.word), t.coeff);
            span_rows.push_back(std::move(row));
        }
        Matrix span(0, static_cast<int>(words.size()), f);
        for (const auto& r : span_rows) span = span.vstack(r);
        int cur_rank = span.rows() ? rank_rref(span).rank : 0;
        for (int c = 0; c < ker.cols(); ++c) {
            Matrix cand = ker.col(c).transpose();
            Matrix aug = span.rows() ? span.vstack(cand) : cand;
            int nr = rank_rref(aug).rank;
            if (nr > cur_rank) {
                Relation rel;
                rel.degree = d;
                for (size_t i = 0; i < words.size(); ++i) {
                    if (f.is_zero(ker.at(static_cast<int>(i), c))) continue;
                    PathTerm t;
                    t.coeff = ker.at(static_cast<int>(i), c);
                    t.word = words[i];
                    rel.terms.push_back(std::move(t));
                }
                rel.src = out.arrows[rel.terms[0].word.front()].src;
                rel.dst = out.arrows[rel.terms[0].word.back()].dst;
                rels.push_back(std::move(rel));
                span = aug;
                cur_rank = nr;
            }
        }
    }
    out.relations = std::move(rels);
    out.validate();
    return out;
}

namespace {

// candidate block matrices for the iso search
std::vector<Matrix> block_candidates(int k, const Field& f) {
    std::vector<Matrix> out;
    auto M = [&](std::vector<std::vector<long>> rows, long den = 1) {
        Matrix m(k, k, f);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) m.set(r, c, Scalar(rows[r][c], den));
        return m;
    };
    if (k == 1) {
        for (long v : {1L, -1L, 2L, -2L, 3L, -3L, 5L}) out.push_back(M({{v}}));
        out.push_back(M({{1}}, 2));
        out.push_back(M({{-1}}, 2));
        out.push_back(M({{1}}, 3));
    } else if (k == 2) {
        out.push_back(M({{1, 0}, {0, 1}}));
        out.push_back(M({{0, 1}, {1, 0}}));
        out.push_back(M({{1, 0}, {0, -1}}));
        out.push_back(M({{-1, 0}, {0, 1}}));
        out.push_back(M({{1, 1}, {0, 1}}));
        out.push_back(M({{1, 0}, {1, 1}}));
        out.push_back(M({{1, 1}, {-1, 1}}));
        out.push_back(M({{0, 1}, {-1, 0}}));
        out.push_back(M({{1, 1}, {1, -1}}));
        out.push_back(M({{2, 0}, {0, 1}}));
        out.push_back(M({{1, 0}, {0, 2}}));
    } else {
        // permutation matrices and sign flips only
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Matrix m(k, k, f);
            for (int i = 0; i < k; ++i) m.set(perm[i], i, Scalar(1));
            out.push_back(m);
        } while (std::next_permutation(perm.begin(), perm.end()));
        Matrix s = Matrix::identity(k, f);
        s.set(0, 0, Scalar(-1));
        out.push_back(s);
    }
    return out;
}

std::vector<std::vector<int>> permutations(int n, bool identity_only) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    if (identity_only) return {p};
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

std::optional<std::vector<Matrix>> induced_iso_maps(const GradedAlgebra& a, const GradedAlgebra& b,
                                                    const IsoWitness& w) {
    const Field& f = a.field();
    const Presentation& pa = a.presentation();
    const Presentation& pb = b.presentation();
    if (a.max_degree() != b.max_degree()) return std::nullopt;

    // arrows of b per (src,dst) block, in arrow order
    std::map<std::pair<int, int>, std::vector<int>> bblocks;
    for (int i = 0; i < static_cast<int>(pb.arrows.size()); ++i)
        bblocks[{pb.arrows[i].src, pb.arrows[i].dst}].push_back(i);
    std::map<std::pair<int, int>, std::vector<int>> ablocks;
    for (int i = 0; i < static_cast<int>(pa.arrows.size()); ++i)
        ablocks[{pa.arrows[i].src, pa.arrows[i].dst}].push_back(i);

    // image of an a-arrow: combination of b-arrows
    std::vector<std::vector<std::pair<int, Scalar>>> arrow_image(pa.arrows.size());
    for (const auto& [blk, arrows] : ablocks) {
        auto target = std::make_pair(w.vertex_map[blk.first], w.vertex_map[blk.second]);
        auto itb = bblocks.find(target);
        auto itg = w.base_change.find(blk);
        if (itb == bblocks.end() || itg == w.base_change.end()) return std::nullopt;
        const auto& bas = itb->second;
        const Matrix& g = itg->second;
        if (g.rows() != static_cast<int>(bas.size()) || g.cols() != static_cast<int>(arrows.size()))
            return std::nullopt;
        for (size_t i = 0; i < arrows.size(); ++i)
            for (size_t j = 0; j < bas.size(); ++j)
                if (!f.is_zero(g.at(static_cast<int>(j), static_cast<int>(i))))
                    arrow_image[arrows[i]].emplace_back(bas[j], g.at(static_cast<int>(j), static_cast<int>(i)));
    }

    // expand the image of an a-word into b-path coordinates at its degree
    auto word_image = [&](const std::vector<int>& word, int src) -> std::optional<Matrix> {
        int d = pa.word_degree(word);
        if (word.empty()) {
            Matrix v(b.num_vertices(), 1, f);
            v.set(w.vertex_map[src], 0, Scalar(1));
            return b.reduce(0, v);
        }
        if (d > b.max_degree()) return Matrix(0, 1, f);
        std::vector<std::pair<std::vector<int>, Scalar>> partial = {{{}, Scalar(1)}};
        for (int letter : word) {
            std::vector<std::pair<std::vector<int>, Scalar>> next;
            for (const auto& [bw, c] : partial)
                for (const auto& [bi, gc] : arrow_image[letter]) {
                    if (!bw.empty() && pb.arrows[bw.back()].dst != pb.arrows[bi].src) continue;
                    auto nw = bw;
                    nw.push_back(bi);
                    next.emplace_back(std::move(nw), f.mul(c, gc));
                }
            partial = std::move(next);
        }
        Matrix v(static_cast<int>(b.paths(d).size()), 1, f);
        for (const auto& [bw, c] : partial) {
            bool found = false;
            for (size_t i = 0; i < b.paths(d).size(); ++i)
                if (b.paths(d)[i].word == bw) {
                    v.set(static_cast<int>(i), 0, f.add(v.at(static_cast<int>(i), 0), c));
                    found = true;
                    break;
                }
            if (!found) return std::nullopt;
        }
        return b.reduce(d, v);
    };

    // relations of a must map to zero in b
    for (const auto& r : pa.relations) {
        Matrix img(b.dim(r.degree), 1, f);
        for (const auto& t : r.terms) {
            auto wi = word_image(t.word, r.src);
            if (!wi) return std::nullopt;
            img = img + wi->scaled(t.coeff);
        }
        if (!img.is_zero()) return std::nullopt;
    }

    // induced linear maps per degree; must be bijective and multiplicative
    std::vector<Matrix> maps;
    for (int d = 0; d <= a.max_degree(); ++d) {
        if (a.dim(d) != b.dim(d)) return std::nullopt;
        Matrix phi(b.dim(d), a.dim(d), f);
        for (int k = 0; k < a.dim(d); ++k) {
            const auto& info = a.basis_info(d, k);
            const QuiverPath& q = a.paths(d)[info.path_index];
            auto wi = word_image(q.word, q.src);
            if (!wi) return std::nullopt;
            for (int r = 0; r < b.dim(d); ++r) phi.set(r, k, wi->at(r, 0));
        }
        if (phi.rows() != phi.cols() || !inverse(phi).has_value()) return std::nullopt;
        maps.push_back(std::move(phi));
    }
    // re-multiplication certificate
    for (int d1 = 0; d1 <= a.max_degree(); ++d1)
        for (int d2 = 0; d1 + d2 <= a.max_degree(); ++d2)
            for (int k1 = 0; k1 < a.dim(d1); ++k1)
                for (int k2 = 0; k2 < a.dim(d2); ++k2) {
                    Matrix lhs = maps[d1 + d2] * a.multiply_basis(d1, k1, d2, k2);
                    Matrix rhs = b.multiply(d1, maps[d1].col(k1), d2, maps[d2].col(k2));
                    if (lhs != rhs) return std::nullopt;
                }
    return maps;
}

IsoResult iso_search(const GradedAlgebra& a, const GradedAlgebra& b, const IsoOptions& opt) {
    if (!a.generated_in_degree_one() || !b.generated_in_degree_one())
        throw NotDegreeOneGenerated("iso_search requires generation in degrees 0 and 1");
    const int n = a.num_vertices();
    if (n != b.num_vertices())
        return {IsoResult::Verdict::Distinguisher, std::nullopt, "different number of vertices"};

    std::string last_distinguisher;
    bool all_perms_distinguished = true;
    for (const auto& perm : permutations(n, opt.label_preserving)) {
        // cheap invariants under this vertex map
        bool mismatch = false;
        int dmax = std::max(a.max_degree(), b.max_degree());
        for (int d = 0; d <= dmax && !mismatch; ++d) {
            if (a.dim(d) != b.dim(d)) {
                last_distinguisher = "Hilbert series differ at degree " + std::to_string(d);
                mismatch = true;
                break;
            }
            for (int u = 0; u < n && !mismatch; ++u)
                for (int v = 0; v < n; ++v)
                    if (a.dim_pair(d, u, v) != b.dim_pair(d, perm[u], perm[v])) {
                        last_distinguisher = "dim e_j A_d e_i differs (d=" + std::to_string(d) +
                                             ", i=" + a.presentation().vertices[u] +
                                             ", j=" + a.presentation().vertices[v] + ")";
                        mismatch = true;
                        break;
                    }
        }
        if (mismatch) continue;

        // blocks with arrows
        std::vector<std::pair<std::pair<int, int>, int>> blocks; // ((src,dst), size)
        std::map<std::pair<int, int>, int> acount;
        for (const auto& ar : a.presentation().arrows) acount[{ar.src, ar.dst}]++;
        bool blockfail = false;
        for (const auto& [blk, cnt] : acount) {
            int bcnt = 0;
            for (const auto& br : b.presentation().arrows)
                if (br.src == perm[blk.first] && br.dst == perm[blk.second]) ++bcnt;
            if (bcnt != cnt) {
                last_distinguisher = "arrow counts differ between vertex pairs";
                blockfail = true;
                break;
            }
            blocks.push_back({blk, cnt});
        }
        if (blockfail) continue;

        std::vector<std::vector<Matrix>> cands;
        for (const auto& [blk, k] : blocks) cands.push_back(block_candidates(k, a.field()));

        // invariants match under this vertex map: search base changes
        all_perms_distinguished = false;
        std::vector<size_t> idx(blocks.size(), 0);
        long tried = 0;
        while (true) {
            IsoWitness w;
            w.vertex_map = perm;
            for (size_t i = 0; i < blocks.size(); ++i) w.base_change[blocks[i].first] = cands[i][idx[i]];
            if (induced_iso_maps(a, b, w).has_value())
                return {IsoResult::Verdict::Witness, std::move(w), ""};
            ++tried;
            if (tried >= opt.budget) break;
            size_t pos = 0;
            while (pos < idx.size()) {
                if (++idx[pos] < cands[pos].size()) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
        }
    }
    if (all_perms_distinguished)
        return {IsoResult::Verdict::Distinguisher, std::nullopt, last_distinguisher};
    return {IsoResult::Verdict::Unknown, std::nullopt, "no witness within search budget"};
}

Presentation relabel_presentation(const Presentation& p, const std::vector<int>& perm) {
    check_internal(static_cast<int>(perm.size()) == p.num_vertices(), "bad permutation size");
    Presentation out = p;
    for (int i = 0; i < p.num_vertices(); ++i) out.vertices[perm[i]] = p.vertices[i];
    for (auto& a : out.arrows) {
        a.src = perm[a.src];
        a.dst = perm[a.dst];
    }
    for (auto& r : out.relations) {
        r.src = perm[r.src];
        r.dst = perm[r.dst];
    }
    return out;
}

std::vector<int> reversal_perm(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
    return p;
}

} // namespace qhcalc
