#include <algorithm>

#include "qhcalc/maputil.hpp"
#include "qhcalc/session.hpp"

namespace qhcalc {

namespace {

// reinterpret f: T -> M of shift s as a degree-0 map T<-s> -> M
ModuleMap unshift_src(const ModulePtr& shifted, const ModuleMap& f) {
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& sl : f.src()->slots()) {
        Matrix b = f.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols() && !b.is_zero())
            blocks[{sl.vertex, sl.degree + f.shift()}] = b;
    }
    return ModuleMap(shifted, f.dst(), 0, std::move(blocks));
}

// reinterpret f: M -> T of shift s as a degree-0 map M -> T<s>
ModuleMap unshift_dst(const ModulePtr& shifted, const ModuleMap& f) {
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& sl : f.src()->slots()) {
        Matrix b = f.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols() && !b.is_zero()) blocks[{sl.vertex, sl.degree}] = b;
    }
    return ModuleMap(f.src(), shifted, 0, std::move(blocks));
}

// basis of the radical of the local algebra End_0(T): each basis element phi
// equals (tr(phi)/dim) id + nilpotent
std::vector<ModuleMap> rad_end0_basis(const ModulePtr& T) {
    const Field& f = T->algebra()->field();
    auto basis = hom_graded_shift(T, T, 0);
    std::vector<ModuleMap> out;
    if (!f.is_rationals() && T->total_dim() % f.characteristic() == 0)
        throw FieldUnsupported("End_0 radical needs char 0 or p not dividing dim");
    for (const auto& phi : basis) {
        Scalar tr(0);
        for (const auto& s : T->slots()) {
            Matrix b = phi.block(s.vertex, s.degree);
            for (int r = 0; r < b.rows(); ++r) tr = f.add(tr, b.at(r, r));
        }
        Scalar lambda = f.div(tr, f.from_long(T->total_dim()));
        ModuleMap n = phi + ModuleMap::identity(T).scaled(f.neg(lambda));
        if (n.is_zero()) continue;
        // must be nilpotent, or End_0 is not local over this field
        ModuleMap p = n;
        for (int k = 0; k < T->total_dim() && !p.is_zero(); ++k) p = p.compose(n);
        check_internal(p.is_zero(), "End_0 of an indecomposable is not local");
        out.push_back(std::move(n));
    }
    return out;
}

} // namespace

ModulePtr Session::universal_extension(const ModulePtr& M, int j) {
    ModulePtr delta = standard(j);
    ModulePtr cur = M;
    int guard = 0;
    while (true) {
        check_internal(++guard < 200, "universal extension does not terminate");
        ExtData e = ext_graded(delta, cur, 1);
        if (e.total() == 0) break;
        int s = e.shifts().front();
        Ext1Class xi = realize_ext1(delta, cur, e.reps.at(s)[0]);
        // regrade so the submodule keeps its original grading
        cur = shift_module(xi.total, -s);
    }
    return cur;
}

ModulePtr Session::tilting_module(int i) {
    return tilting().modules[i];
}

const TiltingData& Session::tilting() {
    if (tilting_) return *tilting_;
    require_qh();
    TiltingData td;
    for (int i = 0; i < n(); ++i) {
        ModulePtr t = standard(i);
        for (int j = i - 1; j >= 0; --j) t = universal_extension(t, j);
        check_internal(t->vertex_dim(i) == 1, "[T(i):L(i)] != 1");
        for (int j = 0; j < n(); ++j)
            check_internal(ext_graded(standard(j), t, 1).total() == 0,
                           "tilting module with Ext^1 from a standard");
        td.modules.push_back(t);
    }
    for (int i = 0; i < n(); ++i) {
        // Δ(i) -> T(i) and T(i) ->> ∇(i), both of degree 0
        auto emb = hom_graded_shift(standard(i), td.modules[i], 0);
        check_internal(!emb.empty(), "no degree-0 map Δ(i) -> T(i)");
        ModuleMap chosen_emb = emb[0];
        bool found = chosen_emb.is_injective();
        for (size_t k = 1; !found && k < emb.size(); ++k) {
            chosen_emb = emb[k];
            found = chosen_emb.is_injective();
        }
        check_internal(found, "no injective Δ(i) -> T(i)");
        td.std_embeddings.push_back(chosen_emb);
        auto prj = hom_graded_shift(td.modules[i], costandard(i), 0);
        check_internal(!prj.empty(), "no degree-0 map T(i) -> ∇(i)");
        ModuleMap chosen_prj = prj[0];
        bool surj = chosen_prj.is_surjective();
        for (size_t k = 1; !surj && k < prj.size(); ++k) {
            chosen_prj = prj[k];
            surj = chosen_prj.is_surjective();
        }
        check_internal(surj, "no surjective T(i) -> ∇(i)");
        td.costd_projections.push_back(chosen_prj);
        check_internal(filtration(td.modules[i], FiltKind::Costandard).has_value(),
                       "tilting module without costandard filtration");
    }
    // End(T) hom spaces across all shifts
    td.ringel_positive = true;
    td.min_hom_degree = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j)
            for (const auto& [d, basis] : hom_graded(td.modules[i], td.modules[j])) {
                td.homs[{i, j, d}] = basis;
                td.min_hom_degree = std::min(td.min_hom_degree, d);
                if (d < 0) td.ringel_positive = false;
                if (d == 0 && i != j && !basis.empty()) td.ringel_positive = false;
                if (d == 0 && i == j && basis.size() != 1) td.ringel_positive = false;
            }
    // generation of End(T) in degrees 0 and 1
    td.ringel_generated_01 = true;
    int dmax = 0;
    for (const auto& [key, basis] : td.homs) dmax = std::max(dmax, std::get<2>(key));
    for (int d = 1; d < dmax && td.ringel_generated_01; ++d)
        for (int i = 0; i < n() && td.ringel_generated_01; ++i)
            for (int j = 0; j < n(); ++j) {
                auto it = td.homs.find({i, j, d + 1});
                if (it == td.homs.end() || it->second.empty()) continue;
                // one-sided criterion: a degree-1 map composed after a degree-d map
                std::vector<ModuleMap> prods;
                for (int k = 0; k < n(); ++k) {
                    auto f1 = td.homs.find({i, k, d});
                    auto f2 = td.homs.find({k, j, 1});
                    if (f1 == td.homs.end() || f2 == td.homs.end()) continue;
                    for (const auto& f : f1->second)
                        for (const auto& g : f2->second) prods.push_back(g.compose(f));
                }
                // rank of the products inside hom(T(i), T(j))_{d+1}
                const Field& fld = a_->field();
                Matrix pm(vectorize_map(it->second[0]).rows(), static_cast<int>(prods.size()),
                          fld);
                for (size_t c = 0; c < prods.size(); ++c) {
                    Matrix v = vectorize_map(prods[c]);
                    for (int r = 0; r < v.rows(); ++r) pm.set(r, static_cast<int>(c), v.at(r, 0));
                }
                if (rank_rref(pm).rank != static_cast<int>(it->second.size()))
                    td.ringel_generated_01 = false;
            }
    tilting_ = std::move(td);
    return *tilting_;
}

AlgebraPtr Session::ringel_dual(bool relabel) {
    const TiltingData& td = tilting();
    if (!td.ringel_positive)
        throw NotPositivelyGraded("induced grading on End(T) is not positive");
    if (!td.ringel_generated_01)
        throw NotDegreeOneGenerated("End(T) is not generated in degrees 0 and 1");
    // abstract End(T): element of degree d per basis map f: T(i) -> T(j)<d>,
    // tagged (src, dst) = (j, i); the product x_f ∘ x_g expands g-then-f
    struct Tag {
        int i, j, d, k;
    };
    int dmax = 0;
    for (const auto& [key, basis] : td.homs)
        if (!basis.empty()) dmax = std::max(dmax, std::get<2>(key));
    std::vector<std::vector<Tag>> tags(dmax + 1);
    for (int d = 0; d <= dmax; ++d)
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j) {
                auto it = td.homs.find({i, j, d});
                if (it == td.homs.end()) continue;
                for (size_t k = 0; k < it->second.size(); ++k)
                    tags[d].push_back(Tag{i, j, d, static_cast<int>(k)});
            }
    AbstractAlgebra ab;
    ab.field = a_->field();
    ab.vertex_labels = a_->presentation().vertices;
    ab.basis.resize(dmax + 1);
    for (int d = 0; d <= dmax; ++d)
        for (const auto& t : tags[d]) ab.basis[d].push_back({t.j, t.i});
    const TiltingData* tdp = &*tilting_;
    auto tags_ptr = std::make_shared<std::vector<std::vector<Tag>>>(std::move(tags));
    ab.mult = [tdp, tags_ptr](int d1, int k1, int d2, int k2) {
        const auto& tg = *tags_ptr;
        const Tag& x = tg[d1][k1]; // map f applied first
        const Tag& y = tg[d2][k2]; // map g applied second: x_f ∘ x_g = x_{g∘f}
        int dim_out = d1 + d2 < static_cast<int>(tg.size()) ? static_cast<int>(tg[d1 + d2].size()) : 0;
        std::vector<Scalar> out(dim_out, Scalar(0));
        if (x.j != y.i || dim_out == 0) return out; // g must start where f lands
        const ModuleMap& f = tdp->homs.at({x.i, x.j, x.d})[x.k];
        const ModuleMap& g = tdp->homs.at({y.i, y.j, y.d})[y.k];
        ModuleMap comp = g.compose(f); // T(x.i) -> T(y.j), shift d1+d2
        auto it = tdp->homs.find({x.i, y.j, d1 + d2});
        if (it == tdp->homs.end()) {
            check_internal(comp.is_zero(), "End(T) product misses the hom basis");
            return out;
        }
        auto coords = map_coords(it->second, comp);
        check_internal(coords.has_value(), "End(T) product outside hom span");
        int ci = 0;
        for (int t = 0; t < dim_out; ++t) {
            const Tag& z = tg[d1 + d2][t];
            if (z.i == x.i && z.j == y.j) {
                out[t] = coords->at(ci++, 0);
            }
        }
        return out;
    };
    Presentation endp = presentation_extract(ab);
    Presentation rp = opposite_presentation(endp);
    if (relabel) rp = relabel_presentation(rp, reversal_perm(n()));
    return build_algebra_ptr(rp);
}

TiltingComplex Session::tilting_resolution(const ModulePtr& M, bool coresolution) {
    const TiltingData& td = tilting();
    if (!filtration(M, coresolution ? FiltKind::Standard : FiltKind::Costandard).has_value())
        throw FiltrationMissing(coresolution ? "module has no standard filtration"
                                             : "module has no costandard filtration");
    // radical morphisms of add(T): all cross-component homs and rad End_0
    std::vector<std::vector<ModuleMap>> rad_end(n());
    for (int j = 0; j < n(); ++j) rad_end[j] = rad_end0_basis(td.modules[j]);

    TiltingComplex out;
    out.coresolution = coresolution;
    ModulePtr cur = M;
    int l = 0;
    ModuleMap prev_edge; // resolution: X^{-l} ->> K_{l-1}; coresolution: C_{l-1} -> X^{l}
    while (!cur->is_zero()) {
        if (l > resolution_cap())
            throw CapExceeded("tilting resolution exceeds cap");
        // minimal approximation of cur
        std::vector<std::pair<std::pair<int, int>, ModuleMap>> gens; // ((j, hom shift), map)
        for (int j = 0; j < n(); ++j) {
            const ModulePtr& Tj = td.modules[j];
            auto homs = coresolution ? hom_graded(cur, Tj) : hom_graded(Tj, cur);
            for (const auto& [s, basis] : homs) {
                // radical-composite span inside this component
                std::vector<ModuleMap> radspan;
                for (int k = 0; k < n(); ++k) {
                    const ModulePtr& Tk = td.modules[k];
                    auto link = coresolution ? hom_graded(Tk, Tj) : hom_graded(Tj, Tk);
                    for (const auto& [u, rbasis] : link) {
                        const std::vector<ModuleMap>* rads = &rbasis;
                        std::vector<ModuleMap> radonly;
                        if (k == j && u == 0) {
                            radonly = rad_end[j];
                            rads = &radonly;
                        }
                        auto mid = coresolution ? hom_graded_shift(cur, Tk, s - u)
                                                : hom_graded_shift(Tk, cur, s - u);
                        for (const auto& r : *rads)
                            for (const auto& g : mid)
                                radspan.push_back(coresolution ? r.compose(g) : g.compose(r));
                    }
                }
                // complement of the radical span inside the component
                const Field& fld = a_->field();
                Matrix span(0, vectorize_map(basis[0]).rows(), fld);
                for (const auto& r : radspan) span = span.vstack(vectorize_map(r).transpose());
                int rank = span.rows() ? rank_rref(span).rank : 0;
                for (const auto& f : basis) {
                    Matrix cand = vectorize_map(f).transpose();
                    Matrix aug = span.rows() ? span.vstack(cand) : cand;
                    int r2 = rank_rref(aug).rank;
                    if (r2 > rank) {
                        gens.push_back({{j, s}, f});
                        span = aug;
                        rank = r2;
                    }
                }
            }
        }
        // assemble the approximation
        std::vector<ModulePtr> parts;
        std::vector<std::pair<int, int>> sums;
        for (const auto& [tag, f] : gens) {
            int sdeg = coresolution ? tag.second : -tag.second;
            parts.push_back(shift_module(td.modules[tag.first], sdeg));
            sums.push_back({tag.first, sdeg});
        }
        ModulePtr X = parts.empty() ? zero_module(a_) : direct_sum(parts, a_).module;
        ModuleMap edge;
        if (!parts.empty()) {
            DirectSum ds = direct_sum(parts, a_);
            X = ds.module;
            if (!coresolution) {
                edge = ModuleMap::zero(X, cur, 0);
                for (size_t k = 0; k < gens.size(); ++k)
                    edge = edge + unshift_src(parts[k], gens[k].second).compose(ds.projections[k]);
                check_internal(edge.is_surjective(), "tilting approximation not surjective");
            } else {
                edge = ModuleMap::zero(cur, X, 0);
                for (size_t k = 0; k < gens.size(); ++k)
                    edge = edge + ds.injections[k].compose(unshift_dst(parts[k], gens[k].second));
                check_internal(edge.is_injective(), "tilting coapproximation not injective");
            }
        } else {
            check_internal(cur->is_zero(), "no tilting approximation found");
            break;
        }
        int pos = coresolution ? l : -l;
        out.cx.positions[pos] = X;
        out.summands[pos] = sums;
        if (l == 0) {
            out.augmentation = edge;
        } else if (!coresolution) {
            // d^{-l} = (K_{l-1} -> X^{-l+1}) ∘ (X^{-l} ->> K_{l-1})
            out.cx.differentials[-l] = prev_edge.compose(edge);
        } else {
            out.cx.differentials[l - 1] = edge.compose(prev_edge);
        }
        if (!coresolution) {
            auto K = submodule(X, edge.kernel());
            prev_edge = K.inclusion;
            cur = K.module;
        } else {
            auto C = quotient_module(X, edge.image());
            prev_edge = C.projection;
            cur = C.module;
        }
        ++l;
    }
    out.length = l == 0 ? 0 : l - 1;
    out.linear = true;
    for (const auto& [pos, sums] : out.summands)
        for (const auto& [v, s] : sums)
            if (s != pos) out.linear = false;
    out.cx.validate();
    return out;
}

int TiltingComplex::multiplicity(int pos, int vertex) const {
    auto it = summands.find(pos);
    if (it == summands.end()) return 0;
    int c = 0;
    for (const auto& [v, s] : it->second)
        if (v == vertex) ++c;
    return c;
}

int TiltingComplex::multiplicity(int pos, int vertex, int shift) const {
    auto it = summands.find(pos);
    if (it == summands.end()) return 0;
    int c = 0;
    for (const auto& [v, s] : it->second)
        if (v == vertex && s == shift) ++c;
    return c;
}

const ClassifyReport& Session::classify() {
    if (classify_) return *classify_;
    ClassifyReport r;
    r.positively_graded = true;
    r.qh = verify_qh().ok;
    if (!r.qh) {
        r.notes["skipped"] = "not quasi-hereditary: " + verify_qh().reason;
        classify_ = std::move(r);
        return *classify_;
    }
    const KoszulReport& k = koszul_dual();
    r.koszul = k.is_koszul;
    r.standard_koszul = k.is_standard_koszul;
    const TiltingData& td = tilting();
    r.ringel_positive = td.ringel_positive;
    r.ringel_generated_01 = td.ringel_generated_01;
    r.lt_resolutions_all_costd = true;
    r.lt_coresolutions_all_std = true;
    for (int i = 0; i < n(); ++i) {
        if (!tilting_resolution(costandard(i), false).linear) r.lt_resolutions_all_costd = false;
        if (!tilting_resolution(standard(i), true).linear) r.lt_coresolutions_all_std = false;
    }
    r.sct = r.lt_resolutions_all_costd && r.lt_coresolutions_all_std;
    r.sck = r.standard_koszul && r.ringel_positive;
    check_internal(r.sct == r.sck, "SCT and SCK disagree: build-stopping bug");
    r.balanced = false;
    if (r.sct && r.ringel_positive && r.ringel_generated_01) {
        // balanced = SCT and R(A)^! SCT; only the SCT flag of Λ is needed,
        // computed directly so self-dual algebras do not recurse forever
        Session& ls = lambda();
        if (ls.verify_qh().ok) {
            bool lsct = true;
            for (int i = 0; i < ls.n() && lsct; ++i) {
                if (!ls.tilting_resolution(ls.costandard(i), false).linear) lsct = false;
                if (lsct && !ls.tilting_resolution(ls.standard(i), true).linear) lsct = false;
            }
            r.balanced = lsct;
            if (!lsct) r.notes["balanced"] = "R(A)^! is not SCT";
        } else {
            r.notes["balanced"] = "R(A)^! is not quasi-hereditary";
        }
    } else if (r.sct) {
        r.notes["balanced"] = "Ringel dual presentation unavailable";
    }
    classify_ = std::move(r);
    return *classify_;
}

AlgebraPtr Session::lambda_algebra() {
    if (lambda_) return lambda_;
    lambda_ = quadratic_dual(ringel_dual(false));
    return lambda_;
}

Session& Session::lambda() {
    if (!lambda_session_) lambda_session_ = std::make_unique<Session>(lambda_algebra(), seed_);
    return *lambda_session_;
}

} // namespace qhcalc
