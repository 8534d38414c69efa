#include <algorithm>

#include "qhcalc/maputil.hpp"
#include "qhcalc/session.hpp"

namespace qhcalc {

// ------------------------------------------------------------------ map utils

Matrix vectorize_map(const ModuleMap& f) {
    const Field& fld = f.src()->algebra()->field();
    std::vector<Scalar> v;
    for (const auto& s : f.src()->slots()) {
        Matrix b = f.block(s.vertex, s.degree);
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) v.push_back(b.at(r, c));
    }
    Matrix out(static_cast<int>(v.size()), 1, fld);
    for (size_t i = 0; i < v.size(); ++i) out.set(static_cast<int>(i), 0, v[i]);
    return out;
}

std::optional<Matrix> map_coords(const std::vector<ModuleMap>& basis, const ModuleMap& f) {
    const Field& fld = f.src()->algebra()->field();
    Matrix target = vectorize_map(f);
    Matrix bm(target.rows(), static_cast<int>(basis.size()), fld);
    for (size_t c = 0; c < basis.size(); ++c) {
        Matrix v = vectorize_map(basis[c]);
        for (int r = 0; r < v.rows(); ++r) bm.set(r, static_cast<int>(c), v.at(r, 0));
    }
    return solve(bm, target);
}

ModuleMap combo(const std::vector<ModuleMap>& basis, const Matrix& coords,
                const ModulePtr& src, const ModulePtr& dst, int shift) {
    ModuleMap acc = ModuleMap::zero(src, dst, shift);
    for (size_t i = 0; i < basis.size(); ++i)
        acc = acc + basis[i].scaled(coords.at(static_cast<int>(i), 0));
    return acc;
}

std::optional<ModuleMap> solve_postcompose(const ModuleMap& q, const ModuleMap& h) {
    int ushift = h.shift() - q.shift();
    auto basis = hom_graded_shift(h.src(), q.src(), ushift);
    ModuleMap zero = ModuleMap::zero(h.src(), h.dst(), h.shift());
    if (basis.empty()) return h.is_zero() ? std::optional<ModuleMap>(ModuleMap::zero(h.src(), q.src(), ushift)) : std::nullopt;
    std::vector<ModuleMap> composed;
    for (const auto& u : basis) composed.push_back(q.compose(u));
    auto coords = map_coords(composed, h);
    if (!coords) return std::nullopt;
    return combo(basis, *coords, h.src(), q.src(), ushift);
    (void)zero;
}

std::optional<ModuleMap> solve_precompose(const ModuleMap& j, const ModuleMap& h) {
    int ushift = h.shift() - j.shift();
    auto basis = hom_graded_shift(j.dst(), h.dst(), ushift);
    if (basis.empty()) return h.is_zero() ? std::optional<ModuleMap>(ModuleMap::zero(j.dst(), h.dst(), ushift)) : std::nullopt;
    std::vector<ModuleMap> composed;
    for (const auto& u : basis) composed.push_back(u.compose(j));
    auto coords = map_coords(composed, h);
    if (!coords) return std::nullopt;
    return combo(basis, *coords, j.dst(), h.dst(), ushift);
}

ModuleMap absorb_shift(const ModulePtr& M, const ModuleMap& f, int s) {
    check_internal(f.shift() == 0, "absorb_shift expects a degree-0 map");
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& sl : f.src()->slots()) {
        Matrix b = f.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols() && !b.is_zero()) blocks[{sl.vertex, sl.degree + s}] = b;
    }
    return ModuleMap(M, f.dst(), -s, std::move(blocks));
}

// ------------------------------------------------------------------ complexes

ModulePtr ComplexOfModules::at(int pos, const AlgebraPtr& a) const {
    auto it = positions.find(pos);
    return it == positions.end() ? zero_module(a) : it->second;
}

void ComplexOfModules::validate() const {
    for (const auto& [i, d] : differentials) {
        check_internal(d.shift() == 0, "differential of nonzero degree");
        auto next = differentials.find(i + 1);
        if (next != differentials.end())
            check_internal(next->second.compose(d).is_zero(), "d ∘ d != 0");
    }
}

ModulePtr complex_homology(const ComplexOfModules& cx, int pos, const AlgebraPtr& a) {
    auto itX = cx.positions.find(pos);
    if (itX == cx.positions.end()) return zero_module(a);
    const ModulePtr& X = itX->second;
    SlotSpace ker;
    auto itd = cx.differentials.find(pos);
    if (itd == cx.differentials.end()) {
        for (const auto& s : X->slots())
            ker[{s.vertex, s.degree}] = Matrix::identity(s.dim, a->field());
    } else {
        ker = itd->second.kernel();
    }
    auto K = submodule(X, ker);
    auto itp = cx.differentials.find(pos - 1);
    if (itp == cx.differentials.end()) return K.module;
    // express the image of d^{pos-1} inside K
    SlotSpace img_in_K;
    const ModuleMap& dprev = itp->second;
    for (const auto& s : dprev.src()->slots()) {
        Matrix b = dprev.block(s.vertex, s.degree);
        if (b.rows() == 0 || b.is_zero()) continue;
        Matrix kb = K.inclusion.block(s.vertex, s.degree);
        auto sol = solve(kb, b);
        check_internal(sol.has_value(), "image of differential not inside kernel");
        auto key = std::make_pair(s.vertex, s.degree);
        auto it = img_in_K.find(key);
        if (it == img_in_K.end())
            img_in_K[key] = *sol;
        else
            it->second = it->second.hstack(*sol);
    }
    return quotient_module(K.module, slotspace_canonical(img_in_K, *K.module)).module;
}

// ------------------------------------------------------------- resolutions

int Session::resolution_cap() const { return std::max(4, 2 * a_->total_dim()); }

namespace {

struct CoverData {
    ModulePtr cover;
    ModuleMap map; // cover -> M, surjective, kernel in rad(cover)
    std::vector<std::pair<int, int>> summands;
};

CoverData projective_cover(Session& ses, const ModulePtr& M) {
    const AlgebraPtr& a = M->algebra();
    const Field& fld = a->field();
    auto qt = quotient_module(M, radical_space(*M));
    // choose preimages of the top basis, slot by slot
    std::vector<ModulePtr> parts;
    std::vector<std::pair<int, int>> summands;
    std::vector<Matrix> gens; // generator vectors in M-slot coordinates
    std::vector<std::pair<int, int>> gen_slots;
    for (const auto& s : qt.module->slots()) {
        Matrix pb = qt.projection.block(s.vertex, s.degree);
        auto sol = solve(pb, Matrix::identity(s.dim, fld));
        check_internal(sol.has_value(), "projective cover: no section of the top projection");
        for (int k = 0; k < s.dim; ++k) {
            parts.push_back(shift_module(ses.projective(s.vertex), -s.degree));
            summands.push_back({s.vertex, -s.degree});
            gens.push_back(sol->col(k));
            gen_slots.push_back({s.vertex, s.degree});
        }
    }
    if (parts.empty())
        return {zero_module(a), ModuleMap::zero(zero_module(a), M, 0), {}};
    DirectSum ds = direct_sum(parts, a);
    ModuleMap total = ModuleMap::zero(ds.module, M, 0);
    for (size_t pi = 0; pi < parts.size(); ++pi) {
        auto [v, d] = gen_slots[pi];
        // map P(v)<-d> -> M, generator e_v at degree d -> gens[pi]
        std::map<std::pair<int, int>, Matrix> blocks;
        for (const auto& ps : parts[pi]->slots()) {
            // slot (w, t+d) of P(v)<-d>: basis elements x with src v, dst w, deg t
            int t = ps.degree - d;
            std::vector<int> members;
            for (int k = 0; k < a->dim(t); ++k)
                if (a->basis_info(t, k).src == v && a->basis_info(t, k).dst == ps.vertex)
                    members.push_back(k);
            check_internal(static_cast<int>(members.size()) == ps.dim,
                           "projective slot enumeration mismatch");
            int target_dim = M->slot_dim(ps.vertex, ps.degree);
            if (target_dim == 0) continue;
            Matrix block(target_dim, ps.dim, fld);
            bool nz = false;
            for (size_t c = 0; c < members.size(); ++c) {
                Matrix coords(a->dim(t), 1, fld);
                coords.set(members[c], 0, Scalar(1));
                Matrix actm = M->act_element(t, coords, v, d);
                if (actm.rows() == 0) continue;
                Matrix img = actm * gens[pi];
                for (int r = 0; r < target_dim; ++r)
                    if (sgn(img.at(r, 0)) != 0) {
                        block.set(r, static_cast<int>(c), img.at(r, 0));
                        nz = true;
                    }
            }
            if (nz) blocks[{ps.vertex, ps.degree}] = block;
        }
        ModuleMap phi(parts[pi], M, 0, std::move(blocks));
        total = total + phi.compose(ds.projections[pi]);
    }
    check_internal(total.is_surjective(), "projective cover map not surjective");
    check_internal(slotspace_contains(radical_space(*ds.module), total.kernel(), *ds.module),
                   "projective cover not minimal");
    return {ds.module, total, summands};
}

} // namespace

const Resolution& Session::proj_resolution(const ModulePtr& M) {
    auto it = res_cache_.find(M.get());
    if (it != res_cache_.end()) return it->second;

    Resolution res;
    CoverData c0 = projective_cover(*this, M);
    res.cx.positions[0] = c0.cover;
    res.summands[0] = c0.summands;
    res.augmentation = c0.map;
    ModuleMap cur = c0.map; // cover_l -> (previous kernel or M)
    int l = 0;
    while (true) {
        SlotSpace ker = cur.kernel();
        if (slotspace_dim(ker) == 0) break;
        if (++l > resolution_cap())
            throw CapExceeded("projective resolution exceeds cap " +
                              std::to_string(resolution_cap()));
        auto K = submodule(cur.src(), ker);
        CoverData cl = projective_cover(*this, K.module);
        res.cx.positions[-l] = cl.cover;
        res.summands[-l] = cl.summands;
        res.cx.differentials[-l] = K.inclusion.compose(cl.map);
        cur = cl.map;
    }
    res.length = l;
    for (const auto& [pos, sums] : res.summands)
        for (const auto& [v, s] : sums)
            if (s != pos) res.linear = false;
    res.cx.validate();
    res_keepalive_.push_back(M);
    return res_cache_.emplace(M.get(), std::move(res)).first->second;
}

// -------------------------------------------------------------------- ext

namespace {

struct ExtShiftBasis {
    std::vector<ModuleMap> hom;       // basis of hom(X^{-l}, N<shift>)
    Matrix cocycles;                  // columns: coords of cocycles in hom basis
    Matrix coboundaries;              // columns: coords of coboundaries
    std::vector<int> rep_cols;        // cocycle columns chosen as class reps
};

ExtShiftBasis ext_shift_basis(Session& ses, const Resolution& res, const ModulePtr& N, int l,
                              int shift) {
    const AlgebraPtr& a = N->algebra();
    const Field& fld = a->field();
    ExtShiftBasis out;
    ModulePtr Xl = res.cx.at(-l, a);
    if (Xl->is_zero()) {
        out.cocycles = Matrix(0, 0, fld);
        out.coboundaries = Matrix(0, 0, fld);
        return out;
    }
    out.hom = hom_graded_shift(Xl, N, shift);
    const int hd = static_cast<int>(out.hom.size());
    if (hd == 0) {
        out.cocycles = Matrix(0, 0, fld);
        out.coboundaries = Matrix(0, 0, fld);
        return out;
    }
    // cocycles: f with f ∘ d^{-l-1} = 0
    auto itd = res.cx.differentials.find(-l - 1);
    if (itd == res.cx.differentials.end()) {
        out.cocycles = Matrix::identity(hd, fld);
    } else {
        Matrix rows(0, hd, fld);
        Matrix probe0 = vectorize_map(out.hom[0].compose(itd->second));
        Matrix comp(probe0.rows(), hd, fld);
        for (int c = 0; c < hd; ++c) {
            Matrix v = vectorize_map(out.hom[c].compose(itd->second));
            for (int r = 0; r < v.rows(); ++r) comp.set(r, c, v.at(r, 0));
        }
        out.cocycles = kernel_basis(comp);
        (void)rows;
    }
    // coboundaries: g ∘ d^{-l} for g in hom(X^{-l+1}, N<shift>)
    auto itdl = res.cx.differentials.find(-l);
    std::vector<Matrix> cob;
    if (itdl != res.cx.differentials.end() && l >= 1) {
        auto gb = hom_graded_shift(res.cx.at(-l + 1, a), N, shift);
        for (const auto& g : gb) {
            auto coords = map_coords(out.hom, g.compose(itdl->second));
            check_internal(coords.has_value(), "coboundary outside hom basis span");
            cob.push_back(*coords);
        }
    }
    Matrix cbm(hd, static_cast<int>(cob.size()), fld);
    for (size_t c = 0; c < cob.size(); ++c)
        for (int r = 0; r < hd; ++r) cbm.set(r, static_cast<int>(c), cob[c].at(r, 0));
    out.coboundaries = cbm;
    // choose rep columns: cocycle columns extending the coboundary row space
    Matrix span = cbm.transpose();
    int rank = span.rows() ? rank_rref(span).rank : 0;
    for (int c = 0; c < out.cocycles.cols(); ++c) {
        Matrix cand = out.cocycles.col(c).transpose();
        Matrix aug = span.rows() ? span.vstack(cand) : cand;
        int r2 = rank_rref(aug).rank;
        if (r2 > rank) {
            out.rep_cols.push_back(c);
            span = aug;
            rank = r2;
        }
    }
    (void)ses;
    return out;
}

} // namespace

int ExtData::dim(int shift) const {
    auto it = reps.find(shift);
    return it == reps.end() ? 0 : static_cast<int>(it->second.size());
}

int ExtData::total() const {
    int t = 0;
    for (const auto& [s, v] : reps) t += static_cast<int>(v.size());
    return t;
}

std::vector<int> ExtData::shifts() const {
    std::vector<int> out;
    for (const auto& [s, v] : reps)
        if (!v.empty()) out.push_back(s);
    return out;
}

ExtData Session::ext_graded(const ModulePtr& M, const ModulePtr& N, int l) {
    check_internal(l >= 0, "negative ext degree");
    ExtData out;
    if (l == 0) {
        out.reps = hom_graded(M, N);
        return out;
    }
    const Resolution& res = proj_resolution(M);
    if (l > res.length) return out;
    ModulePtr Xl = res.cx.at(-l, a_);
    if (Xl->is_zero() || N->is_zero()) return out;
    int lo = N->min_degree() - Xl->max_degree();
    int hi = N->max_degree() - Xl->min_degree();
    for (int shift = lo; shift <= hi; ++shift) {
        ExtShiftBasis b = ext_shift_basis(*this, res, N, l, shift);
        if (b.rep_cols.empty()) continue;
        std::vector<ModuleMap> reps;
        for (int c : b.rep_cols)
            reps.push_back(combo(b.hom, b.cocycles.col(c), Xl, N, shift));
        out.reps[shift] = std::move(reps);
    }
    return out;
}

std::vector<Scalar> Session::ext_class_coords(const ModulePtr& M, const ModulePtr& N, int l,
                                              int shift, const ModuleMap& cocycle) {
    const Resolution& res = proj_resolution(M);
    ExtShiftBasis b = ext_shift_basis(*this, res, N, l, shift);
    const Field& fld = a_->field();
    if (b.hom.empty()) return {};
    auto coords = map_coords(b.hom, cocycle);
    check_internal(coords.has_value(), "cocycle outside hom space");
    // solve [reps | coboundaries] c = coords
    Matrix repm(static_cast<int>(b.hom.size()), static_cast<int>(b.rep_cols.size()), fld);
    for (size_t c = 0; c < b.rep_cols.size(); ++c)
        for (int r = 0; r < repm.rows(); ++r)
            repm.set(r, static_cast<int>(c), b.cocycles.at(r, b.rep_cols[c]));
    Matrix full = repm.hstack(b.coboundaries);
    auto sol = solve(full, *coords);
    check_internal(sol.has_value(), "map is not a cocycle for this ext group");
    std::vector<Scalar> out;
    for (size_t c = 0; c < b.rep_cols.size(); ++c) out.push_back(sol->at(static_cast<int>(c), 0));
    return out;
}

// ------------------------------------------------------------ ext1 classes

Ext1Class Session::realize_ext1(const ModulePtr& M, const ModulePtr& N, const ModuleMap& cocycle) {
    const Resolution& res = proj_resolution(M);
    const Field& fld = a_->field();
    const int s = cocycle.shift();
    check_internal(cocycle.src().get() == res.cx.at(-1, a_).get(), "cocycle not on X^{-1}");
    // cocycle must kill im d^{-2} = ker(X^{-1} -> K)
    auto itd2 = res.cx.differentials.find(-2);
    if (itd2 != res.cx.differentials.end())
        check_internal(cocycle.compose(itd2->second).is_zero(), "not a 1-cocycle");

    const ModuleMap& d1 = res.cx.differentials.at(-1);
    auto K = submodule(d1.dst(), d1.image());
    // cbar: K -> N with cbar ∘ (d1 onto K) = cocycle
    std::map<std::pair<int, int>, Matrix> cbar_blocks;
    for (const auto& sl : K.module->slots()) {
        Matrix kb = K.inclusion.block(sl.vertex, sl.degree);
        Matrix db = d1.block(sl.vertex, sl.degree);
        auto pre = solve(db, kb);
        check_internal(pre.has_value(), "kernel basis has no preimage");
        Matrix cb = cocycle.block(sl.vertex, sl.degree) * *pre;
        if (cb.rows() && !cb.is_zero()) cbar_blocks[{sl.vertex, sl.degree}] = cb;
    }
    ModulePtr Ns = shift_module(N, s);
    // rekey cbar as K -> N<s> (degree 0)
    std::map<std::pair<int, int>, Matrix> cbar0;
    for (auto& [k, b] : cbar_blocks) cbar0[k] = b;
    ModuleMap cbar(K.module, Ns, 0, std::move(cbar0));

    DirectSum D = direct_sum({Ns, d1.dst()}, a_);
    ModuleMap graph = D.injections[0].compose(cbar.scaled(Scalar(-1))) +
                      D.injections[1].compose(K.inclusion);
    auto Q = quotient_module(D.module, graph.image());
    ModuleMap beta0 = Q.projection.compose(D.injections[0]); // N<s> -> X
    ModuleMap incl = absorb_shift(N, beta0, s);
    // gamma: X -> M descends from aug ∘ pr_1
    ModuleMap h = res.augmentation.compose(D.projections[1]);
    check_internal(h.compose(graph).is_zero(), "pushout map does not descend");
    auto gamma = solve_precompose(Q.projection, h);
    check_internal(gamma.has_value(), "no descended projection");
    // exactness checks
    check_internal(incl.is_injective(), "extension: inclusion not injective");
    check_internal(gamma->is_surjective(), "extension: projection not surjective");
    check_internal(gamma->compose(incl).is_zero(), "extension: composite nonzero");
    check_internal(Q.module->total_dim() == N->total_dim() + M->total_dim(),
                   "extension: wrong total dimension");
    (void)fld;
    return Ext1Class{N, Q.module, M, incl, *gamma, s};
}

Ext1Class Session::pullback_ext1(const Ext1Class& xi, const ModuleMap& f) {
    check_internal(f.shift() == 0 && f.dst().get() == xi.quot.get(),
                   "pullback: map must land in the quotient, degree 0");
    DirectSum D = direct_sum({xi.total, f.src()}, a_);
    ModuleMap h = xi.proj.compose(D.projections[0]) + f.compose(D.projections[1]).scaled(Scalar(-1));
    auto Xp = submodule(D.module, h.kernel());
    // beta': N -> X' lifting (beta, 0)
    ModuleMap into = D.injections[0].compose(xi.incl);
    auto betap = solve_postcompose(Xp.inclusion, into);
    check_internal(betap.has_value(), "pullback: inclusion does not factor");
    ModuleMap projp = D.projections[1].compose(Xp.inclusion);
    check_internal(betap->is_injective() && projp.is_surjective() &&
                       projp.compose(*betap).is_zero() &&
                       Xp.module->total_dim() == xi.sub->total_dim() + f.src()->total_dim(),
                   "pullback: not exact");
    return Ext1Class{xi.sub, Xp.module, f.src(), *betap, projp, xi.shift};
}

Ext1Class Session::pushout_ext1(const Ext1Class& xi, const ModuleMap& g) {
    check_internal(g.shift() == 0 && g.src().get() == xi.sub.get(),
                   "pushout: map must start at the submodule, degree 0");
    ModulePtr Nps = shift_module(g.dst(), xi.shift);
    // g as N<s> -> N'<s>, then against beta0: N<s> -> X
    std::map<std::pair<int, int>, Matrix> gb;
    for (const auto& sl : g.src()->slots()) {
        Matrix b = g.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols() && !b.is_zero()) gb[{sl.vertex, sl.degree - xi.shift}] = b;
    }
    ModulePtr Nss = shift_module(xi.sub, xi.shift);
    ModuleMap gshift(Nss, Nps, 0, std::move(gb));
    // beta as N<s> -> X degree 0
    std::map<std::pair<int, int>, Matrix> bb;
    for (const auto& sl : xi.sub->slots()) {
        Matrix b = xi.incl.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols() && !b.is_zero()) bb[{sl.vertex, sl.degree - xi.shift}] = b;
    }
    ModuleMap beta0(Nss, xi.total, 0, std::move(bb));
    DirectSum D = direct_sum({Nps, xi.total}, a_);
    ModuleMap graph = D.injections[0].compose(gshift.scaled(Scalar(-1))) +
                      D.injections[1].compose(beta0);
    auto Q = quotient_module(D.module, graph.image());
    ModuleMap betap0 = Q.projection.compose(D.injections[0]);
    ModuleMap inclp = absorb_shift(g.dst(), betap0, xi.shift);
    ModuleMap h = xi.proj.compose(D.projections[1]);
    check_internal(h.compose(graph).is_zero(), "pushout map does not descend");
    auto gammap = solve_precompose(Q.projection, h);
    check_internal(gammap.has_value(), "pushout: no descended projection");
    check_internal(inclp.is_injective() && gammap->is_surjective() &&
                       gammap->compose(inclp).is_zero() &&
                       Q.module->total_dim() == g.dst()->total_dim() + xi.quot->total_dim(),
                   "pushout: not exact");
    return Ext1Class{g.dst(), Q.module, xi.quot, inclp, *gammap, xi.shift};
}

ModuleMap Session::extension_to_cocycle(const Ext1Class& xi) {
    const Resolution& res = proj_resolution(xi.quot);
    // lift the augmentation through gamma
    auto L0 = solve_postcompose(xi.proj, res.augmentation);
    check_internal(L0.has_value(), "augmentation does not lift through the extension");
    const ModuleMap& d1 = res.cx.differentials.at(-1);
    ModuleMap comp = L0->compose(d1); // X^{-1} -> total, lands in beta(N)
    auto c = solve_postcompose(xi.incl, comp);
    check_internal(c.has_value(), "connecting map does not factor through the submodule");
    return *c;
}

// ----------------------------------------------------------------- koszul

const KoszulReport& Session::koszul_dual() {
    if (koszul_) return *koszul_;
    KoszulReport rep;
    rep.is_koszul = true;
    for (int i = 0; i < n(); ++i)
        if (!proj_resolution(simple(i)).linear) rep.is_koszul = false;
    bool std_linear = true, costd_linear = true;
    if (verify_qh().ok) {
        for (int i = 0; i < n(); ++i) {
            if (!proj_resolution(standard(i)).linear) std_linear = false;
            if (!op().proj_resolution(op().standard(i)).linear) costd_linear = false;
        }
        rep.is_standard_koszul = std_linear && costd_linear;
    }
    if (rep.is_koszul) {
        rep.dual = opposite(quadratic_dual(a_));
        if (a_->total_dim() <= 12) {
            // cross-check against the Yoneda-product oracle
            Presentation ep = presentation_extract(yoneda_ext_algebra());
            auto eyo = build_algebra_ptr(ep);
            auto r = iso_search(*rep.dual, *eyo);
            check_internal(r.verdict == IsoResult::Verdict::Witness,
                           "quadratic-dual Koszul dual disagrees with the Yoneda oracle");
        }
    }
    koszul_ = std::move(rep);
    return *koszul_;
}

AbstractAlgebra Session::yoneda_ext_algebra() {
    const Field& fld = a_->field();
    // collect ext classes per homological degree
    struct Tag {
        int from, to, shift, idx; // class in ext^l(L(from), L(to)<shift>)
        ModuleMap rep;
    };
    std::vector<std::vector<Tag>> classes; // per l
    classes.emplace_back();
    for (int i = 0; i < n(); ++i)
        classes[0].push_back(Tag{i, i, 0, i, ModuleMap::identity(simple(i))});
    int maxlen = 0;
    for (int i = 0; i < n(); ++i) maxlen = std::max(maxlen, proj_resolution(simple(i)).length);
    for (int l = 1; l <= maxlen; ++l) {
        classes.emplace_back();
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j) {
                ExtData e = ext_graded(simple(i), simple(j), l);
                for (int s : e.shifts())
                    for (size_t k = 0; k < e.reps.at(s).size(); ++k)
                        classes[l].push_back(
                            Tag{i, j, s, static_cast<int>(k), e.reps.at(s)[k]});
            }
        if (classes[l].empty()) {
            classes.pop_back();
            break;
        }
    }
    // Element/class correspondence follows the End(T)^opp pattern used for the
    // Ringel dual: the element of a class φ : L(from) -> L(to) has source
    // vertex `to` and target vertex `from`, and the product x_ψ ∘ x_φ is the
    // class of the composite φ then ψ... with φ the *left* factor. Concretely,
    // mult(k1, k2) is the Yoneda composite "first the class of k1, then k2".
    AbstractAlgebra out;
    out.field = fld;
    out.vertex_labels = a_->presentation().vertices;
    out.basis.resize(classes.size());
    for (size_t l = 0; l < classes.size(); ++l)
        for (const auto& t : classes[l]) out.basis[l].push_back({t.to, t.from});

    Session* ses = this;
    auto classes_ptr = std::make_shared<std::vector<std::vector<Tag>>>(std::move(classes));
    out.mult = [ses, classes_ptr, fld](int d1, int k1, int d2, int k2) {
        const auto& cls = *classes_ptr;
        const Tag& y = cls[d1][k1]; // class applied first
        const Tag& x = cls[d2][k2]; // class applied second
        int dim_out = static_cast<int>(cls.size()) > d1 + d2
                          ? static_cast<int>(cls[d1 + d2].size())
                          : 0;
        std::vector<Scalar> zero(dim_out, Scalar(0));
        if (x.from != y.to) return zero; // not composable
        if (dim_out == 0) return zero;
        if (d2 == 0) { // identity class on the right
            std::vector<Scalar> v(dim_out, Scalar(0));
            v[k1] = Scalar(1);
            return v;
        }
        if (d1 == 0) {
            std::vector<Scalar> v(dim_out, Scalar(0));
            v[k2] = Scalar(1);
            return v;
        }
        // lift y's cocycle to a chain map F_r : X^{-d1-r}(L(y.from)) -> X^{-r}(L(y.to))
        const Resolution& ry = ses->proj_resolution(ses->simple(y.from));
        const Resolution& rt = ses->proj_resolution(ses->simple(y.to));
        if (d1 + d2 > ry.length) return zero;
        ModuleMap F = [&]() {
            auto F0 = solve_postcompose(rt.augmentation, y.rep);
            check_internal(F0.has_value(), "cannot lift cocycle through augmentation");
            ModuleMap cur = *F0;
            for (int r = 1; r <= d2; ++r) {
                ModuleMap rhs = cur.compose(ry.cx.differentials.at(-d1 - r));
                auto Fr = solve_postcompose(rt.cx.differentials.at(-r), rhs);
                check_internal(Fr.has_value(), "cannot lift chain map");
                cur = *Fr;
            }
            return cur;
        }();
        ModuleMap prod = x.rep.compose(F); // X^{-d1-d2}(L(y.from)) -> L(x.to)
        auto coords = ses->ext_class_coords(ses->simple(y.from), ses->simple(x.to), d1 + d2,
                                            x.shift + y.shift, prod);
        std::vector<Scalar> v(dim_out, Scalar(0));
        int ci = 0;
        for (int t = 0; t < dim_out; ++t) {
            const Tag& z = cls[d1 + d2][t];
            if (z.from == y.from && z.to == x.to && z.shift == x.shift + y.shift) {
                check_internal(ci < static_cast<int>(coords.size()), "class coordinate mismatch");
                v[t] = coords[ci++];
            }
        }
        return v;
    };
    return out;
}

} // namespace qhcalc
