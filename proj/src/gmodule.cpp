#include "qhcalc/gmodule.hpp"

#include <algorithm>

namespace qhcalc {

namespace {

bool slot_less(const Slot& a, const Slot& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.vertex < b.vertex;
}

} // namespace

ModulePtr GradedModule::make(AlgebraPtr alg, std::vector<Slot> slots,
                             std::map<std::pair<int, int>, Matrix> actions) {
    auto m = std::make_shared<GradedModule>();
    m->alg_ = std::move(alg);
    for (auto it = slots.begin(); it != slots.end();) {
        check_internal(it->dim >= 0, "negative slot dimension");
        it = it->dim == 0 ? slots.erase(it) : it + 1;
    }
    std::sort(slots.begin(), slots.end(), slot_less);
    m->slots_ = std::move(slots);
    m->act_ = std::move(actions);

    const auto& p = m->alg_->presentation();
    // prune zero-shaped action entries and validate shapes
    for (auto it = m->act_.begin(); it != m->act_.end();) {
        auto [ai, d] = it->first;
        const Arrow& ar = p.arrows[ai];
        int sc = m->slot_dim(ar.src, d), tc = m->slot_dim(ar.dst, d + ar.degree);
        if (sc == 0 || tc == 0) {
            check_internal(it->second.is_zero(), "action into a zero slot must be zero");
            it = m->act_.erase(it);
            continue;
        }
        check_internal(it->second.rows() == tc && it->second.cols() == sc,
                       "action matrix shape mismatch");
        ++it;
    }
    // relations act by zero
    for (const auto& r : p.relations)
        for (const auto& s : m->slots_) {
            if (s.vertex != r.src) continue;
            Matrix total(m->slot_dim(r.dst, s.degree + r.degree), s.dim, m->alg_->field());
            for (const auto& t : r.terms)
                total = total + m->act_word(t.word, s.degree).scaled(t.coeff);
            check_internal(total.is_zero(), "relation does not act by zero on module");
        }
    return m;
}

int GradedModule::slot_dim(int v, int d) const {
    for (const auto& s : slots_)
        if (s.vertex == v && s.degree == d) return s.dim;
    return 0;
}

int GradedModule::total_dim() const {
    int t = 0;
    for (const auto& s : slots_) t += s.dim;
    return t;
}

int GradedModule::min_degree() const {
    return slots_.empty() ? 0 : slots_.front().degree;
}

int GradedModule::max_degree() const {
    return slots_.empty() ? 0 : slots_.back().degree;
}

int GradedModule::vertex_dim(int v) const {
    int t = 0;
    for (const auto& s : slots_)
        if (s.vertex == v) t += s.dim;
    return t;
}

Matrix GradedModule::action(int arrow, int d) const {
    const Arrow& ar = alg_->presentation().arrows[arrow];
    int sc = slot_dim(ar.src, d), tc = slot_dim(ar.dst, d + ar.degree);
    auto it = act_.find({arrow, d});
    if (it != act_.end()) return it->second;
    return Matrix(tc, sc, alg_->field());
}

Matrix GradedModule::act_word(const std::vector<int>& word, int d) const {
    check_internal(!word.empty(), "act_word needs a nonempty word");
    const auto& p = alg_->presentation();
    Matrix cur = action(word[0], d);
    int deg = d + p.arrows[word[0]].degree;
    for (size_t i = 1; i < word.size(); ++i) {
        cur = action(word[i], deg) * cur;
        deg += p.arrows[word[i]].degree;
    }
    return cur;
}

Matrix GradedModule::act_element(int ad, const Matrix& coords, int v, int d) const {
    const Field& f = alg_->field();
    if (ad == 0) {
        // combination of idempotents: acts as a scalar on the (v, d) slot
        Matrix out = Matrix::identity(slot_dim(v, d), f).scaled(coords.at(v, 0));
        return out;
    }
    // accumulate over basis elements with source vertex v
    int tv = -1;
    for (int k = 0; k < alg_->dim(ad); ++k) {
        if (f.is_zero(coords.at(k, 0))) continue;
        const auto& info = alg_->basis_info(ad, k);
        if (info.src != v) continue;
        check_internal(tv < 0 || tv == info.dst, "act_element: mixed target vertices");
        tv = info.dst;
    }
    if (tv < 0) return Matrix(0, slot_dim(v, d), f);
    Matrix out(slot_dim(tv, d + ad), slot_dim(v, d), f);
    for (int k = 0; k < alg_->dim(ad); ++k) {
        if (f.is_zero(coords.at(k, 0))) continue;
        const auto& info = alg_->basis_info(ad, k);
        if (info.src != v) continue;
        const QuiverPath& q = alg_->paths(ad)[info.path_index];
        out = out + act_word(q.word, d).scaled(coords.at(k, 0));
    }
    return out;
}

ModuleMap::ModuleMap(ModulePtr src, ModulePtr dst, int shift,
                     std::map<std::pair<int, int>, Matrix> blocks)
    : src_(std::move(src)), dst_(std::move(dst)), shift_(shift), blocks_(std::move(blocks)) {
    check_internal(src_->algebra().get() == dst_->algebra().get(),
                   "module map between different algebras");
    const auto& p = src_->algebra()->presentation();
    const Field& f = src_->algebra()->field();
    for (auto it = blocks_.begin(); it != blocks_.end();) {
        auto [v, d] = it->first;
        int sc = src_->slot_dim(v, d), tc = dst_->slot_dim(v, d + shift_);
        if (sc == 0 || tc == 0) {
            check_internal(it->second.is_zero(), "map block into a zero slot must be zero");
            it = blocks_.erase(it);
            continue;
        }
        check_internal(it->second.rows() == tc && it->second.cols() == sc,
                       "map block shape mismatch");
        ++it;
    }
    // commutation with arrow actions
    for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
        const Arrow& ar = p.arrows[ai];
        for (const auto& s : src_->slots()) {
            if (s.vertex != ar.src) continue;
            int d = s.degree;
            if (dst_->slot_dim(ar.dst, d + ar.degree + shift_) == 0) continue;
            Matrix lhs = block(ar.dst, d + ar.degree) * src_->action(ai, d);
            Matrix rhs = dst_->action(ai, d + shift_) * block(ar.src, d);
            check_internal(lhs == rhs, "map does not commute with action");
        }
    }
    (void)f;
}

ModuleMap ModuleMap::zero(ModulePtr src, ModulePtr dst, int shift) {
    return ModuleMap(std::move(src), std::move(dst), shift, {});
}

ModuleMap ModuleMap::identity(const ModulePtr& m) {
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& s : m->slots())
        blocks[{s.vertex, s.degree}] = Matrix::identity(s.dim, m->algebra()->field());
    return ModuleMap(m, m, 0, std::move(blocks));
}

Matrix ModuleMap::block(int v, int d) const {
    auto it = blocks_.find({v, d});
    if (it != blocks_.end()) return it->second;
    return Matrix(dst_->slot_dim(v, d + shift_), src_->slot_dim(v, d),
                  src_->algebra()->field());
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    check_internal(inner.dst_.get() == src_.get(), "compose: middle module mismatch");
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& s : inner.src_->slots()) {
        Matrix b = block(s.vertex, s.degree + inner.shift_) * inner.block(s.vertex, s.degree);
        if (b.rows() && b.cols() && !b.is_zero()) blocks[{s.vertex, s.degree}] = b;
    }
    return ModuleMap(inner.src_, dst_, shift_ + inner.shift_, std::move(blocks));
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
    check_internal(src_.get() == o.src_.get() && dst_.get() == o.dst_.get() && shift_ == o.shift_,
                   "sum of incompatible maps");
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& s : src_->slots()) {
        Matrix b = block(s.vertex, s.degree) + o.block(s.vertex, s.degree);
        if (b.rows() && b.cols()) blocks[{s.vertex, s.degree}] = b;
    }
    return ModuleMap(src_, dst_, shift_, std::move(blocks));
}

ModuleMap ModuleMap::scaled(const Scalar& c) const {
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& [k, b] : blocks_) blocks[k] = b.scaled(c);
    return ModuleMap(src_, dst_, shift_, std::move(blocks));
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    if (src_.get() != o.src_.get() || dst_.get() != o.dst_.get() || shift_ != o.shift_) return false;
    for (const auto& s : src_->slots())
        if (block(s.vertex, s.degree) != o.block(s.vertex, s.degree)) return false;
    return true;
}

bool ModuleMap::is_zero() const {
    for (const auto& [k, b] : blocks_)
        if (!b.is_zero()) return false;
    return true;
}

int ModuleMap::rank() const {
    int r = 0;
    for (const auto& s : src_->slots()) r += rank_rref(block(s.vertex, s.degree)).rank;
    return r;
}

SlotSpace ModuleMap::image() const {
    SlotSpace out;
    for (const auto& s : src_->slots()) {
        Matrix b = block(s.vertex, s.degree);
        if (b.rows() == 0 || b.is_zero()) continue;
        auto key = std::make_pair(s.vertex, s.degree + shift_);
        auto it = out.find(key);
        if (it == out.end())
            out[key] = b;
        else
            it->second = it->second.hstack(b);
    }
    return slotspace_canonical(out, *dst_);
}

SlotSpace ModuleMap::kernel() const {
    SlotSpace out;
    for (const auto& s : src_->slots()) {
        Matrix b = block(s.vertex, s.degree);
        Matrix k = b.rows() == 0 ? Matrix::identity(s.dim, src_->algebra()->field())
                                 : kernel_basis(b);
        if (k.cols() > 0) out[{s.vertex, s.degree}] = k;
    }
    return out;
}

int slotspace_dim(const SlotSpace& s) {
    int t = 0;
    for (const auto& [k, m] : s) t += rank_rref(m.transpose()).rank;
    return t;
}

SlotSpace slotspace_canonical(const SlotSpace& s, const GradedModule& ambient) {
    SlotSpace out;
    for (const auto& [k, m] : s) {
        check_internal(m.rows() == ambient.slot_dim(k.first, k.second),
                       "slot space vector outside ambient slot");
        RrefResult rr = rank_rref(m.transpose());
        if (rr.rank == 0) continue;
        out[k] = rr.rref.submatrix(0, 0, rr.rank, rr.rref.cols()).transpose();
    }
    return out;
}

SlotSpace slotspace_sum(const SlotSpace& a, const SlotSpace& b) {
    SlotSpace out = a;
    for (const auto& [k, m] : b) {
        auto it = out.find(k);
        if (it == out.end())
            out[k] = m;
        else
            it->second = it->second.hstack(m);
    }
    return out;
}

bool slotspace_contains(const SlotSpace& big, const SlotSpace& small, const GradedModule& ambient) {
    for (const auto& [k, m] : small) {
        if (m.cols() == 0) continue;
        auto it = big.find(k);
        Matrix space = it == big.end() ? Matrix(m.rows(), 0, m.field()) : it->second;
        if (!rowspace_contains(space.transpose(), m.transpose())) return false;
    }
    (void)ambient;
    return true;
}

bool slotspace_equal(const SlotSpace& a, const SlotSpace& b, const GradedModule& ambient) {
    return slotspace_contains(a, b, ambient) && slotspace_contains(b, a, ambient);
}

SlotSpace close_under_action(const GradedModule& m, SlotSpace span) {
    const auto& p = m.algebra()->presentation();
    SlotSpace cur = slotspace_canonical(span, m);
    while (true) {
        SlotSpace next = cur;
        for (const auto& [key, mat] : cur) {
            auto [v, d] = key;
            for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
                if (p.arrows[ai].src != v) continue;
                Matrix img = m.action(ai, d) * mat;
                if (img.rows() == 0 || img.is_zero()) continue;
                next = slotspace_sum(next, {{{p.arrows[ai].dst, d + p.arrows[ai].degree}, img}});
            }
        }
        next = slotspace_canonical(next, m);
        if (slotspace_dim(next) == slotspace_dim(cur)) return next;
        cur = std::move(next);
    }
}

SubmoduleResult submodule(const ModulePtr& m, const SlotSpace& space) {
    const Field& f = m->algebra()->field();
    SlotSpace basis = slotspace_canonical(space, *m);
    check_internal(slotspace_equal(basis, close_under_action(*m, basis), *m),
                   "submodule: span not arrow-closed");
    std::vector<Slot> slots;
    for (const auto& [k, mat] : basis) slots.push_back(Slot{k.first, k.second, mat.cols()});

    const auto& p = m->algebra()->presentation();
    std::map<std::pair<int, int>, Matrix> actions;
    for (const auto& [key, mat] : basis) {
        auto [v, d] = key;
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            if (p.arrows[ai].src != v) continue;
            int td = d + p.arrows[ai].degree;
            auto it = basis.find({p.arrows[ai].dst, td});
            Matrix img = m->action(ai, d) * mat;
            if (it == basis.end()) {
                check_internal(img.rows() == 0 || img.is_zero(), "submodule: action escapes span");
                continue;
            }
            auto sol = solve(it->second, img);
            check_internal(sol.has_value(), "submodule: action escapes span");
            if (!sol->is_zero()) actions[{ai, d}] = *sol;
        }
    }
    (void)f;
    ModulePtr sub = GradedModule::make(m->algebra(), slots, std::move(actions));
    std::map<std::pair<int, int>, Matrix> incl;
    for (const auto& [k, mat] : basis) incl[k] = mat;
    return SubmoduleResult{sub, ModuleMap(sub, m, 0, std::move(incl))};
}

QuotientResult quotient_module(const ModulePtr& m, const SlotSpace& space) {
    const Field& f = m->algebra()->field();
    SlotSpace basis = slotspace_canonical(space, *m);
    check_internal(slotspace_equal(basis, close_under_action(*m, basis), *m),
                   "quotient: span not arrow-closed");
    // per slot: projection matrix onto the rref complement of the subspace
    std::map<std::pair<int, int>, Matrix> proj;
    std::vector<Slot> slots;
    for (const auto& s : m->slots()) {
        auto key = std::make_pair(s.vertex, s.degree);
        auto it = basis.find(key);
        if (it == basis.end()) {
            slots.push_back(s);
            proj[key] = Matrix::identity(s.dim, f);
            continue;
        }
        RrefResult rr = rank_rref(it->second.transpose());
        std::vector<bool> isp(s.dim, false);
        for (int c : rr.pivot_cols) isp[c] = true;
        int qd = s.dim - rr.rank;
        if (qd == 0) continue;
        // v -> v - sum over pivots, then read the free coordinates
        Matrix pm(qd, s.dim, f);
        int row = 0;
        for (int c = 0; c < s.dim; ++c) {
            if (isp[c]) continue;
            pm.set(row, c, Scalar(1));
            for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
                pm.set(row, rr.pivot_cols[pi],
                       f.neg(rr.rref.at(static_cast<int>(pi), c)));
            ++row;
        }
        slots.push_back(Slot{s.vertex, s.degree, qd});
        proj[key] = pm;
    }
    // induced actions: q_act = proj_target * act * section, where section maps
    // quotient coords back to ambient representatives (free coordinates)
    std::map<std::pair<int, int>, Matrix> sections;
    for (const auto& s : m->slots()) {
        auto key = std::make_pair(s.vertex, s.degree);
        auto itp = proj.find(key);
        if (itp == proj.end()) continue;
        // section: right inverse of proj with image in the free coordinates
        auto sol = solve(itp->second, Matrix::identity(itp->second.rows(), f));
        check_internal(sol.has_value(), "quotient: projection has no section");
        sections[key] = *sol;
    }
    const auto& p = m->algebra()->presentation();
    std::map<std::pair<int, int>, Matrix> actions;
    for (const auto& [key, pm] : proj) {
        auto [v, d] = key;
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            if (p.arrows[ai].src != v) continue;
            auto tkey = std::make_pair(p.arrows[ai].dst, d + p.arrows[ai].degree);
            auto itt = proj.find(tkey);
            if (itt == proj.end()) continue;
            Matrix qa = itt->second * m->action(ai, d) * sections[key];
            if (qa.rows() && qa.cols() && !qa.is_zero()) actions[{ai, d}] = qa;
        }
    }
    ModulePtr q = GradedModule::make(m->algebra(), slots, std::move(actions));
    std::map<std::pair<int, int>, Matrix> pblocks;
    for (auto& [k, pm] : proj)
        if (pm.rows() && pm.cols()) pblocks[k] = pm;
    return QuotientResult{q, ModuleMap(m, q, 0, std::move(pblocks))};
}

ModulePtr shift_module(const ModulePtr& m, int s) {
    auto out = std::make_shared<GradedModule>();
    out->alg_ = m->alg_;
    for (const auto& sl : m->slots_) out->slots_.push_back(Slot{sl.vertex, sl.degree - s, sl.dim});
    for (const auto& [k, mat] : m->act_) out->act_[{k.first, k.second - s}] = mat;
    return out;
}

ModuleMap shift_map(const ModuleMap& f, int s) {
    ModulePtr ns = shift_module(f.src(), s), nd = shift_module(f.dst(), s);
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& sl : f.src()->slots()) {
        Matrix b = f.block(sl.vertex, sl.degree);
        if (b.rows() && b.cols()) blocks[{sl.vertex, sl.degree - s}] = b;
    }
    return ModuleMap(ns, nd, f.shift(), std::move(blocks));
}

DirectSum direct_sum(const std::vector<ModulePtr>& parts, AlgebraPtr alg) {
    const Field f = alg->field();
    std::map<std::pair<int, int>, int> dims;
    for (const auto& p : parts)
        for (const auto& s : p->slots()) dims[{s.vertex, s.degree}] += s.dim;
    // offsets of each part inside each slot
    std::vector<std::map<std::pair<int, int>, int>> offs(parts.size());
    std::map<std::pair<int, int>, int> cur;
    for (size_t pi = 0; pi < parts.size(); ++pi)
        for (const auto& s : parts[pi]->slots()) {
            offs[pi][{s.vertex, s.degree}] = cur[{s.vertex, s.degree}];
            cur[{s.vertex, s.degree}] += s.dim;
        }
    std::vector<Slot> slots;
    for (const auto& [k, d] : dims) slots.push_back(Slot{k.first, k.second, d});
    const auto& pres = alg->presentation();
    std::map<std::pair<int, int>, Matrix> actions;
    for (const auto& [k, d] : dims) {
        auto [v, deg] = k;
        for (int ai = 0; ai < static_cast<int>(pres.arrows.size()); ++ai) {
            if (pres.arrows[ai].src != v) continue;
            auto tkey = std::make_pair(pres.arrows[ai].dst, deg + pres.arrows[ai].degree);
            auto itt = dims.find(tkey);
            if (itt == dims.end()) continue;
            Matrix big(itt->second, d, f);
            bool nz = false;
            for (size_t pi = 0; pi < parts.size(); ++pi) {
                Matrix b = parts[pi]->action(ai, deg);
                if (b.rows() == 0 || b.cols() == 0) continue;
                int ro = offs[pi][tkey], co = offs[pi][k];
                for (int r = 0; r < b.rows(); ++r)
                    for (int c = 0; c < b.cols(); ++c)
                        if (sgn(b.at(r, c)) != 0) {
                            big.set(ro + r, co + c, b.at(r, c));
                            nz = true;
                        }
            }
            if (nz) actions[{ai, deg}] = big;
        }
    }
    ModulePtr sum = GradedModule::make(alg, slots, std::move(actions));
    DirectSum out;
    out.module = sum;
    for (size_t pi = 0; pi < parts.size(); ++pi) {
        std::map<std::pair<int, int>, Matrix> inj, prj;
        for (const auto& s : parts[pi]->slots()) {
            auto key = std::make_pair(s.vertex, s.degree);
            int off = offs[pi][key], total = dims[key];
            Matrix in(total, s.dim, f), pr(s.dim, total, f);
            for (int i = 0; i < s.dim; ++i) {
                in.set(off + i, i, Scalar(1));
                pr.set(i, off + i, Scalar(1));
            }
            inj[key] = in;
            prj[key] = pr;
        }
        out.injections.push_back(ModuleMap(parts[pi], sum, 0, std::move(inj)));
        out.projections.push_back(ModuleMap(sum, parts[pi], 0, std::move(prj)));
    }
    return out;
}

ModulePtr zero_module(const AlgebraPtr& a) {
    return GradedModule::make(a, {}, {});
}

ModulePtr structural_module(const AlgebraPtr& a, StructuralKind kind, int vertex) {
    check_internal(vertex >= 0 && vertex < a->num_vertices(), "unknown vertex");
    const Field& f = a->field();
    if (kind == StructuralKind::Simple) {
        return GradedModule::make(a, {Slot{vertex, 0, 1}}, {});
    }
    const auto& p = a->presentation();
    if (kind == StructuralKind::Projective) {
        // basis: algebra elements with source `vertex`, slot (dst, degree)
        std::map<std::pair<int, int>, std::vector<int>> members; // (v,d) -> basis indices
        for (int d = 0; d <= a->max_degree(); ++d)
            for (int k = 0; k < a->dim(d); ++k)
                if (a->basis_info(d, k).src == vertex)
                    members[{a->basis_info(d, k).dst, d}].push_back(k);
        std::vector<Slot> slots;
        for (const auto& [k, v] : members)
            slots.push_back(Slot{k.first, k.second, static_cast<int>(v.size())});
        std::map<std::pair<int, int>, Matrix> actions;
        for (const auto& [key, srcs] : members) {
            auto [v, d] = key;
            for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
                if (p.arrows[ai].src != v) continue;
                int td = d + p.arrows[ai].degree;
                auto itt = members.find({p.arrows[ai].dst, td});
                if (itt == members.end()) continue;
                Matrix act(static_cast<int>(itt->second.size()), static_cast<int>(srcs.size()), f);
                // arrow coordinates in A_deg
                Matrix acoords(a->dim(p.arrows[ai].degree), 1, f);
                for (int kk = 0; kk < a->dim(p.arrows[ai].degree); ++kk) {
                    const auto& bi = a->basis_info(p.arrows[ai].degree, kk);
                    const QuiverPath& q = a->paths(p.arrows[ai].degree)[bi.path_index];
                    if (q.word.size() == 1 && q.word[0] == ai) acoords.set(kk, 0, Scalar(1));
                }
                bool nz = false;
                for (size_t c = 0; c < srcs.size(); ++c) {
                    Matrix x(a->dim(d), 1, f);
                    x.set(srcs[c], 0, Scalar(1));
                    Matrix prod = a->multiply(p.arrows[ai].degree, acoords, d, x);
                    for (size_t r = 0; r < itt->second.size(); ++r) {
                        const Scalar& cv = prod.at(itt->second[r], 0);
                        if (sgn(cv) != 0) {
                            act.set(static_cast<int>(r), static_cast<int>(c), cv);
                            nz = true;
                        }
                    }
                }
                if (nz) actions[{ai, d}] = act;
            }
        }
        return GradedModule::make(a, slots, std::move(actions));
    }
    // Injective: dual of the right projective e_vertex A.
    // slot (v, -d) is dual to the span of elements with src v, dst vertex, degree d
    std::map<std::pair<int, int>, std::vector<int>> members; // (v, d>=0) -> basis indices
    for (int d = 0; d <= a->max_degree(); ++d)
        for (int k = 0; k < a->dim(d); ++k)
            if (a->basis_info(d, k).dst == vertex)
                members[{a->basis_info(d, k).src, d}].push_back(k);
    std::vector<Slot> slots;
    for (const auto& [k, v] : members)
        slots.push_back(Slot{k.first, -k.second, static_cast<int>(v.size())});
    std::map<std::pair<int, int>, Matrix> actions;
    const auto& pres = p;
    for (const auto& [key, cols] : members) {
        auto [u, d] = key; // action of arrow u -> w maps slot (u, -d) to (w, -d + e)
        for (int ai = 0; ai < static_cast<int>(pres.arrows.size()); ++ai) {
            if (pres.arrows[ai].src != u) continue;
            int e = pres.arrows[ai].degree;
            int w = pres.arrows[ai].dst;
            auto itt = members.find({w, d - e});
            if (itt == members.end()) continue;
            // (ar.phi)(y) = phi(y ∘ ar) for y with src w, deg d-e
            Matrix act(static_cast<int>(itt->second.size()), static_cast<int>(cols.size()), f);
            Matrix acoords(a->dim(e), 1, f);
            for (int kk = 0; kk < a->dim(e); ++kk) {
                const auto& bi = a->basis_info(e, kk);
                const QuiverPath& q = a->paths(e)[bi.path_index];
                if (q.word.size() == 1 && q.word[0] == ai) acoords.set(kk, 0, Scalar(1));
            }
            bool nz = false;
            for (size_t r = 0; r < itt->second.size(); ++r) {
                Matrix y(a->dim(d - e), 1, f);
                y.set(itt->second[r], 0, Scalar(1));
                Matrix prod = a->multiply(d - e, y, e, acoords); // y ∘ ar
                for (size_t c = 0; c < cols.size(); ++c) {
                    const Scalar& cv = prod.at(cols[c], 0);
                    if (sgn(cv) != 0) {
                        act.set(static_cast<int>(r), static_cast<int>(c), cv);
                        nz = true;
                    }
                }
            }
            if (nz) actions[{ai, -d}] = act;
        }
    }
    return GradedModule::make(a, slots, std::move(actions));
}

std::map<int, std::vector<ModuleMap>> hom_graded(const ModulePtr& M, const ModulePtr& N) {
    check_internal(M->algebra().get() == N->algebra().get(), "hom between different algebras");
    std::map<int, std::vector<ModuleMap>> out;
    if (M->is_zero() || N->is_zero()) return out;
    int lo = N->min_degree() - M->max_degree();
    int hi = N->max_degree() - M->min_degree();
    for (int j = lo; j <= hi; ++j) {
        auto basis = hom_graded_shift(M, N, j);
        if (!basis.empty()) out[j] = std::move(basis);
    }
    return out;
}

std::vector<ModuleMap> hom_graded_shift(const ModulePtr& M, const ModulePtr& N, int shift) {
    const Field& f = M->algebra()->field();
    const auto& p = M->algebra()->presentation();
    // unknowns: blocks (v, d) with both M_(v,d) and N_(v,d+shift) nonzero
    struct Unk {
        int v, d, rows, cols, offset;
    };
    std::vector<Unk> unknowns;
    int total = 0;
    for (const auto& s : M->slots()) {
        int tc = N->slot_dim(s.vertex, s.degree + shift);
        if (tc == 0) continue;
        unknowns.push_back({s.vertex, s.degree, tc, s.dim, total});
        total += tc * s.dim;
    }
    if (total == 0) return {};
    auto find_unk = [&](int v, int d) -> const Unk* {
        for (const auto& u : unknowns)
            if (u.v == v && u.d == d) return &u;
        return nullptr;
    };
    // constraints: for each arrow and degree, f_tgt * M_a = N_a * f_src
    std::vector<Matrix> rows;
    for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
        const Arrow& ar = p.arrows[ai];
        for (const auto& s : M->slots()) {
            if (s.vertex != ar.src) continue;
            int d = s.degree;
            int crows = N->slot_dim(ar.dst, d + ar.degree + shift);
            if (crows == 0) continue;
            const Unk* usrc = find_unk(ar.src, d);
            const Unk* utgt = find_unk(ar.dst, d + ar.degree);
            if (!usrc && !utgt) continue;
            Matrix ma = M->action(ai, d);                  // (j,d+e) x (i,d)
            Matrix na = N->action(ai, d + shift);          // N(j,...) x N(i, d+shift)
            // one linear constraint per (target row, source col)
            for (int r = 0; r < crows; ++r)
                for (int c = 0; c < s.dim; ++c) {
                    Matrix row(1, total, f);
                    bool nz = false;
                    if (utgt)
                        for (int k = 0; k < utgt->cols; ++k) {
                            // f_tgt(r, k) * ma(k, c)
                            if (ma.rows() && sgn(ma.at(k, c)) != 0) {
                                row.set(0, utgt->offset + r * utgt->cols + k, ma.at(k, c));
                                nz = true;
                            }
                        }
                    if (usrc)
                        for (int k = 0; k < usrc->rows; ++k) {
                            // - na(r, k) * f_src(k, c)
                            if (na.rows() && sgn(na.at(r, k)) != 0) {
                                int idx = usrc->offset + k * usrc->cols + c;
                                row.set(0, idx, f.sub(row.at(0, idx), na.at(r, k)));
                                nz = true;
                            }
                        }
                    if (nz) rows.push_back(std::move(row));
                }
        }
    }
    Matrix cons(0, total, f);
    for (const auto& r : rows) cons = cons.vstack(r);
    Matrix ker = cons.rows() == 0 ? Matrix::identity(total, f) : kernel_basis(cons);
    std::vector<ModuleMap> out;
    for (int c = 0; c < ker.cols(); ++c) {
        std::map<std::pair<int, int>, Matrix> blocks;
        for (const auto& u : unknowns) {
            Matrix b(u.rows, u.cols, f);
            bool nz = false;
            for (int r = 0; r < u.rows; ++r)
                for (int cc = 0; cc < u.cols; ++cc) {
                    const Scalar& v = ker.at(u.offset + r * u.cols + cc, c);
                    if (sgn(v) != 0) {
                        b.set(r, cc, v);
                        nz = true;
                    }
                }
            if (nz) blocks[{u.v, u.d}] = b;
        }
        out.push_back(ModuleMap(M, N, shift, std::move(blocks)));
    }
    return out;
}

int hom_total_dim(const ModulePtr& M, const ModulePtr& N) {
    int t = 0;
    for (const auto& [j, basis] : hom_graded(M, N)) t += static_cast<int>(basis.size());
    return t;
}

SlotSpace radical_space(const GradedModule& M) {
    const auto& p = M.algebra()->presentation();
    SlotSpace out;
    for (const auto& s : M.slots()) {
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            if (p.arrows[ai].src != s.vertex) continue;
            Matrix img = M.action(ai, s.degree);
            if (img.rows() == 0 || img.is_zero()) continue;
            out = slotspace_sum(
                out, {{{p.arrows[ai].dst, s.degree + p.arrows[ai].degree}, img}});
        }
    }
    return slotspace_canonical(out, M);
}

SlotSpace socle_space(const GradedModule& M) {
    const Field& f = M.algebra()->field();
    const auto& p = M.algebra()->presentation();
    SlotSpace out;
    for (const auto& s : M.slots()) {
        Matrix stack(0, s.dim, f);
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            if (p.arrows[ai].src != s.vertex) continue;
            Matrix a = M.action(ai, s.degree);
            if (a.rows() > 0) stack = stack.vstack(a);
        }
        Matrix k = stack.rows() == 0 ? Matrix::identity(s.dim, f) : kernel_basis(stack);
        if (k.cols() > 0) out[{s.vertex, s.degree}] = k;
    }
    return out;
}

int socle_multiplicity(const SlotSpace& s, int vertex) {
    int t = 0;
    for (const auto& [k, m] : s)
        if (k.first == vertex) t += rank_rref(m.transpose()).rank;
    return t;
}

LoewyData loewy_data(const ModulePtr& M) {
    LoewyData out;
    // radical series via repeated application of the arrows
    SlotSpace cur;
    for (const auto& s : M->slots())
        cur[{s.vertex, s.degree}] = Matrix::identity(s.dim, M->algebra()->field());
    out.radical_series.push_back(cur);
    while (slotspace_dim(out.radical_series.back()) > 0) {
        const SlotSpace& prev = out.radical_series.back();
        const auto& p = M->algebra()->presentation();
        SlotSpace next;
        for (const auto& [key, mat] : prev) {
            auto [v, d] = key;
            for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
                if (p.arrows[ai].src != v) continue;
                Matrix img = M->action(ai, d) * mat;
                if (img.rows() == 0 || img.is_zero()) continue;
                next = slotspace_sum(next, {{{p.arrows[ai].dst, d + p.arrows[ai].degree}, img}});
            }
        }
        out.radical_series.push_back(slotspace_canonical(next, *M));
    }
    out.loewy_length = static_cast<int>(out.radical_series.size()) - 1;

    // socle series: soc^{k+1} = preimage of soc(M / soc^k)
    const Field& f = M->algebra()->field();
    const auto& p = M->algebra()->presentation();
    std::vector<SlotSpace> socs;
    socs.push_back({});
    while (true) {
        const SlotSpace& prev = socs.back();
        SlotSpace next;
        for (const auto& s : M->slots()) {
            // vectors x with a.x in prev for all arrows a
            Matrix stack(0, s.dim, f);
            for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
                if (p.arrows[ai].src != s.vertex) continue;
                Matrix a = M->action(ai, s.degree);
                if (a.rows() == 0) continue;
                auto tkey =
                    std::make_pair(p.arrows[ai].dst, s.degree + p.arrows[ai].degree);
                auto it = prev.find(tkey);
                if (it == prev.end()) {
                    stack = stack.vstack(a);
                } else {
                    // quotient map by prev's component, applied after a
                    RrefResult rr = rank_rref(it->second.transpose());
                    std::vector<bool> isp(a.rows(), false);
                    for (int c : rr.pivot_cols) isp[c] = true;
                    int qd = a.rows() - rr.rank;
                    if (qd == 0) continue;
                    Matrix pm(qd, a.rows(), f);
                    int row = 0;
                    for (int c = 0; c < a.rows(); ++c) {
                        if (isp[c]) continue;
                        pm.set(row, c, Scalar(1));
                        for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
                            pm.set(row, rr.pivot_cols[pi],
                                   f.neg(rr.rref.at(static_cast<int>(pi), c)));
                        ++row;
                    }
                    stack = stack.vstack(pm * a);
                }
            }
            Matrix k = stack.rows() == 0 ? Matrix::identity(s.dim, f) : kernel_basis(stack);
            if (k.cols() > 0) next[{s.vertex, s.degree}] = k;
        }
        next = slotspace_canonical(next, *M);
        if (slotspace_dim(next) == slotspace_dim(prev)) break;
        socs.push_back(next);
        if (slotspace_dim(next) == M->total_dim()) break;
    }
    out.socle_series = socs;

    // rigid iff rad^k = soc^{ll-k} for all k
    int ll = out.loewy_length;
    out.is_rigid = static_cast<int>(socs.size()) - 1 == ll;
    if (out.is_rigid)
        for (int k = 0; k <= ll && out.is_rigid; ++k) {
            const SlotSpace& radk = out.radical_series[k];
            const SlotSpace& sock = out.socle_series[ll - k];
            if (!slotspace_equal(radk, sock, *M)) out.is_rigid = false;
        }
    for (const auto& s : M->slots()) out.graded_layer_dims[s.degree] += s.dim;
    return out;
}

SubmoduleResult trace_submodule(const ModulePtr& M, const ModulePtr& N) {
    SlotSpace span;
    for (const auto& [j, basis] : hom_graded(M, N))
        for (const auto& f : basis) span = slotspace_sum(span, f.image());
    return submodule(N, slotspace_canonical(span, *N));
}

ModulePtr dualize(const ModulePtr& M, const AlgebraPtr& opp) {
    const auto& p = M->algebra()->presentation();
    check_internal(static_cast<int>(opp->presentation().arrows.size()) == static_cast<int>(p.arrows.size()),
                   "dualize: opposite algebra arrow mismatch");
    std::vector<Slot> slots;
    for (const auto& s : M->slots()) slots.push_back(Slot{s.vertex, -s.degree, s.dim});
    std::map<std::pair<int, int>, Matrix> actions;
    for (const auto& s : M->slots()) {
        for (int ai = 0; ai < static_cast<int>(p.arrows.size()); ++ai) {
            if (p.arrows[ai].src != s.vertex) continue;
            Matrix a = M->action(ai, s.degree);
            if (a.rows() == 0 || a.is_zero()) continue;
            // opp arrow ai maps (dst, -(d+e)) -> (src, -d), matrix a^T
            actions[{ai, -(s.degree + p.arrows[ai].degree)}] = a.transpose();
        }
    }
    return GradedModule::make(opp, slots, std::move(actions));
}

ModuleMap dualize_map(const ModuleMap& f, const ModulePtr& dualDst, const ModulePtr& dualSrc) {
    // D(f): D(N) -> D(M) with shift f.shift(): blocks are transposes
    std::map<std::pair<int, int>, Matrix> blocks;
    for (const auto& s : f.src()->slots()) {
        Matrix b = f.block(s.vertex, s.degree);
        if (b.rows() == 0 || b.cols() == 0 || b.is_zero()) continue;
        blocks[{s.vertex, -(s.degree + f.shift())}] = b.transpose();
    }
    return ModuleMap(dualDst, dualSrc, f.shift(), std::move(blocks));
}

} // namespace qhcalc
