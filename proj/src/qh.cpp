#include <algorithm>

#include "qhcalc/session.hpp"

namespace qhcalc {

int Filtration::count(int vertex) const {
    int c = 0;
    for (const auto& l : layers)
        if (l.vertex == vertex) ++c;
    return c;
}

int Filtration::count(int vertex, int shift) const {
    int c = 0;
    for (const auto& l : layers)
        if (l.vertex == vertex && l.shift == shift) ++c;
    return c;
}

int Filtration::total_layer_dim(const std::vector<ModulePtr>& ref) const {
    int t = 0;
    for (const auto& l : layers) t += ref[l.vertex]->total_dim();
    return t;
}

Session::Session(AlgebraPtr a, unsigned long seed)
    : a_(std::move(a)), seed_(seed), rng_(seed) {}

Session::~Session() = default;

const AlgebraPtr& Session::opp_algebra() {
    if (!aop_) aop_ = opposite(a_);
    return aop_;
}

Session& Session::op() {
    if (!op_) {
        op_ = std::make_unique<Session>(opp_algebra(), seed_);
        op_->aop_ = a_; // share so that double duals land on the same object
    }
    return *op_;
}

ModulePtr Session::simple(int i) {
    auto it = simple_.find(i);
    if (it != simple_.end()) return it->second;
    return simple_[i] = structural_module(a_, StructuralKind::Simple, i);
}

ModulePtr Session::projective(int i) {
    auto it = proj_.find(i);
    if (it != proj_.end()) return it->second;
    return proj_[i] = structural_module(a_, StructuralKind::Projective, i);
}

ModulePtr Session::injective(int i) {
    auto it = inj_.find(i);
    if (it != inj_.end()) return it->second;
    return inj_[i] = structural_module(a_, StructuralKind::Injective, i);
}

ModulePtr Session::standard(int i) {
    auto it = std_.find(i);
    if (it != std_.end()) return it->second;
    check_internal(i >= 0 && i < n(), "unknown vertex");
    ModulePtr P = projective(i);
    SlotSpace tr;
    for (int j = i + 1; j < n(); ++j)
        for (const auto& [shift, basis] : hom_graded(projective(j), P))
            for (const auto& f : basis) tr = slotspace_sum(tr, f.image());
    auto q = quotient_module(P, slotspace_canonical(tr, *P));
    return std_[i] = q.module;
}

ModulePtr Session::costandard(int i) {
    auto it = costd_.find(i);
    if (it != costd_.end()) return it->second;
    ModulePtr d = op().standard(i);
    return costd_[i] = dualize(d, a_);
}

std::optional<Filtration> Session::filtration(const ModulePtr& M, FiltKind kind) {
    if (kind == FiltKind::Costandard) {
        // dual route: Δ-filtration of D(M) over the opposite algebra
        ModulePtr D = dualize(M, opp_algebra());
        auto f = op().filtration(D, FiltKind::Standard);
        if (!f) return std::nullopt;
        Filtration out;
        out.kind = FiltKind::Costandard;
        out.module = M;
        for (const auto& l : f->layers) out.layers.push_back({l.vertex, -l.shift});
        return out;
    }
    Filtration out;
    out.kind = FiltKind::Standard;
    out.module = M;
    // greedy extraction: trace of P(j) for the largest j with e_j-part present
    ModulePtr cur = M;
    ModuleMap pi = ModuleMap::identity(M); // M -> cur
    SlotSpace killed;                      // subspace of M mapped to 0 so far
    int guard = 0;
    while (!cur->is_zero()) {
        check_internal(++guard < 1000, "filtration loop guard");
        int j = -1;
        for (int v = n() - 1; v >= 0; --v)
            if (cur->vertex_dim(v) > 0) {
                j = v;
                break;
            }
        auto tr = trace_submodule(projective(j), cur);
        if (tr.module->is_zero()) return std::nullopt;
        auto pieces = decompose(tr.module, rng_);
        ModulePtr delta = standard(j);
        for (const auto& pc : pieces) {
            auto iso = iso_shift_test(pc.piece, delta);
            if (!iso) return std::nullopt;
            // pc sits in cur as pc.piece<pc.shift>; layer = Δ(j)<pc.shift - iso->shift>?
            // pc.piece ≅ Δ(j)<t> with t = iso->shift, so the summand is Δ(j)<t + pc.shift>
            out.layers.push_back({j, iso->shift + pc.shift});
        }
        // record the chain witness: preimage in M of the trace inside cur
        SlotSpace trace_in_cur;
        for (const auto& s : tr.module->slots()) {
            Matrix b = tr.inclusion.block(s.vertex, s.degree);
            if (b.rows() && b.cols())
                trace_in_cur[{s.vertex, s.degree}] = b;
        }
        // preimage under pi of trace_in_cur, slot-wise
        SlotSpace pre;
        const Field& fld = a_->field();
        for (const auto& s : M->slots()) {
            Matrix blk = pi.block(s.vertex, s.degree);
            auto itT = trace_in_cur.find({s.vertex, s.degree});
            if (blk.rows() == 0) {
                pre[{s.vertex, s.degree}] = Matrix::identity(s.dim, fld);
                continue;
            }
            Matrix target = itT == trace_in_cur.end() ? Matrix(blk.rows(), 0, fld) : itT->second;
            // v with blk v in span(target): kernel of (complement-projection ∘ blk)
            RrefResult rr = rank_rref(target.transpose());
            std::vector<bool> isp(blk.rows(), false);
            for (int c : rr.pivot_cols) isp[c] = true;
            int qd = blk.rows() - rr.rank;
            if (qd == 0) {
                pre[{s.vertex, s.degree}] = Matrix::identity(s.dim, fld);
                continue;
            }
            Matrix pm(qd, blk.rows(), fld);
            int row = 0;
            for (int c = 0; c < blk.rows(); ++c) {
                if (isp[c]) continue;
                pm.set(row, c, Scalar(1));
                for (size_t piv = 0; piv < rr.pivot_cols.size(); ++piv)
                    pm.set(row, rr.pivot_cols[piv], fld.neg(rr.rref.at(static_cast<int>(piv), c)));
                ++row;
            }
            Matrix ker = kernel_basis(pm * blk);
            if (ker.cols() > 0) pre[{s.vertex, s.degree}] = ker;
        }
        killed = slotspace_canonical(pre, *M);
        out.chain.push_back(killed);
        auto q = quotient_module(cur, tr.inclusion.image());
        pi = q.projection.compose(pi);
        cur = q.module;
    }
    // accounting: layer dims must sum to dim M
    int t = 0;
    for (const auto& l : out.layers) t += standard(l.vertex)->total_dim();
    if (t != M->total_dim()) return std::nullopt;
    return out;
}

const QhVerdict& Session::verify_qh() {
    if (qh_) return *qh_;
    QhVerdict v;
    v.ok = true;
    for (int i = 0; i < n() && v.ok; ++i) {
        ModulePtr d = standard(i);
        if (d->vertex_dim(i) != 1) {
            v.ok = false;
            v.failing_vertex = i;
            v.reason = "[Δ(i):L(i)] = " + std::to_string(d->vertex_dim(i));
            break;
        }
        // kernel of P(i) ->> Δ(i) must be filtered by Δ(j), j > i
        ModulePtr P = projective(i);
        SlotSpace tr;
        for (int j = i + 1; j < n(); ++j)
            for (const auto& [shift, basis] : hom_graded(projective(j), P))
                for (const auto& f : basis) tr = slotspace_sum(tr, f.image());
        auto K = submodule(P, slotspace_canonical(tr, *P));
        auto f = filtration(K.module, FiltKind::Standard);
        if (!f) {
            v.ok = false;
            v.failing_vertex = i;
            v.reason = "kernel of P(i) -> Δ(i) has no Δ-filtration";
            break;
        }
        for (const auto& l : f->layers)
            if (l.vertex <= i) {
                v.ok = false;
                v.failing_vertex = i;
                v.reason = "kernel filtration reaches Δ(j) with j <= i";
                break;
            }
        if (v.ok) v.kernel_filtrations.push_back(std::move(*f));
    }
    qh_ = std::move(v);
    return *qh_;
}

void Session::require_qh() {
    if (!verify_qh().ok)
        throw PreconditionFailed("algebra is not quasi-hereditary (vertex " +
                                 std::to_string(verify_qh().failing_vertex + 1) +
                                 ": " + verify_qh().reason + ")");
}

std::vector<BggRow> Session::bgg_check() {
    require_qh();
    std::vector<BggRow> rows;
    for (int i = 0; i < n(); ++i) {
        auto fi = filtration(injective(i), FiltKind::Costandard);
        if (!fi) throw InternalError("injective of a QH algebra has no costandard filtration");
        for (int j = 0; j < n(); ++j) {
            BggRow r;
            r.i = i;
            r.j = j;
            r.inj_costd_mult = fi->count(j);
            r.std_simple_mult = standard(j)->vertex_dim(i);
            r.equal = r.inj_costd_mult == r.std_simple_mult;
            rows.push_back(r);
        }
    }
    return rows;
}

LabeledHomBasis labeled_homs(const ModulePtr& M, const ModulePtr& N) {
    LabeledHomBasis out;
    for (const auto& [j, basis] : hom_graded(M, N))
        for (size_t k = 0; k < basis.size(); ++k) {
            out.maps.push_back(basis[k]);
            out.labels.push_back("shift " + std::to_string(j) + " #" + std::to_string(k));
        }
    return out;
}

} // namespace qhcalc
