#include <algorithm>

#include "qhcalc/gmodule.hpp"

namespace qhcalc {

namespace {

// an endomorphism as square blocks per slot
using Blocks = std::map<std::pair<int, int>, Matrix>;

Blocks endo_blocks(const ModuleMap& f) {
    Blocks out;
    for (const auto& s : f.src()->slots()) out[{s.vertex, s.degree}] = f.block(s.vertex, s.degree);
    return out;
}

Blocks endo_identity(const GradedModule& m) {
    Blocks out;
    for (const auto& s : m.slots())
        out[{s.vertex, s.degree}] = Matrix::identity(s.dim, m.algebra()->field());
    return out;
}

Blocks endo_mul(const Blocks& a, const Blocks& b) {
    Blocks out;
    for (const auto& [k, m] : a) out[k] = m * b.at(k);
    return out;
}

Blocks endo_add_scaled(const Blocks& a, const Blocks& b, const Scalar& c, const Field& f) {
    Blocks out;
    for (const auto& [k, m] : a) out[k] = m + b.at(k).scaled(c);
    (void)f;
    return out;
}

std::vector<Scalar> endo_vectorize(const Blocks& a) {
    std::vector<Scalar> v;
    for (const auto& [k, m] : a)
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) v.push_back(m.at(r, c));
    return v;
}

// monic minimal polynomial (low to high coefficients, last = 1)
std::vector<Scalar> minimal_polynomial(const Blocks& x, const GradedModule& m) {
    const Field& f = m.algebra()->field();
    std::vector<Blocks> powers = {endo_identity(m)};
    while (true) {
        // try to express the next power in terms of the previous ones
        Blocks next = endo_mul(powers.back(), x);
        auto nv = endo_vectorize(next);
        Matrix lhs(static_cast<int>(nv.size()), static_cast<int>(powers.size()), f);
        for (size_t c = 0; c < powers.size(); ++c) {
            auto pv = endo_vectorize(powers[c]);
            for (size_t r = 0; r < pv.size(); ++r)
                lhs.set(static_cast<int>(r), static_cast<int>(c), pv[r]);
        }
        Matrix rhs(static_cast<int>(nv.size()), 1, f);
        for (size_t r = 0; r < nv.size(); ++r) rhs.set(static_cast<int>(r), 0, nv[r]);
        if (auto sol = solve(lhs, rhs)) {
            std::vector<Scalar> out(powers.size() + 1);
            for (size_t i = 0; i < powers.size(); ++i) out[i] = f.neg(sol->at(static_cast<int>(i), 0));
            out[powers.size()] = Scalar(1);
            return out;
        }
        powers.push_back(std::move(next));
        check_internal(powers.size() <= 4096, "runaway minimal polynomial computation");
    }
}

Scalar poly_eval(const std::vector<Scalar>& p, const Scalar& x, const Field& f) {
    Scalar acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    return acc;
}

using Poly = std::vector<Scalar>; // low to high

Poly poly_trim(Poly p, const Field& f) {
    while (!p.empty() && f.is_zero(p.back())) p.pop_back();
    return p;
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_monic(Poly p, const Field& f) {
    p = poly_trim(std::move(p), f);
    if (p.empty()) return p;
    Scalar inv = f.inv(p.back());
    for (auto& c : p) c = f.mul(c, inv);
    return p;
}

Poly poly_derivative(const Poly& p, const Field& f) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(f.mul(p[i], f.from_long(static_cast<long>(i))));
    return poly_trim(std::move(d), f);
}

std::pair<Poly, Poly> poly_divmod(const Poly& a0, const Poly& b0, const Field& f) {
    Poly a = poly_trim(a0, f), b = poly_trim(b0, f);
    check_internal(!b.empty(), "polynomial division by zero");
    Poly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Scalar(0));
    Scalar lead = f.inv(b.back());
    while (poly_deg(a) >= poly_deg(b) && !a.empty()) {
        int shiftd = poly_deg(a) - poly_deg(b);
        Scalar c = f.mul(a.back(), lead);
        q[shiftd] = f.add(q[shiftd], c);
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shiftd] = f.sub(a[i + shiftd], f.mul(c, b[i]));
        a = poly_trim(std::move(a), f);
    }
    return {poly_trim(std::move(q), f), a};
}

Poly poly_gcd(Poly a, Poly b, const Field& f) {
    a = poly_trim(std::move(a), f);
    b = poly_trim(std::move(b), f);
    while (!b.empty()) {
        Poly r = poly_divmod(a, b, f).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(std::move(a), f);
}

Poly poly_mul(const Poly& a, const Poly& b, const Field& f) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    return out;
}

Poly poly_pow(const Poly& a, int n, const Field& f) {
    Poly out = {Scalar(1)};
    for (int i = 0; i < n; ++i) out = poly_mul(out, a, f);
    return out;
}

// Yun's squarefree decomposition m = prod s_i^i (monic); reliable in char 0,
// in char p only used when the derivative is nonzero
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& m, const Field& f) {
    std::vector<std::pair<Poly, int>> parts;
    Poly mm = poly_monic(m, f);
    Poly d = poly_derivative(mm, f);
    if (d.empty()) return {{mm, 1}}; // char p edge: treat as one block
    Poly g = poly_gcd(mm, d, f);
    if (poly_deg(g) == 0) return {{mm, 1}};
    Poly w = poly_divmod(mm, g, f).first;
    int i = 1;
    while (poly_deg(w) > 0) {
        Poly y = poly_gcd(w, g, f);
        Poly si = poly_divmod(w, y, f).first;
        if (poly_deg(si) > 0) parts.push_back({si, i});
        g = poly_divmod(g, y, f).first;
        w = std::move(y);
        ++i;
        if (i > 512) break;
    }
    return parts;
}

Blocks poly_at(const std::vector<Scalar>& p, const Blocks& x, const GradedModule& m) {
    const Field& f = m.algebra()->field();
    Blocks acc;
    for (const auto& [k, mat] : x)
        acc[k] = Matrix(mat.rows(), mat.cols(), f);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = endo_mul(acc, x);
        Blocks id = endo_identity(m);
        acc = endo_add_scaled(acc, id, *it, f);
    }
    return acc;
}

std::vector<mpz_class> divisors_capped(const mpz_class& n0, size_t cap) {
    mpz_class n = abs(n0);
    std::vector<mpz_class> out = {1};
    if (n == 0) return out;
    mpz_class d(1);
    for (d = 1; d * d <= n && out.size() < cap; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// rational roots of a polynomial over Q (or roots in F_p for small p)
std::vector<Scalar> field_roots(const std::vector<Scalar>& p, const Field& f,
                                std::mt19937_64& rng) {
    std::vector<Scalar> roots;
    if (!f.is_rationals()) {
        unsigned long pr = f.characteristic();
        if (pr <= 257) {
            for (unsigned long v = 0; v < pr; ++v) {
                Scalar x = f.from_long(static_cast<long>(v));
                if (f.is_zero(poly_eval(p, x, f))) roots.push_back(x);
            }
        } else {
            std::uniform_int_distribution<long> dist(0, static_cast<long>(pr) - 1);
            for (int t = 0; t < 64; ++t) {
                Scalar x = f.from_long(dist(rng));
                if (f.is_zero(poly_eval(p, x, f))) roots.push_back(x);
            }
            std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) {
                return a < b;
            });
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        }
        return roots;
    }
    // clear denominators, enumerate p/q candidates
    mpz_class lcm(1);
    for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : p) ic.push_back(mpq_class(c * mpq_class(lcm)).get_num());
    // strip trailing zero constant coefficients: 0 is a root then
    if (ic[0] == 0) roots.push_back(Scalar(0));
    size_t lowest = 0;
    while (lowest < ic.size() && ic[lowest] == 0) ++lowest;
    if (lowest >= ic.size() - 1) return roots;
    auto nums = divisors_capped(ic[lowest], 4000);
    auto dens = divisors_capped(ic.back(), 4000);
    for (const auto& nu : nums)
        for (const auto& de : dens)
            for (int sign : {1, -1}) {
                Scalar cand(sign * nu, de);
                cand.canonicalize();
                if (f.is_zero(poly_eval(p, cand, f))) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

SlotSpace endo_kernel_space(const Blocks& a, const GradedModule& m) {
    SlotSpace out;
    for (const auto& [k, mat] : a) {
        Matrix kb = kernel_basis(mat);
        if (kb.cols() > 0) out[k] = kb;
    }
    return slotspace_canonical(out, m);
}

// Splits M along an endomorphism whenever its minimal polynomial admits a
// coprime factorization m = F G (then M = ker F(x) ⊕ ker G(x), both graded
// submodules since x is a degree-0 endomorphism).
std::optional<std::pair<SlotSpace, SlotSpace>> try_split(const Blocks& x, const GradedModule& m,
                                                         std::mt19937_64& rng) {
    const Field& f = m.algebra()->field();
    auto mp = minimal_polynomial(x, m);
    if (poly_deg(mp) <= 1) return std::nullopt;

    std::vector<std::pair<Poly, Poly>> factorizations;
    auto parts = squarefree_decomposition(mp, f);
    if (parts.size() >= 2) {
        Poly F = poly_pow(parts[0].first, parts[0].second, f);
        Poly G = poly_divmod(mp, F, f).first;
        factorizations.push_back({F, G});
    } else if (parts.size() == 1 && poly_deg(parts[0].first) > 1) {
        // m = s^k with s squarefree; peel off a root of s when one is found
        const Poly& s = parts[0].first;
        int k = parts[0].second;
        for (const auto& lambda : field_roots(s, f, rng)) {
            Poly lin = {f.neg(lambda), Scalar(1)};
            Poly F = poly_pow(lin, k, f);
            Poly rest = poly_divmod(s, lin, f).first;
            Poly G = poly_pow(rest, k, f);
            factorizations.push_back({F, G});
            break;
        }
    }
    for (const auto& [F, G] : factorizations) {
        SlotSpace u = endo_kernel_space(poly_at(F, x, m), m);
        SlotSpace v = endo_kernel_space(poly_at(G, x, m), m);
        int du = slotspace_dim(u), dv = slotspace_dim(v);
        check_internal(du + dv == m.total_dim(), "coprime split dimensions do not add up");
        if (du > 0 && dv > 0) return std::make_pair(u, v);
    }
    return std::nullopt;
}

// structure constants of End_0 and its trace-form radical (char 0)
int semisimple_quotient_dim(const std::vector<ModuleMap>& basis, const Field& f) {
    const int r = static_cast<int>(basis.size());
    if (r == 0) return 0;
    // coordinates of f_i ∘ f_j in the basis
    auto vecof = [&](const ModuleMap& g) {
        std::vector<Scalar> v;
        for (const auto& s : g.src()->slots()) {
            Matrix b = g.block(s.vertex, s.degree);
            for (int rr = 0; rr < b.rows(); ++rr)
                for (int cc = 0; cc < b.cols(); ++cc) v.push_back(b.at(rr, cc));
        }
        return v;
    };
    auto v0 = vecof(basis[0]);
    Matrix bmat(static_cast<int>(v0.size()), r, f);
    for (int j = 0; j < r; ++j) {
        auto v = vecof(basis[j]);
        for (size_t i = 0; i < v.size(); ++i) bmat.set(static_cast<int>(i), j, v[i]);
    }
    std::vector<Matrix> left(r, Matrix(r, r, f)); // L_i in basis coords
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            auto v = vecof(basis[i].compose(basis[j]));
            Matrix rhs(static_cast<int>(v.size()), 1, f);
            for (size_t t = 0; t < v.size(); ++t) rhs.set(static_cast<int>(t), 0, v[t]);
            auto sol = solve(bmat, rhs);
            check_internal(sol.has_value(), "endomorphism product outside span");
            for (int t = 0; t < r; ++t) left[i].set(t, j, sol->at(t, 0));
        }
    Matrix gram(r, r, f);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Matrix prod = left[i] * left[j];
            Scalar tr(0);
            for (int t = 0; t < r; ++t) tr = f.add(tr, prod.at(t, t));
            gram.set(i, j, tr);
        }
    return rank_rref(gram).rank;
}

} // namespace

int end0_mod_rad_dim(const ModulePtr& M) {
    if (!M->algebra()->field().is_rationals())
        throw FieldUnsupported("trace-form radical requires characteristic zero");
    auto basis = hom_graded_shift(M, M, 0);
    return semisimple_quotient_dim(basis, M->algebra()->field());
}

std::vector<DecompPiece> decompose(const ModulePtr& M, std::mt19937_64& rng) {
    const Field& f = M->algebra()->field();
    std::vector<DecompPiece> out;
    struct Work {
        ModulePtr mod;
        ModuleMap incl; // into the original M
    };
    std::vector<Work> stack;
    if (!M->is_zero()) stack.push_back({M, ModuleMap::identity(M)});
    while (!stack.empty()) {
        Work w = stack.back();
        stack.pop_back();
        auto basis = hom_graded_shift(w.mod, w.mod, 0);
        std::optional<std::pair<SlotSpace, SlotSpace>> split;
        if (basis.size() > 1) {
            std::vector<Blocks> cands;
            for (const auto& g : basis) cands.push_back(endo_blocks(g));
            std::uniform_int_distribution<int> coeff(-2, 2);
            for (int t = 0; t < 40; ++t) {
                Blocks acc;
                for (const auto& s : w.mod->slots())
                    acc[{s.vertex, s.degree}] = Matrix(s.dim, s.dim, f);
                for (const auto& g : basis)
                    acc = endo_add_scaled(acc, endo_blocks(g), f.from_long(coeff(rng)), f);
                cands.push_back(std::move(acc));
            }
            for (const auto& x : cands) {
                split = try_split(x, *w.mod, rng);
                if (split) break;
            }
            if (!split && f.is_rationals()) {
                // certify indecomposability or give up
                int ssdim = semisimple_quotient_dim(basis, f);
                if (ssdim > 1)
                    throw FieldUnsupported(
                        "module does not split over Q within budget (End/rad dim " +
                        std::to_string(ssdim) + ")");
            } else if (!split && !f.is_rationals()) {
                throw FieldUnsupported("cannot certify indecomposability over F_p");
            }
        }
        if (split) {
            for (const SlotSpace& part : {split->first, split->second}) {
                auto sub = submodule(w.mod, part);
                stack.push_back({sub.module, w.incl.compose(sub.inclusion)});
            }
            continue;
        }
        // indecomposable: normalize the grading so the lowest degree is 0
        int m0 = w.mod->min_degree();
        ModulePtr norm = shift_module(w.mod, m0);
        ModulePtr back = shift_module(norm, -m0); // same slots as w.mod
        std::map<std::pair<int, int>, Matrix> blocks;
        for (const auto& s : w.mod->slots()) {
            Matrix b = w.incl.block(s.vertex, s.degree);
            if (b.rows() && b.cols()) blocks[{s.vertex, s.degree}] = b;
        }
        out.push_back(DecompPiece{norm, -m0, ModuleMap(back, w.incl.dst(), 0, std::move(blocks))});
    }
    return out;
}

std::vector<GroupedPiece> group_pieces(const std::vector<DecompPiece>& pieces,
                                       std::mt19937_64& rng) {
    (void)rng;
    std::vector<GroupedPiece> out;
    for (const auto& p : pieces) {
        bool merged = false;
        for (auto& g : out) {
            if (g.shift != p.shift) continue;
            if (g.piece->total_dim() != p.piece->total_dim()) continue;
            auto iso = iso_shift_test(g.piece, p.piece);
            if (iso && iso->shift == 0) {
                ++g.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(GroupedPiece{p.piece, 1, p.shift});
    }
    return out;
}

std::optional<IsoShift> iso_shift_test(const ModulePtr& M, const ModulePtr& N) {
    const Field& f = M->algebra()->field();
    if (M->total_dim() != N->total_dim()) return std::nullopt;
    if (M->is_zero()) return IsoShift{ModuleMap::zero(M, N, 0), 0};
    // the shift is pinned by the lowest degrees; check all slots line up
    int j = N->min_degree() - M->min_degree();
    for (const auto& s : M->slots())
        if (N->slot_dim(s.vertex, s.degree + j) != s.dim) return std::nullopt;
    for (const auto& s : N->slots())
        if (M->slot_dim(s.vertex, s.degree - j) != s.dim) return std::nullopt;
    auto basis = hom_graded_shift(M, N, j);
    if (basis.empty()) return std::nullopt;
    const int k = static_cast<int>(basis.size());

    auto is_invertible = [&](const std::vector<Scalar>& coeffs) -> std::optional<ModuleMap> {
        ModuleMap g = ModuleMap::zero(M, N, j);
        for (int i = 0; i < k; ++i) g = g + basis[i].scaled(coeffs[i]);
        for (const auto& s : M->slots()) {
            Matrix b = g.block(s.vertex, s.degree);
            if (rank_rref(b).rank != s.dim) return std::nullopt;
        }
        return g;
    };

    std::mt19937_64 rng(0x15031361u); // deterministic probe sequence
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < 60; ++t) {
        std::vector<Scalar> c(k);
        for (int i = 0; i < k; ++i) c[i] = f.from_long(t == 0 ? (i == 0 ? 1 : 0) : coeff(rng));
        if (auto g = is_invertible(c)) return IsoShift{*g, j};
    }
    // exact decision: the determinant polynomial has total degree <= total_dim,
    // so it vanishes identically iff it vanishes on a full (D+1)^k grid
    const long D = M->total_dim();
    double gridsize = 1;
    for (int i = 0; i < k; ++i) gridsize *= static_cast<double>(D + 1);
    check_internal(gridsize <= 5e6, "iso_shift_test: decision grid too large");
    std::vector<long> idx(k, 0);
    while (true) {
        std::vector<Scalar> c(k);
        for (int i = 0; i < k; ++i) c[i] = f.from_long(idx[i]);
        if (auto g = is_invertible(c)) return IsoShift{*g, j};
        int pos = 0;
        while (pos < k) {
            if (++idx[pos] <= D) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return std::nullopt;
}

} // namespace qhcalc
