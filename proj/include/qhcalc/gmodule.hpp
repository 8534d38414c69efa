#ifndef QHCALC_GMODULE_HPP
#define QHCALC_GMODULE_HPP

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qhcalc/algebra.hpp"

namespace qhcalc {

struct Slot {
    int vertex;
    int degree;
    int dim;
};

class GradedModule;
using ModulePtr = std::shared_ptr<const GradedModule>;

// Subspace of a graded module, stored slot-wise: (vertex, degree) -> matrix
// whose columns span the component in that slot.
using SlotSpace = std::map<std::pair<int, int>, Matrix>;

// Finite-dimensional graded left module over a GradedAlgebra, presented as a
// quiver representation: a vector space per (vertex, degree) and a matrix per
// arrow and degree. Arrow a: i -> j of degree e maps M_(i,d) to M_(j,d+e).
class GradedModule {
public:
    // Validates that every relation of the algebra acts by zero.
    static ModulePtr make(AlgebraPtr alg, std::vector<Slot> slots,
                          std::map<std::pair<int, int>, Matrix> actions);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Slot>& slots() const { return slots_; } // sorted by (degree, vertex)
    int slot_dim(int v, int d) const;
    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    int min_degree() const; // 0 for the zero module
    int max_degree() const;
    int vertex_dim(int v) const; // total dim of e_v M

    // action matrix of `arrow` out of degree d, shaped
    // slot_dim(dst, d+deg) x slot_dim(src, d); zero slots give 0-sized matrices
    Matrix action(int arrow, int d) const;
    // composite action of a path word starting at (src_vertex(word), d)
    Matrix act_word(const std::vector<int>& word, int d) const;
    // action of a homogeneous algebra element (coords in basis of degree ad)
    // from slot (v, d); zero matrix when the element cannot move (v, d)
    Matrix act_element(int ad, const Matrix& coords, int v, int d) const;

    friend ModulePtr shift_module(const ModulePtr& m, int s);

private:
    AlgebraPtr alg_;
    std::vector<Slot> slots_;
    std::map<std::pair<int, int>, Matrix> act_; // (arrow, src_degree) -> matrix
};

// Homogeneous module map of degree `shift`: blocks map M_(v,d) -> N_(v,d+shift).
class ModuleMap {
public:
    ModuleMap() = default;
    // Validates commutation with all arrow actions.
    ModuleMap(ModulePtr src, ModulePtr dst, int shift,
              std::map<std::pair<int, int>, Matrix> blocks);
    static ModuleMap zero(ModulePtr src, ModulePtr dst, int shift);
    static ModuleMap identity(const ModulePtr& m);

    const ModulePtr& src() const { return src_; }
    const ModulePtr& dst() const { return dst_; }
    int shift() const { return shift_; }
    // block out of M-slot (v, d), shaped slot_dim_N(v,d+shift) x slot_dim_M(v,d)
    Matrix block(int v, int d) const;

    ModuleMap compose(const ModuleMap& inner) const; // (*this) ∘ inner
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap scaled(const Scalar& c) const;
    bool operator==(const ModuleMap& o) const;
    bool is_zero() const;
    int rank() const;
    bool is_injective() const { return rank() == src_->total_dim(); }
    bool is_surjective() const { return rank() == dst_->total_dim(); }
    bool is_iso() const { return is_injective() && is_surjective(); }

    SlotSpace image() const;
    SlotSpace kernel() const;

private:
    ModulePtr src_, dst_;
    int shift_ = 0;
    std::map<std::pair<int, int>, Matrix> blocks_;
};

// ---- subspace helpers ----

int slotspace_dim(const SlotSpace& s);
// rref-chosen canonical basis per slot
SlotSpace slotspace_canonical(const SlotSpace& s, const GradedModule& ambient);
SlotSpace slotspace_sum(const SlotSpace& a, const SlotSpace& b);
bool slotspace_contains(const SlotSpace& big, const SlotSpace& small,
                        const GradedModule& ambient);
bool slotspace_equal(const SlotSpace& a, const SlotSpace& b, const GradedModule& ambient);
// close a slot-wise span under all arrow actions
SlotSpace close_under_action(const GradedModule& m, SlotSpace span);

struct SubmoduleResult {
    ModulePtr module;
    ModuleMap inclusion; // module -> ambient, shift 0
};
struct QuotientResult {
    ModulePtr module;
    ModuleMap projection; // ambient -> module, shift 0
};

// `space` must be arrow-closed (as produced by kernel(), image(), rad, ...)
SubmoduleResult submodule(const ModulePtr& m, const SlotSpace& space);
QuotientResult quotient_module(const ModulePtr& m, const SlotSpace& space);

ModulePtr shift_module(const ModulePtr& m, int s); // M<s>: (M<s>)_d = M_{d+s}
ModuleMap shift_map(const ModuleMap& f, int s);    // same blocks between shifted modules

struct DirectSum {
    ModulePtr module;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const std::vector<ModulePtr>& parts, AlgebraPtr alg);

// ---- structural modules and operations ----

enum class StructuralKind { Simple, Projective, Injective };

ModulePtr structural_module(const AlgebraPtr& a, StructuralKind kind, int vertex);
ModulePtr zero_module(const AlgebraPtr& a);

// bases of hom_A(M, N<j>) for every shift j with a nonzero space
std::map<int, std::vector<ModuleMap>> hom_graded(const ModulePtr& M, const ModulePtr& N);
std::vector<ModuleMap> hom_graded_shift(const ModulePtr& M, const ModulePtr& N, int shift);
int hom_total_dim(const ModulePtr& M, const ModulePtr& N);

struct LoewyData {
    std::vector<SlotSpace> radical_series; // M = rad^0 ⊃ rad^1 ⊃ ... ⊃ 0
    std::vector<SlotSpace> socle_series;   // 0 = soc^0 ⊂ soc^1 ⊂ ... ⊂ M
    int loewy_length = 0;
    bool is_rigid = false;
    // dims of the graded components of M per degree (the graded "layers")
    std::map<int, int> graded_layer_dims;
};
LoewyData loewy_data(const ModulePtr& M);

SlotSpace radical_space(const GradedModule& M);
SlotSpace socle_space(const GradedModule& M);
// multiplicity [S : L(v)] of a simple in a semisimple subquotient given slot-wise
int socle_multiplicity(const SlotSpace& s, int vertex);

// sum of images of all homogeneous homomorphisms M -> N, as a submodule of N
SubmoduleResult trace_submodule(const ModulePtr& M, const ModulePtr& N);

// vector-space dual over the opposite algebra (degree d slot -> degree -d)
ModulePtr dualize(const ModulePtr& M, const AlgebraPtr& opp);
ModuleMap dualize_map(const ModuleMap& f, const ModulePtr& dualDst, const ModulePtr& dualSrc);

// ---- decomposition ----

struct DecompPiece {
    ModulePtr piece; // normalized so its lowest nonzero degree is 0
    int shift;       // the summand inside M is piece<shift>
    ModuleMap inclusion; // piece<shift> -> M
};
// Splits M into indecomposable graded summands. Uses exact eigenvalue/Fitting
// splitting; over F_p indecomposability cannot always be certified and the
// documented failure is FieldUnsupported.
std::vector<DecompPiece> decompose(const ModulePtr& M, std::mt19937_64& rng);

struct GroupedPiece {
    ModulePtr piece;
    int multiplicity;
    int shift;
};
std::vector<GroupedPiece> group_pieces(const std::vector<DecompPiece>& pieces,
                                       std::mt19937_64& rng);

struct IsoShift {
    ModuleMap iso; // M -> N<shift>... stored as map M -> N with `shift`
    int shift;
};
// Finds j and an invertible homogeneous map M -> N<j>, or certifies none
// exists. Exact: the determinant polynomial on the hom space is tested on a
// full interpolation grid when random probing fails.
std::optional<IsoShift> iso_shift_test(const ModulePtr& M, const ModulePtr& N);

// dim of End_0(M)/rad, over Q only (trace-form radical)
int end0_mod_rad_dim(const ModulePtr& M);

} // namespace qhcalc

#endif
