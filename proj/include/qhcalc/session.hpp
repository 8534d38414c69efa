#ifndef QHCALC_SESSION_HPP
#define QHCALC_SESSION_HPP

#include <optional>
#include <tuple>

#include "qhcalc/gmodule.hpp"

namespace qhcalc {

// ---------------------------------------------------------------- filtrations

enum class FiltKind { Standard, Costandard };

struct FiltrationLayer {
    int vertex;
    int shift; // layer is Δ(vertex)<shift> resp. ∇(vertex)<shift>
};

struct Filtration {
    FiltKind kind;
    ModulePtr module;
    std::vector<FiltrationLayer> layers; // Δ: bottom-up, ∇: top-down
    std::vector<SlotSpace> chain;        // witness chain of submodule spaces
    int count(int vertex) const;
    int count(int vertex, int shift) const;
    int total_layer_dim(const std::vector<ModulePtr>& ref) const;
};

struct QhVerdict {
    bool ok = false;
    int failing_vertex = -1;
    std::string reason;
    std::vector<Filtration> kernel_filtrations; // per vertex, when ok
};

struct BggRow {
    int i, j;
    int inj_costd_mult;  // [I(i) : ∇(j)]
    int std_simple_mult; // [Δ(j) : L(i)]
    bool equal;
};

// ------------------------------------------------------------------ complexes

struct ComplexOfModules {
    std::map<int, ModulePtr> positions;     // position -> module
    std::map<int, ModuleMap> differentials; // d[i] : X^i -> X^{i+1}
    ModulePtr at(int pos, const AlgebraPtr& a) const;
    bool has(int pos) const { return positions.count(pos) > 0; }
    void validate() const; // d ∘ d = 0, degree-0 differentials
};

// homology at a position, as a module with no chosen ambient
ModulePtr complex_homology(const ComplexOfModules& cx, int pos, const AlgebraPtr& a);

struct Resolution {
    ComplexOfModules cx; // positions -len..0
    ModuleMap augmentation; // X^0 -> M
    std::map<int, std::vector<std::pair<int, int>>> summands; // pos -> (vertex, shift)
    int length = 0;
    bool linear = true; // every summand at position -l has shift -l
};

struct ExtData {
    std::map<int, std::vector<ModuleMap>> reps; // shift -> basis of Ext^l(M, N<shift>)
    int dim(int shift) const;
    int total() const;
    std::vector<int> shifts() const;
};

struct Ext1Class {
    ModulePtr sub;   // N
    ModulePtr total; // X
    ModulePtr quot;  // M
    ModuleMap incl;  // N -> X; a degree-0 map N<shift> -> X (ModuleMap shift -shift)
    ModuleMap proj;  // X -> M, degree 0
    int shift;
};

struct KoszulReport {
    bool is_koszul = false;
    bool is_standard_koszul = false;
    AlgebraPtr dual; // E(A) = opposite of the quadratic dual; null when not Koszul
};

// --------------------------------------------------------------------- tilting

struct TiltingData {
    std::vector<ModulePtr> modules;          // T(i), graded with Δ(i) -> T(i) degree 0
    std::vector<ModuleMap> std_embeddings;   // Δ(i) -> T(i)
    std::vector<ModuleMap> costd_projections; // T(i) -> ∇(i)
    // hom_A(T(i), T(j)<d>) bases: the hom identification with e_i R_d e_j
    std::map<std::tuple<int, int, int>, std::vector<ModuleMap>> homs;
    bool ringel_positive = false;
    bool ringel_generated_01 = false;
    int min_hom_degree = 0;
};

struct TiltingComplex {
    ComplexOfModules cx;
    std::map<int, std::vector<std::pair<int, int>>> summands; // pos -> (vertex, shift)
    ModuleMap augmentation; // resolution: X^0 -> M; coresolution: M -> X^0
    bool coresolution = false;
    bool linear = true; // position -l in add(T<-l>) resp. position l in add(T<l>)
    int length = 0;
    int multiplicity(int pos, int vertex) const;            // any shift
    int multiplicity(int pos, int vertex, int shift) const; // exact lift
};

struct ClassifyReport {
    bool positively_graded = false;
    bool qh = false;
    bool koszul = false;
    bool standard_koszul = false;
    bool sct = false;
    bool sck = false;
    bool ringel_positive = false;
    bool ringel_generated_01 = false;
    bool balanced = false;
    bool lt_resolutions_all_costd = false; // condition (i) of the graded pairing
    bool lt_coresolutions_all_std = false;
    std::map<std::string, std::string> notes; // skipped flags carry the reason
};

// -------------------------------------------------------------------- pairings

struct PairingReport {
    std::string kind;
    int i = -1, j = -1, l = -1;
    std::vector<std::string> left_basis, right_basis;
    Matrix matrix;       // entry c with  phi ∘ f = c · (beta ∘ alpha_j)
    Matrix matrix_recip; // the paper's normalization where defined; 0 stays 0
    int rank = 0;
    int left_kernel_dim = 0;
    int right_kernel_dim = 0;
};

struct BarPairingResult {
    PairingReport report;
    ModulePtr N; // the saturated quotient of Δ(i) from the rank formula
    int soc_mult;
    int ext_dim; // dim Ext^1(L(i), ∇(j))
    bool left_kernel_matches; // left kernel = { f : π∘f = 0 }
};

struct TauReport {
    Matrix matrix; // of τ : Ext^1(∇(i),∇(j)) -> Ext^1(L(i),∇(j))
    int rank = 0;
    bool kernel_matches_right_kernel = false;
    bool surjective = false;
};

struct GradedPairingVerdict {
    bool ok = false;
    int left_dim = 0, right_dim = 0;
    bool nondegenerate = false;
    bool dual_side_ok = false;
    std::string failed_precondition; // empty when preconditions hold
};

// ---------------------------------------------------------------------- lincat

struct LinearTiltingComplex {
    ModulePtr lambda_module; // over lambda_algebra(a)
    ComplexOfModules realized;
    std::map<int, std::vector<std::pair<int, int>>> summands; // pos -> (vertex, pos)
};

struct CommuteReport {
    AlgebraPtr C;    // opposite(ringel_dual(lambda_algebra(a)))
    AlgebraPtr EofR; // koszul_dual(ringel_dual(a))
    AlgebraPtr RofE; // ringel_dual(koszul_dual(a))
    std::string eofr_vs_rofe; // iso verdicts: "witness" / "distinguisher" / "unknown"
    std::string eofr_vs_e;
    std::string c_vs_e;
    std::string cc_vs_a;
};

// ---------------------------------------------------------------------- session

// Computation hub for one algebra: caches structural modules, resolutions,
// tilting data and the derived algebras, and hands out per-operation reports.
class Session {
public:
    explicit Session(AlgebraPtr a, unsigned long seed = 0);
    ~Session();
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const AlgebraPtr& algebra() const { return a_; }
    const AlgebraPtr& opp_algebra();
    Session& op(); // session over the opposite algebra
    std::mt19937_64& rng() { return rng_; }
    int n() const { return a_->num_vertices(); }

    ModulePtr simple(int i);
    ModulePtr projective(int i);
    ModulePtr injective(int i);
    ModulePtr standard(int i);
    ModulePtr costandard(int i);

    const QhVerdict& verify_qh();
    void require_qh(); // throws PreconditionFailed unless verified
    std::optional<Filtration> filtration(const ModulePtr& M, FiltKind kind);
    std::vector<BggRow> bgg_check();

    // minimal graded projective resolution (cached per module instance)
    const Resolution& proj_resolution(const ModulePtr& M);
    int resolution_cap() const;
    ExtData ext_graded(const ModulePtr& M, const ModulePtr& N, int l);
    Ext1Class realize_ext1(const ModulePtr& M, const ModulePtr& N, const ModuleMap& cocycle);
    Ext1Class pullback_ext1(const Ext1Class& xi, const ModuleMap& f);  // f: M' -> M, degree 0
    Ext1Class pushout_ext1(const Ext1Class& xi, const ModuleMap& g);   // g: N -> N', degree 0
    // class coordinates of a 1-cocycle in the basis ExtData.reps[shift]
    std::vector<Scalar> ext_class_coords(const ModulePtr& M, const ModulePtr& N, int l,
                                         int shift, const ModuleMap& cocycle);
    // connecting cocycle of a short exact sequence 0 -> N<s> -> X -> M -> 0
    ModuleMap extension_to_cocycle(const Ext1Class& xi);

    const KoszulReport& koszul_dual();
    // Ext-algebra of ⊕L(i) with the Yoneda product, as structure constants
    AbstractAlgebra yoneda_ext_algebra();

    const TiltingData& tilting();
    ModulePtr tilting_module(int i);
    ModulePtr universal_extension(const ModulePtr& M, int j);
    // Ringel dual presentation R(A) = End_A(T)^opp; requires the induced
    // grading positive and degree-0,1 generation. Labels are kept; the QH
    // order of R(A) is the reverse; pass relabel to renumber i -> n+1-i.
    AlgebraPtr ringel_dual(bool relabel = false);
    TiltingComplex tilting_resolution(const ModulePtr& M, bool coresolution);
    const ClassifyReport& classify();

    // fixed morphisms alpha_i : Δ(i) -> ∇(i) and the projections Δ(i) -> L(i)
    const ModuleMap& alpha(int i);
    const ModuleMap& alpha_bar(int i);

    PairingReport pairing_hom_ext1(int i, int j);
    BarPairingResult bar_pairing_and_N(int i, int j);
    TauReport tau_map(int i, int j);
    PairingReport higher_pairing(int l, int i, int j);
    GradedPairingVerdict graded_pairing_check(int l, int i, int j, bool check_dual_side = true);

    AlgebraPtr lambda_algebra();
    Session& lambda(); // session over lambda_algebra()
    LinearTiltingComplex F_realize(const ModulePtr& lambda_mod);
    // nonzero only at l = -1 by Lemma-level theory; both sides computed
    int ext1_in_T(int i, int j, int l);
    enum class CanonicalKind { StdObj, CostdObj, SimpleObj, TiltObj };
    LinearTiltingComplex canonical_object(CanonicalKind kind, int i);
    CommuteReport verify_commute();

    unsigned long seed() const { return seed_; }

private:
    AlgebraPtr a_, aop_;
    unsigned long seed_ = 0;
    std::mt19937_64 rng_;
    std::unique_ptr<Session> op_, lambda_session_;
    AlgebraPtr lambda_;

    std::map<int, ModulePtr> simple_, proj_, inj_, std_, costd_;
    std::optional<QhVerdict> qh_;
    std::map<const GradedModule*, Resolution> res_cache_;
    std::vector<ModulePtr> res_keepalive_;
    std::optional<KoszulReport> koszul_;
    std::optional<TiltingData> tilting_;
    std::optional<ClassifyReport> classify_;
    std::map<int, ModuleMap> alpha_, alpha_bar_;

    friend struct SessionDetail;
};

// Mixed-shift hom space between a module and a fixed target, flattened with
// labels; used by the pairing constructions.
struct LabeledHomBasis {
    std::vector<ModuleMap> maps;
    std::vector<std::string> labels; // "shift <j> #<k>"
};
LabeledHomBasis labeled_homs(const ModulePtr& M, const ModulePtr& N);

} // namespace qhcalc

#endif
