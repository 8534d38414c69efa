#ifndef QHCALC_ALGEBRA_HPP
#define QHCALC_ALGEBRA_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhcalc/presentation.hpp"

namespace qhcalc {

struct BuildOptions {
    int degree_cap = 64;
    int dim_cap = 1 << 20;        // total dimension guard
    int paths_per_degree_cap = 200000;
};

// A path of the quiver: src vertex plus a composable word of arrows.
// The empty word is the trivial path e_src.
struct QuiverPath {
    int src = -1;
    std::vector<int> word;
};

// Finite-dimensional positively graded quiver algebra with a computed
// homogeneous basis per degree. The degree-0 part is spanned by the trivial
// paths e_1, ..., e_n; products use function-composition order
// (x ∘ y = "first y, then x").
class GradedAlgebra {
public:
    struct BasisInfo {
        int src = -1, dst = -1;
        int path_index = -1; // index into paths(d): the representative path
    };

    const Presentation& presentation() const { return pres_; }
    const Field& field() const { return pres_.field; }
    int num_vertices() const { return pres_.num_vertices(); }
    int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int d) const { return d >= 0 && d <= max_degree() ? dims_[d] : 0; }
    int total_dim() const;
    const std::vector<int>& dims() const { return dims_; }

    const BasisInfo& basis_info(int d, int k) const { return basis_[d][k]; }
    int dim_pair(int d, int src, int dst) const; // dim e_dst A_d e_src
    std::vector<int> basis_indices_pair(int d, int src, int dst) const;
    std::string basis_label(int d, int k) const;

    const std::vector<QuiverPath>& paths(int d) const { return paths_[d]; }
    // Coordinates in the degree-d basis of an arbitrary path combination
    // (column vector indexed by paths(d)).
    Matrix reduce(int d, const Matrix& path_combo) const;
    // Coordinates of a single path given by word (empty word: trivial path at src).
    Matrix path_coords(const QuiverPath& p) const;

    // x ∘ y with x in degree d1, y in degree d2, both as coordinate columns;
    // result is a coordinate column in degree d1+d2.
    Matrix multiply(int d1, const Matrix& x, int d2, const Matrix& y) const;
    // column of the structure-constant table: basis element k1 of degree d1
    // times basis element k2 of degree d2.
    Matrix multiply_basis(int d1, int k1, int d2, int k2) const;

    bool generated_in_degree_one() const;

    friend GradedAlgebra build_algebra(const Presentation& p, const BuildOptions& opt);

private:
    Presentation pres_;
    std::vector<int> dims_;
    std::vector<std::vector<QuiverPath>> paths_;   // per degree, canonical order
    std::vector<RrefResult> ideal_;                // rref of ideal span in path coords
    std::vector<std::vector<int>> free_paths_;     // non-pivot path indices = basis
    std::vector<std::vector<BasisInfo>> basis_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

GradedAlgebra build_algebra(const Presentation& p, const BuildOptions& opt = {});
AlgebraPtr build_algebra_ptr(const Presentation& p, const BuildOptions& opt = {});

// Same vertices in the same order, arrows reversed, relations reversed.
Presentation opposite_presentation(const Presentation& p);
AlgebraPtr opposite(const AlgebraPtr& a, const BuildOptions& opt = {});

// Quadratic dual: same vertices, dual arrow spaces with the same orientation,
// relations = annihilator of ker(A_1 x A_1 -> A_2) under the dual-basis pairing.
AlgebraPtr quadratic_dual(const AlgebraPtr& a, const BuildOptions& opt = {});

// Structure constants of a basic positively graded algebra, without a chosen
// quiver presentation. basis[0] must consist of the orthogonal idempotents
// e_0, ..., e_{n-1} in vertex order; every basis element is (src,dst)-homogeneous.
struct AbstractAlgebra {
    Field field;
    std::vector<std::string> vertex_labels;
    std::vector<std::vector<std::pair<int, int>>> basis; // per degree: (src,dst)
    // x_{d1,k1} ∘ x_{d2,k2} -> coordinates in basis[d1+d2]
    std::function<std::vector<Scalar>(int, int, int, int)> mult;

    int dim(int d) const {
        return d >= 0 && d < static_cast<int>(basis.size()) ? static_cast<int>(basis[d].size()) : 0;
    }
    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
};

// Quiver presentation of an abstract algebra generated in degrees 0 and 1:
// arrows are the degree-1 basis split by (source, target); relations are the
// kernel of the evaluation of paths, computed degree by degree.
Presentation presentation_extract(const AbstractAlgebra& a);

struct IsoOptions {
    bool label_preserving = true;
    long budget = 2000000; // candidate base changes tried before giving up
};

struct IsoWitness {
    std::vector<int> vertex_map;                       // a-vertex -> b-vertex
    std::map<std::pair<int, int>, Matrix> base_change; // per (src,dst) arrow block
};

struct IsoResult {
    enum class Verdict { Witness, Distinguisher, Unknown } verdict;
    std::optional<IsoWitness> witness;
    std::string distinguisher; // human-readable differing invariant
};

// Searches for a grading-preserving algebra isomorphism. With
// label_preserving the vertex map is the identity; otherwise all vertex
// permutations are tried. Requires both algebras generated in degrees 0, 1.
IsoResult iso_search(const GradedAlgebra& a, const GradedAlgebra& b, const IsoOptions& opt = {});

// Used by iso_search and by tests: the degree-d linear map induced by a base
// change of arrows, in basis coordinates; empty when relations are not mapped
// into relations.
std::optional<std::vector<Matrix>> induced_iso_maps(const GradedAlgebra& a, const GradedAlgebra& b,
                                                    const IsoWitness& w);

// Relabeled copy: vertex i of the input becomes vertex perm[i] of the output
// (labels travel with the vertices, order changes).
Presentation relabel_presentation(const Presentation& p, const std::vector<int>& perm);
// The order reversal i -> n+1-i used when comparing Ringel/Koszul duals.
std::vector<int> reversal_perm(int n);

} // namespace qhcalc

#endif
