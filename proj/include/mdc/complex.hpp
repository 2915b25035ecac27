#ifndef MDC_COMPLEX_HPP
#define MDC_COMPLEX_HPP

#include <string>
#include <vector>

#include "mdc/enumerate.hpp"
#include "mdc/graph.hpp"
#include "mdc/linalg.hpp"

namespace mdc {

enum class ComplexKind { Virtual, GenusOne };

// One signed face of a generator. target indexes the previous dimension;
// target = -1 is the augmentation (only for p = 0). sign = 0 when the target
// generator is dead.
struct Face {
    int target = -1;
    int sign = 0;
};

// An isomorphism class of p-simplices. For the virtual complex the p+1 labels
// are the edges of the canonical representative ("e0".."ep"). For the genus-1
// complex they are the core edges followed by the path levels ("e<i>" then
// "r1".."rk").
struct Generator {
    DecoratedGraph graph;
    std::vector<int> levels;  // empty for the virtual complex
    int p = 0;
    std::vector<std::string> labels;
    bool alive = true;
    std::vector<Face> faces;  // faces[i] = d_i; size p+1
    std::string encoding;     // canonical class key
};

struct SymmetricDeltaComplex {
    ComplexKind kind = ComplexKind::Virtual;
    int g = 0, n = 0, d = 0;
    std::vector<std::vector<Generator>> dims;  // dims[p], sorted by encoding

    int dimension() const { return static_cast<int>(dims.size()) - 1; }
    int alive_count(int p) const;
};

// Dual complex of the boundary of the Kontsevich space: generators are the
// boundary classes of the catalog, dimension p has p+1 edges.
SymmetricDeltaComplex build_virtual_complex(const GraphCatalog& cat);

// Genuine dual complex in genus 1: generators are radially aligned classes
// with d_min > 1; dimension p has |C| + k = p + 1 labels.
SymmetricDeltaComplex build_genus1_complex(int n, int d);

// One face move on an aligned generator: the i-th label is either a core
// edge (contract it) or a path level (radial merge). label_map gives the
// target label position of each surviving label (-1 for i).
struct GenusOneFaceMove {
    AlignedGraph graph;
    std::vector<int> label_map;
};
GenusOneFaceMove genus1_face_move(const AlignedGraph& a, int i);

// Boundary matrix d_p : C_p -> C_{p-1} over alive generators. With reduced,
// d_0 is the augmentation row (all ones); otherwise d_0 = 0.
SparseMatrix boundary_matrix(const SymmetricDeltaComplex& x, int p, bool reduced);

struct BettiTable {
    int min_p = 0;  // -1 when reduced
    std::vector<int> betti;         // betti[i] = b_{min_p + i}
    std::vector<int> alive_counts;  // per dimension 0..dim
    long long euler_from_counts = 0;
    long long euler_from_betti = 0;

    int b(int p) const { return betti.at(p - min_p); }
    bool all_zero() const;
};

BettiTable betti_numbers(const SymmetricDeltaComplex& x, bool reduced = true);

std::string complex_to_json(const SymmetricDeltaComplex& x);
SymmetricDeltaComplex complex_from_json(const std::string& text);

}  // namespace mdc

#endif
