#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kisin/lattice.hpp"

namespace kisin {

// Closure operators on lattices of M[1/u] for a module M of height er.
// Every member of F^r lies between u^t M and u^{-t} M, t = floor((er+1)/(p-1)),
// so both operators only ever look inside that window.
class FrClosure {
public:
    // m must be valid at height er.  level is the precision (in powers of u)
    // used for u^{er} A^{-1} when it is not exact.
    FrClosure(ModulePtr m, int er, int level = 0);

    int er() const { return er_; }
    int window() const { return t_; }
    int level() const { return level_; }
    const ModulePtr& ambient() const { return m_; }

    // Smallest member of F^r containing y (y must contain u^t M), if any.
    std::optional<Lattice> up(const Lattice& y) const;
    // Largest member of F^r inside x (x must lie in u^{-t} M), if any.
    std::optional<Lattice> down(const Lattice& x) const;

    Lattice largest() const;   // down(u^{-t} M)
    Lattice smallest() const;  // up(u^t M)

private:
    ModulePtr m_;
    int er_ = 0, t_ = 0, level_ = 0;
    SeriesMatrix a_, c_;  // A and u^{er} A^{-1}
};

enum class CensusMethod { Auto, Walk, Exhaustive };

struct CensusOptions {
    CensusMethod method = CensusMethod::Auto;
    long long exhaustive_limit = 20000;    // Auto uses the exhaustive census below this
    long long max_candidates = 2000000;    // hard cap for the exhaustive census
    long long max_elements = 100000;       // hard cap for the walk
};

struct FrPoset {
    ModulePtr ambient;
    int er = 0;
    int window = 0;
    std::vector<Lattice> elements;          // canonical order
    std::vector<std::vector<char>> leq;     // leq[i][j]: elements[i] inside elements[j]
    std::vector<std::vector<int>> covers;   // covers[i]: the j covering i
    CensusMethod method = CensusMethod::Walk;
    long long candidates = 0;               // lattices examined

    int size() const { return static_cast<int>(elements.size()); }
    int index_of(const Lattice& l) const;   // -1 if absent
    int top() const;                        // the unique maximal element
    int bottom() const;                     // the unique minimal element
    int standard() const;
    // Number of elements in a longest chain.
    int longest_chain() const;
};

// Number of canonical bases in the window, i.e. the exhaustive census size.
long long exhaustive_candidate_count(int d, int t, int q);

// All members of F^r for a valid module of finite height.  Throws
// CensusTooLarge when the selected method exceeds its cap.
FrPoset enumerate_fr(const PhiModule& m, const CensusOptions& opts = {});

enum class ExtremalMethod { Auto, Census, ClosedForm, Fixpoint };

struct ExtremalOptions {
    ExtremalMethod method = ExtremalMethod::Auto;
    bool verify = true;  // recompute by the fixpoint at twice the precision and compare
    CensusOptions census;
};

struct ExtremalResult {
    Lattice lattice;        // in the coordinates of the input module
    PhiModule module;       // in the basis of lattice
    PhiMorphism inclusion;  // input -> module for Max, module -> input for Min
    ExtremalMethod method = ExtremalMethod::Auto;
};

std::string method_name(ExtremalMethod m);

// Height used for the census when r is unbounded: any er' >= h + t(h), h the
// height of frob, gives the same largest element.
int effective_er(const PhiModule& m);

ExtremalResult max_r(const PhiModule& m, const ExtremalOptions& opts = {});
ExtremalResult min_r(const PhiModule& m, const ExtremalOptions& opts = {});
bool is_maximal(const PhiModule& m, const ExtremalOptions& opts = {});
bool is_minimal(const PhiModule& m, const ExtremalOptions& opts = {});

// The module carried by a lattice, in its canonical basis.
PhiModule module_of(const Lattice& l);

PhiModule kernel_max(const PhiMorphism& f);
PhiModule cokernel_max(const PhiMorphism& f);
PhiModule image_max(const PhiMorphism& f);
PhiModule kernel_min(const PhiMorphism& f);
PhiModule cokernel_min(const PhiMorphism& f);

// A map between lattices of two ambients, given by one matrix on ambient
// coordinates.
struct LatticeMorphism {
    Lattice source, target;
    SeriesMatrix ambient_mat;

    // T^{-1} F S between module_of(source) and module_of(target).
    PhiMorphism morphism() const;
};

// The map on the sums of the sources and of the targets.  Inputs must share
// the ambient matrix; throws MathError if the result is not a morphism.
LatticeMorphism sup_map(const std::vector<LatticeMorphism>& fs);

std::string lattice_label(const Lattice& l);
std::string poset_dot(const FrPoset& p);
std::string poset_csv(const FrPoset& p);

}  // namespace kisin
