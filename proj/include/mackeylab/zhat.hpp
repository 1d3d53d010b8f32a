#pragma once
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mackeylab/mackey.hpp"
#include "mackeylab/modalg.hpp"

namespace mackeylab {

/// Element of the completed orbit ring of the procyclic group: a finite
/// rational combination of classes e_i, one per open subgroup index, with
/// e_1 the unit and e_i * e_j = gcd(i,j) * e_lcm(i,j).
struct WittElement {
    std::map<long, Rat> coeffs;  // index -> coefficient, zeros dropped

    void add_term(long idx, const Rat& c);
    bool operator==(const WittElement& o) const { return coeffs == o.coeffs; }
};

WittElement witt_unit();
WittElement witt_basis(long i);
WittElement witt_add(const WittElement& a, const WittElement& b);
WittElement witt_scale(const WittElement& a, const Rat& c);
WittElement witt_product(const WittElement& a, const WittElement& b);
/// Image in the quotient by the span of all e_i with i > bound.
WittElement witt_truncate(const WittElement& a, long bound);

/// n-th ghost component, the multiplicative functional sending e_i to i when
/// i divides n and to 0 otherwise.
Rat ghost_component(const WittElement& a, long n);
std::vector<Rat> ghost_components(const WittElement& a, long n);  // g_1 .. g_n

/// Prints "2*e2 - 1/3*e6"; the e_1 term prints as a bare coefficient and a
/// coefficient of +-1 on a higher class drops the "1*".  witt_parse accepts
/// exactly this shape with flexible whitespace.
std::string witt_print(const WittElement& a);
WittElement witt_parse(const std::string& text);

/// Mackey data for the procyclic group truncated at a level bound: a module
/// per level l in a divisor closed set (the value on the orbit of index l),
/// the translation generator sigma_l on it, and a pushforward / pullback pair
/// along every divisor relation b | a.
struct ZMackeyTrunc {
    CoeffRing ring;
    long bound = 1;
    std::vector<long> levels;  // divisor closed, ascending
    std::vector<FpModule> value;
    std::vector<ModuleMap> sigma;
    std::map<std::pair<long, long>, ModuleMap> push;  // (a,b), b|a: M_a -> M_b
    std::map<std::pair<long, long>, ModuleMap> pull;  // (a,b), b|a: M_b -> M_a

    int pos(long l) const;  // InputError when the level is absent
    const FpModule& at(long l) const { return value[pos(l)]; }
    const ModuleMap& push_map(long a, long b) const;
    const ModuleMap& pull_map(long a, long b) const;
};

/// Structural checks, then the level relations: identity self maps, sigma_l
/// order dividing l, transitivity of both edge families, equivariance, the
/// divisor double coset identity pull*push = sum of translation twists, and
/// its general two level form whenever the joining level sits inside the
/// truncation.
AxiomReport check_zmackey(const ZMackeyTrunc& m);

/// Truncation of the completed orbit ring as a module system: level l is free
/// on the orbits b_n with l | n <= bound, translations are trivial,
/// push(a,b) reindexes b_n, and pull(a,b) sends b_n to
/// (gcd(n,a)/b) * b_lcm(n,a), truncated to zero past the bound.
ZMackeyTrunc burnside_truncation(long bound, const CoeffRing& ring);

/// Action of the class e_k on the level l module: gcd(k,l) times the
/// roundtrip through level lcm(k,l).  DomainError when that level falls
/// outside the truncation.
ModuleMap eps_action(const ZMackeyTrunc& m, long k, long l);

/// Linear extension of eps_action.  With drop_outside the terms whose joining
/// level exceeds the truncation act as zero (sound when the data is the
/// truncation of a system supported inside the bound); otherwise they raise.
ModuleMap witt_action(const ZMackeyTrunc& m, const WittElement& w, long l,
                      bool drop_outside = false);

/// Columns spanning the canonical filtration piece at level l for the closed
/// subgroup of index n: the images of every pushforward from a level that is
/// a multiple of l but not a divisor of n.
Mat canonical_filtration(const ZMackeyTrunc& m, long n, long l);

/// Level l value modulo the canonical filtration piece (generators kept).
FpModule filtration_quotient(const ZMackeyTrunc& m, long n, long l);

/// Fixed points under the closed subgroup of index n, assembled as a Mackey
/// functor over the cyclic group of order n: the class of the subgroup of
/// index t carries the level t value modulo its filtration piece.
/// truncation_exact records whether every descended edge was certified to
/// respect relations; a failure can only come from levels lost to the bound.
struct LevelFixedPoints {
    MackeyFunctor fun;
    bool truncation_exact = true;
};
LevelFixedPoints level_fixed_points(const ZMackeyTrunc& m, long n);

/// Comparison of the level l value with its best filtration quotient inside
/// the bound, taken at index n* = l * floor(bound / l).  The canonical map is
/// the projection; for systems supported inside the bound it is bijective.
struct RoundtripReport {
    long n_star = 0;
    ModuleMap canonical;
    bool surjective = false;
    bool injective = false;
};
RoundtripReport normal_system_roundtrip(const ZMackeyTrunc& m, long l);

/// Idempotent of the truncated orbit ring over rationals with denominators
/// coprime to p, projecting onto the part whose prime to p index equals l:
/// (1/l) e_l times the product of (1 - (1/i) e_i) over 1 < i <= bound with i
/// coprime to p and i not dividing l.
WittElement p_local_idempotent(long p, long l, long bound);

/// Splits the level n value by the p-local idempotent actions: parts lists
/// the indices with a nonzero component, ranks their free ranks, and
/// decomposes certifies idempotence, orthogonality, and that the components
/// sum to the identity.
struct PTypicalReport {
    std::vector<long> parts;
    std::vector<long> ranks;
    bool decomposes = false;
};
PTypicalReport p_typical_reconstruct_check(const ZMackeyTrunc& m, long p, long n);

/// Homology of the cyclic group of order n with coefficients in the
/// permutation module on the pairs of the two orbit unions fixed by the
/// closed subgroup of index n.  Computed orbitwise in closed form.
ModInvariants derived_burnside_homology(long n, const std::vector<long>& s,
                                        const std::vector<long>& sp, long degree);

/// The same coefficient module made explicit, with its translation action;
/// feeding it to cyclic_homology gives the slow cross check.
struct PermModule {
    FpModule module;
    ModuleMap sigma;
};
PermModule dbh_perm_module(long n, const std::vector<long>& s, const std::vector<long>& sp,
                           const CoeffRing& ring);

/// Level l germ of the index n gluing datum: the module itself on the
/// diagonal l = n, the two periodic Tate pieces of the prime covering when
/// n = p*l, and zero otherwise.  The residual maps carry the translation
/// action that survives on each piece.
struct GluingValue {
    bool diagonal = false;
    FpModule even, odd;
    ModuleMap residual_even, residual_odd;
};
GluingValue gluing_value(const ZMackeyTrunc& m, long n, long l);

}  // namespace mackeylab
