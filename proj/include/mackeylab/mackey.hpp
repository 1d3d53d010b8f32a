#pragma once
#include <memory>
#include <string>
#include <vector>

#include "mackeylab/burnside.hpp"
#include "mackeylab/groups.hpp"
#include "mackeylab/modalg.hpp"

namespace mackeylab {

/// For each subgroup class i, the subgroups of its representative H grouped
/// by H-conjugacy ("local classes"), with witnesses into the minimal member.
struct LocalLattice {
    // class i -> subgroup indices of the local class representatives,
    // sorted by (order, subgroup index)
    std::vector<std::vector<int>> locals;
    // class i -> subgroup u contained in rep(i) -> (position in locals[i],
    // h in rep(i) with u = h * local_rep * h^-1)
    std::vector<std::vector<std::pair<int, int>>> local_of;  // indexed [i][subgroup], (-1,-1) outside

    const std::pair<int, int>& find(int cls, int sub) const { return local_of[cls][sub]; }
};

LocalLattice build_local_lattice(const GroupContext& ctx);

/// Values live on class representatives only; maps to and from any other
/// subgroup are derived through conjugation transport.  weyl[i][w] is the
/// action of the w-th Weyl element on value[i]; res[i][l] maps value[i] to
/// the class of the l-th local subgroup of rep(i), tr[i][l] the other way.
/// Both stored edges are normalized through the subgroup witnesses.
struct MackeyFunctor {
    std::shared_ptr<const GroupContext> ctx;
    std::shared_ptr<const LocalLattice> lat;
    CoeffRing ring = CoeffRing::Z();
    std::vector<FpModule> value;
    std::vector<std::vector<ModuleMap>> weyl;
    std::vector<std::vector<ModuleMap>> res;
    std::vector<std::vector<ModuleMap>> tr;

    int classes() const { return int(value.size()); }
};

MackeyFunctor zero_mackey(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring);
MackeyFunctor burnside_mackey(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring);
MackeyFunctor fixed_point_mackey(std::shared_ptr<const GroupContext> ctx, int fixed_class,
                                 const CoeffRing& ring);

/// Derived structure maps between arbitrary subgroups, as matrices on the
/// stored representative modules (identified through witnesses).
ModuleMap conj_map(const MackeyFunctor& m, int sub, int g);        // M<sub> -> M<g sub g^-1>
ModuleMap res_map(const MackeyFunctor& m, int big, int small);     // M<big> -> M<small>
ModuleMap tr_map(const MackeyFunctor& m, int big, int small);      // M<small> -> M<big>

struct Evaluation {
    FpModule module;
    std::vector<std::vector<int>> orbs;  // orbits of the evaluated set
    std::vector<int> cls;                // stabilizer class per orbit
    std::vector<int> offset;             // generator offset per orbit
};

Evaluation evaluate(const MackeyFunctor& m, const GSet& s);

/// Linear extension of span action: pullback leg through res/conjugation,
/// pushforward leg through tr.  Compatible with span_compose.
ModuleMap apply_span(const MackeyFunctor& m, const BurnsideElement& a);

/// Action of an A^G element through the spans S <- S x S0 -> S.
ModuleMap burnside_action(const MackeyFunctor& m, const GSet& s, const std::vector<Int>& a);
/// The same action packaged per level (at every orbit G/rep(i)).
std::vector<ModuleMap> burnside_action_levels(const MackeyFunctor& m, const std::vector<Int>& a);

struct AxiomReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Verifies Weyl action laws, normalized self-edges, transitivity,
/// equivariance, and the double coset formula for every subgroup triple.
AxiomReport check_mackey_axioms(const MackeyFunctor& m);

/// Size and shape problems; identity checks only make sense when empty.
std::vector<std::string> mackey_structural_violations(const MackeyFunctor& m);

/// Identity checks for one subgroup class, the unit of work behind the
/// checker: stage 0 is the Weyl action and self edge laws, stage 1 the
/// transport laws (transitivity, equivariance, double coset).  The serial
/// checker runs stage 0 for every class and then stage 1; the parallel one
/// fans the classes out across threads.
std::vector<std::string> mackey_class_violations(const MackeyFunctor& m, int cls, int stage);

struct MackeyMorphism {
    MackeyFunctor source, target;
    std::vector<ModuleMap> comp;  // per class
};

AxiomReport check_mackey_morphism(const MackeyMorphism& f);
MackeyFunctor mackey_kernel(const MackeyMorphism& f);
MackeyFunctor mackey_cokernel(const MackeyMorphism& f);
MackeyMorphism mackey_compose(const MackeyMorphism& g, const MackeyMorphism& f);  // g after f

/// Literal data equality (same group tables, presentations, matrices).
bool mackey_literal_equal(const MackeyFunctor& a, const MackeyFunctor& b);

/// Isomorphism-invariant profile comparison: class-by-class module
/// invariants plus invariants of kernels/images/cokernels of every stored
/// structure map.  Used where no canonical comparison map exists.
bool mackey_profile_equal(const MackeyFunctor& a, const MackeyFunctor& b,
                          std::string* why = nullptr);

/// Geometric fixed points over N(H)/H: each level K of the quotient carries
/// M^K' (K' the preimage) modulo images of transfers from subgroups not
/// containing H.  The public form requires a normal subgroup.
MackeyFunctor geometric_fixed_points_inner(const MackeyFunctor& m, int cid);
MackeyFunctor geometric_fixed_points(const MackeyFunctor& m, int normal_cid);

struct CategoricalFP {
    MackeyFunctor fun;  // over the subgroup's own context
    // per level, the recorded central refinement: (element z of the
    // centralizer of H normalizing the level's representative, its action)
    std::vector<std::vector<std::pair<int, Mat>>> central_action;
};

CategoricalFP categorical_fixed_points(const MackeyFunctor& m, int cid);

/// Inflation along G -> G/N: value M(S^N); zero on orbits without N-fixed
/// points.  m_over_w must live over a group equal to the Weyl group of the
/// class of N.
MackeyFunctor inflation(std::shared_ptr<const GroupContext> ctx, int normal_cid,
                        const MackeyFunctor& m_over_w);

/// The unit M -> Infl(Phi(M)): level-wise projection, surjective.
MackeyMorphism inflation_unit(const MackeyFunctor& m, int normal_cid);

/// Canonical comparison Phi^N(A_G) -> A_{G/N} ([K/U] -> [K̄/(U/N)] when
/// N ⊆ U, else 0), as a morphism over the quotient context.
MackeyMorphism phi_burnside_comparison(const MackeyFunctor& phi_a, int normal_cid,
                                       const GroupContext& gctx);

/// Checks Phi^{H'} Psi^H = Psi Phi^{H'} over (N(H') ∩ H)/H' by comparing
/// level modules and structure-map profiles of the two composites.
bool phi_psi_commute_check(const MackeyFunctor& m, int h_cid, int hp_cid,
                           std::string* why = nullptr);

struct GreenPairing {
    MackeyFunctor m1, m2, m3;
    // per class: matrix with columns indexed by (a, b) basis pairs, a-major
    std::vector<Mat> mu;
};

GreenPairing burnside_green(std::shared_ptr<const GroupContext> ctx, const CoeffRing& ring);
AxiomReport check_green(const GreenPairing& p);

}  // namespace mackeylab
