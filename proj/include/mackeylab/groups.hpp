#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mackeylab/error.hpp"

namespace mackeylab {

/// Element-set bitmask; supports groups of order up to 128.
using Mask = std::array<uint64_t, 2>;

inline bool mask_get(const Mask& m, int i) { return (m[i >> 6] >> (i & 63)) & 1; }
inline void mask_set(Mask& m, int i) { m[i >> 6] |= uint64_t(1) << (i & 63); }
inline Mask mask_empty() { return {0, 0}; }
inline Mask mask_and(const Mask& a, const Mask& b) { return {a[0] & b[0], a[1] & b[1]}; }
inline int mask_count(const Mask& m) {
    return __builtin_popcountll(m[0]) + __builtin_popcountll(m[1]);
}

/// Finite group on elements 0..order-1 with 0 the identity.
struct FiniteGroup {
    int order = 1;
    std::vector<int> mul_table;  // order x order, row-major
    std::vector<int> inv_table;
    std::string name;

    int mul(int a, int b) const { return mul_table[size_t(a) * order + b]; }
    int inv(int a) const { return inv_table[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
    int element_order(int a) const;
};

/// Maximum admitted group order; MACKEYLAB_MAX_GROUP_ORDER overrides the
/// default of 96 (hard cap 128).
long group_order_bound();

FiniteGroup make_cyclic(int n);
FiniteGroup make_from_table(const std::vector<std::vector<int>>& mul);
FiniteGroup make_from_perms(int degree, const std::vector<std::vector<int>>& gens);
FiniteGroup make_dihedral(int n);  // order 2n, n >= 2
FiniteGroup make_klein();
FiniteGroup make_q8();
FiniteGroup make_sym(int n);  // n <= 5

struct Subgroup {
    Mask mask = mask_empty();
    std::vector<int> elems;  // sorted
    int order = 0;
    int class_id = -1;
    int witness = 0;  // g with this = g * class_rep * g^-1
};

struct SubgroupClass {
    int rep_subgroup = -1;
    std::vector<int> members;  // subgroup indices
    int order = 0;
    bool is_normal = false;
    std::string label;

    int normalizer_sub = -1;
    int centralizer_sub = -1;
    FiniteGroup weyl;                // N(rep)/rep
    std::vector<int> weyl_coset_of;  // G element -> weyl index, -1 outside N
    std::vector<int> weyl_rep;       // weyl index -> minimal coset representative
    FiniteGroup sub;                 // rep as a standalone group
    std::vector<int> sub_elem;       // sub index -> G element
    std::vector<int> sub_index_of;   // G element -> sub index, -1 outside
};

struct GroupContext {
    FiniteGroup group;
    std::vector<Subgroup> subgroups;  // sorted by (order, elements)
    std::map<Mask, int> subgroup_of_mask;
    std::vector<SubgroupClass> classes;  // sorted by (order, rep elements)

    int subgroup_index(const Mask& m) const;
    int class_of_mask(const Mask& m) const;
    int class_by_label(const std::string& l) const;
};

/// Enumerates all subgroups (breadth-first closure), their conjugacy classes,
/// normalizers, centralizers, and Weyl groups.
GroupContext make_context(FiniteGroup g);

struct CosetDecomp {
    std::vector<int> coset_of;  // element -> coset index
    std::vector<int> reps;      // coset index -> minimal representative
};

/// Left cosets xH, ordered by minimal representative (so coset 0 is H).
CosetDecomp left_cosets(const FiniteGroup& g, const Mask& h);

Mask closure_mask(const FiniteGroup& g, const std::vector<int>& gens);
Mask conjugate_mask(const FiniteGroup& g, const Mask& m, int by);
Mask normalizer_mask(const FiniteGroup& g, const Mask& m);
Mask centralizer_mask(const FiniteGroup& g, const Mask& m);

/// Finite left G-set given by an explicit action table.  The group pointer
/// refers into a GroupContext (or a SubgroupClass inside one) that must
/// outlive the set.
struct GSet {
    const FiniteGroup* g = nullptr;
    int n = 0;
    std::vector<int> act;  // |G| x n
    std::string name;

    int apply(int gel, int p) const { return act[size_t(gel) * n + p]; }
};

GSet validate_gset(GSet s);  // checks the action axioms

struct GMap {
    GSet source, target;
    std::vector<int> f;
};

GMap validate_gmap(GMap m);  // checks equivariance

/// Orbits sorted by minimal point; points sorted within each orbit.
std::vector<std::vector<int>> orbits(const GSet& s);
std::vector<int> orbit_of_point(const GSet& s);  // point -> orbit index
Mask stabilizer_mask(const GSet& s, int p);

struct OrbitPiece {
    int class_id;  // stabilizer class
    int count;
};

/// Multiset of stabilizer classes, sorted; one entry per orbit.
std::vector<int> orbit_form(const GroupContext& ctx, const GSet& s);
std::vector<OrbitPiece> orbit_decompose(const GroupContext& ctx, const GSet& s);

GSet standard_orbit(const GroupContext& ctx, int class_id);  // G/rep
GSet from_orbit_pieces(const GroupContext& ctx, const std::vector<OrbitPiece>& pieces);
GSet disjoint_union(const GSet& a, const GSet& b);
GSet product(const GSet& a, const GSet& b);  // pairs (p1, p2) -> p1 * b.n + p2
GSet one_point(const GroupContext& ctx);

struct FixedPointSet {
    GSet set;                // over classes[cid].weyl
    std::vector<int> points; // fixed points, as indices into the original set
};

/// Fixed points of the representative subgroup of `class_id`, as a set over
/// its Weyl group.
FixedPointSet fixed_points(const GroupContext& ctx, const GSet& s, int class_id);

struct FiberedProduct {
    GSet set;
    std::vector<std::pair<int, int>> pts;  // pairs of source points
    GMap proj1, proj2;
};

FiberedProduct fibered_product(const GMap& f, const GMap& h);  // over f.target == h.target

struct DoubleCoset {
    int witness;  // minimal element s of the double coset Hp s Hpp
    Mask stab;    // Hp intersect s Hpp s^-1
    int size;     // number of group elements in the double coset
};

/// Decomposition of Hp\H/Hpp for subgroups Hp, Hpp of H.
std::vector<DoubleCoset> double_cosets(const GroupContext& ctx, const Mask& hp, const Mask& hpp,
                                       const Mask& h);

/// Induction (G x S)/H of a set over the subgroup group of `class_id`, and
/// restriction of a G-set to that subgroup.
GSet induce(const GroupContext& ctx, int class_id, const GSet& s_over_sub);
GSet restrict_to(const GroupContext& ctx, int class_id, const GSet& s);

/// Canonical projection G/H' -> G/H for nested representative subgroups.
GMap coset_projection(const GroupContext& ctx, int small_class, int big_class);

/// Number of equivariant maps S -> T (product over orbits of fixed points).
long hom_count(const GSet& s, const GSet& t);

}  // namespace mackeylab
