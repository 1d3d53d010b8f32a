#pragma once
#include <map>
#include <string>
#include <vector>

#include "mackeylab/groups.hpp"
#include "mackeylab/modalg.hpp"

namespace mackeylab {

/// Canonical form of an orbit span S1 <- G/U -> S2: the orbit of a point
/// (p1, p2) of S1 x S2 together with a subgroup U of its stabilizer, both
/// normalized to the minimal representative under simultaneous conjugation.
struct SpanKey {
    int p1 = 0, p2 = 0;
    std::vector<int> stab_elems;
    Mask stab = mask_empty();

    friend bool operator<(const SpanKey& a, const SpanKey& b) {
        if (a.p1 != b.p1) return a.p1 < b.p1;
        if (a.p2 != b.p2) return a.p2 < b.p2;
        return a.stab_elems < b.stab_elems;
    }
    friend bool operator==(const SpanKey& a, const SpanKey& b) {
        return a.p1 == b.p1 && a.p2 == b.p2 && a.stab_elems == b.stab_elems;
    }
};

SpanKey canonical_span(const GroupContext& ctx, const GSet& s1, const GSet& s2, int p1, int p2,
                       Mask u);

/// Finite formal sum of canonical spans S1 -> S2 with integer coefficients;
/// zero coefficients are dropped.
struct BurnsideElement {
    GSet source, target;
    std::map<SpanKey, Int> coeffs;
};

bool same_gset(const GSet& a, const GSet& b);

BurnsideElement zero_element(const GSet& s1, const GSet& s2);
BurnsideElement basis_span(const GroupContext& ctx, const GSet& s1, const GSet& s2,
                           const SpanKey& k);
BurnsideElement identity_element(const GroupContext& ctx, const GSet& s);
BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement scale(const Int& c, const BurnsideElement& a);
bool equal_elements(const BurnsideElement& a, const BurnsideElement& b);

/// One basis span per pair (orbit of S1 x S2, subgroup of the stabilizer up
/// to simultaneous conjugation), sorted by canonical key.
std::vector<SpanKey> hom_basis(const GroupContext& ctx, const GSet& s1, const GSet& s2);

/// Composite b . a of a: S1 -> S2 and b: S2 -> S3 via fibered products of
/// middles, re-expressed in canonical keys.
BurnsideElement span_compose(const GroupContext& ctx, const BurnsideElement& a,
                             const BurnsideElement& b);

struct Span {
    GSet middle;  // explicit coset realization of G/U
    GMap left;    // middle -> S1
    GMap right;   // middle -> S2
};

Span realize_span(const GroupContext& ctx, const GSet& s1, const GSet& s2, const SpanKey& k);

/// The action of [S0] on Hom(S, S): the span S <- S x S0 -> S with both legs
/// the projection, decomposed into canonical orbit spans.
BurnsideElement central_spans(const GroupContext& ctx, const GSet& s, const GSet& s0);

/// Elements of A^G = Hom(pt, pt) as coefficient vectors over the orbit basis
/// [G/H], indexed by subgroup class.
std::vector<Int> a_coeffs(const GroupContext& ctx, const BurnsideElement& e);
BurnsideElement a_element(const GroupContext& ctx, const std::vector<Int>& by_class);
BurnsideElement of_gset(const GroupContext& ctx, const GSet& s);  // class of S in A^G

/// c[i][j] = list of (class k, coefficient) with [G/Hi][G/Hj] = sum c [G/Hk].
using RingConstants = std::vector<std::vector<std::vector<std::pair<int, Int>>>>;
RingConstants burnside_ring_constants(const GroupContext& ctx);

std::vector<Int> burnside_product(const GroupContext& ctx, const std::vector<Int>& a,
                                  const std::vector<Int>& b);
std::vector<Int> burnside_product_with(const RingConstants& cc, const std::vector<Int>& a,
                                       const std::vector<Int>& b);

struct MarksTable {
    std::vector<std::vector<Int>> entries;  // [class of K][class of H] = |(G/K)^H|
};

MarksTable table_of_marks(const GroupContext& ctx);
std::vector<Int> ghost(const GroupContext& ctx, const MarksTable& marks,
                       const std::vector<Int>& a);

std::string a_to_string(const GroupContext& ctx, const std::vector<Int>& a);
std::string marks_to_string(const GroupContext& ctx, const MarksTable& marks);

}  // namespace mackeylab
