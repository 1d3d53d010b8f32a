#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/error.hpp"

namespace mackeylab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, IntegersMod, Rationals, PLocalRationals };

/// Coefficient ring for module presentations: Z, Z/m, Q, or Z_(p) (rationals
/// with denominator coprime to p).  All four admit Smith-style normal forms.
struct CoeffRing {
    RingKind kind = RingKind::Integers;
    long modulus = 0;  // IntegersMod
    long prime = 0;    // PLocalRationals

    static CoeffRing Z() { return {RingKind::Integers, 0, 0}; }
    static CoeffRing Zmod(long m);
    static CoeffRing Q() { return {RingKind::Rationals, 0, 0}; }
    static CoeffRing Qp(long p);

    bool operator==(const CoeffRing& o) const = default;
    bool is_field() const { return kind == RingKind::Rationals; }

    bool contains(const Rat& x) const;      // is x an element of this ring
    bool is_unit(const Rat& x) const;
    Rat normalize(const Rat& x) const;      // canonical representative (mod m)
    std::string to_string() const;
};

/// Dense exact matrix.  Entries are rationals; integrality is enforced where
/// the ring requires it.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    Rat& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static Mat identity(int n);
    static Mat zero(int r, int c) { return Mat(r, c); }

    Mat mul(const Mat& o) const;
    Mat add(const Mat& o) const;
    Mat sub(const Mat& o) const;
    Mat scale(const Rat& c) const;
    Mat hstack(const Mat& o) const;
    Mat col(int j) const;
    std::vector<Rat> col_vec(int j) const;
    Mat cols_range(int j0, int j1) const;  // columns [j0, j1)
    bool is_integral() const;
    bool is_zero() const;
    bool operator==(const Mat& o) const = default;
    std::string to_string() const;
};

/// Smith normal form of an integer matrix: U*A*V = D with U, V unimodular,
/// D diagonal with d1 | d2 | ... | dr, di > 0.  Inverses are tracked.
struct SmithResult {
    Mat U, D, V, Uinv, Vinv;
    int rank = 0;  // number of nonzero diagonal entries
};

SmithResult smith_normal_form(const Mat& A);

/// Columns spanning { x : A x = 0 over `ring` } (for Z/m: A x = 0 mod m).
Mat kernel_gens(const Mat& A, const CoeffRing& ring);

/// One solution of A x = b over `ring`, if any.
std::optional<std::vector<Rat>> solve_colspan(const Mat& A, const std::vector<Rat>& b,
                                              const CoeffRing& ring);

/// Isomorphism invariants of a finitely presented module over a CoeffRing:
/// free rank plus torsion invariant factors in divisibility order.
struct ModInvariants {
    long free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const ModInvariants& o) const = default;
    std::string to_string(const CoeffRing& ring) const;
};

/// Finitely presented module: cokernel of `relations` : R^k -> R^gens.
/// Columns of `relations` are the relation vectors.
struct FpModule {
    CoeffRing ring;
    int gens = 0;
    Mat relations;  // gens x k

    FpModule() : ring(CoeffRing::Z()), relations(0, 0) {}
    FpModule(CoeffRing r, int g, Mat rel);

    static FpModule free_module(const CoeffRing& r, int n);
    static FpModule zero(const CoeffRing& r) { return free_module(r, 0); }

    ModInvariants invariants() const;
    bool is_zero() const;
    /// Drops redundant relation columns (span-preserving).
    FpModule pruned() const;
    std::string pretty() const { return invariants().to_string(ring); }
};

bool modules_isomorphic(const FpModule& a, const FpModule& b);

/// Module homomorphism with an eager well-definedness certificate: every
/// relation of the source must map into the relation span of the target.
struct ModuleMap {
    FpModule source, target;
    Mat matrix;  // target.gens x source.gens

    ModuleMap() = default;
    ModuleMap(FpModule src, FpModule tgt, Mat m, bool check = true);

    static ModuleMap identity(const FpModule& m);
    static ModuleMap zero_map(const FpModule& src, const FpModule& tgt);

    ModuleMap compose(const ModuleMap& inner) const;  // this o inner
    ModuleMap add(const ModuleMap& o) const;
    ModuleMap sub(const ModuleMap& o) const;
    ModuleMap scale(const Rat& c) const;
    ModuleMap pow(long n) const;  // endomorphism power, n >= 0

    bool is_zero_map() const;
    bool equals(const ModuleMap& o) const;  // as maps, i.e. modulo target relations
};

struct SubmoduleResult {
    FpModule module;
    ModuleMap inclusion;  // module -> ambient
};
struct QuotientResult {
    FpModule module;
    ModuleMap projection;  // ambient -> module
};

SubmoduleResult map_kernel(const ModuleMap& f);
QuotientResult map_cokernel(const ModuleMap& f);

/// Image of f presented as source/ker(f); `inclusion` embeds it in f.target.
SubmoduleResult map_image(const ModuleMap& f);

/// Factor h through the inclusion iota (requires im h within im iota, and iota
/// produced by map_kernel so its relations are saturated).
ModuleMap factor_through(const ModuleMap& iota, const ModuleMap& h);

/// ker(u) / im(w), for u o w = 0.
FpModule homology_at(const ModuleMap& u, const ModuleMap& w);

/// Cyclic group homology H_i(Z/n, M) for sigma of order dividing n, via the
/// 2-periodic resolution: H_0 = coker(sigma-1), H_odd = ker(sigma-1)/im(N),
/// H_even = ker(N)/im(sigma-1) with N = 1 + sigma + ... + sigma^(n-1).
FpModule cyclic_homology(long n, const FpModule& m, const ModuleMap& sigma, long degree);

/// 2-periodic Tate cohomology of Z/n: even = ker(sigma-1)/im(N),
/// odd = ker(N)/im(sigma-1).
struct TateResult {
    FpModule even, odd;
    bool two_periodic = true;
};

TateResult cyclic_tate(long n, const FpModule& m, const ModuleMap& sigma);

/// Tate wrapper for the group of prime order p only; composite orders are
/// rejected (the two-sided completion differs from this complex there).
TateResult maximal_tate(long p, const FpModule& m, const ModuleMap& sigma);

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

}  // namespace mackeylab
