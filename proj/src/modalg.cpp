#include "mackeylab/modalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mackeylab {

namespace {

Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

bool is_integer(const Rat& x) { return den(x) == 1; }

Int to_int(const Rat& x) {
    if (!is_integer(x)) throw DomainError("expected integer entry, got " + rat_to_string(x));
    return num(x);
}

Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long p_valuation(Int x, long p) {
    if (x == 0) throw DomainError("valuation of zero");
    if (x < 0) x = -x;
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

std::string rat_to_string(const Rat& x) {
    std::ostringstream os;
    os << num(x);
    if (den(x) != 1) os << "/" << den(x);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw InputError("zero denominator: " + s);
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw InputError("bad rational literal: " + s);
    }
}

// ---------------------------------------------------------------------------
// CoeffRing

CoeffRing CoeffRing::Zmod(long m) {
    if (m < 2) throw DomainError("modulus must be >= 2");
    return {RingKind::IntegersMod, m, 0};
}

CoeffRing CoeffRing::Qp(long p) {
    if (p < 2) throw DomainError("p must be a prime >= 2");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("p must be prime");
    return {RingKind::PLocalRationals, 0, p};
}

bool CoeffRing::contains(const Rat& x) const {
    switch (kind) {
        case RingKind::Integers:
        case RingKind::IntegersMod: return is_integer(x);
        case RingKind::Rationals: return true;
        case RingKind::PLocalRationals: return den(x) % prime != 0;
    }
    return false;
}

bool CoeffRing::is_unit(const Rat& x) const {
    if (!contains(x)) return false;
    switch (kind) {
        case RingKind::Integers: return x == 1 || x == -1;
        case RingKind::IntegersMod: return int_gcd(num(x), Int(modulus)) == 1;
        case RingKind::Rationals: return x != 0;
        case RingKind::PLocalRationals: return x != 0 && num(x) % prime != 0;
    }
    return false;
}

Rat CoeffRing::normalize(const Rat& x) const {
    if (!contains(x)) throw DomainError("entry " + rat_to_string(x) + " not in " + to_string());
    if (kind == RingKind::IntegersMod) {
        Int r = num(x) % modulus;
        if (r < 0) r += modulus;
        return Rat(r);
    }
    return x;
}

std::string CoeffRing::to_string() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::IntegersMod: return "Z/" + std::to_string(modulus);
        case RingKind::Rationals: return "Q";
        case RingKind::PLocalRationals: return "Z_(" + std::to_string(prime) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Mat

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::mul(const Mat& o) const {
    if (cols != o.rows) throw DomainError("matrix dimension mismatch in mul");
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) {
                const Rat& y = o.at(k, j);
                if (y == 0) continue;
                r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::add(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DomainError("matrix dimension mismatch in add");
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

Mat Mat::sub(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DomainError("matrix dimension mismatch in sub");
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

Mat Mat::scale(const Rat& c) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
    return r;
}

Mat Mat::hstack(const Mat& o) const {
    if (rows != o.rows) throw DomainError("matrix row mismatch in hstack");
    Mat r(rows, cols + o.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
}

Mat Mat::col(int j) const {
    Mat r(rows, 1);
    for (int i = 0; i < rows; ++i) r.at(i, 0) = at(i, j);
    return r;
}

std::vector<Rat> Mat::col_vec(int j) const {
    std::vector<Rat> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

Mat Mat::cols_range(int j0, int j1) const {
    Mat r(rows, j1 - j0);
    for (int i = 0; i < rows; ++i)
        for (int j = j0; j < j1; ++j) r.at(i, j - j0) = at(i, j);
    return r;
}

bool Mat::is_integral() const {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return is_integer(x); });
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << "[";
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << rat_to_string(at(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form over Z

namespace {

struct SnfWork {
    std::vector<std::vector<Int>> A;
    Mat U, Uinv, V, Vinv;
    int m, n;

    explicit SnfWork(const Mat& in) : m(in.rows), n(in.cols) {
        A.assign(m, std::vector<Int>(n));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A[i][j] = to_int(in.at(i, j));
        U = Mat::identity(m);
        Uinv = Mat::identity(m);
        V = Mat::identity(n);
        Vinv = Mat::identity(n);
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        std::swap(A[i], A[j]);
        for (int c = 0; c < m; ++c) std::swap(U.at(i, c), U.at(j, c));
        for (int r = 0; r < m; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(A[r][i], A[r][j]);
        for (int r = 0; r < n; ++r) std::swap(V.at(r, i), V.at(r, j));
        for (int c = 0; c < n; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }

    // row i += q * row j
    void add_row(int i, int j, const Int& q) {
        if (q == 0) return;
        Rat rq{q};
        for (int c = 0; c < n; ++c) A[i][c] += q * A[j][c];
        for (int c = 0; c < m; ++c) U.at(i, c) += rq * U.at(j, c);
        for (int r = 0; r < m; ++r) Uinv.at(r, j) -= rq * Uinv.at(r, i);
    }

    // col i += q * col j
    void add_col(int i, int j, const Int& q) {
        if (q == 0) return;
        Rat rq{q};
        for (int r = 0; r < m; ++r) A[r][i] += q * A[r][j];
        for (int r = 0; r < n; ++r) V.at(r, i) += rq * V.at(r, j);
        for (int c = 0; c < n; ++c) Vinv.at(j, c) -= rq * Vinv.at(i, c);
    }

    void negate_row(int i) {
        for (int c = 0; c < n; ++c) A[i][c] = -A[i][c];
        for (int c = 0; c < m; ++c) U.at(i, c) = -U.at(i, c);
        for (int r = 0; r < m; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
    }

    bool pivot_to(int t) {
        int bi = -1, bj = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (A[i][j] == 0) continue;
                Int v = A[i][j] < 0 ? Int(-A[i][j]) : A[i][j];
                if (bi < 0 || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    // clear row t and column t outside the diagonal, re-pivoting as needed
    void reduce_at(int t) {
        for (;;) {
            if (!pivot_to(t)) return;
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                Int q = A[i][t] / A[t][t];
                add_row(i, t, -q);
                if (A[i][t] != 0) {
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            for (int j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                Int q = A[t][j] / A[t][t];
                add_col(j, t, -q);
                if (A[t][j] != 0) {
                    clean = false;
                    break;
                }
            }
            if (clean) return;
        }
    }
};

}  // namespace

SmithResult smith_normal_form(const Mat& in) {
    if (!in.is_integral()) throw DomainError("smith_normal_form requires an integral matrix");
    SnfWork w(in);
    int t = 0;
    int bound = std::min(w.m, w.n);
    for (; t < bound; ++t) {
        bool any = false;
        for (int i = t; i < w.m && !any; ++i)
            for (int j = t; j < w.n && !any; ++j) any = w.A[i][j] != 0;
        if (!any) break;
        w.reduce_at(t);
        if (w.A[t][t] < 0) w.negate_row(t);
    }
    int rank = t;
    // divisibility chain
    for (;;) {
        bool fixed = true;
        for (int i = 0; i + 1 < rank; ++i) {
            if (w.A[i + 1][i + 1] % w.A[i][i] != 0) {
                w.add_col(i, i + 1, 1);
                w.reduce_at(i);
                if (w.A[i][i] < 0) w.negate_row(i);
                fixed = false;
                break;
            }
        }
        if (fixed) break;
    }
    for (int i = 0; i < rank; ++i)
        if (w.A[i][i] < 0) w.negate_row(i);
    SmithResult res;
    res.rank = rank;
    res.U = std::move(w.U);
    res.Uinv = std::move(w.Uinv);
    res.V = std::move(w.V);
    res.Vinv = std::move(w.Vinv);
    res.D = Mat(w.m, w.n);
    for (int i = 0; i < w.m; ++i)
        for (int j = 0; j < w.n; ++j) res.D.at(i, j) = Rat(w.A[i][j]);
    return res;
}

// ---------------------------------------------------------------------------
// Ring-generic kernels and solves

namespace {

// lcm of entry denominators, column by column; scaling columns by these is a
// unit operation over Q and Z_(p)
Int col_denominator_lcm(const Mat& A, int j) {
    Int l = 1;
    for (int i = 0; i < A.rows; ++i) {
        Int d = den(A.at(i, j));
        l = l / int_gcd(l, d) * d;
    }
    return l;
}

Mat clear_column_denominators(const Mat& A, std::vector<Int>* scales = nullptr) {
    Mat B(A.rows, A.cols);
    for (int j = 0; j < A.cols; ++j) {
        Int l = col_denominator_lcm(A, j);
        if (scales) scales->push_back(l);
        for (int i = 0; i < A.rows; ++i) B.at(i, j) = A.at(i, j) * Rat(l);
    }
    return B;
}

Mat kernel_gens_Z(const Mat& A) {
    SmithResult s = smith_normal_form(A);
    // A x = 0  <=>  D y = 0 with x = V y; free coordinates are rank..n-1
    return s.V.cols_range(s.rank, A.cols);
}

// rational nullspace via Gaussian elimination
Mat kernel_gens_Q(const Mat& A) {
    Mat M = A;
    int m = M.rows, n = M.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (M.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(M.at(r, j), M.at(p, j));
        Rat inv = Rat(1) / M.at(r, c);
        for (int j = 0; j < n; ++j) M.at(r, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (int j = 0; j < n; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    Mat K(n, 0);
    std::vector<Rat> out;
    int kcols = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(n);
        v[c] = 1;
        for (int i = 0; i < int(pivot_col.size()); ++i) v[pivot_col[i]] = -M.at(i, c);
        for (auto& x : v) out.push_back(x);
        ++kcols;
    }
    K = Mat(n, kcols);
    for (int j = 0; j < kcols; ++j)
        for (int i = 0; i < n; ++i) K.at(i, j) = out[size_t(j) * n + i];
    return K;
}

}  // namespace

Mat kernel_gens(const Mat& A, const CoeffRing& ring) {
    switch (ring.kind) {
        case RingKind::Rationals: return kernel_gens_Q(A);
        case RingKind::Integers: return kernel_gens_Z(A);
        case RingKind::PLocalRationals: {
            // unit column scaling preserves the kernel up to unit coordinate
            // scaling, and a saturated Z-kernel spans the Z_(p)-kernel
            std::vector<Int> sc;
            Mat B = clear_column_denominators(A, &sc);
            Mat K = kernel_gens_Z(B);
            for (int j = 0; j < K.cols; ++j)
                for (int i = 0; i < K.rows; ++i) K.at(i, j) *= Rat(sc[i]);
            return K;
        }
        case RingKind::IntegersMod: {
            Mat aug = A.hstack(Mat::identity(A.rows).scale(Rat(ring.modulus)));
            Mat K = kernel_gens_Z(aug);
            Mat out(A.cols, K.cols);
            for (int j = 0; j < K.cols; ++j)
                for (int i = 0; i < A.cols; ++i) out.at(i, j) = ring.normalize(K.at(i, j));
            return out;
        }
    }
    throw DomainError("unknown ring");
}

namespace {

std::optional<std::vector<Rat>> solve_Z_like(const Mat& A, const std::vector<Rat>& b,
                                             const CoeffRing& ring) {
    // integral A, integral b; x must lie in Z or Z_(p)
    SmithResult s = smith_normal_form(A);
    std::vector<Rat> y(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Rat acc = 0;
        for (int j = 0; j < A.rows; ++j) acc += s.U.at(i, j) * b[j];
        y[i] = acc;
    }
    std::vector<Rat> z(A.cols);
    for (int i = 0; i < A.rows; ++i) {
        Rat d = i < std::min(A.rows, A.cols) ? s.D.at(i, i) : Rat(0);
        if (d == 0) {
            if (y[i] != 0) return std::nullopt;
            continue;
        }
        Rat q = y[i] / d;
        if (i < A.cols) {
            if (ring.kind == RingKind::Integers && !is_integer(q)) return std::nullopt;
            if (ring.kind == RingKind::PLocalRationals && den(q) % ring.prime == 0)
                return std::nullopt;
            z[i] = q;
        }
    }
    std::vector<Rat> x(A.cols);
    for (int i = 0; i < A.cols; ++i) {
        Rat acc = 0;
        for (int j = 0; j < A.cols; ++j) acc += s.V.at(i, j) * z[j];
        x[i] = acc;
    }
    return x;
}

std::optional<std::vector<Rat>> solve_Q(const Mat& A, const std::vector<Rat>& b) {
    Mat M(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[i];
    }
    int m = M.rows, n = A.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (M.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        for (int j = 0; j <= n; ++j) std::swap(M.at(r, j), M.at(p, j));
        Rat inv = Rat(1) / M.at(r, c);
        for (int j = 0; j <= n; ++j) M.at(r, j) *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (int j = 0; j <= n; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (M.at(i, n) != 0) return std::nullopt;
    std::vector<Rat> x(n);
    for (int i = 0; i < int(pivot_col.size()); ++i) x[pivot_col[i]] = M.at(i, n);
    return x;
}

}  // namespace

std::optional<std::vector<Rat>> solve_colspan(const Mat& A, const std::vector<Rat>& b,
                                              const CoeffRing& ring) {
    if (int(b.size()) != A.rows) throw DomainError("solve_colspan dimension mismatch");
    switch (ring.kind) {
        case RingKind::Rationals: return solve_Q(A, b);
        case RingKind::Integers: {
            Mat B = A;
            std::vector<Rat> bb = b;
            return solve_Z_like(B, bb, ring);
        }
        case RingKind::PLocalRationals: {
            std::vector<Int> sc;
            Mat B = clear_column_denominators(A, &sc);
            Int db = 1;
            for (const Rat& v : b) {
                Int d = den(v);
                db = db / int_gcd(db, d) * d;
            }
            if (db % ring.prime == 0) throw DomainError("rhs not p-local");
            std::vector<Rat> bb(b.size());
            for (size_t i = 0; i < b.size(); ++i) bb[i] = b[i] * Rat(db);
            auto x = solve_Z_like(B, bb, ring);
            if (!x) return std::nullopt;
            for (int j = 0; j < A.cols; ++j) (*x)[j] = (*x)[j] * Rat(sc[j]) / Rat(db);
            return x;
        }
        case RingKind::IntegersMod: {
            Mat aug = A.hstack(Mat::identity(A.rows).scale(Rat(ring.modulus)));
            auto ring_z = CoeffRing::Z();
            auto x = solve_Z_like(aug, b, ring_z);
            if (!x) return std::nullopt;
            std::vector<Rat> out(A.cols);
            for (int j = 0; j < A.cols; ++j) out[j] = ring.normalize((*x)[j]);
            return out;
        }
    }
    throw DomainError("unknown ring");
}

// ---------------------------------------------------------------------------
// FpModule

FpModule::FpModule(CoeffRing r, int g, Mat rel) : ring(r), gens(g), relations(std::move(rel)) {
    if (relations.rows != gens) throw DomainError("relation matrix must have one row per generator");
    for (auto& x : relations.a) x = ring.normalize(x);
}

FpModule FpModule::free_module(const CoeffRing& r, int n) { return FpModule(r, n, Mat(n, 0)); }

ModInvariants FpModule::invariants() const {
    ModInvariants inv;
    switch (ring.kind) {
        case RingKind::Rationals: {
            Mat k = kernel_gens_Q(relations);
            // rank of relations = cols - nullity
            long rk = relations.cols - k.cols;
            inv.free_rank = gens - rk;
            return inv;
        }
        case RingKind::Integers: {
            SmithResult s = smith_normal_form(relations);
            inv.free_rank = gens - s.rank;
            for (int i = 0; i < s.rank; ++i) {
                Int d = to_int(s.D.at(i, i));
                if (d > 1) inv.torsion.push_back(d);
            }
            return inv;
        }
        case RingKind::IntegersMod: {
            Mat aug = relations.hstack(Mat::identity(gens).scale(Rat(ring.modulus)));
            SmithResult s = smith_normal_form(aug);
            inv.free_rank = 0;
            for (int i = 0; i < s.rank; ++i) {
                Int d = to_int(s.D.at(i, i));
                if (d > 1) inv.torsion.push_back(d);
            }
            return inv;
        }
        case RingKind::PLocalRationals: {
            Mat B = clear_column_denominators(relations);
            SmithResult s = smith_normal_form(B);
            inv.free_rank = gens - s.rank;
            for (int i = 0; i < s.rank; ++i) {
                long v = p_valuation(to_int(s.D.at(i, i)), ring.prime);
                if (v > 0) {
                    Int t = 1;
                    for (long k = 0; k < v; ++k) t *= ring.prime;
                    inv.torsion.push_back(t);
                }
            }
            return inv;
        }
    }
    throw DomainError("unknown ring");
}

bool FpModule::is_zero() const {
    ModInvariants inv = invariants();
    return inv.free_rank == 0 && inv.torsion.empty();
}

FpModule FpModule::pruned() const {
    if (relations.cols == 0) return *this;
    // keep columns that enlarge the span, scanning left to right
    Mat kept(gens, 0);
    for (int j = 0; j < relations.cols; ++j) {
        auto b = relations.col_vec(j);
        if (kept.cols > 0 || gens == 0) {
            auto sol = solve_colspan(kept, b, ring);
            if (sol) continue;
        } else {
            bool zero = std::all_of(b.begin(), b.end(), [](const Rat& x) { return x == 0; });
            if (zero) continue;
        }
        kept = kept.hstack(relations.col(j));
    }
    return FpModule(ring, gens, kept);
}

std::string ModInvariants::to_string(const CoeffRing& ring) const {
    if (free_rank == 0 && torsion.empty()) return "0";
    std::string base;
    switch (ring.kind) {
        case RingKind::Integers: base = "Z"; break;
        case RingKind::IntegersMod: base = "Z/" + std::to_string(ring.modulus); break;
        case RingKind::Rationals: base = "Q"; break;
        case RingKind::PLocalRationals: base = "Z_(" + std::to_string(ring.prime) + ")"; break;
    }
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << base;
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

bool modules_isomorphic(const FpModule& a, const FpModule& b) {
    if (!(a.ring == b.ring)) throw DomainError("modules_isomorphic: coefficient rings differ");
    return a.invariants() == b.invariants();
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(FpModule src, FpModule tgt, Mat m, bool check)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows != target.gens || matrix.cols != source.gens)
        throw DomainError("module map matrix has wrong shape");
    if (!(source.ring == target.ring)) throw DomainError("module map between different rings");
    for (auto& x : matrix.a)
        if (!source.ring.contains(x))
            throw DomainError("module map entry outside coefficient ring");
    if (check) {
        Mat img = matrix.mul(source.relations);
        for (int j = 0; j < img.cols; ++j) {
            if (!solve_colspan(target.relations, img.col_vec(j), target.ring))
                throw DomainError("module map does not respect source relations");
        }
    }
}

ModuleMap ModuleMap::identity(const FpModule& m) {
    return ModuleMap(m, m, Mat::identity(m.gens), false);
}

ModuleMap ModuleMap::zero_map(const FpModule& src, const FpModule& tgt) {
    return ModuleMap(src, tgt, Mat::zero(tgt.gens, src.gens), false);
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    if (inner.target.gens != source.gens)
        throw DomainError("module map composition mismatch");
    return ModuleMap(inner.source, target, matrix.mul(inner.matrix), false);
}

ModuleMap ModuleMap::add(const ModuleMap& o) const {
    return ModuleMap(source, target, matrix.add(o.matrix), false);
}

ModuleMap ModuleMap::sub(const ModuleMap& o) const {
    return ModuleMap(source, target, matrix.sub(o.matrix), false);
}

ModuleMap ModuleMap::scale(const Rat& c) const {
    return ModuleMap(source, target, matrix.scale(c), true);
}

ModuleMap ModuleMap::pow(long n) const {
    if (source.gens != target.gens) throw DomainError("pow of non-endomorphism");
    ModuleMap acc = ModuleMap::identity(source);
    for (long i = 0; i < n; ++i) acc = compose(acc);
    return acc;
}

bool ModuleMap::is_zero_map() const {
    // empty relation span: zero means zero entrywise (mod m where applicable)
    if (target.relations.cols == 0) {
        for (const Rat& x : matrix.a)
            if (target.ring.normalize(x) != 0) return false;
        return true;
    }
    for (int j = 0; j < matrix.cols; ++j) {
        bool allzero = true;
        for (int i = 0; i < matrix.rows && allzero; ++i) allzero = matrix.at(i, j) == 0;
        if (allzero) continue;
        if (!solve_colspan(target.relations, matrix.col_vec(j), target.ring)) return false;
    }
    return true;
}

bool ModuleMap::equals(const ModuleMap& o) const {
    if (matrix.rows != o.matrix.rows || matrix.cols != o.matrix.cols) return false;
    if (target.relations.cols == 0) {
        for (size_t i = 0; i < matrix.a.size(); ++i)
            if (target.ring.normalize(matrix.a[i] - o.matrix.a[i]) != 0) return false;
        return true;
    }
    return sub(o).is_zero_map();
}

// ---------------------------------------------------------------------------
// kernels, cokernels, subquotients

SubmoduleResult map_kernel(const ModuleMap& f) {
    const CoeffRing& ring = f.source.ring;
    // { x : F x lies in the relation span of the target }
    Mat stacked = f.matrix.hstack(f.target.relations);
    Mat K = kernel_gens(stacked, ring);
    Mat L(f.source.gens, K.cols);
    for (int j = 0; j < K.cols; ++j)
        for (int i = 0; i < f.source.gens; ++i) L.at(i, j) = K.at(i, j);
    // relations of the kernel: full preimage of the source relation span
    Mat stacked2 = L.hstack(f.source.relations);
    Mat K2 = kernel_gens(stacked2, ring);
    Mat R(L.cols, K2.cols);
    for (int j = 0; j < K2.cols; ++j)
        for (int i = 0; i < L.cols; ++i) R.at(i, j) = K2.at(i, j);
    FpModule ker(ring, L.cols, R);
    ker = ker.pruned();
    return {ker, ModuleMap(ker, f.source, L, false)};
}

QuotientResult map_cokernel(const ModuleMap& f) {
    FpModule coker(f.target.ring, f.target.gens, f.target.relations.hstack(f.matrix));
    coker = coker.pruned();
    return {coker, ModuleMap(f.target, coker, Mat::identity(f.target.gens), false)};
}

SubmoduleResult map_image(const ModuleMap& f) {
    // image = source / ker(matrix as a map to the target)
    SubmoduleResult k = map_kernel(f);
    FpModule img(f.source.ring, f.source.gens, f.source.relations.hstack(k.inclusion.matrix));
    img = img.pruned();
    return {img, ModuleMap(img, f.target, f.matrix, false)};
}

ModuleMap factor_through(const ModuleMap& iota, const ModuleMap& h) {
    if (!(iota.target.gens == h.target.gens) || !(iota.target.ring == h.target.ring))
        throw DomainError("factor_through: ambient modules differ");
    const CoeffRing& ring = iota.target.ring;
    Mat A = iota.matrix.hstack(iota.target.relations);
    Mat G(iota.source.gens, h.source.gens);
    for (int j = 0; j < h.source.gens; ++j) {
        auto sol = solve_colspan(A, h.matrix.col_vec(j), ring);
        if (!sol) throw DomainError("factor_through: map does not land in the submodule");
        for (int i = 0; i < iota.source.gens; ++i) G.at(i, j) = (*sol)[i];
    }
    return ModuleMap(h.source, iota.source, G, true);
}

FpModule homology_at(const ModuleMap& u, const ModuleMap& w) {
    if (!u.compose(w).is_zero_map()) throw DomainError("homology_at: u o w is not zero");
    SubmoduleResult k = map_kernel(u);
    ModuleMap g = factor_through(k.inclusion, w);
    return map_cokernel(g).module;
}

// ---------------------------------------------------------------------------
// cyclic homology and Tate cohomology

namespace {

void check_sigma(long n, const FpModule& m, const ModuleMap& sigma) {
    if (n < 1) throw DomainError("group order must be >= 1");
    if (sigma.source.gens != m.gens || sigma.target.gens != m.gens)
        throw DomainError("sigma must be an endomorphism of the module");
    if (!sigma.pow(n).equals(ModuleMap::identity(m)))
        throw DomainError("sigma^n is not the identity");
}

ModuleMap norm_map(long n, const FpModule& m, const ModuleMap& sigma) {
    ModuleMap acc = ModuleMap::zero_map(m, m);
    ModuleMap p = ModuleMap::identity(m);
    for (long i = 0; i < n; ++i) {
        acc = acc.add(p);
        p = sigma.compose(p);
    }
    return acc;
}

}  // namespace

FpModule cyclic_homology(long n, const FpModule& m, const ModuleMap& sigma, long degree) {
    check_sigma(n, m, sigma);
    if (degree < 0) throw DomainError("negative homology degree");
    ModuleMap dec = sigma.sub(ModuleMap::identity(m));
    if (degree == 0) return map_cokernel(dec).module;
    ModuleMap nm = norm_map(n, m, sigma);
    if (degree % 2 == 1) return homology_at(dec, nm);
    return homology_at(nm, dec);
}

TateResult cyclic_tate(long n, const FpModule& m, const ModuleMap& sigma) {
    check_sigma(n, m, sigma);
    ModuleMap dec = sigma.sub(ModuleMap::identity(m));
    ModuleMap nm = norm_map(n, m, sigma);
    TateResult t;
    t.even = homology_at(dec, nm);
    t.odd = homology_at(nm, dec);
    return t;
}

TateResult maximal_tate(long p, const FpModule& m, const ModuleMap& sigma) {
    if (p < 2) throw DomainError("maximal_tate: order must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw DomainError("maximal_tate: only prime orders are supported; "
                              "the completed theory vanishes at composite orders");
    return cyclic_tate(p, m, sigma);
}

}  // namespace mackeylab
