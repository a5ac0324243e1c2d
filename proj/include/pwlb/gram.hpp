#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pwlb/pwl_core.hpp"
#include "pwlb/rational.hpp"

namespace pwlb {

// --- exact inner products over (0,1) -------------------------------------------

// <C_j, C_k>: 0 when v2(j) != v2(k), else gcd(j,k)^4 / (3 j^2 k^2).
Rational ip_CC(long long j, long long k);

// <S_j, S_k>: same magnitude as ip_CC; negative iff (j+k)/(2 gcd(j,k)) is even.
Rational ip_SS(long long j, long long k);

// <C_j, S_k> = 0 always.
Rational ip_CS(long long j, long long k);

// Multivariate ridge inner product <f1(k.x), f2(l.x)> over (0,1)^n.
// Both indices must be canonical. Non-parallel rays integrate to 0; parallel
// rays reduce to the univariate inner product of the content dilations.
Rational ridge_ip(Family f1, const FreqIndex& k, Family f2, const FreqIndex& l);

// --- Gram matrices --------------------------------------------------------------

enum class ElemKind { Constant, C_elem, S_elem, Hat_elem };

struct BasisLabel {
    ElemKind kind = ElemKind::Constant;
    std::vector<long long> index; // single entry (univariate) or frequency vector
    bool operator==(const BasisLabel&) const = default;
};

struct GramSpec {
    enum class System { R1C, R1S, R1Full, Rn, Hat } system = System::R1Full;
    long long N = 1;     // univariate cutoff (R1*, Hat)
    int n = 1;           // dimension (Rn)
    long long bound = 1; // inf-norm bound (Rn)
};

// Normalized Gram matrix: elements are 1 (constant), sqrt3*C_k, sqrt3*S_k,
// sqrt3*Hat_j, so normalized entries are 3x the raw inner products and the
// diagonal is exactly 1.
struct GramMatrix {
    std::string system_name;
    std::vector<BasisLabel> labels;
    std::vector<double> num;                     // row-major, size x size
    std::optional<std::vector<Rational>> exact;  // same layout, exact mode only

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return num[i * size() + j]; }
    const Rational& exact_at(std::size_t i, std::size_t j) const {
        return (*exact)[i * size() + j];
    }
};

GramMatrix gram(const GramSpec& spec, bool exact_mode, int threads = 1);

// CSV: header then one "row,col,value" line per upper-triangle entry.
void gram_to_csv(const GramMatrix& g, std::ostream& os);

// Exact JSON with numerator/denominator strings; requires exact mode.
std::string gram_to_exact_json(const GramMatrix& g);

// --- block and sign structure -----------------------------------------------------

struct BlockPartition {
    long long N = 0;
    std::vector<std::vector<long long>> blocks; // blocks[r] = { j <= N : v2(j) = r }
};

BlockPartition block_partition(long long N);

// epsilon_j: +1 if the odd part of j is 1 mod 4, -1 if 3 mod 4.
std::vector<int> sign_diagonal(long long N);

// --- symmetric eigensolver ----------------------------------------------------------

// Cyclic Jacobi on a row-major symmetric matrix; returns ascending
// eigenvalues. Rejects non-symmetric input (1e-12 relative); throws after a
// 30-sweep cap without convergence to off-diagonal Frobenius <= tol * ||M||_F.
std::vector<double> eigenvalues_sym(std::vector<double> m, std::size_t n, double tol = 1e-13);

// Eigenvalues of a Gram matrix, computed per connected component of the
// exact-zero sparsity pattern (the matrices are block diagonal).
std::vector<double> gram_eigenvalues(const GramMatrix& g, double tol = 1e-13);

// --- theorems under test --------------------------------------------------------------

struct SpectraReport {
    long long N = 0;
    double max_gap = 0.0;     // sorted-spectra distance between the C and S systems
    bool exact_checked = false;
    bool exact_identity = false; // G^S = D G^C D in rational arithmetic
};

// Compares the spectra of the normalized C- and S-system Gram matrices and
// (for N <= 128) checks the sign-diagonal conjugation identity exactly.
SpectraReport spectra_coincide(long long N, int threads = 1);

// Extreme eigenvalues of the normalized truncated Gram of the given system.
std::pair<double, double> riesz_bounds(const GramSpec& spec, int threads = 1);

} // namespace pwlb
