#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "azr/matrix.hpp"

namespace azr {

/// Eigenvalues ascending, eigenvectors as the columns of a unitary.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  /// U diag(λ) U*
  Matrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. The input is Hermitized
/// as (H + H*)/2 first. Deterministic: fixed row-cyclic sweep order.
/// Throws DimensionError for non-square input, DomainError for NaN/Inf.
SpectralDecomposition eigh(const Matrix& h);

/// Singular values, descending. One-sided Jacobi on the columns, which keeps
/// small singular values accurate to roughly eps·σ_max (squaring through A*A
/// would not). Works for rectangular input.
std::vector<double> singular_values(const Matrix& a);

/// Threshold below which an eigenvalue counts as kernel:
/// max(absolute, relative · λ_max) with relative defaulting to dim·eps.
struct CutoffPolicy {
  double relative = 0.0;  ///< 0 selects dim · machine epsilon
  double absolute = 0.0;

  double threshold(std::size_t dim, double lambda_max) const {
    const double rel = relative > 0.0 ? relative
                                      : static_cast<double>(dim) * std::numeric_limits<double>::epsilon();
    const double scaled = lambda_max > 0.0 ? rel * lambda_max : 0.0;
    return scaled > absolute ? scaled : absolute;
  }
};

/// Positive semidefinite complex matrix with its spectral decomposition cached.
/// Immutable; cheap to copy relative to the eigen-solve it saves.
class PsdElement {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  /// Validates: Hermitian to within tolerance (max|A − A*|) and
  /// λ_min ≥ −tolerance·(1 + λ_max). Throws DomainError otherwise.
  explicit PsdElement(const Matrix& m, double psd_tolerance = kDefaultTolerance);

  /// For matrices that are positive by construction (A B A*, G*G, ...).
  /// Hermitizes and decomposes but does not reject small negative eigenvalues.
  static PsdElement from_product(const Matrix& m);
  /// Builds U diag(λ) U* from a decomposition; eigenvalues must be ≥ 0.
  static PsdElement from_spectrum(SpectralDecomposition spectrum);
  static PsdElement zero(std::size_t n);
  static PsdElement identity(std::size_t n);

  const Matrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  std::size_t dim() const { return matrix_.rows(); }
  double psd_tolerance() const { return tolerance_; }
  double trace() const;
  double max_eigenvalue() const;
  double min_eigenvalue() const;
  /// Kernel threshold under the default cutoff policy.
  double support_cutoff(const CutoffPolicy& policy = {}) const;
  std::size_t rank(const CutoffPolicy& policy = {}) const;
  bool is_zero() const { return rank() == 0; }

  PsdElement scaled(double s) const;

 private:
  PsdElement(Matrix m, SpectralDecomposition s, double tol)
      : matrix_(std::move(m)), spectrum_(std::move(s)), tolerance_(tol) {}

  Matrix matrix_;
  SpectralDecomposition spectrum_;
  double tolerance_ = kDefaultTolerance;
};

PsdElement operator+(const PsdElement& a, const PsdElement& b);

/// Functional calculus λ ↦ λ^t. Eigenvalues at or below the support cutoff are
/// kernel and map to 0 for every t ≠ 0; t = 0 gives the support projection.
/// Negative t therefore acts as a Moore–Penrose style inverse power.
PsdElement mat_pow(const PsdElement& a, double t);

/// Σ λ_i^t over the support (same kernel convention as mat_pow).
double trace_pow(const PsdElement& a, double t);

/// Orthogonal projection onto the span of eigenvectors with λ above the cutoff.
Matrix support_projection(const PsdElement& a, const CutoffPolicy& policy = {});

/// Columns of U spanning the support, and the matching eigenvalues.
struct SupportBasis {
  Matrix basis;                 ///< dim × rank, orthonormal columns
  std::vector<double> values;   ///< eigenvalues on the support
};
SupportBasis support_basis(const PsdElement& a, const CutoffPolicy& policy = {});

/// Moore–Penrose pseudoinverse of a psd element (mat_pow(a, -1)).
Matrix pseudo_inverse(const PsdElement& a);

/// Schatten p-(quasi)norm (Σ σ_i^p)^{1/p}; p = +inf gives σ_max.
/// Singular values at or below dim·eps·σ_max are dropped. Throws DomainError for p ≤ 0.
double schatten_norm(const Matrix& a, double p);
/// Σ σ_i^p over the same truncated singular values (‖a‖_p^p without the root).
/// Singular values at or below floor are dropped as well; callers that know an
/// a priori bound on ‖a‖_∞ pass size·eps·bound so that round-off in an
/// otherwise vanishing product is not inflated by small p.
double schatten_power_sum(const Matrix& a, double p, double floor = 0.0);
double schatten_power_sum(std::span<const double> singular, double p, double floor = 0.0);

struct PolarDecomposition {
  Matrix partial_isometry;  ///< U with U*U = support projection of |A|
  PsdElement abs;           ///< |A| = (A*A)^{1/2}
};
/// A = U |A| with U = A·|A|⁺ on the support.
PolarDecomposition polar_decompose(const Matrix& a);

/// Given A ≤ B, returns c with A^{1/2} = c B^{1/2} on the support of B and
/// ‖c‖_∞ ≤ 1 (up to round-off); c = A^{1/2} (B^{1/2})⁺.
/// Throws PreconditionError carrying λ_min(B − A) when A ≰ B.
Matrix contraction_factor(const PsdElement& a, const PsdElement& b, double tolerance = 1e-9);

/// h^{1/2q} a h^{1/2q} with 1/p + 1/q = 1. p = 1 means q = ∞, i.e. the
/// support-projection sandwich. Throws DomainError for p < 1.
Matrix kosaki_embed(const Matrix& a, const PsdElement& h, double p);

/// Outcome of comparing ‖xy‖_r against ‖x‖_p‖y‖_q.
struct HolderZero {};
struct HolderProportional {
  double lambda;  ///< x^p ≈ λ y^q (or y^q ≈ λ x^p when oriented is false)
  bool oriented = true;
};
struct HolderStrict {
  double gap;
};
using HolderResult = std::variant<HolderZero, HolderProportional, HolderStrict>;

struct HolderOptions {
  double eq_tolerance = 1e-10;  ///< relative to ‖x‖_p‖y‖_q
  double exponent_tolerance = 1e-12;
};

/// Detects the equality case of Hölder's inequality for psd x, y.
/// Requires 1/r = 1/p + 1/q. The equality characterization is a theorem for
/// p, q > 1 and r ≥ 1; for r < 1 the classification is empirical only.
/// Throws DomainError on exponent mismatch.
HolderResult holder_equality_check(const PsdElement& x, const PsdElement& y, double p, double q,
                                   double r, const HolderOptions& options = {});

/// Returns the gap ‖x‖_p‖y‖_q − ‖xy‖_r used by holder_equality_check.
double holder_gap(const PsdElement& x, const PsdElement& y, double p, double q, double r);

/// tr((m* h^{2e} m)^s) = tr((h^e m m* h^e)^s), evaluated as Σ σ_i^{2s} of
/// diag(λ^e)·P_h*·m with P_h the support basis of h. The kernel of h drops out
/// exactly, and singular values below the round-off level of the product are
/// discarded, which keeps small powers s from amplifying noise.
double sandwich_trace_power(const PsdElement& h, double exponent, const Matrix& m, double power);

/// exp(H) for Hermitian H.
PsdElement hermitian_exp(const Matrix& h);

}  // namespace azr
